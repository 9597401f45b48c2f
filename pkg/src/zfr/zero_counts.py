"""Explicit bounds on zeros near the line Re s = 1 and on L'/L.

These are evaluators of closed-form upper bounds, not statements about
actual zeros. Each evaluator refuses inputs that certainly violate the
hypotheses under which its bound was derived.
"""

from __future__ import annotations

from dataclasses import dataclass

from flint import arb

from .mp_core import (
    PreconditionError,
    precision,
    num,
    pw,
    zeta_log_derivative,
    zeta_real,
)

LOG_T_MIN = 1938          # t >= e^1938
Q_EXPONENT = 100_000      # t >= q^(1/100000)


@dataclass(frozen=True)
class CountBoundInputs:
    """Height t, radius (R or v), modulus q and the exponent-sum pair (A, B)."""

    t: arb
    R_or_v: arb
    q: arb
    A: arb
    B: arb

    @classmethod
    def of(cls, t, R_or_v, q, A="76.2", B="4.45") -> "CountBoundInputs":
        return cls(num(t), num(R_or_v), num(q), num(A), num(B))

    @property
    def log_t(self) -> arb:
        return self.t.log()


def zerocount_constants(eta, *, prec: int | None = None) -> tuple[arb, arb]:
    """(C1, C2) in |N(T) - main term - C0| <= C1 log(qT) + C2."""
    with precision(prec):
        eta = num(eta)
        if not (eta > 0) or eta > arb(1) / 2:
            raise PreconditionError("need 0 < eta <= 1/2")
        log2 = arb(2).log()
        C1 = (1 + 2 * eta) / (2 * arb.pi() * log2)
        C2 = (
            num("0.1529")
            - num("0.134") * eta
            + 2 * zeta_real(1 + eta).log() / log2
            - zeta_real(2 + 2 * eta).log() / log2
            + 2 / arb.pi() * zeta_real(num(3) / 2 + 2 * eta).log()
        )
        return C1, C2


def _check_height(inp: CountBoundInputs) -> None:
    log_t = inp.log_t
    if log_t < LOG_T_MIN:
        raise PreconditionError("t >= e^1938 is violated")
    if log_t < inp.q.log() / Q_EXPONENT:
        raise PreconditionError("t >= q^(1/100000) is violated")
    if inp.q < 3:
        raise PreconditionError("q >= 3 is violated")
    if not inp.A > 0 or not inp.B > 0 or inp.B > num("4.45"):
        raise PreconditionError("need A > 0 and 0 < B <= 4.45")


def radius_floor(t) -> arb:
    """1.04 (log(t/100))^(-2/3), the smallest admissible radius."""
    return num("1.04") * pw((num(t) / 100).log(), num(-2) / 3)


def lemma42_bound(inp: CountBoundInputs, *, prec: int | None = None) -> arb:
    """Upper bound for the number of zeros within R of 1 + it."""
    with precision(prec):
        _check_height(inp)
        R = inp.R_or_v
        if R < radius_floor(inp.t):
            raise PreconditionError("R >= 1.04 (log(t/100))^(-2/3) is violated")
        if R > arb(1) / 4:
            raise PreconditionError("R <= 1/4 is violated")
        log_t = inp.log_t
        tail = ((inp.A + 1).log() - R.log() + num("1.8579") * R * inp.q.log()
                + num(2) / 3 * log_t.log()) / num("1.879")
        return num("1.3478") * pw(R, num(3) / 2) * inp.B * log_t + num("0.49") + tail


def lemma43_bound(inp: CountBoundInputs, N_tv=0, *, prec: int | None = None) -> arb:
    """Upper bound for sum 1/|1+it-rho|^2 over zeros farther than v from 1 + it.

    ``N_tv`` is the number of zeros within v, which enters with weight -1/v^2.
    """
    with precision(prec):
        _check_height(inp)
        v = inp.R_or_v
        N_tv = num(N_tv)
        if v <= radius_floor(inp.t):
            raise PreconditionError("v > 1.04 (log(t/100))^(-2/3) is violated")
        if v > arb(1) / 4:
            raise PreconditionError("v <= 1/4 is violated")
        if N_tv < 0:
            raise PreconditionError("N(t, v) >= 0 is violated")
        log_t = inp.log_t
        logA1 = (inp.A + 1).log()
        out = (num("8.14467") + num("5.3912") * inp.B * (1 / v.sqrt() - 2)) * log_t
        out += -num("8.5") * logA1 + num("518.7")
        out += ((logA1 - v.log() + num(2) / 3 * log_t.log()) / num("1.879") + num("0.224")) / v**2
        out -= N_tv / v**2
        out += inp.q.log() * (num("1.978") / v + num("0.23267"))
        return out


def llprime_line_bound(u, q, *, prec: int | None = None) -> arb:
    """Bound for |L'/L(-1/2 + iu)|: 8.21 + log q + log(1 + u^2/4)/2."""
    with precision(prec):
        q = num(q)
        if q < 3:
            raise PreconditionError("q >= 3 is violated")
        u = num(u)
        return num("8.21") + q.log() + (1 + u**2 / 4).log() / 2


def llprime_constant_stack(*, prec: int | None = None) -> dict[str, arb]:
    """The pieces summed into the constant 8.21.

    -1 from |log(q/pi)| <= log q - 1, the Dirichlet-series bound at 3/2,
    2 and 4/3 from the two reciprocal square roots at u = 0, 11/3 and
    log(65/16)/2 from the digamma bound.
    """
    with precision(prec):
        neg_log_deriv = -zeta_log_derivative(num(3) / 2)
        used = num("1.505236")
        total = -1 + used + 2 + num(4) / 3 + num(11) / 3 + (num(65) / 16).log() / 2
        return {"-zeta'/zeta(3/2)": neg_log_deriv, "used": used, "total": total,
                "printed": num("8.21")}


def U_kernel(y, *, prec: int | None = None) -> arb:
    """pi y / sinh(pi y / 2), the Fourier transform of sech^2; even, in (0, 2]."""
    with precision(prec):
        y = num(y)
        x = abs(y) * arb.pi() / 2
        if x.is_zero():
            return arb(2)
        if x.contains(0):
            # x/sinh(x) decreases in |x|
            m = x.upper()
            return (2 * m / m.sinh()).union(arb(2))
        return 2 * x / x.sinh()
