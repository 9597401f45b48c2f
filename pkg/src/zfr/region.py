"""Zero-free-region widths 1 - sigma for Dirichlet L-functions.

Every region here has the shape

    1 - sigma >= 1 / (a log q + b loglog q + c (log t)^(2/3) (loglog t)^(1/3)),

except the classical fallback ``1 / (9.64590880 log max{q, qt, 10})``.
Heights may be passed as ``"e^N"`` so that huge t never has to be
exponentiated; internally everything runs on log t.
"""

from __future__ import annotations

from dataclasses import dataclass

from flint import arb, arb_series

from .mp_core import (
    DomainError,
    PreconditionError,
    find_root,
    maximize_1d,
    num,
    precision,
    pw,
)

MCCURLEY_CONST = "9.64590880"
B_MAX = "4.45"
DEFAULT_AB = ("76.2", "4.45")


def log_height(t) -> arb:
    """log t, reading ``"e^N"`` as N without forming e^N."""
    if isinstance(t, str) and t.strip().startswith("e^"):
        return num(t.strip()[2:])
    t = num(t)
    if not t > 0:
        raise DomainError("height must be positive")
    return t.log()


def vk_term(log_t: arb) -> arb:
    """(log t)^(2/3) (loglog t)^(1/3)."""
    return pw(log_t, num(2) / 3) * pw(log_t.log(), num(1) / 3)


@dataclass(frozen=True)
class HypothesisAB:
    """Constants in |zeta(s, u) - u^-s| <= A t^(B (1-sigma)^(3/2)) (log t)^(2/3).

    Only ``0 < B <= 4.45`` feeds the region results; larger B is kept
    representable so a conversion can report it, see ``admissible``.
    """

    A: arb
    B: arb

    def __post_init__(self):
        if not self.A > 0 or not self.B > 0:
            raise DomainError("need A > 0 and B > 0")

    @classmethod
    def of(cls, A=DEFAULT_AB[0], B=DEFAULT_AB[1]) -> "HypothesisAB":
        return cls(num(A), num(B))

    @property
    def admissible(self) -> bool:
        # a ball sitting on 4.45 itself counts as admissible
        return not self.B > num(B_MAX)

    def require(self) -> None:
        if not self.admissible:
            raise PreconditionError("B <= 4.45 is violated")


@dataclass(frozen=True)
class RegionProfile:
    """A named region of the linear shape above.

    ``log_t_min`` is None when the validity threshold is ineffective;
    such a profile can be evaluated but never wins ``best_width``.
    """

    name: str
    coeff_logq: arb
    coeff_loglogq: arb
    coeff_vk: arb
    log_t_min: arb | None
    q_min: arb

    @classmethod
    def of(cls, name, a, b, c, log_t_min, q_min=3) -> "RegionProfile":
        lt = None if log_t_min is None else num(log_t_min)
        return cls(name, num(a), num(b), num(c), lt, num(q_min))

    @property
    def effective(self) -> bool:
        return self.log_t_min is not None


PROFILES: dict[str, RegionProfile] = {
    p.name: p
    for p in (
        RegionProfile.of("smallt", "10.5", 0, "61.5", arb(10).log()),
        RegionProfile.of("larget", "10.1", 0, "49.13", None),
        RegionProfile.of("slightlystronger", "10.3", "9.791", "61.306", arb(10).log()),
        RegionProfile.of("weak86", 18, 0, 86, arb(23).exp().exp()),
        RegionProfile.of("weak104", 18, 0, 104, arb(3).log()),
    )
}


def _check_q(q) -> arb:
    q = num(q)
    if q < 3:
        raise DomainError("q >= 3 is required")
    return q


def width(profile: RegionProfile, q, t=None, *, log_t=None, prec: int | None = None) -> arb:
    """1 - sigma at the edge of ``profile`` for modulus q and height t."""
    with precision(prec):
        if profile.name == "mccurley":
            return width_mccurley(q, t, log_t=log_t)
        q = _check_q(q)
        L = num(log_t) if log_t is not None else log_height(t)
        if q < profile.q_min:
            raise DomainError(f"{profile.name}: q below {profile.q_min}")
        if profile.log_t_min is not None and L < profile.log_t_min:
            raise DomainError(f"{profile.name}: t below the validity range")
        if profile.log_t_min is None and not L > 1:
            raise DomainError(f"{profile.name}: needs log t > 1")
        lq = q.log()
        den = profile.coeff_logq * lq + profile.coeff_vk * vk_term(L)
        if not profile.coeff_loglogq.is_zero():
            den += profile.coeff_loglogq * lq.log()
        return 1 / den


def _rig_max(*xs: arb) -> arb:
    best = xs[0]
    for x in xs[1:]:
        if x > best:
            best = x
        elif not x < best:
            best = best.union(x)
    return best


def width_mccurley(q, t=0, *, log_t=None, prec: int | None = None) -> arb:
    """1 / (9.64590880 log max{q, qt, 10}); valid for every t >= 0."""
    with precision(prec):
        q = _check_q(q)
        lq = q.log()
        if isinstance(t, str) and not t.strip().startswith("e^"):
            t = num(t)
        if log_t is None and (t is None or (not isinstance(t, str) and num(t).is_zero())):
            return 1 / (num(MCCURLEY_CONST) * _rig_max(lq, arb(10).log()))
        L = num(log_t) if log_t is not None else log_height(t)
        return 1 / (num(MCCURLEY_CONST) * _rig_max(lq, lq + L, arb(10).log()))


MCCURLEY = RegionProfile.of("mccurley", MCCURLEY_CONST, 0, 0, 0)


# --------------------------------------------------------------------------
# the general region: X(t), M1 and its coefficients


def _X_parts(h: HypothesisAB):
    K = num("1.16") * (h.A + 1).log() + num("0.845593") + num("0.23531") * h.B.log()
    k = num("1.694") / pw(h.B, num(4) / 3) - num("2.087") / pw(h.B, num(1) / 3)
    return K, k


def X_of_t(t, h: HypothesisAB | None = None, *, log_t=None, prec: int | None = None) -> arb:
    """X(t) with tau = 4t + 1."""
    with precision(prec):
        h = h or HypothesisAB.of()
        L = num(log_t) if log_t is not None else log_height(t)
        # log(4t + 1) = L + log 4 + log1p(e^-L / 4)
        log_tau = L + arb(4).log() + ((-L).exp() / 4).log1p()
        K, k = _X_parts(h)
        s = log_tau.log()
        return K + num("0.23531") * (-s.log()) + k * pw(s / log_tau, num(1) / 3)


@dataclass(frozen=True)
class SupX:
    value: arb      # encloses sup_{t >= T0} X(t)
    argmax: arb     # log tau at the interior critical point
    log_tau_lo: arb


def _X_s(h: HypothesisAB):
    K, k = _X_parts(h)

    def f(s):
        # s = log log tau, so (loglog tau / log tau)^(1/3) = exp((log s - s)/3)
        return K - num("0.23531") * s.log() + k * ((s.log() - s) / 3).exp()

    return f


def sup_X(T0="e^1944", h: HypothesisAB | None = None, *, s_cap=40, prec: int | None = None) -> SupX:
    """Certified sup of X(t) over t >= T0.

    Runs in s = loglog tau. Branch and bound covers [s0, s_cap]; beyond
    s_cap the sup is at most K - 0.23531 log s_cap + max(k, 0) (...)^(1/3).
    The interior critical point is bracketed by a sign change of X'.
    """
    with precision(prec):
        h = h or HypothesisAB.of()
        L0 = log_height(T0)
        log_tau0 = L0 + arb(4).log() + ((-L0).exp() / 4).log1p()
        s0 = log_tau0.log().lower()
        cap = num(s_cap)
        f = _X_s(h)
        K, k = _X_parts(h)
        if s0 >= cap:
            raise DomainError("T0 beyond the covered range; raise s_cap")
        inner = maximize_1d(f, s0, cap, tol=arb(2) ** -60).value
        tail = K - num("0.23531") * cap.log()
        if k > 0:
            tail += k * ((cap.log() - cap) / 3).exp()
        value = inner if tail < inner.lower() else inner.union(tail)

        def df(s):
            return f(arb_series([s, 1]))[1]

        try:
            crit = find_root(df, s0, cap, tol=arb(2) ** -40)
            argmax = crit.exp()
        except Exception:  # no interior critical point in range
            argmax = arb("nan")
        return SupX(value, argmax, log_tau0)


def M1_of(T0="e^1944", h: HypothesisAB | None = None, supX=None, *, prec: int | None = None) -> arb:
    """min(0.055071, (0.16521 - 0.184833/log T0) / (2.9997 + supX/loglog T0))."""
    with precision(prec):
        h = h or HypothesisAB.of()
        h.require()
        L = log_height(T0)
        if L < 1938:
            raise PreconditionError("T0 >= e^1938 is violated")
        if L / L.log() < num(1139) / h.B:
            raise PreconditionError("log T0 / loglog T0 >= 1139/B is violated")
        if supX is None:
            supX = sup_X(T0, h).value
        supX = num(supX)
        ratio = (num("0.16521") - num("0.184833") / L) / (num("2.9997") + supX / L.log())
        cap = num("0.055071")
        if cap < ratio:
            return cap
        if ratio < cap:
            return ratio
        return ratio.union(cap)


def q_coefficient(T0="e^1944") -> arb:
    """10.082 + 1.607 / loglog T0."""
    L = log_height(T0)
    return num("10.082") + num("1.607") / L.log()


def full_chain_profile(T0="e^1944", h: HypothesisAB | None = None, supX=None,
                      *, prec: int | None = None) -> RegionProfile:
    """The general region with its T0-dependent coefficients."""
    with precision(prec):
        h = h or HypothesisAB.of()
        M1 = M1_of(T0, h, supX)
        return RegionProfile("full_chain", q_coefficient(T0), num("9.791"),
                             pw(h.B, num(2) / 3) / M1, log_height(T0), num(3))


def ab_from_cd(C, D, t="e^230.26", *, prec: int | None = None) -> HypothesisAB:
    """(A, B) from an exponential-sum bound S(N, t) <= C N^(1 - 1/(D lambda^2)).

    B = (2/9) sqrt(3D), A = (C + 1 + 1e-80)/(log t)^(2/3) + 1.569 C D^(1/3).
    The result may have B > 4.45; check ``admissible`` before use.
    """
    with precision(prec):
        C, D = num(C), num(D)
        if C < 0 or not D > 0:
            raise DomainError("need C >= 0 and D > 0")
        L = log_height(t)
        if L < 100 * arb(10).log():
            raise PreconditionError("t >= 10^100 is violated")
        B = num(2) / 9 * (3 * D).sqrt()
        A = (C + 1 + num("1e-80")) / pw(L, num(2) / 3) + num("1.569") * C * pw(D, num(1) / 3)
        return HypothesisAB(A, B)


def d_for_b(B) -> arb:
    """Inverse of B = (2/9) sqrt(3D)."""
    B = num(B)
    return (9 * B / 2) ** 2 / 3


# --------------------------------------------------------------------------
# the preliminary region with constant c(A, B, T0)

STACK_STATED = ("2.89", "14.44", "3.59")   # constants as announced
STACK_DERIVED = ("2.89", "14.435", "3.495")   # constants where the derivation ends


def appendixB_c(h: HypothesisAB | None = None, T0="e^11450", *, stack=STACK_STATED,
                prec: int | None = None) -> arb:
    """c = 31.76 + max(sup_{t >= T0} (-a log3 t + b log(A+1) + d)/loglog t, 0).

    With u = loglog t the ratio is (K - a log u)/u; it decreases while
    log u < 1 + K/a and is negative once log u > K/a, so the sup over
    u >= u0 is max(value at u0, 0).
    """
    with precision(prec):
        h = h or HypothesisAB.of()
        h.require()
        L = log_height(T0)
        if L < 10650:
            raise PreconditionError("T0 >= e^10650 is violated")
        u0 = L.log()
        if L / u0 < num("5110.6") / h.B:
            raise PreconditionError("log T0 / loglog T0 >= 5110.6/B is violated")
        if u0 < num(183) / h.B**2:
            raise PreconditionError("loglog T0 >= 183/B^2 is violated")
        a, b, d = (num(x) for x in stack)
        K = b * (h.A + 1).log() + d
        g0 = (K - a * u0.log()) / u0
        extra = g0 if g0 > 0 else (arb(0) if g0 < 0 else g0.union(0))
        return num("31.76") + extra


def appendixB_numerator(h: HypothesisAB | None = None, T0="e^11450", *, stack=STACK_STATED) -> arb:
    """-a log3 T0 + b log(A+1) + d."""
    h = h or HypothesisAB.of()
    a, b, d = (num(x) for x in stack)
    return -a * log_height(T0).log().log() + b * (h.A + 1).log() + d


# --------------------------------------------------------------------------
# best region


def _full_chain_default() -> RegionProfile:
    return full_chain_profile("e^1944")


def profiles(include_full_chain: bool = True) -> list[RegionProfile]:
    out = list(PROFILES.values())
    if include_full_chain:
        out.append(_full_chain_default())
    return out


def candidate_widths(q, t=None, *, log_t=None, prec: int | None = None):
    """(profile, width or None, note) for McCurley and every named region."""
    with precision(prec):
        L = num(log_t) if log_t is not None else (None if t is None else _maybe_log(t))
        rows = [(MCCURLEY, width_mccurley(q, t, log_t=L if L is not None else None), "valid for t >= 0")]
        for p in profiles():
            if L is None or (p.log_t_min is not None and L < p.log_t_min):
                rows.append((p, None, "t below validity range"))
                continue
            if not p.effective:
                if not L > 1:
                    rows.append((p, None, "formula needs log t > 1"))
                    continue
                rows.append((p, width(p, q, log_t=L), "threshold Y not effective; not used"))
                continue
            rows.append((p, width(p, q, log_t=L), "valid"))
        return rows


def _maybe_log(t):
    if isinstance(t, str) and t.strip().startswith("e^"):
        return log_height(t)
    t = num(t)
    if t.is_zero():
        return None
    return t.log()


def best_width(q, t=None, *, log_t=None, prec: int | None = None) -> tuple[arb, RegionProfile]:
    """Largest width among regions valid at (q, t) and the profile giving it.

    Validity is strict; a region whose threshold is above t or is not
    effective never competes. Ties between overlapping enclosures go to
    the larger midpoint.
    """
    rows = candidate_widths(q, t, log_t=log_t, prec=prec)
    usable = [(w, p) for p, w, note in rows if w is not None and (p.effective or p.name == "mccurley")]
    w, p = max(usable, key=lambda r: r[0].mid())
    return w, p
