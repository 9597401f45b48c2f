"""Interval substrate for the rest of the package.

Every certified value is a flint ``arb`` ball (or ``acb`` for complex
values): a midpoint-radius enclosure whose arithmetic is rounded outward
by Arb itself. This module adds what Arb does not give directly:

* precision scoping (``precision``) with a 128-bit floor,
* exact endpoint extraction and round-trippable decimal printing,
* Hurwitz / Riemann zeta by Euler-Maclaurin with an explicit remainder,
* root isolation, Taylor-model quadrature and branch-and-bound maxima.

Functions that accept "series-generic" callables expect ``f`` to work on
``arb`` balls and on ``arb_series`` Taylor models alike, which holds for
anything written with ``+ - * /`` and the ``exp/log/cos/sin/...`` methods.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from typing import Callable, Iterator

from flint import acb, acb_series, arb, arb_series, ctx, fmpq

DEFAULT_PREC = 256
MIN_PREC = 128
SERIES_CAP = 64

XInterval = arb


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PreconditionError(DomainError):
    """A stated hypothesis of a bound is certainly violated."""


class BracketError(ValueError):
    """Root search bracket without a certified sign change."""


class UnsupportedRange(ValueError):
    """Argument outside the range this implementation supports."""


class ConvergenceError(RuntimeError):
    """An adaptive routine ran out of budget before producing a finite enclosure."""


# --------------------------------------------------------------------------
# precision and conversions


@contextmanager
def precision(bits: int | None = None) -> Iterator[int]:
    """Run a block at ``bits`` of working precision.

    ``None`` keeps the ambient precision when it is already at least
    ``MIN_PREC`` and otherwise uses ``DEFAULT_PREC``, so library calls
    nested inside a 1024-bit block stay at 1024 bits.
    """
    if bits is None:
        bits = ctx.prec if ctx.prec >= MIN_PREC else DEFAULT_PREC
    if bits < MIN_PREC:
        raise ValueError(f"precision {bits} below the {MIN_PREC}-bit floor")
    old_prec, old_cap = ctx.prec, ctx.cap
    ctx.prec, ctx.cap = bits, max(old_cap, SERIES_CAP)
    try:
        yield bits
    finally:
        ctx.prec, ctx.cap = old_prec, old_cap


def num(x) -> arb:
    """Ball enclosing ``x``.

    Decimal strings and Fractions are converted through exact rationals,
    so ``num("0.225")`` is a tight ball around 9/40 rather than around
    the nearest double. ``"e^N"`` is read as exp(N).
    """
    if isinstance(x, arb):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return arb(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite value {x}")
        return arb(x)
    if isinstance(x, str):
        x = x.strip()
        if x.startswith("e^"):
            return num(x[2:]).exp()
        x = Fraction(x)
    if isinstance(x, Fraction):
        return arb(fmpq(x.numerator, x.denominator))
    if isinstance(x, Decimal):
        return num(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an interval")


def _dyadic(x: arb) -> Fraction:
    m, e = x.man_exp()
    m, e = int(m), int(e)
    return Fraction(m * 2**e) if e >= 0 else Fraction(m, 2**-e)


def endpoints(x: arb) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints ``(lo, hi)`` of a finite ball."""
    if not x.is_finite():
        raise DomainError("interval is not finite")
    mid, rad = _dyadic(x.mid()), _dyadic(x.rad())
    return mid - rad, mid + rad


def interval(lo, hi) -> arb:
    """Ball containing the closed interval ``[lo, hi]``."""
    a, b = num(lo), num(hi)
    if b < a:
        raise DomainError("interval with lo > hi")
    return a.union(b)


def hull(*xs: arb) -> arb:
    out = xs[0]
    for x in xs[1:]:
        out = out.union(x)
    return out


def lower(x: arb) -> arb:
    return x.lower()


def upper(x: arb) -> arb:
    return x.upper()


def width(x: arb) -> arb:
    return 2 * x.rad()


def sign(x: arb) -> int:
    """+1 or -1 when the sign is certain, 0 otherwise."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def finite(x: arb, what: str = "value") -> arb:
    if not x.is_finite():
        raise DomainError(f"{what} is not finite")
    return x


def decimal_str(value: Fraction, digits: int, direction: str) -> str:
    """``value`` rounded to ``digits`` significant digits toward ``direction``."""
    rounding = ROUND_FLOOR if direction == "down" else ROUND_CEILING
    c = Context(prec=digits, rounding=rounding)
    d = c.divide(Decimal(value.numerator), Decimal(value.denominator))
    text = format(d.normalize(c), "f") if -30 < d.adjusted() < 30 else str(d.normalize(c))
    return text


def fmt_interval(x: arb, digits: int = 30) -> str:
    """``[lo,hi]`` with each endpoint rounded outward."""
    lo, hi = endpoints(x)
    return f"[{decimal_str(lo, digits, 'down')},{decimal_str(hi, digits, 'up')}]"


def fmt_bounds(lo: Fraction, hi: Fraction, digits: int = 30) -> str:
    return f"[{decimal_str(lo, digits, 'down')},{decimal_str(hi, digits, 'up')}]"


def parse_bounds(text: str) -> tuple[Fraction, Fraction]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not an interval: {text!r}")
    lo, hi = text[1:-1].split(",")
    lo_f, hi_f = Fraction(lo), Fraction(hi)
    if lo_f > hi_f:
        raise ValueError(f"interval with lo > hi: {text!r}")
    return lo_f, hi_f


def parse_interval(text: str) -> arb:
    return interval(*parse_bounds(text))


def pw(x, p):
    """x**p for positive x, valid on balls and Taylor models."""
    return (x.log() * p).exp()


def cbrt(x):
    return pw(x, num(1) / 3)


# --------------------------------------------------------------------------
# zeta


def _rising(s, k: int):
    out = s * 0 + 1
    for j in range(k):
        out = out * (s + j)
    return out


def _em_choose(abs_s: float, sigma: float, a: float, tol_log2: float) -> tuple[int, int]:
    """Cutoff N and order M making the Euler-Maclaurin remainder tiny.

    Works in floating point only; the chosen pair is then used with a
    rigorous remainder bound, so a bad choice costs accuracy, not validity.
    """
    target = -tol_log2 * math.log(2)
    best = None
    for N in [int(abs_s / 3) + 10 * 2**i for i in range(12)]:
        x = N + a
        for M in range(1, 400):
            # log of |s|_(2M) |B_2M| / (2M)! * x^(1-sigma-2M) / (sigma+2M-1)
            lp = sum(math.log(abs_s + j) for j in range(2 * M))
            # |B_2M| / (2M)! < 2.1 (2 pi)^(-2M)
            lb = math.log(2.1) - 2 * M * math.log(2 * math.pi)
            val = lp + lb + (1 - sigma - 2 * M) * math.log(x) - math.log(sigma + 2 * M - 1)
            if val < target:
                cost = N + 4 * M
                if best is None or cost < best[0]:
                    best = (cost, N, M)
                break
    if best is None:
        raise UnsupportedRange("no Euler-Maclaurin parameters reach the target accuracy")
    return best[1], best[2]


def _em_partial(s, a, N: int, M: int):
    """Euler-Maclaurin approximation of zeta(s, a) without the remainder."""
    total = s * 0
    for n in range(N):
        total += ((-s) * (a + n).log()).exp()
    x = a + N
    lx = x.log()
    xs = ((-s) * lx).exp()
    total += xs * x / (s - 1) + xs / 2
    poch = s * 0 + 1
    fact = 1
    for k in range(1, M + 1):
        # (s)_{2k-1} x^{-s-2k+1} B_2k / (2k)!
        poch = poch * (s + (2 * k - 3)) * (s + (2 * k - 2)) if k > 1 else s * 0 + s
        fact *= (2 * k - 1) * (2 * k)
        b = arb(fmpq.bernoulli(2 * k)) / fact
        total += b * poch * xs / x ** (2 * k - 1)
    return total


def _em_remainder(sigma_lo: arb, abs_s_hi: arb, a: arb, N: int, M: int) -> arb:
    """Upper bound for |R| valid for every s with Re s >= sigma_lo, |s| <= abs_s_hi."""
    if not sigma_lo + 2 * M - 1 > 0:
        raise DomainError("Euler-Maclaurin order too low for this sigma")
    poch = _rising(abs_s_hi, 2 * M)
    b = abs(arb(fmpq.bernoulli(2 * M))) / arb(2 * M).fac()
    x = a + N
    return poch * b * ((1 - sigma_lo - 2 * M) * x.log()).exp() / (sigma_lo + 2 * M - 1)


def _hurwitz(s, a: arb, derivs: int = 0):
    """zeta(s, a) for arb/acb ``s`` (and ``derivs`` s-derivatives via Cauchy bounds)."""
    is_complex = isinstance(s, acb)
    sr = s.real if is_complex else s
    si = s.imag if is_complex else arb(0)
    abs_s = float(abs(s).upper())
    sigma = float(sr.lower())
    rho = 0.25 if derivs else 0.0
    N, M = _em_choose(abs_s + rho, sigma - rho, float(a.lower()), ctx.prec + 16)
    if derivs:
        if is_complex:
            raise UnsupportedRange("derivatives are only provided for real s")
        ser = arb_series([s, 1], prec=derivs + 1)
        part = _em_partial(ser, a, N, M)
        bound = _em_remainder(sr - rho, abs(s) + rho, a, N, M)
        coeffs = part.coeffs() + [arb(0)] * (derivs + 1)
        out = []
        fact = 1
        for k in range(derivs + 1):
            if k:
                fact *= k
            # Cauchy: |R^(k)(s)/k!| <= max|R| / rho^k on the circle |z - s| = rho
            err = bound / arb(rho) ** k
            out.append((coeffs[k] + arb(0, err.upper())) * fact)
        return out
    part = _em_partial(s, a, N, M)
    err = _em_remainder(sr, abs(s) if is_complex else abs(sr) + abs(si), a, N, M)
    if is_complex:
        return part + acb(arb(0, err.upper()), arb(0, err.upper()))
    return part + arb(0, err.upper())


def zeta_real(sigma, *, prec: int | None = None) -> arb:
    """Enclosure of zeta(sigma) for real sigma > 1."""
    with precision(prec):
        s = num(sigma)
        if not s > 1:
            raise DomainError("zeta_real needs sigma > 1")
        return _hurwitz(s, arb(1))


def zeta_log_derivative(sigma, *, prec: int | None = None) -> arb:
    """Enclosure of zeta'(sigma)/zeta(sigma) for real sigma > 1.25."""
    with precision(prec):
        s = num(sigma)
        if not s > arb("1.25"):
            raise DomainError("zeta_log_derivative needs sigma > 1.25")
        z, dz = _hurwitz(s, arb(1), derivs=1)
        return dz / z


def hurwitz_zeta(sigma, t, u, *, prec: int | None = None) -> acb:
    """Enclosure of zeta(sigma + i t, u) for 1/2 <= sigma <= 2, t = 0 or 3 <= t <= 1e7, 0 < u <= 1.

    The range is the spot-check range of the growth hypothesis, not a
    limitation of the method; larger t just needs proportionally more terms.
    """
    with precision(prec):
        sig, tt, uu = num(sigma), num(t), num(u)
        if not (sig >= arb("0.5") and sig <= 2):
            raise UnsupportedRange("sigma must lie in [1/2, 2]")
        if not (uu > 0 and uu <= 1):
            raise DomainError("u must lie in (0, 1]")
        t_is_zero = tt.is_exact() and tt == 0
        if not t_is_zero and not (tt >= 3 and tt <= arb(10) ** 7):
            raise UnsupportedRange("t must be 0 or lie in [3, 1e7]")
        if t_is_zero:
            if not sig > 1:
                raise DomainError("pole: sigma must exceed 1 on the real axis")
            return acb(_hurwitz(sig, uu))
        return _hurwitz(acb(sig, tt), uu)


# --------------------------------------------------------------------------
# roots, quadrature, maxima


def find_root(
    f: Callable[[arb], arb], a, b, *, tol=None, max_iter: int = 2000, prec: int | None = None
) -> arb:
    """Ball containing a root of ``f`` on ``[a, b]``.

    Needs a certified sign change at the endpoints; the bracket is then
    bisected while the midpoint sign stays certified. For monotone ``f``
    the enclosed root is the unique one.
    """
    with precision(prec) as bits:
        lo, hi = num(a).mid(), num(b).mid()
        if hi < lo:
            raise DomainError("find_root needs a <= b")
        s_lo, s_hi = sign(f(lo)), sign(f(hi))
        if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            raise BracketError("no certified sign change on the bracket")
        tol = num(tol) if tol is not None else (hi - lo) * arb(2) ** (8 - bits)
        for _ in range(max_iter):
            if hi - lo < tol:
                break
            mid = ((lo + hi) / 2).mid()
            s_mid = sign(f(mid))
            if s_mid == s_lo:
                lo = mid
            elif s_mid == s_hi:
                hi = mid
            else:
                # the midpoint value straddles zero: tighten from both sides
                q = ((hi - lo) / 8).mid()
                l2, h2 = (mid - q).mid(), (mid + q).mid()
                if sign(f(l2)) == s_lo and sign(f(h2)) == s_hi:
                    lo, hi = l2, h2
                    continue
                break
        return interval(lo, hi)


def _taylor_coeffs(f, center: arb, order: int) -> list:
    ser = f(arb_series([center, 1], prec=order + 1))
    if isinstance(ser, (arb, acb)):
        return [ser] + [arb(0)] * order
    coeffs = ser.coeffs()
    return coeffs + [arb(0)] * (order + 1 - len(coeffs))


def _radius(v) -> arb:
    if isinstance(v, acb):
        return v.real.rad().union(v.imag.rad()).upper()
    return v.rad()


def _panel(f, lo: arb, hi: arb, order: int):
    """Enclosure of the integral of ``f`` over the exact panel ``[lo, hi]``."""
    m = ((lo + hi) / 2).mid()
    h = hi - m
    box = interval(lo, hi)
    try:
        cs = _taylor_coeffs(f, m, order)
        rem = _taylor_coeffs(f, box, order + 1)[order + 1]
    except (ValueError, ZeroDivisionError):
        # not expandable over this panel (e.g. a denominator ball hits 0)
        return arb("nan")
    total = cs[0] * 0
    for k in range(0, order + 1, 2):
        total += 2 * cs[k] * h ** (k + 1) / (k + 1)
    err = 2 * abs(rem).upper() * h ** (order + 2) / (order + 2)
    err = arb(0, err.upper())
    if isinstance(total, acb):
        return total + acb(err, err)
    return total + err


def integrate(
    f,
    a,
    b,
    *,
    tol=None,
    order: int = 20,
    max_panels: int = 4096,
    prec: int | None = None,
):
    """Enclosure of the integral of ``f`` from ``a`` to ``b``.

    ``f`` must be series-generic (see the module docstring). On each panel
    a degree-``order`` Taylor model at the midpoint is integrated exactly
    and the Lagrange remainder is bounded by evaluating the next Taylor
    coefficient over the whole panel; panels are bisected until their
    error budget is met. Ball-valued limits add ``|f| * radius`` at each end.
    """
    with precision(prec) as bits:
        a, b = num(a), num(b)
        if b < a:
            raise DomainError("integrate needs a <= b")
        lo, hi = a.mid(), b.mid()
        if hi < lo:
            lo, hi = hi, lo
        length = hi - lo
        tol = num(tol) if tol is not None else arb(2) ** (-(bits // 3))
        stack = [(lo, hi)]
        pieces = []
        panels = 0
        while stack:
            p, q = stack.pop()
            panels += 1
            v = _panel(f, p, q, order)
            budget = tol * (q - p) / length if length > 0 else tol
            good = v.is_finite() and _radius(v) <= budget
            if good or panels + len(stack) >= max_panels:
                pieces.append(v)
                continue
            m = ((p + q) / 2).mid()
            stack.append((m, q))
            stack.append((p, m))
        total = sum(pieces[1:], pieces[0])
        if not total.is_finite():
            raise ConvergenceError(f"quadrature needs more than {max_panels} panels")
        for end, sgn in ((a, -1), (b, 1)):
            if end.rad() != 0:
                fv = f(end)
                spill = (abs(fv) * end.rad()).upper()
                total += acb(arb(0, spill), arb(0, spill)) if isinstance(total, acb) else arb(0, spill)
        return total


@dataclass(frozen=True)
class MaxResult:
    value: arb  # encloses sup f
    where: arb  # hull of the boxes that may contain a maximizer
    boxes: int


def maximize_1d(
    f,
    a,
    b,
    *,
    tol=None,
    max_boxes: int = 20000,
    series: bool = True,
    prec: int | None = None,
) -> MaxResult:
    """Enclosure of ``sup f`` on ``[a, b]`` by branch and bound.

    With ``series=True`` each box is bounded by the mean-value form
    ``f(m) + f'(box) (box - m)``, which needs ``f`` to be series-generic;
    otherwise the plain interval extension ``f(box)`` is used.
    """
    with precision(prec) as bits:
        lo, hi = num(a).mid(), num(b).mid()
        if hi < lo:
            raise DomainError("maximize_1d needs a <= b")
        tol = num(tol) if tol is not None else arb(2) ** (16 - bits // 2)

        def bound(p, q):
            box = interval(p, q)
            if not series:
                return f(box).upper()
            m = ((p + q) / 2).mid()
            fm = f(m)
            d = _taylor_coeffs(f, box, 1)[1]
            mv = fm + d * (box - m)
            direct = f(box)
            return min(mv.upper(), direct.upper()) if direct.is_finite() else mv.upper()

        best_lo = max(f(lo).lower(), f(hi).lower())
        work = [(bound(lo, hi), lo, hi)]
        done = []
        evals = 0
        while work:
            work.sort(key=lambda t: float(t[0].mid()))
            ub, p, q = work.pop()
            if ub < best_lo:
                continue
            if ub - best_lo < tol or evals > max_boxes:
                done.append((ub, p, q))
                continue
            m = ((p + q) / 2).mid()
            fm = f(m).lower()
            if fm > best_lo:
                best_lo = fm
            evals += 1
            for r, s in ((p, m), (m, q)):
                bnd = bound(r, s)
                if not bnd < best_lo:
                    work.append((bnd, r, s))
        done = [d for d in done if not d[0] < best_lo]
        top = best_lo
        for d in done:
            if d[0] > top:
                top = d[0]
        where = hull(*(interval(p, q) for _, p, q in done)) if done else interval(lo, hi)
        return MaxResult(interval(best_lo, top) if top >= best_lo else best_lo, where, evals)
