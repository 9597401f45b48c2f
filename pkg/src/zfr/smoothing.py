"""Compactly supported weight built from a truncated cosine.

With t the angle solving ``sin^2 t = (b1/b0)(1 - t cot t)`` on (0, pi/2)
and ``a = tan t``, the kernel is

    g(u) = (cos(a u) - cos t) sec^2 t     for |u| <= t/a, else 0,

``w = g * g`` is supported on |u| <= 2t/a, and ``W(z)`` is its one-sided
Laplace transform. Both ``w`` and ``W`` have elementary closed forms
(see ``_w_formula`` and ``_W_moments``); the quadrature versions exist to
cross-check them.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from flint import acb, acb_series, arb, arb_series, ctx

from .certificate import Certificate, Status
from .mp_core import (
    DomainError,
    find_root,
    integrate,
    interval,
    maximize_1d,
    num,
    precision,
)
from .trig_poly import CosinePolynomial, coefficients_from

DEFAULT_PAIR = ("0.225", "0.9")


@dataclass(frozen=True)
class KernelSystem:
    poly: CosinePolynomial
    theta: arb
    tan_theta: arb
    support_g: arb  # theta / tan(theta)
    support_w: arb  # 2 theta / tan(theta)
    w0: arb
    W0: arb
    Wm1: arb
    R: int = 197
    c0: arb | None = None
    c1: arb | None = None
    c2: arb | None = None
    c3: arb | None = None
    H_R: arb | None = None
    c4: arb | None = None
    c5: arb | None = None
    sup_exp_w: arb | None = None
    prec: int = 0


@dataclass(frozen=True)
class WeightedTest:
    """The rescaled weight f(u) = lambda e^(lambda u) w(lambda u)."""

    lam: arb
    f0: arb  # lambda w(0)
    D: arb  # c4 lambda f(0)


# --------------------------------------------------------------------------
# the angle


def theta_equation(ratio: arb, t):
    """sin^2 t - ratio (1 - t cot t); series-generic in ``t``."""
    return t.sin() ** 2 - ratio * (1 - t * t.cos() / t.sin())


def solve_theta(ratio, *, prec: int | None = None) -> arb:
    """Root in (0, pi/2) of ``sin^2 t = ratio (1 - t cot t)``.

    A root exists exactly for 1 < ratio < 3: near 0 the equation reads
    t^2 (1 - ratio/3) ~ 0 and at pi/2 it reads 1 - ratio.
    """
    with precision(prec):
        r = num(ratio)
        if not (r > 1 and r < 3):
            raise DomainError("the angle equation has a root in (0, pi/2) only for 1 < ratio < 3")
        f = functools.partial(theta_equation, r)
        # f > 0 near 0 and f(pi/2) = 1 - ratio < 0; find a certified positive start
        lo = arb(1)
        while not f(lo) > 0:
            lo = lo / 2
            if lo < arb(2) ** -60:
                raise DomainError("no certified sign change near 0")
        hi = arb.pi() / 2
        return find_root(f, lo, hi.lower())


# --------------------------------------------------------------------------
# kernel pieces


def _params(ks: KernelSystem):
    t, a = ks.theta, ks.tan_theta
    C = t.cos()
    return t, a, C, 1 / C**2, ks.support_g, ks.support_w


def g_eval(ks: KernelSystem, u) -> arb:
    """g(u); zero outside |u| <= theta/tan(theta)."""
    u = abs(num(u))
    t, a, C, k, s, _ = _params(ks)
    if u > s:
        return arb(0)
    val = ((u * a).cos() - C) * k
    if u <= s:
        return val
    return val.union(arb(0))


def _g_formula(ks: KernelSystem, u):
    t, a, C, k, _, _ = _params(ks)
    return ((u * a).cos() - C) * k


def _w_formula(ks: KernelSystem, u):
    """Closed form of w on 0 <= u <= 2 theta/tan(theta); series-generic."""
    t, a, C, k, _, L = _params(ks)
    ell = L - u
    S = t.sin()
    return k**2 * (
        ell * (a * u).cos() / 2
        + (a * ell).sin() / (2 * a)
        - (2 * C / a) * (S - (a * u - t).sin())
        + C**2 * ell
    )


def w_eval(ks: KernelSystem, u) -> arb:
    """w(u) = (g*g)(u) from the closed form; even, zero for |u| >= 2 theta/tan(theta)."""
    u = abs(num(u))
    L = ks.support_w
    if u >= L:
        return arb(0)
    val = _w_formula(ks, u)
    if u < L:
        return val
    # the ball straddles the support edge, where w is continuous and tends to 0
    return val.union(arb(0))


def w_conv(ks: KernelSystem, u, *, tol=None) -> arb:
    """w(u) by rigorous quadrature of the convolution integral."""
    u = abs(num(u))
    s = ks.support_g
    if u >= 2 * s:
        return arb(0)
    return integrate(lambda x: _g_formula(ks, x) * _g_formula(ks, u - x), u - s, s, tol=tol)


def _phi(mmax: int, x: acb) -> list[acb]:
    """phi_m(x) = int_0^1 v^m e^(x v) dv for m = 0..mmax."""
    ax = float(abs(x).upper())
    if ax < 1:
        n_terms = 8
        while (n_terms * math.log2(max(ax, 1e-300)) - math.lgamma(n_terms + 1) / math.log(2)
               > -ctx.prec - 20) and n_terms < 5000:
            n_terms += 8
        out = []
        for m in range(mmax + 1):
            total = acb(0)
            term = acb(1)  # x^n / n!
            for n in range(n_terms):
                total += term / (n + m + 1)
                term = term * x / (n + 1)
            # tail <= |x|^N / N! * 1 / (1 - |x|/(N+1))
            tail = abs(term).upper() * 2
            out.append(total + acb(arb(0, tail), arb(0, tail)))
        return out
    ex = x.exp()
    out = [(ex - 1) / x]
    for m in range(1, mmax + 1):
        out.append((ex - m * out[-1]) / x)
    return out


def _W_moments(ks: KernelSystem, z, n: int = 0) -> list[acb]:
    """[int_0^L u^j e^(-z u) w(u) du for j = 0..n] via the closed form."""
    t, a, C, k, _, L = _params(ks)
    z = acb(z)
    i = acb(0, 1)
    S = t.sin()

    def I(nu):
        ph = _phi(n + 1, nu * L)
        return [L ** (m + 1) * ph[m] for m in range(n + 2)]

    Ip, Im, I0 = I(i * a - z), I(-i * a - z), I(-z)
    eiaL, eith = (i * a * L).exp(), (i * t).exp()
    out = []
    # u^j times each piece of w shifts I_m -> I_{m+j}
    for j in range(n + 1):
        total = (L * Ip[j] - Ip[j + 1] + L * Im[j] - Im[j + 1]) / 4
        total += (eiaL * Im[j] - Ip[j] / eiaL) / (4 * i * a)
        total -= (2 * C * S / a) * I0[j]
        total += (C / (i * a)) * (Ip[j] / eith - eith * Im[j])
        total += C**2 * (L * I0[j] - I0[j + 1])
        out.append(k**2 * total)
    return out


def laplace_W(ks: KernelSystem, z) -> arb | acb:
    """W(z) = int_0^inf e^(-z u) w(u) du; real result for real ``z``."""
    if isinstance(z, acb):
        return _W_moments(ks, z)[0]
    val = _W_moments(ks, acb(num(z)))[0]
    if not val.imag.contains(0):
        raise ArithmeticError("imaginary part of a real Laplace transform excludes 0")
    return val.real


def laplace_W_derivative(ks: KernelSystem, z, order: int = 1):
    """d^order/dz^order W(z) = (-1)^order int u^order e^(-z u) w(u) du."""
    val = (-1) ** order * _W_moments(ks, z if isinstance(z, acb) else acb(num(z)), order)[order]
    return val if isinstance(z, acb) else val.real


def laplace_W_quad(ks: KernelSystem, z, *, tol=None) -> arb:
    """W(z) for real ``z`` by quadrature of the closed-form w."""
    z = num(z)
    L = ks.support_w
    return integrate(lambda u: (-z * u).exp() * _w_formula(ks, u), 0, L, tol=tol)


def weighted_test(ks: KernelSystem, lam) -> WeightedTest:
    lam = num(lam)
    if not lam > 0:
        raise DomainError("lambda must be positive")
    f0 = lam * ks.w0
    c4 = ks.c4 if ks.c4 is not None else c_constants(ks).c4
    return WeightedTest(lam, f0, c4 * lam * f0)


def f_eval(ks: KernelSystem, wt: WeightedTest, u) -> arb:
    """f(u) = lambda e^(lambda u) w(lambda u) for u >= 0."""
    u = num(u)
    return wt.lam * (wt.lam * u).exp() * w_eval(ks, wt.lam * u)


def F_eval(ks: KernelSystem, wt: WeightedTest, z):
    """F(z) = W(z/lambda - 1)."""
    if isinstance(z, acb):
        return laplace_W(ks, z / wt.lam - 1)
    return laplace_W(ks, num(z) / wt.lam - 1)


# --------------------------------------------------------------------------
# constants


def c_constants(ks: KernelSystem, R: int | None = None) -> KernelSystem:
    """Fill c0..c5 and H(R) (R defaults to the system's own R)."""
    R = ks.R if R is None else R
    if R <= 0:
        raise DomainError("R must be a positive integer")
    t, a, C, _, _, _ = _params(ks)
    S = t.sin()
    c0 = 1 / (S * C**3)
    c1 = (t - S * C) * a**4
    c2 = a**3 * S**2
    c3 = (t - S * C) * a**2
    Rb = arb(R)
    H = c0 * (c2 * (Rb + 1) ** 2 / Rb**3 * ((2 * t / a).exp() + 1) + c1 / Rb**2 + c3)
    H = H / (1 - a**2 / Rb**2) ** 2
    c4 = H * (Rb + 1) ** 2 / (Rb**3 * ks.w0) + 1 + 1 / Rb
    c5 = 4 / arb.pi() ** 2 * (1 + (Rb + 1) ** 2 * H / (ks.w0 * Rb**3))
    return replace(ks, R=R, c0=c0, c1=c1, c2=c2, c3=c3, H_R=H, c4=c4, c5=c5)


def sup_exp_w(ks: KernelSystem) -> arb:
    """Enclosure of sup_{x >= 0} e^x w(x)."""
    L = ks.support_w
    res = maximize_1d(lambda x: x.exp() * _w_formula(ks, x), 0, L.lower(), tol=arb(2) ** -80)
    # sliver between the lower end of the support ball and its upper end
    edge = interval(L.lower(), L.upper())
    sliver = (edge.exp() * _w_formula(ks, edge)).union(arb(0))
    out = res.value
    if not sliver <= out.lower():
        out = out.union(sliver)
    return out


def sup_exp_w_argmax(ks: KernelSystem) -> arb:
    L = ks.support_w
    return maximize_1d(lambda x: x.exp() * _w_formula(ks, x), 0, L.lower(), tol=arb(2) ** -80).where


@functools.lru_cache(maxsize=32)
def _kernel_system(a1: Fraction, a2: Fraction, R: int, bits: int, with_sup: bool) -> KernelSystem:
    with precision(bits):
        p = coefficients_from(a1, a2)
        theta = solve_theta(p.ball("b1") / p.ball("b0"))
        a = theta.tan()
        s = theta / a
        C = theta.cos()
        sec2 = 1 / C**2
        # closed forms of w(0), W(0), W(-1)
        w0 = sec2 * (theta * a + 3 * theta / a - 3)
        W0 = 2 * sec2 * (1 - theta / a) ** 2
        Wm1 = 2 * a**2 + 3 - 3 * theta * (a + 1 / a)
        ks = KernelSystem(p, theta, a, s, 2 * s, w0, W0, Wm1, R=R, prec=bits)
        ks = c_constants(ks)
        if with_sup:
            ks = replace(ks, sup_exp_w=sup_exp_w(ks))
        return ks


def kernel_system(a1=DEFAULT_PAIR[0], a2=DEFAULT_PAIR[1], R: int = 197, *, prec: int | None = None,
                  with_sup: bool = True) -> KernelSystem:
    """Solved and filled kernel system for the pair (a1, a2); cached."""
    with precision(prec) as bits:
        return _kernel_system(Fraction(a1), Fraction(a2), R, bits, with_sup)


# --------------------------------------------------------------------------
# V_c and the lower bound on its real part


def V_c(ks: KernelSystem, c, z) -> acb:
    """V_c(z) = c w(0) (cot z - 1/z) + W(z/c - 1)."""
    c = num(c)
    z = acb(z)
    return c * ks.w0 * (z.cot() - 1 / z) + laplace_W(ks, z / c - 1)


def Vc_bound(ks: KernelSystem, c) -> arb:
    """The lower bound -c5 c^2 w(0)."""
    c = num(c)
    return -ks.c5 * c**2 * ks.w0


_TAYLOR_ORDER = 8


def _Vc_taylor(ks: KernelSystem, c: arb, m: acb, n: int) -> list[acb]:
    """Taylor coefficients V_c^(j)(m)/j! for j < n."""
    x = acb_series([m, 1], prec=n)
    cot_part = x.cos() / x.sin() - x.inv()
    mom = _W_moments(ks, m / c - 1, n - 1)
    out = []
    fact = arb(1)
    for j in range(n):
        if j:
            fact *= j
        w_j = (-1) ** j * mom[j] / (c**j * fact)
        out.append(c * ks.w0 * cot_part.coeffs()[j] + w_j)
    return out


@functools.lru_cache(maxsize=64)
def _cot_majorant(n: int, bits: int) -> arb:
    """Upper bound for |d^n/dz^n (cot z - 1/z)| on |z| <= pi/2 + 1/16.

    All Laurent coefficients of cot z - 1/z are negative, so the n-th
    derivative is dominated by that of 1/x - cot x at x = |z|, which is
    increasing in x.
    """
    with precision(bits):
        X = arb.pi() / 2 + arb(1) / 16
        x = arb_series([X, 1], prec=n + 1)
        g = x.inv() - x.cos() / x.sin()
        return abs(g.coeffs()[n]) * arb.fac_ui(n)


def _re_lower(ks: KernelSystem, c: arb, x0: arb, x1: arb, y0: arb, y1: arb,
              n: int = _TAYLOR_ORDER) -> tuple[arb, arb]:
    """(lower bound of Re V_c on the box, Re V_c at its centre).

    Taylor form of order ``n`` at the centre. The remainder uses
    |W^(n)(zeta)| <= int u^n e^(-Re(zeta) u) w(u) du, valid because w >= 0.
    """
    xm, ym = ((x0 + x1) / 2).mid(), ((y0 + y1) / 2).mid()
    r = ((x1 - xm) ** 2 + (y1 - ym) ** 2).sqrt()
    m = acb(xm, ym)
    coeffs = _Vc_taylor(ks, c, m, n)
    vm = coeffs[0].real
    # the linear term is minimised exactly: Re(V'(m) d) = Re V' dx - Im V' dy
    lo = vm - abs(coeffs[1].real) * (x1 - xm) - abs(coeffs[1].imag) * (y1 - ym)
    rj = r
    for j in range(2, n):
        rj *= r
        lo -= abs(coeffs[j]) * rj
    sigma = (x0 / c - 1).lower()
    Mn = _W_moments(ks, acb(sigma), n)[n].real
    tail = (c * ks.w0 * _cot_majorant(n, ctx.prec) + Mn / c**n) / arb.fac_ui(n)
    lo -= tail * rj * r
    return lo, vm


def check_Vc_lower(
    ks: KernelSystem,
    c,
    *,
    grid: int = 64,
    max_depth: int = 20,
    max_boxes: int = 200_000,
    cid: str = "kernel.vc_lower",
) -> Certificate:
    """Certify Re V_c(z) >= -c5 c^2 w(0) on {Re z >= c, |z| <= pi/2}.

    Only the upper half is swept: W is real on the real axis, so V_c
    commutes with conjugation. The quarter-disc's bounding rectangle is
    cut into ``grid`` x ``grid`` boxes; each box is bounded by a Taylor
    form and bisected (up to ``max_depth`` times, plus two levels per
    halving of c below pi/396, since the features of V_c scale with c)
    until it passes or its centre is a certified counterexample.
    """
    c = num(c)
    if not c > 0 or c > arb.pi() / 396:
        raise DomainError("c must lie in (0, pi/396]")
    bound = Vc_bound(ks, c)
    depth_limit = max_depth + 2 * max(0, math.ceil(math.log2(float((arb.pi() / 396 / c).mid()))))
    half_pi = arb.pi() / 2
    r2 = half_pi**2
    x_lo, x_hi = c.upper(), half_pi.upper()
    y_hi = half_pi.upper()
    stack = []
    for i in range(grid):
        for j in range(grid):
            stack.append((
                (x_lo + (x_hi - x_lo) * i / grid).mid(), (x_lo + (x_hi - x_lo) * (i + 1) / grid).mid(),
                (y_hi * j / grid).mid(), (y_hi * (j + 1) / grid).mid(), 0,
            ))
    # the first column starts exactly at c, not at a rounded neighbour
    stack = [(c if b[0] == stack[0][0] else b[0],) + b[1:] for b in stack]
    worst_lower = None
    worst_mid = None
    boxes = 0
    status = Status.PROVED
    witness = ""
    while stack:
        x0, x1, y0, y1, depth = stack.pop()
        # entirely outside the disc
        if x0**2 + y0**2 > r2:
            continue
        boxes += 1
        lo, vm = _re_lower(ks, c, x0, x1, y0, y1)
        xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
        centre_inside = xm**2 + ym**2 <= r2
        if centre_inside and (worst_mid is None or vm.mid() < worst_mid.mid()):
            worst_mid = vm
        if lo >= bound:
            if worst_lower is None or lo.lower() < worst_lower:
                worst_lower = lo.lower()
            continue
        if centre_inside and vm < bound:
            status = Status.FAILED
            witness = f"z = {xm.str(12, radius=False)} + {ym.str(12, radius=False)} i"
            worst_lower = vm.lower() if worst_lower is None else min(worst_lower, vm.lower(), key=lambda v: v.mid())
            break
        if depth >= depth_limit or boxes >= max_boxes:
            status = Status.INCONCLUSIVE
            witness = f"box [{x0.str(10)}, {x1.str(10)}] x [{y0.str(10)}, {y1.str(10)}]"
            worst_lower = lo.lower() if worst_lower is None else min(worst_lower, lo.lower(), key=lambda v: v.mid())
            break
        xm, ym = xm.mid(), ym.mid()
        if (x1 - x0) >= (y1 - y0):
            stack += [(x0, xm, y0, y1, depth + 1), (xm, x1, y0, y1, depth + 1)]
        else:
            stack += [(x0, x1, y0, ym, depth + 1), (x0, x1, ym, y1, depth + 1)]
    lhs = interval(worst_lower, worst_mid.upper()) if worst_mid is not None and worst_lower <= worst_mid.upper() else worst_mid
    return Certificate(
        cid, status, lhs, bound, ">=",
        f"Re z >= c, |z| <= pi/2, c = {c.str(10, radius=False)}; {boxes} boxes",
        ctx.prec, "lhs encloses the minimum of Re V_c over the covered region",
        witness if status is not Status.PROVED else "",
    )
