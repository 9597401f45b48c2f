"""Parameter searches behind the choices (a1, a2), the eta exponent, R and F.

Searches run in floating point on numpy grids and then zoom in; the
objective at the reported points is re-evaluated in ball arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from flint import arb

from .mp_core import DomainError, num, precision, pw
from .smoothing import c_constants, kernel_system
from .trig_poly import coefficients_from

CHOSEN = {"a1a2": ("0.225", "0.9"), "eta_exponent": None, "R": 197, "F": "3.238"}
SUBOPTIMALITY = 1e-3   # relative slack defining "near the optimum"


@dataclass
class SearchResult:
    param: str
    objective: str
    best: tuple                 # float coordinates of the search optimum
    best_value: float
    chosen: tuple               # the values used in the certified chain
    chosen_value: arb
    optimum_value: arb          # objective re-evaluated at ``best``
    within: bool                # chosen is inside the SUBOPTIMALITY set
    extra: dict = field(default_factory=dict)

    @property
    def relative_gap(self) -> arb:
        return (self.chosen_value - self.optimum_value) / abs(self.optimum_value)


# --------------------------------------------------------------------------
# (a1, a2)


def _b_np(a1, a2):
    b3 = 4 * (a1 + a2)
    b2 = 4 * (1 + a1**2 + a2**2 + 4 * a1 * a2)
    b1 = (a1 + a2) * (12 + 16 * a1 * a2)
    b0 = b2 - 1 + 8 * (a1 * a2) ** 2
    return b0, b1, b1 + b2 + b3 + 1


def _theta_np(r: np.ndarray, iters: int = 60) -> np.ndarray:
    """Root of sin^2 t = r (1 - t cot t) on (0, pi/2) by vectorised bisection; nan if none."""
    f = lambda t: np.sin(t) ** 2 - r * (1 - t / np.tan(t))
    lo = np.full_like(r, 0.05)
    hi = np.full_like(r, np.pi / 2 - 1e-12)
    ok = (r > 1) & (r < 3) & (f(lo) > 0)
    for _ in range(iters):
        mid = (lo + hi) / 2
        pos = f(mid) > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    return np.where(ok, (lo + hi) / 2, np.nan)


def leading_constant_np(a1, a2):
    b0, _, b5 = _b_np(np.asarray(a1, float), np.asarray(a2, float))
    return b5 / b0 * np.cbrt(1 + b0 / b5) * 0.75 ** (2 / 3)


def a1a2_objective_np(a1, a2):
    """Leading constant over cos^2(theta); inf where the angle does not exist."""
    a1, a2 = np.broadcast_arrays(np.asarray(a1, float), np.asarray(a2, float))
    b0, b1, _ = _b_np(a1, a2)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = _theta_np(b1 / b0)
        out = leading_constant_np(a1, a2) / np.cos(t) ** 2
    return np.where(np.isfinite(out), out, np.inf)


def leading_constant(a1, a2) -> arb:
    """(b5/b0) (1 + b0/b5)^(1/3) (3/4)^(2/3)."""
    p = coefficients_from(a1, a2)
    b0, b5 = p.ball("b0"), p.ball("b5")
    return b5 / b0 * pw(1 + b0 / b5, num(1) / 3) * pw(num(3) / 4, num(2) / 3)


def a1a2_objective(a1, a2, *, prec: int | None = None) -> arb:
    with precision(prec) as bits:
        ks = kernel_system(a1, a2, prec=bits, with_sup=False)
        return leading_constant(a1, a2) / ks.theta.cos() ** 2


def _zoom_2d(fn, x0, y0, h, rounds: int = 8, n: int = 21):
    for _ in range(rounds):
        xs = np.clip(np.linspace(x0 - h, x0 + h, n), 0, 1)
        ys = np.clip(np.linspace(y0 - h, y0 + h, n), 0, 1)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        V = fn(X, Y)
        i, j = np.unravel_index(np.argmin(V), V.shape)
        x0, y0 = xs[i], ys[j]
        h /= 4
    return x0, y0


def search_a1a2(grid: int = 200, *, prec: int | None = None) -> SearchResult:
    """Minimise the leading constant per unit of cos^2(theta) over [0, 1]^2.

    The bare leading constant keeps falling toward a1 = a2 = 0, where the
    angle equation loses its root; dividing by cos^2(theta), the
    coefficient it is traded against, gives an interior optimum.
    """
    g = np.linspace(0, 1, grid)
    X, Y = np.meshgrid(g, g, indexing="ij")
    V = a1a2_objective_np(X, Y)
    i, j = np.unravel_index(np.argmin(V), V.shape)
    x, y = _zoom_2d(a1a2_objective_np, g[i], g[j], 1 / max(grid - 1, 1))
    chosen = CHOSEN["a1a2"]
    with precision(prec):
        at_best = a1a2_objective(float(x), float(y))
        at_chosen = a1a2_objective(*chosen)
        within = bool(at_chosen <= at_best * (1 + num(str(SUBOPTIMALITY))))
        return SearchResult(
            "a1a2", "(b5/b0)(1+b0/b5)^(1/3)(3/4)^(2/3) / cos^2(theta)",
            (float(x), float(y)), float(a1a2_objective_np(x, y)), chosen, at_chosen, at_best, within,
            {"leading_at_best": leading_constant(float(x), float(y)),
             "leading_at_chosen": leading_constant(*chosen),
             "grid_points": grid * grid},
        )


# --------------------------------------------------------------------------
# eta exponent


def eta_objective(x, b0, b5):
    """Coefficient of (B L1)^(2/3) L2^(1/3) when eta = x B^(-2/3) (L2/L1)^(2/3)."""
    root = x.sqrt() if isinstance(x, arb) else np.sqrt(x)
    return (b0 + b5) / (3 * b0 * x) + b5 * root / (2 * b0)


def eta_stationary(a1="0.225", a2="0.9") -> arb:
    """(4 (1 + b0/b5) / 3)^(2/3), the zero of the objective's derivative."""
    p = coefficients_from(a1, a2)
    return pw(num(4 * (1 + p.b0 / p.b5) / 3), num(2) / 3)


def search_eta_exponent(grid: int = 200, *, prec: int | None = None) -> SearchResult:
    p = coefficients_from(*CHOSEN["a1a2"])
    b0f, b5f = float(p.b0), float(p.b5)
    xs = np.linspace(0.25, 4, grid)
    x = xs[np.argmin(eta_objective(xs, b0f, b5f))]
    h = xs[1] - xs[0]
    for _ in range(10):
        loc = np.linspace(x - h, x + h, 41)
        x = loc[np.argmin(eta_objective(loc, b0f, b5f))]
        h /= 10
    with precision(prec):
        b0, b5 = p.ball("b0"), p.ball("b5")
        E = eta_stationary()
        deriv = -(b0 + b5) / (3 * b0 * E**2) + b5 / (4 * b0 * E.sqrt())
        at_E = eta_objective(E, b0, b5)
        at_best = eta_objective(num(float(x)), b0, b5)
        lead = leading_constant(*CHOSEN["a1a2"])
        return SearchResult(
            "eta_exponent", "(b0+b5)/(3 b0 x) + b5 x^(1/2)/(2 b0)",
            (float(x),), float(eta_objective(x, b0f, b5f)), (E,), at_E, at_best,
            bool(at_E <= at_best),
            {"E": E, "derivative_at_E": deriv, "derivative_vanishes": deriv.contains(0),
             "leading_constant": lead, "equals_leading": at_E.overlaps(lead)},
        )


# --------------------------------------------------------------------------
# R


def r_feasible(R: int, *, log_T0="1938", M_cap="0.055071") -> bool | None:
    """lambda <= eta/(R+1) at log T0: (R+1) M_cap / E <= loglog T0.

    None when the enclosures cannot decide.
    """
    lhs = (R + 1) * num(M_cap) / eta_stationary()
    rhs = num(log_T0).log()
    if lhs <= rhs:
        return True
    if lhs > rhs:
        return False
    return None


def search_R(grid: int = 400, *, prec: int | None = None) -> SearchResult:
    """Smallest c4 over integers 1 <= R <= grid subject to ``r_feasible``.

    c4 decreases in R, so the optimum is the largest feasible R.
    """
    if grid < 2:
        raise DomainError("grid must be at least 2")
    with precision(prec) as bits:
        ks = kernel_system(prec=bits, with_sup=False)
        feasible = [R for R in range(1, grid + 1) if r_feasible(R)]
        if not feasible:
            raise DomainError("no feasible R on the grid")
        c4 = {R: c_constants(ks, R).c4 for R in feasible}
        best = min(feasible, key=lambda R: c4[R].mid())
        chosen = CHOSEN["R"]
        at_chosen = c_constants(ks, chosen).c4
        return SearchResult(
            "R", "c4(R) subject to (R+1) 0.055071 / E <= log 1938",
            (best,), float(c4[best].mid()), (chosen,), at_chosen, c4[best],
            bool(chosen == best or at_chosen <= c4[best] * (1 + num(str(SUBOPTIMALITY)))),
            {"largest_feasible": max(feasible), "next_infeasible": r_feasible(max(feasible) + 1) is False},
        )


# --------------------------------------------------------------------------
# F


def F_objective(F, b0, b1, cot="0.99988"):
    """b0/F - cot * b1/(F+1), the coefficient reported as -0.953."""
    c = num(cot) if isinstance(F, arb) else float(Fraction(cot))
    return b0 / F - c * b1 / (F + 1)


def F_stationary(a1="0.225", a2="0.9", cot="0.99988") -> arb:
    """1/(sqrt(cot b1/b0) - 1), where the derivative of ``F_objective`` vanishes."""
    p = coefficients_from(a1, a2)
    r = num(cot) * p.ball("b1") / p.ball("b0")
    return 1 / (r.sqrt() - 1)


def search_F(grid: int = 200, *, lo: float = 2.0, hi: float = 5.0,
             prec: int | None = None) -> SearchResult:
    p = coefficients_from(*CHOSEN["a1a2"])
    b0f, b1f = float(p.b0), float(p.b1)
    xs = np.linspace(lo, hi, grid)
    x = xs[np.argmin(F_objective(xs, b0f, b1f))]
    h = xs[1] - xs[0]
    for _ in range(10):
        loc = np.clip(np.linspace(x - h, x + h, 41), lo, hi)
        x = loc[np.argmin(F_objective(loc, b0f, b1f))]
        h /= 10
    with precision(prec):
        b0, b1 = p.ball("b0"), p.ball("b1")
        chosen = num(CHOSEN["F"])
        at_chosen = F_objective(chosen, b0, b1)
        at_best = F_objective(num(float(x)), b0, b1)
        return SearchResult(
            "F", "b0/F - 0.99988 b1/(F+1)", (float(x),), float(F_objective(x, b0f, b1f)),
            (CHOSEN["F"],), at_chosen, at_best,
            bool(at_chosen - at_best <= num(str(SUBOPTIMALITY)) * abs(at_best)),
            {"stationary": F_stationary()},
        )


SEARCHES = {"a1a2": search_a1a2, "eta_exponent": search_eta_exponent, "R": search_R, "F": search_F}
