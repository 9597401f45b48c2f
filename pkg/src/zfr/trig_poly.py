"""The two-parameter nonnegative cosine polynomial

    sum_{j=0}^{4} b_j cos(j t) = 8 (a1 + cos t)^2 (a2 + cos t)^2,

with b5 = b1 + b2 + b3 + b4. Coefficients are kept as exact rationals so
downstream checks with 1e-5 margins never see decimal drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from flint import arb

from .mp_core import num


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(str(float(x)))
    return Fraction(x)


@dataclass(frozen=True)
class CosinePolynomial:
    a1: Fraction
    a2: Fraction
    b0: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    b4: Fraction
    b5: Fraction

    @property
    def b(self) -> tuple[Fraction, ...]:
        return (self.b0, self.b1, self.b2, self.b3, self.b4)

    def ball(self, name: str) -> arb:
        """Interval for a coefficient by name, e.g. ``p.ball("b5")``."""
        return num(getattr(self, name))


def coefficients_from(a1, a2) -> CosinePolynomial:
    """Coefficients b0..b5 for the pair (a1, a2).

    Floats are read through their shortest repr, so ``0.225`` means 9/40.
    """
    a1, a2 = _exact(a1), _exact(a2)
    b4 = Fraction(1)
    b3 = 4 * (a1 + a2)
    b2 = 4 * (1 + a1**2 + a2**2 + 4 * a1 * a2)
    b1 = (a1 + a2) * (12 + 16 * a1 * a2)
    b0 = b2 - 1 + 8 * (a1 * a2) ** 2
    return CosinePolynomial(a1, a2, b0, b1, b2, b3, b4, b1 + b2 + b3 + b4)


def eval_poly(p: CosinePolynomial, theta) -> arb:
    """sum_j b_j cos(j theta), evaluated from the coefficients."""
    t = num(theta)
    return sum((num(b) * (j * t).cos() for j, b in enumerate(p.b)), arb(0))


def eval_factored(p: CosinePolynomial, theta) -> arb:
    """8 (a1 + cos theta)^2 (a2 + cos theta)^2."""
    c = num(theta).cos()
    return 8 * ((num(p.a1) + c) * (num(p.a2) + c)) ** 2
