"""Outcome records for verified inequalities."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from flint import arb, ctx

from .mp_core import fmt_interval, num


class Status(str, Enum):
    PROVED = "proved"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


RELATIONS = ("<=", "<", ">=", ">", "in", "==")

_EXACT_OPS = {"<=": operator.le, "<": operator.lt, ">=": operator.ge, ">": operator.gt,
              "==": operator.eq}


def decide(lhs: arb, rhs: arb, relation: str) -> Status:
    """Status of ``lhs <relation> rhs`` given the two enclosures.

    ``in`` asks for the value enclosed by ``lhs`` to lie in the interval
    ``rhs``; it fails only when the two are disjoint.
    """
    if relation == "in":
        if rhs.contains(lhs):
            return Status.PROVED
        return Status.INCONCLUSIVE if lhs.overlaps(rhs) else Status.FAILED
    if relation == "<=":
        ok, bad = lhs <= rhs, lhs > rhs
    elif relation == "<":
        ok, bad = lhs < rhs, lhs >= rhs
    elif relation == ">=":
        ok, bad = lhs >= rhs, lhs < rhs
    elif relation == ">":
        ok, bad = lhs > rhs, lhs <= rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")
    if ok:
        return Status.PROVED
    if bad:
        return Status.FAILED
    return Status.INCONCLUSIVE


@dataclass(frozen=True)
class Certificate:
    """One checked inequality ``lhs <relation> rhs``.

    For quantified claims ``lhs`` and ``rhs`` are the enclosures at the
    binding (minimum-margin) point of the covered domain, described in
    ``range_note``. A failed certificate names its witness in ``witness``.
    """

    id: str
    status: Status
    lhs: arb
    rhs: arb
    relation: str = "<="
    range_note: str = ""
    precision_bits: int = 0
    note: str = ""
    witness: str = ""
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def margin(self) -> arb:
        """rhs - lhs for upper bounds, lhs - rhs for lower bounds."""
        if self.relation == "in":
            return (self.lhs - self.rhs.lower()).union(self.rhs.upper() - self.lhs)
        return self.rhs - self.lhs if self.relation in ("<=", "<") else self.lhs - self.rhs

    def line(self, digits: int = 30) -> str:
        text = " ".join(p for p in (self.note, self.range_note and f"range: {self.range_note}",
                                    self.witness and f"witness: {self.witness}") if p)
        text = text.replace("\n", " ")
        return (
            f"CHECK {self.id} {self.status} lhs={fmt_interval(self.lhs, digits)} "
            f"rhs={fmt_interval(self.rhs, digits)} bits={self.precision_bits} note={text}"
        )


def check(
    id: str,
    lhs: arb,
    rhs: arb,
    relation: str = "<=",
    *,
    range_note: str = "",
    note: str = "",
    witness: str = "",
    **extra,
) -> Certificate:
    """Certificate for a single comparison of two enclosures."""
    status = decide(lhs, rhs, relation)
    if status is Status.FAILED and not witness:
        witness = "the enclosures themselves"
    return Certificate(
        id, status, lhs, rhs, relation, range_note, ctx.prec, note,
        witness if status is Status.FAILED else "", extra,
    )


def exact_check(id: str, lhs, rhs, relation: str = "==", *, range_note: str = "",
                note: str = "", **extra) -> Certificate:
    """Certificate for a comparison of two exact rationals."""
    a, b = Fraction(lhs), Fraction(rhs)
    ok = _EXACT_OPS[relation](a, b)
    status = Status.PROVED if ok else Status.FAILED
    return Certificate(
        id, status, num(a), num(b), relation, range_note, ctx.prec,
        note or "exact rational comparison", "" if ok else "exact values", extra,
    )


def renamed(cert: Certificate, id: str) -> Certificate:
    return replace(cert, id=id)
