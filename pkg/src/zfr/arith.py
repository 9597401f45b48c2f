"""Primes, Chebyshev theta, the Mertens-type constant E and the sums
over prime divisors of q that feed the Q(q) = loglog q + 0.66 term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from flint import arb

from .certificate import Certificate, check
from .mp_core import num, precision

CUTOFF = 10**7
CROSSCHECK_LIMIT = 10**6

# Imported explicit bounds for |theta(x) - x| used only in the tail of E:
#   |theta(x) - x| < 1.95 sqrt(x)        for 1427 <= x <= 1e19
#   |theta(x) - x| < 0.2 x / log(x)^2    for x >= 3594641
THETA_SQRT = ("1.95", 1427, 10**19)
THETA_LOG2 = ("0.2", 3594641)


# --------------------------------------------------------------------------
# sieves


def sieve_numpy(limit: int) -> np.ndarray:
    """Primes <= limit by the sieve of Eratosthenes on a boolean array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    s[4::2] = False
    for i in range(3, int(limit**0.5) + 1, 2):
        if s[i]:
            s[i * i :: 2 * i] = False
    return np.nonzero(s)[0].astype(np.int64)


def sieve_sundaram(limit: int) -> list[int]:
    """Primes <= limit by the sieve of Sundaram, kept independent of numpy."""
    if limit < 2:
        return []
    k = (limit - 1) // 2
    marked = bytearray(k + 1)
    i = 1
    while 2 * i * (i + 1) <= k:
        step = 2 * i + 1
        start = 2 * i * (i + 1)
        marked[start::step] = b"\x01" * len(range(start, k + 1, step))
        i += 1
    return [2] + [2 * j + 1 for j in range(1, k + 1) if not marked[j]]


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: tuple[int, ...] = field(repr=False)

    @classmethod
    def build(cls, limit: int) -> "PrimeTable":
        ps = sieve_numpy(limit).tolist()
        if limit <= CROSSCHECK_LIMIT and ps != sieve_sundaram(limit):
            raise RuntimeError("sieves disagree")
        return cls(limit, tuple(ps))

    def __len__(self) -> int:
        return len(self.primes)


@lru_cache(maxsize=4)
def prime_table(limit: int = CUTOFF) -> PrimeTable:
    return PrimeTable.build(limit)


def prime_factors(q: int) -> list[int]:
    out, p = [], 2
    while p * p <= q:
        if q % p == 0:
            out.append(p)
            while q % p == 0:
                q //= p
        p += 1 if p == 2 else 2
    if q > 1:
        out.append(q)
    return out


# --------------------------------------------------------------------------
# the constant E


@dataclass(frozen=True)
class MertensConstants:
    gamma: arb
    E: arb
    cutoff: int
    head: arb      # sum_{p <= cutoff} log p / (p (p - 1))
    tail: arb      # enclosure of the same sum over p > cutoff


def _tail_sum(P: int, theta_P: arb) -> arb:
    """Enclosure of sum_{p > P} log p / (p (p - 1)).

    With f(x) = 1/(x(x-1)), partial summation against theta gives
    (P - theta(P)) f(P) + log(P/(P-1)) - int_P^oo (theta - x) f',
    and |f'(x)| <= 2 kappa / x^3 with kappa = (P/(P-1))^2.
    """
    if P < max(THETA_SQRT[1], THETA_LOG2[1]):
        raise ValueError("cutoff too small for the imported theta bounds")
    Pa = arb(P)
    main = (Pa - theta_P) / (Pa * (Pa - 1)) + (Pa / (Pa - 1)).log()
    kappa = (Pa / (Pa - 1)) ** 2
    X = arb(THETA_SQRT[2])
    c_sqrt, c_log = num(THETA_SQRT[0]), num(THETA_LOG2[0])
    err = 2 * kappa * c_sqrt * 2 / 3 / (Pa * Pa.sqrt())
    err += 2 * kappa * c_log / (X.log() ** 2 * X)
    return main + arb(0, err.upper())


@lru_cache(maxsize=4)
def _mertens(cutoff: int, bits: int) -> MertensConstants:
    with precision(bits):
        head, theta = arb(0), arb(0)
        for p in prime_table(cutoff).primes:
            lp = arb(p).log()
            theta += lp
            head += lp / (p * (p - 1))
        tail = _tail_sum(cutoff, theta)
        gamma = arb.const_euler()
        return MertensConstants(gamma, -gamma - head - tail, cutoff, head, tail)


def mertens_E(cutoff: int = CUTOFF, *, prec: int | None = None) -> MertensConstants:
    """E = -gamma - sum_{n>=2} sum_p log p / p^n = -gamma - sum_p log p/(p(p-1))."""
    with precision(prec) as bits:
        return _mertens(cutoff, bits)


# --------------------------------------------------------------------------
# sums over prime divisors


def lambda_tail_identity(q: int, *, terms: int = 200, prec: int | None = None) -> arb:
    """sum_{p | q} log p / (p - 1), checked against the series sum_k log p / p^k."""
    if q < 2:
        raise ValueError("q >= 2 is required")
    with precision(prec):
        closed, series = arb(0), arb(0)
        for p in prime_factors(q):
            lp = arb(p).log()
            closed += lp / (p - 1)
            part = sum((lp / arb(p) ** k for k in range(1, terms + 1)), arb(0))
            # the omitted geometric tail is log p / (p^terms (p - 1))
            series += part + arb(0, (lp / (arb(p) ** terms * (p - 1))).upper())
        if not closed.overlaps(series):
            raise ArithmeticError("geometric identity failed")
        return closed


def divisor_log_sum(q: int) -> arb:
    """sum_{p | q} log p / p."""
    return sum((arb(p).log() / p for p in prime_factors(q)), arb(0))


def corollary_last_check(q_max: int = 2310, *, prec: int | None = None) -> Certificate:
    """sum_{p | q} log p/(p-1) < loglog q + 0.66 for every 3 <= q <= q_max."""
    with precision(prec):
        c = num("0.66")
        worst = None
        for q in range(3, q_max + 1):
            lhs = _closed(q)
            rhs = arb(q).log().log() + c
            margin = rhs - lhs
            if not margin > 0:
                return check("appendixA.divisor_sum_small_q", lhs, rhs, "<",
                             range_note=f"3 <= q <= {q_max}", witness=f"q={q}")
            if worst is None or margin.mid() < worst[0].mid():
                worst = (margin, q, lhs, rhs)
        margin, q, lhs, rhs = worst
        return check("appendixA.divisor_sum_small_q", lhs, rhs, "<",
                     range_note=f"3 <= q <= {q_max}; minimum margin at q={q}",
                     note=f"min margin q={q}", min_margin_q=q, min_margin=margin)


def _closed(q: int) -> arb:
    return sum((arb(p).log() / (p - 1) for p in prime_factors(q)), arb(0))


# --------------------------------------------------------------------------
# primorial scans


@dataclass(frozen=True)
class PrimorialRow:
    x: int            # largest prime in the primorial
    log_q: arb        # theta(x)
    sum_logp_p: arb   # sum_{p <= x} log p / p
    sum_logp_pm1: arb  # sum_{p <= x} log p / (p - 1)


def primorial_rows(limit_x: int, *, prec: int | None = None) -> list[PrimorialRow]:
    with precision(prec):
        rows = []
        th, s1, s2 = arb(0), arb(0), arb(0)
        for p in prime_table(max(limit_x, 100)).primes:
            if p > limit_x:
                break
            lp = arb(p).log()
            th += lp
            s1 += lp / p
            s2 += lp / (p - 1)
            rows.append(PrimorialRow(p, th, s1, s2))
        return rows


def lemma_a1_check(limit_x: int = 10**5, *, from_x: int = 11, E=None,
                   prec: int | None = None) -> Certificate:
    """sum_{p <= x} log p/p < loglog P_x + E + 0.1313 for every primorial
    P_x >= 2310 with from_x <= x <= limit_x.

    A failed result names the largest failing primorial.
    """
    if limit_x < 13:
        raise ValueError("limit_x >= 13 is required")
    with precision(prec):
        E = mertens_E().E if E is None else num(E)
        rhs_c = E + num("0.1313")
        fails, worst = [], None
        for r in primorial_rows(limit_x):
            if r.x < max(from_x, 11):
                continue
            lhs, rhs = r.sum_logp_p, r.log_q.log() + rhs_c
            if not lhs < rhs:
                fails.append((r.x, lhs, rhs))
            elif worst is None or (rhs - lhs).mid() < (worst[2] - worst[1]).mid():
                worst = (r.x, lhs, rhs)
        note = f"primorials P_x, {max(from_x, 11)} <= x <= {limit_x}"
        if fails:
            x, lhs, rhs = fails[-1]
            return check("appendixA.prime_sum", lhs, rhs, "<", range_note=note,
                         witness=f"P_{x} (fails for {len(fails)} primorials, x <= {x})",
                         failures=[f[0] for f in fails])
        x, lhs, rhs = worst
        return check("appendixA.prime_sum", lhs, rhs, "<", range_note=note,
                     note=f"min margin at P_{x}")


def theta_step_failures(limit_x: int, *, prec: int | None = None) -> list[int]:
    """Primes x with P_x >= 2310 where theta(x) > x (1 - 1/(2 log 2310)) fails."""
    with precision(prec):
        k = 1 - 1 / (2 * arb(2310).log())
        return [r.x for r in primorial_rows(limit_x) if r.x >= 11 and not r.log_q > r.x * k]


def rs_step_failures(limit_x: int, E=None, *, prec: int | None = None) -> list[int]:
    """Primes x >= 11 where sum_{p<=x} log p/p < log x + E + 0.06456 fails."""
    with precision(prec):
        E = mertens_E().E if E is None else num(E)
        c = E + num("0.06456")
        return [r.x for r in primorial_rows(limit_x)
                if r.x >= 11 and not r.sum_logp_p < arb(r.x).log() + c]


def corollary_primorial_check(limit_x: int = 10**5, *, prec: int | None = None) -> Certificate:
    """sum_{p <= x} log p/(p-1) < loglog P_x + 0.66 for primorials P_x > 2310.

    log p/(p-1) decreases in p, so for q with k prime factors the sum is
    at most its value at the primorial with k factors, which is <= q.
    """
    with precision(prec):
        c = num("0.66")
        worst = None
        for r in primorial_rows(limit_x):
            if r.x <= 11:
                continue
            lhs, rhs = r.sum_logp_pm1, r.log_q.log() + c
            if not lhs < rhs:
                return check("appendixA.divisor_sum_primorials", lhs, rhs, "<",
                             range_note=f"primorials, 13 <= x <= {limit_x}", witness=f"P_{r.x}")
            if worst is None or (rhs - lhs).mid() < (worst[2] - worst[1]).mid():
                worst = (r.x, lhs, rhs)
        x, lhs, rhs = worst
        return check("appendixA.divisor_sum_primorials", lhs, rhs, "<",
                     range_note=f"primorials, 13 <= x <= {limit_x}", note=f"min margin at P_{x}")
