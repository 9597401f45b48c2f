"""Invariants checked over samples and grids."""

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from flint import acb, arb
from hypothesis import given, settings, strategies as st

from zfr.certificate import Certificate, Status
from zfr.certifier import exit_code
from zfr.cli import constant_rows, format_constants
from zfr.mp_core import find_root, hurwitz_zeta, integrate, num, precision, zeta_real
from zfr.region import PROFILES, width, width_mccurley
from zfr.smoothing import c_constants, kernel_system, laplace_W, solve_theta, w_conv, w_eval
from zfr.trig_poly import coefficients_from, eval_factored, eval_poly
from zfr.zero_counts import CountBoundInputs, lemma42_bound, lemma43_bound, zerocount_constants

OPS = {
    "zeta_real": lambda x: zeta_real(1 + x),
    "hurwitz": lambda x: hurwitz_zeta(num("0.5") + x * 3 / 4, 14, "0.3").real,
    "theta": lambda x: solve_theta(1 + x),
    "integrate": lambda x: integrate(lambda u: (x * u).exp(), 0, 1),
    "find_root": lambda x: find_root(lambda u: u * u - (1 + x), 0, 2),
}


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(sorted(OPS)), st.fractions(min_value="0.05", max_value="1.9", max_denominator=100))
def test_more_bits_nest(name, x):
    with precision(128):
        low = OPS[name](num(x))
    with precision(512):
        high = OPS[name](num(x))
    assert low.contains(high)
    assert high.rad() < low.rad()


@pytest.mark.parametrize("sigma", ["1.1", "1.5", "2", "3"])
def test_zeta_real_vs_summation_with_tail(sigma):
    # direct sum to N plus Euler-Maclaurin terms, the remainder bounded by the next term
    s, N = num(sigma), 1000
    head = sum((arb(n) ** -s for n in range(1, N)), arb(0))
    Na = arb(N)
    tail = Na ** (1 - s) / (s - 1) + Na**-s / 2 + s * Na ** (-s - 1) / 12
    err = (s * (s + 1) * (s + 2) * Na ** (-s - 3) / 720).upper()
    assert zeta_real(sigma).overlaps(head + tail + arb(0, err))


@pytest.mark.parametrize("sigma, t", [("1.5", 3), ("2", 7), ("0.5", 14), ("0.5", 21), ("1.2", 50),
                                      ("1.9", 3), ("0.8", 100), ("1.75", 30), ("0.6", 5), ("1.01", 10)])
def test_hurwitz_at_u_one_is_zeta(sigma, t):
    z = hurwitz_zeta(sigma, t, 1)
    assert z.overlaps(acb(num(sigma), arb(t)).zeta())
    ref = mpmath.zeta(mpmath.mpc(sigma, t))
    assert abs(complex(z.real.mid(), z.imag.mid()) - complex(ref)) < 1e-12


def test_cosine_forms_agree_on_random_pairs():
    rng = np.random.default_rng(20260101)
    pairs = rng.uniform(-2, 2, size=(1000, 2))
    angles = rng.uniform(-np.pi, np.pi, size=100)
    for a1, a2 in pairs:
        p = coefficients_from(Fraction(a1).limit_denominator(10**6), Fraction(a2).limit_denominator(10**6))
        for t in angles:
            lhs, rhs = eval_poly(p, t), eval_factored(p, t)
            assert lhs.overlaps(rhs)
            assert lhs.upper() >= -2 * lhs.rad()


def test_b5_over_b0_ratio():
    p = coefficients_from("0.225", "0.9")
    assert p.b5 / p.b0 == Fraction(666550, 200211)


@pytest.fixture(scope="module")
def ks():
    return kernel_system()


def test_w_closed_form_vs_convolution_on_50_points(ks):
    L = ks.support_w.mid()
    for i in range(50):
        u = L * (i + 0.5) / 50
        assert w_eval(ks, u).overlaps(w_conv(ks, u))


def test_laplace_decreasing_on_grid(ks):
    values = [laplace_W(ks, num(z) / 4) for z in range(-8, 12)]
    assert all(b < a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("R", [1, 50, 197, 1000])
def test_c5_c4_identity(ks, R):
    k = c_constants(ks, R)
    assert (k.c5 * arb.pi() ** 2 / 4 + num(1) / R).overlaps(k.c4)


def test_C2_blows_up_at_zero():
    c = [zerocount_constants(e)[1] for e in ("1e-6", "1e-4", "1e-2")]
    assert c[0] > c[1] > c[2]


def test_C1_window_for_eta():
    assert zerocount_constants("0.00019")[0] <= num("0.2297")
    assert zerocount_constants("0.00022")[0] > num("0.2297")


@pytest.mark.parametrize("bound", [lemma42_bound, lemma43_bound], ids=["near_count", "far_sum"])
def test_count_bounds_increase_in_A_and_q(bound):
    t = num(1950).exp()
    As = ["1", "10", "76.2", "1000"]
    qs = [3, 100, 10**6, 10**12]
    grid = [[bound(CountBoundInputs.of(t, "0.05", q, A=A)) for q in qs] for A in As]
    for i in range(len(As)):
        for j in range(len(qs)):
            if i:
                assert grid[i][j] > grid[i - 1][j]
            if j:
                assert grid[i][j] > grid[i][j - 1]


@pytest.mark.parametrize("name", sorted(PROFILES))
def test_profile_widths_strictly_decrease(name):
    p = PROFILES[name]
    # weak86 starts at log t = e^(e^23), so stay in balls
    start = num(100) if p.log_t_min is None else p.log_t_min.upper() + 1
    logs = [start * 2**k for k in range(8)]
    qs = [3, 30, 3000, 3 * 10**6, 3 * 10**12]
    for q in qs:
        ws = [width(p, q, log_t=L) for L in logs]
        assert all(b < a for a, b in zip(ws, ws[1:]))
    for L in logs[:3]:
        ws = [width(p, q, log_t=L) for q in qs]
        if name == "weak86":
            # log q is below the working precision next to (log t)^(2/3) here
            assert not any(b > a for a, b in zip(ws, ws[1:]))
        else:
            assert all(b < a for a, b in zip(ws, ws[1:]))


def test_mccurley_nonincreasing():
    ws = [width_mccurley(3, t) for t in (0, 1, 4, 10, 1000, "e^100")]
    assert all(not b > a for a, b in zip(ws, ws[1:]))


statuses = st.lists(st.sampled_from(list(Status)), max_size=8)


@settings(max_examples=100, deadline=None)
@given(statuses)
def test_exit_code_depends_only_on_statuses(sts):
    certs = [Certificate(f"x.{i}", s, arb(0), arb(0)) for i, s in enumerate(sts)]
    want = 1 if Status.FAILED in sts else 2 if Status.INCONCLUSIVE in sts else 0
    assert exit_code(certs) == want
    assert exit_code(list(reversed(certs))) == want


def test_every_constant_row_has_a_width():
    text = format_constants(constant_rows(), "text", 20)
    for line in text.splitlines():
        assert " width " in line and "[" in line
