import pytest
from flint import arb
from hypothesis import given, settings, strategies as st

from zfr.mp_core import PreconditionError, num, precision
from zfr.zero_counts import (
    CountBoundInputs,
    U_kernel,
    lemma42_bound,
    lemma43_bound,
    llprime_constant_stack,
    llprime_line_bound,
    radius_floor,
    zerocount_constants,
)

from conftest import near

T = "e^1944"


@pytest.mark.parametrize("eta", ["0.00019", "0.01", "0.0001", "0.000001", "0.5"])
def test_constants_match_oracle(oracle, eta):
    C1, C2 = zerocount_constants(eta)
    assert near(C1, oracle[f"C1_{eta}"], "1e-35")
    assert near(C2, oracle[f"C2_{eta}"], "1e-30")


def test_printed_values_at_eta_0_00019():
    C1, C2 = zerocount_constants("0.00019")
    assert C1 <= num("0.2297")
    assert C2 <= num("24.77")
    assert num("24.77") - C2 < num("1e-3")


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value="1e-6", max_value="0.49", max_denominator=10**6),
       st.fractions(min_value="1e-6", max_value="0.01", max_denominator=10**6))
def test_C1_increases_C2_decreases(eta, step):
    with precision(256):
        a1, a2 = zerocount_constants(eta)
        b1, b2 = zerocount_constants(eta + step)
        assert a1 < b1
        assert b2 < a2


@pytest.mark.parametrize("eta", [0, "-0.1", "0.6"])
def test_eta_range(eta):
    with pytest.raises(PreconditionError):
        zerocount_constants(eta)


def _inputs(R, q=3, t=None, B="4.45"):
    t = num(1944).exp() if t is None else t
    return CountBoundInputs.of(t, R, q, B=B)


def test_near_count_finite_and_growing_in_R():
    a = lemma42_bound(_inputs("0.01"))
    b = lemma42_bound(_inputs("0.1"))
    assert a.is_finite() and a < b


def test_near_count_preconditions():
    with pytest.raises(PreconditionError):
        lemma42_bound(_inputs("0.3"))
    with pytest.raises(PreconditionError):
        lemma42_bound(_inputs("1e-6"))
    with pytest.raises(PreconditionError):
        lemma42_bound(_inputs("0.05", t=num(100).exp()))
    with pytest.raises(PreconditionError):
        lemma42_bound(_inputs("0.05", q=2))
    with pytest.raises(PreconditionError):
        lemma42_bound(_inputs("0.05", B="4.5"))


def test_far_sum_counts_close_zeros_negatively():
    inp = _inputs("0.05")
    assert lemma43_bound(inp, 3) < lemma43_bound(inp, 0)
    with pytest.raises(PreconditionError):
        lemma43_bound(inp, -1)
    with pytest.raises(PreconditionError):
        lemma43_bound(_inputs("0.005"))
    assert radius_floor(num(1944).exp()) > num("0.005")


def test_llprime_bound_and_its_constant():
    assert llprime_line_bound(0, 3).overlaps(num("8.21") + arb(3).log())
    s = llprime_constant_stack()
    assert s["-zeta'/zeta(3/2)"] <= s["used"]
    assert s["total"] <= s["printed"]
    with pytest.raises(PreconditionError):
        llprime_line_bound(0, 2)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_U_kernel_even_and_bounded(y):
    with precision(256):
        u = U_kernel(y)
        assert u.overlaps(U_kernel(-y))
        assert u > 0 and not u > 2
    assert U_kernel(0) == 2
