import pytest
from flint import arb
from hypothesis import given, settings, strategies as st

from zfr.arith import (
    corollary_last_check,
    corollary_primorial_check,
    divisor_log_sum,
    lambda_tail_identity,
    lemma_a1_check,
    mertens_E,
    prime_factors,
    prime_table,
    rs_step_failures,
    sieve_numpy,
    sieve_sundaram,
    theta_step_failures,
)
from zfr.mp_core import num, precision

from conftest import near, width_of


def test_sieves_agree():
    assert sieve_numpy(10**5).tolist() == sieve_sundaram(10**5)
    assert sieve_numpy(1).tolist() == [] and sieve_sundaram(2) == [2]
    assert len(prime_table(10**6)) == 78498


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=10**9))
def test_prime_factors_rebuild_radical(q):
    ps = prime_factors(q)
    assert ps == sorted(set(ps))
    m = q
    for p in ps:
        assert m % p == 0
        while m % p == 0:
            m //= p
    assert m == 1


def test_mertens_E(oracle):
    m = mertens_E()
    assert near(m.E, oracle["mertens_E"], "1e-18")
    assert m.E.rad() <= 1e-10
    assert m.E.overlaps(-arb.const_euler() - num("0.75537") + arb(0, num("1e-5")))


def test_mertens_E_stable_in_cutoff():
    assert mertens_E(4 * 10**6).E.overlaps(mertens_E().E)
    with pytest.raises(ValueError):
        mertens_E(10**5)


@pytest.mark.parametrize("q", [6, 30, 2310, 97, 1024])
def test_geometric_identity(q):
    lambda_tail_identity(q)


def test_divisor_log_sum():
    assert divisor_log_sum(12).overlaps(arb(2).log() / 2 + arb(3).log() / 3)


def test_divisor_sweep_minimum_at_q6(oracle):
    c = corollary_last_check()
    assert c.proved
    assert c.extra["min_margin_q"] == oracle["divisor_min_q"] == 6
    assert near(c.extra["min_margin"], oracle["divisor_min_margin"], "1e-18")


def test_divisor_primorials():
    assert corollary_primorial_check().proved


def test_prime_sum_literal_fails_for_small_primorials(oracle):
    c = lemma_a1_check()
    assert c.status.value == "failed"
    assert len(c.extra["failures"]) == oracle["prime_sum_failures"] == 72
    assert c.extra["failures"][-1] == oracle["prime_sum_last_failure"] == 383
    assert "P_383" in c.witness


def test_prime_sum_holds_past_383():
    assert lemma_a1_check(from_x=389).proved


def test_intermediate_steps_fail():
    assert theta_step_failures(10**4)[:3] == [11, 13, 17]
    assert 661 in rs_step_failures(10**4)


def test_imported_theta_bound_consistent_with_sieve():
    import numpy as np
    from zfr.arith import THETA_SQRT

    ps = sieve_numpy(10**7)
    theta = np.cumsum(np.log(ps.astype(float)))
    x = ps[ps >= THETA_SQRT[1]].astype(float)
    th = theta[ps >= THETA_SQRT[1]]
    # theta jumps at primes, so check both sides of each jump; the left
    # limit at the first prime lies outside the bound's range
    right = np.abs(th - x) / np.sqrt(x)
    left = (np.abs(th - np.log(x) - x) / np.sqrt(x))[1:]
    worst = max(right.max(), left.max())
    assert worst < float(THETA_SQRT[0])
