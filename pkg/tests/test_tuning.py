import numpy as np
import pytest

from zfr.mp_core import DomainError, num
from zfr.tuning import (
    SUBOPTIMALITY,
    F_objective,
    F_stationary,
    a1a2_objective,
    a1a2_objective_np,
    eta_stationary,
    leading_constant,
    leading_constant_np,
    r_feasible,
    search_F,
    search_R,
    search_a1a2,
    search_eta_exponent,
)

from conftest import near


def test_leading_constant(oracle):
    lead = leading_constant("0.225", "0.9")
    assert near(lead, oracle["leading"], "1e-35")
    assert lead <= num("2.99968")
    assert abs(leading_constant_np(0.225, 0.9) - float(oracle["leading"])) < 1e-12


def test_float_objective_tracks_ball_objective():
    for a1, a2 in ((0.225, 0.9), (0.3, 0.7), (0.1, 0.95)):
        ball = a1a2_objective(a1, a2)
        assert abs(float(a1a2_objective_np(a1, a2)) - float(ball.mid())) < 1e-9


def test_objective_infinite_without_angle():
    # b1/b0 drops to zero at the origin, where the angle equation has no root
    assert np.isinf(a1a2_objective_np(0.0, 0.0))


def test_a1a2_search():
    r = search_a1a2(grid=200)
    assert r.within
    assert r.relative_gap < SUBOPTIMALITY
    x, y = r.best
    assert abs(x - 0.225) < 0.01 and abs(y - 0.9) < 0.01
    assert r.extra["leading_at_best"] <= num("2.99969")


def test_eta_exponent_is_exact_stationary_point(oracle):
    r = search_eta_exponent()
    E = eta_stationary()
    assert near(E, oracle["E_eta"], "1e-35")
    assert r.extra["derivative_vanishes"] and r.extra["equals_leading"]
    assert abs(r.best[0] - float(E.mid())) < 1e-6


def test_R_search_picks_largest_feasible():
    r = search_R()
    assert r.best == (197,) and r.within
    assert r_feasible(197) is True and r_feasible(198) is False
    with pytest.raises(DomainError):
        search_R(grid=1)


def test_F_search(oracle):
    r = search_F()
    assert near(F_stationary(), oracle["F_stationary"], "1e-35")
    assert abs(r.best[0] - 3.238) < 0.01 and r.within
    p = num("3.238")
    from zfr.trig_poly import coefficients_from
    c = coefficients_from("0.225", "0.9")
    val = F_objective(p, c.ball("b0"), c.ball("b1"))
    assert near(val, oracle["oneminusb"], "1e-35")
    assert val <= num("-0.953")
