import pytest
from flint import arb

from zfr.mp_core import DomainError, num
from zfr.smoothing import (
    c_constants,
    check_Vc_lower,
    g_eval,
    kernel_system,
    laplace_W,
    laplace_W_derivative,
    laplace_W_quad,
    solve_theta,
    sup_exp_w_argmax,
    theta_equation,
    w_conv,
    w_eval,
)

from conftest import near, width_of


@pytest.fixture(scope="module")
def ks():
    return kernel_system()


def test_theta_and_w0_against_quadrature(ks, oracle):
    assert near(ks.theta, oracle["theta"], "1e-38")
    assert near(ks.w0, oracle["w0"], "1e-38")
    assert near(ks.W0, oracle["W0"], "1e-38")
    assert near(ks.Wm1, oracle["Wm1"], "1e-18")
    assert ks.theta.rad() < 1e-70


def test_theta_solves_its_equation(ks):
    r = ks.poly.ball("b1") / ks.poly.ball("b0")
    assert theta_equation(r, ks.theta).contains(0)


def test_solve_theta_domain():
    # for ratio <= 1 both ends of (0, pi/2) are positive, so no root
    for bad in ("1e-6", "0.5", 1, 3, 4):
        with pytest.raises(DomainError):
            solve_theta(bad)
    t = solve_theta(2)
    assert t > 0 and t < arb.pi() / 2


def test_support(ks):
    assert ks.support_w.overlaps(2 * ks.theta / ks.tan_theta)
    assert g_eval(ks, ks.support_g + num("0.01")) == 0
    assert w_eval(ks, ks.support_w + num("0.01")) == 0
    assert w_eval(ks, 0).overlaps(ks.w0)


def test_w_closed_form_vs_convolution(ks, oracle):
    u = num("0.7")
    closed, conv = w_eval(ks, u), w_conv(ks, u)
    assert closed.overlaps(conv)
    assert near(closed, oracle["w_at_0_7"], "1e-18")
    assert w_eval(ks, -u).overlaps(closed)


@pytest.mark.parametrize("z, key", [(0, "W0"), (-1, "Wm1")])
def test_laplace_closed_form_vs_quadrature(ks, z, key):
    closed = laplace_W(ks, z)
    quad = laplace_W_quad(ks, z)
    assert closed.overlaps(quad)
    assert width_of(closed) <= 1e-15 and width_of(quad) <= 1e-15
    assert closed.overlaps(getattr(ks, key))


def test_laplace_at_one_half(ks, oracle):
    assert near(laplace_W(ks, "0.5"), oracle["W_half"], "1e-18")


def test_laplace_derivative_is_minus_first_moment(ks):
    d = laplace_W_derivative(ks, 0)
    from zfr.mp_core import integrate
    from zfr.smoothing import _w_formula
    m1 = integrate(lambda u: u * _w_formula(ks, u), 0, ks.support_w)
    assert d.overlaps(-m1)


@pytest.mark.parametrize("R", [197, 198, 400])
def test_c_constants_against_printed_formulas(ks, oracle, R):
    k = c_constants(ks, R)
    for name in ("c0", "c1", "c2", "c3"):
        assert near(getattr(k, name), oracle[name], "1e-36")
    assert near(k.H_R, oracle[f"H_{R}"], "1e-36")
    assert near(k.c4, oracle[f"c4_{R}"], "1e-36")
    assert near(k.c5, oracle[f"c5_{R}"], "1e-36")


def test_c4_decreases_in_R(ks):
    a, b = c_constants(ks, 197).c4, c_constants(ks, 400).c4
    assert b < a


def test_c_constants_reject_nonpositive_R(ks):
    with pytest.raises(DomainError):
        c_constants(ks, 0)


def test_sup_exp_w(ks, oracle):
    assert near(ks.sup_exp_w, oracle["sup_exp_w"], "1e-13")
    assert ks.sup_exp_w <= num("7.23")
    assert near(sup_exp_w_argmax(ks), oracle["sup_exp_w_argmax"], "1e-6")


def test_kernel_system_is_cached():
    assert kernel_system() is kernel_system()


@pytest.mark.parametrize("c", [arb.pi() / 396, arb.pi() / 1000])
def test_vc_lower_bound_holds(ks, c):
    cert = check_Vc_lower(ks, c)
    assert cert.proved
    assert cert.lhs.lower() >= cert.rhs.lower()


def test_vc_lower_budget_too_small_is_inconclusive(ks):
    cert = check_Vc_lower(ks, arb.pi() / 396, grid=8, max_depth=6, max_boxes=20_000)
    assert cert.status.value == "inconclusive"


def test_vc_lower_rejects_large_c(ks):
    with pytest.raises(DomainError):
        check_Vc_lower(ks, 1)
