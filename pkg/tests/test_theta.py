from fractions import Fraction as F

import pytest
import sympy

from ellgen.chern import RootSeries, rs_product
from ellgen.errors import OddTermPresent, WeightViolation
from ellgen.series import USeries
from ellgen.theta import (
    GenusKind,
    genus_root_series,
    half_x_over_sinh_half_poly,
    rotate_poly,
    theta_factor,
    x_over_tanh_half_poly,
    x_over_tanh_poly,
)


def sympy_even_coeffs(expr, var, xdeg):
    ser = sympy.series(expr, var, 0, xdeg).removeO()
    out = {}
    for k in range(xdeg):
        c = sympy.Rational(ser.coeff(var, k))
        if c:
            out[k] = F(int(c.p), int(c.q))
    return out


def test_hyperbolic_polys_match_sympy():
    x = sympy.symbols("x")
    assert x_over_tanh_half_poly(10) == sympy_even_coeffs(x / sympy.tanh(x / 2), x, 10)
    assert x_over_tanh_poly(10) == sympy_even_coeffs(x / sympy.tanh(x), x, 10)
    assert rotate_poly(x_over_tanh_poly(10)) == sympy_even_coeffs(x / sympy.tan(x), x, 10)
    assert rotate_poly(half_x_over_sinh_half_poly(10)) == sympy_even_coeffs(
        (x / 2) / sympy.sin(x / 2), x, 10
    )


def test_theta_u0_slice_is_ahat_factor():
    tf = theta_factor("theta", 8, 3)
    expected = half_x_over_sinh_half_poly(8)
    for k in range(8):
        assert tf.coeff(k).coeff(0) == expected.get(k, F(0))


def test_theta_factors_are_one_at_x_zero():
    for kind in ("theta", "theta1", "theta2"):
        tf = theta_factor(kind, 5, 8)
        assert tf.constant_term() == USeries.one(8)


def test_theta2_first_u_coefficient():
    # the m=1 factor contributes -(e^x + e^-x - 2) q^(1/2): direct expansion
    tf = theta_factor("theta2", 8, 2)
    assert tf.coeff(2).coeff(1) == F(-1)
    assert tf.coeff(4).coeff(1) == F(-1, 12)
    assert tf.coeff(6).coeff(1) == F(-2, 720)


def test_theta2_factor_oracle():
    # independent expansion of the m-th factor as USeries arithmetic
    uorder, xdeg = 8, 6
    tf = theta_factor("theta2", xdeg, uorder)
    direct = RootSeries.const(1, xdeg, uorder)
    for m in (1, 2, 3, 4):
        w = 2 * m - 1
        ex = {k: F(1, sympy.factorial(k)) for k in range(xdeg)}
        emx = {k: (F(-1) ** k) * v for k, v in ex.items()}
        one = RootSeries.const(1, xdeg, uorder)
        t = USeries.monomial(w, 1, uorder)
        fac = (one - RootSeries.from_xpoly(ex, xdeg, uorder) * t) * (
            one - RootSeries.from_xpoly(emx, xdeg, uorder) * t
        )
        scalar = (USeries.one(uorder) - t) ** (-2)
        direct = direct * fac * scalar
    assert tf == direct


def test_evenness_and_value_at_zero():
    for kind, value in [
        (GenusKind.AHAT, 1),
        (GenusKind.LHAT, 2),
        (GenusKind.ELL1, 2),
        (GenusKind.ELL2, 1),
        (GenusKind.WITTEN, 1),
    ]:
        rs = genus_root_series(kind, 6, 6)
        assert rs.is_even
        assert rs.constant_term() == USeries.const(value, 6)


def test_ell1_u0_slice_is_lhat_factor():
    rs = genus_root_series(GenusKind.ELL1, 8, 3)
    expected = x_over_tanh_half_poly(8)
    for k in range(8):
        assert rs.coeff(k).coeff(0) == expected.get(k, F(0))


def test_ell2_u0_slice_is_ahat_factor():
    rs = genus_root_series(GenusKind.ELL2, 8, 3)
    expected = half_x_over_sinh_half_poly(8)
    for k in range(8):
        assert rs.coeff(k).coeff(0) == expected.get(k, F(0))


def test_witten_is_ell2_without_theta2():
    xdeg, uorder = 6, 8
    ell2 = genus_root_series(GenusKind.ELL2, xdeg, uorder)
    witten = genus_root_series(GenusKind.WITTEN, xdeg, uorder)
    assert ell2 == witten * theta_factor("theta2", xdeg, uorder)


def test_u_support_parity():
    ell1 = genus_root_series(GenusKind.ELL1, 6, 9)
    witten = genus_root_series(GenusKind.WITTEN, 6, 9)
    ell2 = genus_root_series(GenusKind.ELL2, 6, 9)
    for k in range(6):
        assert ell1.coeff(k).is_even_support()
        assert witten.coeff(k).is_even_support()
    assert any(not ell2.coeff(k).is_even_support() for k in range(6))


def test_factor_weight_contract():
    # the m-th factor deviates from 1 at u-order >= 2m (theta) / 2m-1 (theta2)
    uorder = 12
    for kind, weight_of in [("theta", lambda m: 2 * m), ("theta1", lambda m: 2 * m), ("theta2", lambda m: 2 * m - 1)]:
        low = theta_factor(kind, 5, weight_of(2))
        full = theta_factor(kind, 5, uorder)
        # truncating the full product to below the m=2 weight must agree with
        # the product that never saw factors m >= 2
        assert full.truncate_u(weight_of(2)) == low


def test_rotate_requires_even():
    rs = RootSeries.from_xpoly({1: F(1)}, 4, 1)
    with pytest.raises(OddTermPresent):
        rs.rotate()


def test_rs_product_weight_violation():
    def bad():
        yield 4, RootSeries.const(1, 3, 8) + RootSeries.const(USeries.monomial(1, 1, 8), 3, 8)

    with pytest.raises(WeightViolation):
        rs_product(bad(), 3, 8)
