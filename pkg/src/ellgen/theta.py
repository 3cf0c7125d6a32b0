"""Per-root characteristic factors of the genera, from theta products.

The normalized ratios x theta'(0)/theta(x), theta1(x)/theta1(0) and
theta2(x)/theta2(0) are built directly as even RootSeries: the q^(1/8) and
eta-like prefactors cancel in the ratios, and with x = 2*pi*sqrt(-1)*z all
trigonometry collapses to hyperbolic series with rational coefficients, so
nothing transcendental is ever materialized.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .chern import RootSeries, rs_product
from .series import USeries

XPoly = dict[int, Fraction]


# ---------------------------------------------------------------------------
# Rational polynomial helpers in the root variable x
# ---------------------------------------------------------------------------


def _poly_mul(a: XPoly, b: XPoly, xdeg: int) -> XPoly:
    out: XPoly = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = k1 + k2
            if k < xdeg:
                out[k] = out.get(k, Fraction(0)) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _poly_inv(a: XPoly, xdeg: int) -> XPoly:
    a0 = a.get(0, Fraction(0))
    if not a0:
        raise ZeroDivisionError("polynomial has zero constant term")
    out = {0: Fraction(1) / a0}
    for n in range(1, xdeg):
        acc = Fraction(0)
        for k, v in a.items():
            if 1 <= k <= n:
                acc += v * out.get(n - k, Fraction(0))
        if acc:
            out[n] = -acc / a0
    return {k: v for k, v in out.items() if v}


def _even_exp_poly(xdeg: int, quarter_scale: bool, shift: int) -> XPoly:
    """sum_k x^(2k) / (s^k (2k + shift)!) with s = 4 when quarter_scale."""
    out: XPoly = {}
    k = 0
    while 2 * k < xdeg:
        denom = 1
        for j in range(1, 2 * k + shift + 1):
            denom *= j
        if quarter_scale:
            denom *= 4**k
        out[2 * k] = Fraction(1, denom)
        k += 1
    return out


def sinh_half_over_half_poly(xdeg: int) -> XPoly:
    """sinh(x/2) / (x/2)."""
    return _even_exp_poly(xdeg, True, 1)


def cosh_half_poly(xdeg: int) -> XPoly:
    return _even_exp_poly(xdeg, True, 0)


def half_x_over_sinh_half_poly(xdeg: int) -> XPoly:
    """(x/2) / sinh(x/2): the u^0 slice of the theta factor (A-hat factor)."""
    return _poly_inv(sinh_half_over_half_poly(xdeg), xdeg)


def x_over_tanh_half_poly(xdeg: int) -> XPoly:
    """x / tanh(x/2): the u^0 slice of the Ell1 factor (L-hat factor)."""
    two_cosh_half = {k: 2 * v for k, v in cosh_half_poly(xdeg).items()}
    return _poly_mul(two_cosh_half, half_x_over_sinh_half_poly(xdeg), xdeg)


def x_over_tanh_poly(xdeg: int) -> XPoly:
    """x / tanh(x): the signature factor in complex Chern-root normalization."""
    cosh = _even_exp_poly(xdeg, False, 0)
    sinh_over_x = _even_exp_poly(xdeg, False, 1)
    return _poly_mul(cosh, _poly_inv(sinh_over_x, xdeg), xdeg)


def two_cosh_poly(xdeg: int) -> XPoly:
    """e^x + e^{-x}."""
    return {k: 2 * v for k, v in _even_exp_poly(xdeg, False, 0).items()}


def rotate_poly(a: XPoly) -> XPoly:
    """x -> ix on an even polynomial (tanh-to-tan convention switch)."""
    if any(k % 2 for k in a):
        raise ValueError("rotation only applies to even polynomials")
    return {k: (v if k % 4 == 0 else -v) for k, v in a.items()}


# ---------------------------------------------------------------------------
# Theta product factors
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def theta_factor(kind: str, xdeg: int, uorder: int) -> RootSeries:
    """Normalized per-root theta ratio as an even RootSeries.

    kind "theta":  (x/2)/sinh(x/2) * prod_m (1-q^m)^2 / ((1-q^m e^x)(1-q^m e^-x))
    kind "theta1": cosh(x/2) * prod_m (1+q^m e^x)(1+q^m e^-x) / (1+q^m)^2
    kind "theta2": prod_m (1-q^(m-1/2) e^x)(1-q^(m-1/2) e^-x) / (1-q^(m-1/2))^2

    The m-th factor of each product deviates from 1 only at u-order 2m
    (theta, theta1) or 2m-1 (theta2), so the truncated product is finite.
    """
    if xdeg < 1 or uorder < 1:
        raise ValueError("xdeg and uorder must be >= 1")
    if kind not in ("theta", "theta1", "theta2"):
        raise ValueError(f"unknown theta factor kind {kind!r}")
    two_cosh = RootSeries.from_xpoly(two_cosh_poly(xdeg), xdeg, uorder)
    one = RootSeries.const(1, xdeg, uorder)

    def factors():
        m = 1
        while True:
            if kind == "theta2":
                w = 2 * m - 1
                core = one - two_cosh * USeries.monomial(w, 1, uorder) + USeries.monomial(2 * w, 1, uorder)
                scalar = (USeries.one(uorder) - USeries.monomial(w, 1, uorder)) ** (-2)
                yield w, core * scalar
            elif kind == "theta1":
                w = 2 * m
                core = one + two_cosh * USeries.monomial(w, 1, uorder) + USeries.monomial(2 * w, 1, uorder)
                scalar = (USeries.one(uorder) + USeries.monomial(w, 1, uorder)) ** (-2)
                yield w, core * scalar
            else:
                w = 2 * m
                den = one - two_cosh * USeries.monomial(w, 1, uorder) + USeries.monomial(2 * w, 1, uorder)
                num = (USeries.one(uorder) - USeries.monomial(w, 1, uorder)) ** 2
                yield w, den.inverse() * num
            m += 1

    prod = rs_product(factors(), xdeg, uorder)
    if kind == "theta":
        return prod * RootSeries.from_xpoly(half_x_over_sinh_half_poly(xdeg), xdeg, uorder)
    if kind == "theta1":
        return prod * RootSeries.from_xpoly(cosh_half_poly(xdeg), xdeg, uorder)
    return prod


class GenusKind(str, Enum):
    AHAT = "ahat"
    LHAT = "lhat"
    ELL1 = "ell1"
    ELL2 = "ell2"
    WITTEN = "witten"


@lru_cache(maxsize=None)
def genus_root_series(kind: GenusKind, xdeg: int, uorder: int) -> RootSeries:
    """The per-root factor of a genus, ready for `genus_class`.

    Ell1 carries a per-root 2 (accumulating to the global 2^(2n)), so its
    value at x = 0 is the constant 2; all q-dependence of A-hat and L-hat is
    trivial by definition.
    """
    kind = GenusKind(kind)
    if kind is GenusKind.AHAT:
        return RootSeries.from_xpoly(half_x_over_sinh_half_poly(xdeg), xdeg, uorder)
    if kind is GenusKind.LHAT:
        return RootSeries.from_xpoly(x_over_tanh_half_poly(xdeg), xdeg, uorder)
    if kind is GenusKind.WITTEN:
        return theta_factor("theta", xdeg, uorder)
    if kind is GenusKind.ELL1:
        return theta_factor("theta", xdeg, uorder) * theta_factor("theta1", xdeg, uorder) * 2
    return theta_factor("theta", xdeg, uorder) * theta_factor("theta2", xdeg, uorder)
