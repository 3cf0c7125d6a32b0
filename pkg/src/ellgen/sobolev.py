"""Explicit analytic constants: Sobolev radius root and Moser exponents.

This is the one floating-point corner of the package.  C(b) is the unique
positive root of x int_0^b (cosh t + x sinh t)^(m-1) dt = int_0^pi
sin^(m-1) t dt; x -> x F(x) is strictly increasing, so bracketing bisection
is unconditionally safe.  The iteration constant of the mean value
inequality is assembled from closed forms of the geometric sums K_1, K_2.

The sphere Sobolev constant Sigma(m, l1, l2) and the Moser constant C(m, p)
have no closed form here and stay caller-supplied parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ExponentRangeViolation, ToleranceNotReached

_MAX_BISECT = 400


def wallis(m: int) -> float:
    """int_0^pi sin^(m-1) t dt by the exact recurrence I_k = (k-1)/k I_(k-2)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    k = m - 1
    value = math.pi if k % 2 == 0 else 2.0
    j = 2 if k % 2 == 0 else 3
    while j <= k:
        value *= (j - 1) / j
        j += 2
    return value


def _simpson(f, a: float, b: float) -> float:
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))


def _adaptive_simpson(f, a: float, b: float, tol: float, depth: int = 40) -> float:
    whole = _simpson(f, a, b)
    return _adaptive_step(f, a, b, tol, whole, depth)


def _adaptive_step(f, a: float, b: float, tol: float, whole: float, depth: int) -> float:
    mid = 0.5 * (a + b)
    left = _simpson(f, a, mid)
    right = _simpson(f, mid, b)
    # The relative floor keeps the recursion from chasing tolerances below
    # rounding noise when the local integral is large.
    floor = max(tol, 1e-15 * (abs(left) + abs(right)))
    if depth <= 0 or abs(left + right - whole) <= 15.0 * floor:
        return left + right + (left + right - whole) / 15.0
    return _adaptive_step(f, a, mid, tol / 2.0, left, depth - 1) + _adaptive_step(
        f, mid, b, tol / 2.0, right, depth - 1
    )


def _closed_form_F(m: int, b: float, x: float) -> float:
    # cosh t + x sinh t = A e^t + B e^-t with A = (1+x)/2, B = (1-x)/2, so
    # the integrand expands binomially into exponentials and integrates
    # exactly.  For x <= 1 every term is nonnegative: no cancellation.
    A = 0.5 * (1.0 + x)
    B = 0.5 * (1.0 - x)
    total = 0.0
    for k in range(m):
        j = 2 * k - (m - 1)
        piece = b if j == 0 else math.expm1(j * b) / j
        total += math.comb(m - 1, k) * A**k * B ** (m - 1 - k) * piece
    return total


def _xF(m: int, b: float, x: float, tol: float) -> float:
    # x F(x) with the x scaling inside, so absolute tolerances stay
    # meaningful across the huge dynamic range of x.  Above x = 1 the
    # closed form cancels catastrophically, but there the root equation
    # forces (m-1) b to be small and quadrature is cheap.
    if x <= 1.0:
        return x * _closed_form_F(m, b, x)
    return _adaptive_simpson(
        lambda t: x * (math.cosh(t) + x * math.sinh(t)) ** (m - 1), 0.0, b, tol
    )


def sobolev_c(m: int, b: float, tol: float = 1e-11) -> float:
    """The unique positive root C(b) of x F(x) = wallis(m).

    F(x) = int_0^b (cosh t + x sinh t)^(m-1) dt; the returned x satisfies
    |x F(x) - wallis(m)| < tol.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if b <= 0:
        raise ValueError("b must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = wallis(m)
    qtol = tol / 10.0
    f_at_zero = _closed_form_F(m, b, 0.0)
    hi = target / f_at_zero + 1.0  # x F(x) >= x F(0), so this always brackets
    while _xF(m, b, hi, qtol) < target:
        hi *= 2.0
        if not math.isfinite(hi):
            raise ToleranceNotReached("bracketing diverged")
    lo = 0.0
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        value = _xF(m, b, mid, qtol)
        if abs(value - target) < tol:
            return mid
        if value < target:
            lo = mid
        else:
            hi = mid
    raise ToleranceNotReached(
        f"residual tolerance {tol} not reached after {_MAX_BISECT} bisections"
    )


def radius_r(diam: float, b: float, m: int, tol: float = 1e-11) -> float:
    """R = diam / (b C(b))."""
    if diam <= 0:
        raise ValueError("diam must be positive")
    return diam / (b * sobolev_c(m, b, tol))


def sphere_volume(m: int) -> float:
    """Volume of the unit m-sphere: 2 pi^((m+1)/2) / Gamma((m+1)/2)."""
    return 2.0 * math.pi ** ((m + 1) / 2.0) / math.gamma((m + 1) / 2.0)


def poincare_s(l1: float, l2: float, V: float, R: float, m: int, Sigma: float) -> float:
    """S_{l1,l2} = (V / vol(S^m))^(1/l1 - 1/l2) R Sigma(m, l1, l2)."""
    if not (1 <= l1 and math.isfinite(l1)):
        raise ExponentRangeViolation(f"need 1 <= l1 < inf, got {l1}")
    if not (1 <= l2 < m):
        raise ExponentRangeViolation(f"need 1 <= l2 < m = {m}, got {l2}")
    if l1 > m * l2 / (m - l2):
        raise ExponentRangeViolation(
            f"l1 = {l1} above the Sobolev exponent {m * l2 / (m - l2)}"
        )
    if V <= 0 or R <= 0 or Sigma <= 0:
        raise ValueError("V, R and Sigma must be positive")
    return (V / sphere_volume(m)) ** (1.0 / l1 - 1.0 / l2) * R * Sigma


@dataclass(frozen=True)
class MoserExponents:
    """mu = m/(m-2), eps = (mu(p-1)-p)/(p(mu-1)), and the iteration sums
    K1 = sum_i i mu^-i, K2 = sum_i mu^-i in closed form."""

    m: int
    p: float
    mu: float
    eps: float
    K1: float
    K2: float


def moser_exponents(m: int, p: float) -> MoserExponents:
    if m < 3:
        raise ExponentRangeViolation(f"need m >= 3, got {m}")
    if p <= m / 2:
        raise ExponentRangeViolation(f"need p > m/2 = {m / 2}, got {p}")
    mu = m / (m - 2.0)
    eps = (mu * (p - 1.0) - p) / (p * (mu - 1.0))
    r = 1.0 / mu
    k1 = r / (1.0 - r) ** 2
    k2 = 1.0 / (1.0 - r)
    return MoserExponents(m=m, p=p, mu=mu, eps=eps, K1=k1, K2=k2)


def moser_constant(m: int, p: float, R: float, Lambda: float, Cmp: float) -> float:
    """C(m, p, R, Lambda) = mu^(2 K1 p(mu-1)/(mu(p-1)-p)) B^(2 K2) with
    B = Cmp Lambda^((mu-1)/(2(mu(p-1)-p))) R^(p(mu-1)/(mu(p-1)-p)) + 2."""
    if R <= 0:
        raise ValueError("R must be positive")
    if Lambda < 0:
        raise ValueError("Lambda must be nonnegative")
    if Cmp <= 0:
        raise ValueError("Cmp must be positive")
    e = moser_exponents(m, p)
    denom = e.mu * (p - 1.0) - p
    main_exp = p * (e.mu - 1.0) / denom
    B = Cmp * Lambda ** (0.5 * (e.mu - 1.0) / denom) * R**main_exp + 2.0
    return e.mu ** (2.0 * e.K1 * main_exp) * B ** (2.0 * e.K2)
