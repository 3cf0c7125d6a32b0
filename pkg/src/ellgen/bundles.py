"""Lambda-ring expansion of the Witten bundles into coefficient bundles.

The twisted tensor products Theta x Theta_1 and Theta x Theta_2 of the
reduced tangent bundle expand as q-series whose coefficients A_k, B_k are
integer combinations of monomials S^a1(T)...Lambda^b1(T)... of total tensor
power at most k.  Reduction by the trivial bundle only contributes scalar
factors (1 -+ t)^(+-4n), so the monomials stay honest S/Lambda powers of T.

The coefficient bundles feed an index-route computation of Ell_2 through
the Chern character, entirely independent of the theta-product route.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .chern import Manifold, PontPoly, newton_power_sum, pair
from .errors import DimMismatch
from .genera import ahat_class
from .series import USeries, default_uorder


@dataclass(frozen=True)
class BundleMonomial:
    """S^a1(T) x ... x Lambda^b1(T) x ...; powers stored as sorted tuples."""

    sym: tuple[int, ...] = ()
    ext: tuple[int, ...] = ()

    @staticmethod
    def make(sym=(), ext=()) -> "BundleMonomial":
        sym = tuple(sorted(int(a) for a in sym))
        ext = tuple(sorted(int(b) for b in ext))
        if any(a < 1 for a in sym) or any(b < 1 for b in ext):
            raise ValueError("tensor powers must be >= 1")
        return BundleMonomial(sym, ext)

    @property
    def total_power(self) -> int:
        return sum(self.sym) + sum(self.ext)

    def rank(self, n: int) -> int:
        """Rank over a rank-4n bundle; 0 when some exterior power exceeds 4n."""
        r = 4 * n
        out = 1
        for a in self.sym:
            out *= comb(r + a - 1, a)
        for b in self.ext:
            out *= comb(r, b)
        return out

    def pretty(self) -> str:
        if not self.sym and not self.ext:
            return "1"
        parts = [f"S^{a}(T)" for a in self.sym] + [f"Λ^{b}(T)" for b in self.ext]
        return "⊗".join(parts)


_ONE = BundleMonomial()


class VirtualBundlePoly:
    """Integer combination of bundle monomials, for a fixed rank parameter n."""

    __slots__ = ("n", "_t")

    def __init__(self, terms: Mapping[BundleMonomial, int], n: int):
        self.n = n
        t: dict[BundleMonomial, int] = {}
        for mono, coef in terms.items():
            coef = int(coef)
            # Exterior powers above the rank are the zero bundle.
            if coef and all(b <= 4 * n for b in mono.ext):
                t[mono] = coef
        self._t = t

    @classmethod
    def const(cls, value: int, n: int) -> "VirtualBundlePoly":
        return cls({_ONE: value}, n)

    def coeff(self, mono: BundleMonomial) -> int:
        return self._t.get(mono, 0)

    def items(self):
        return iter(sorted(self._t.items(), key=lambda kv: (kv[0].total_power, kv[0].sym, kv[0].ext)))

    def is_zero(self) -> bool:
        return not self._t

    def max_power(self) -> int:
        return max((m.total_power for m in self._t), default=0)

    def virtual_rank(self) -> int:
        return sum(c * m.rank(self.n) for m, c in self._t.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualBundlePoly):
            return NotImplemented
        return self.n == other.n and self._t == other._t

    def __add__(self, other) -> "VirtualBundlePoly":
        if isinstance(other, int):
            other = VirtualBundlePoly.const(other, self.n)
        if not isinstance(other, VirtualBundlePoly):
            return NotImplemented
        t = dict(self._t)
        for m, c in other._t.items():
            t[m] = t.get(m, 0) + c
        return VirtualBundlePoly(t, self.n)

    __radd__ = __add__

    def __neg__(self) -> "VirtualBundlePoly":
        return VirtualBundlePoly({m: -c for m, c in self._t.items()}, self.n)

    def __sub__(self, other) -> "VirtualBundlePoly":
        if isinstance(other, int):
            other = VirtualBundlePoly.const(other, self.n)
        if not isinstance(other, VirtualBundlePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "VirtualBundlePoly":
        if isinstance(other, int):
            return VirtualBundlePoly({m: c * other for m, c in self._t.items()}, self.n)
        if not isinstance(other, VirtualBundlePoly):
            return NotImplemented
        t: dict[BundleMonomial, int] = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = BundleMonomial.make(m1.sym + m2.sym, m1.ext + m2.ext)
                t[m] = t.get(m, 0) + c1 * c2
        return VirtualBundlePoly(t, self.n)

    __rmul__ = __mul__

    def pretty(self) -> str:
        if not self._t:
            return "0"
        ordered = sorted(
            self._t.items(), key=lambda kv: (-kv[0].total_power, kv[0].sym, kv[0].ext)
        )
        parts = []
        for mono, coef in ordered:
            name = mono.pretty()
            if name == "1":
                term = f"{coef}·1"
            elif coef == 1:
                term = name
            elif coef == -1:
                term = f"-{name}"
            else:
                term = f"{coef}·{name}"
            if parts and not term.startswith("-"):
                parts.append(f"+ {term}")
            elif parts:
                parts.append(f"- {term[1:]}")
            else:
                parts.append(term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"VirtualBundlePoly({self.pretty()!r}, n={self.n})"


@dataclass(frozen=True)
class BundleQSeries:
    """q-expansion (in u = q^(1/2)) with VirtualBundlePoly coefficients."""

    n: int
    order: int
    coeffs: Mapping[int, VirtualBundlePoly] = field(default_factory=dict)

    def coeff(self, k: int) -> VirtualBundlePoly:
        if k >= self.order:
            raise ValueError(f"coefficient u^{k} beyond truncation order {self.order}")
        return self.coeffs.get(k, VirtualBundlePoly({}, self.n))


def _bqs_mul(a: BundleQSeries, b: BundleQSeries) -> BundleQSeries:
    order = min(a.order, b.order)
    out: dict[int, VirtualBundlePoly] = {}
    for k1, v1 in a.coeffs.items():
        if k1 >= order:
            continue
        for k2, v2 in b.coeffs.items():
            k = k1 + k2
            if k >= order:
                continue
            prod = v1 * v2
            out[k] = out[k] + prod if k in out else prod
    return BundleQSeries(a.n, order, {k: v for k, v in out.items() if not v.is_zero()})


def _bqs_scalar(s: USeries, n: int) -> BundleQSeries:
    coeffs = {}
    for k, v in s.items():
        if v.denominator != 1:
            raise ValueError("bundle scalar series must have integer coefficients")
        coeffs[k] = VirtualBundlePoly.const(v.numerator, n)
    return BundleQSeries(n, s.order, coeffs)


@lru_cache(maxsize=None)
def expand_witten(which: str, n: int, uorder: int) -> BundleQSeries:
    """Expand Theta x Theta_1 ("theta1") or Theta x Theta_2 ("theta2").

    Uses S_t(E - C^r) = S_t(E)(1-t)^r and Lambda_t(E - C^r) = Lambda_t(E)
    (1+t)^(-r): the u^k coefficient is the bundle A_k resp. B_k.
    """
    if which not in ("theta1", "theta2"):
        raise ValueError(f"which must be 'theta1' or 'theta2', got {which!r}")
    if uorder < 1:
        raise ValueError("uorder must be >= 1")
    rank = 4 * n
    result = BundleQSeries(n, uorder, {0: VirtualBundlePoly.const(1, n)})
    m = 1
    while True:
        w_sym = 2 * m
        w_twist = 2 * m if which == "theta1" else 2 * m - 1
        if min(w_sym, w_twist) >= uorder:
            break
        if w_sym < uorder:
            sym_terms = {0: VirtualBundlePoly.const(1, n)}
            a = 1
            while w_sym * a < uorder:
                sym_terms[w_sym * a] = VirtualBundlePoly({BundleMonomial.make(sym=(a,)): 1}, n)
                a += 1
            result = _bqs_mul(result, BundleQSeries(n, uorder, sym_terms))
            one_minus = USeries.one(uorder) - USeries.monomial(w_sym, 1, uorder)
            result = _bqs_mul(result, _bqs_scalar(one_minus**rank, n))
        if w_twist < uorder:
            sign = 1 if which == "theta1" else -1
            ext_terms = {0: VirtualBundlePoly.const(1, n)}
            b = 1
            while w_twist * b < uorder:
                ext_terms[w_twist * b] = VirtualBundlePoly(
                    {BundleMonomial.make(ext=(b,)): sign**b}, n
                )
                b += 1
            result = _bqs_mul(result, BundleQSeries(n, uorder, ext_terms))
            tsigned = USeries.monomial(w_twist, sign, uorder)
            result = _bqs_mul(result, _bqs_scalar((USeries.one(uorder) + tsigned) ** (-rank), n))
        m += 1
    return result


# ---------------------------------------------------------------------------
# Chern characters of the monomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _scaled_tangent_ch(k: int, n: int, nmax: int, uorder: int) -> PontPoly:
    """sum_j (e^{k x_j} + e^{-k x_j}) = 4n + sum_r 2 k^(2r) s_r / (2r)!."""
    result = PontPoly.const(4 * n, nmax, uorder)
    fact = 1
    for r in range(1, nmax + 1):
        fact *= (2 * r) * (2 * r - 1)
        result = result + newton_power_sum(r, nmax, uorder) * Fraction(2 * k ** (2 * r), fact)
    return result


def _t_adic_exp(log_coeffs: list[PontPoly], tmax: int, n: int, nmax: int, uorder: int) -> list[PontPoly]:
    # exp of a t-polynomial with zero constant term, coefficients in PontPoly
    out = [PontPoly.const(1, nmax, uorder)]
    for m in range(1, tmax + 1):
        acc = PontPoly({}, nmax, uorder)
        for j in range(1, m + 1):
            if not log_coeffs[j].is_zero():
                acc = acc + log_coeffs[j] * out[m - j] * j
        out.append(acc * Fraction(1, m))
    return out


@lru_cache(maxsize=None)
def ch_sym_power(a: int, n: int, nmax: int, uorder: int) -> PontPoly:
    """ch(S^a T_C) via [t^a] exp(sum_k t^k/k * sum_j (e^{kx_j}+e^{-kx_j}))."""
    if a == 0:
        return PontPoly.const(1, nmax, uorder)
    log_coeffs = [PontPoly({}, nmax, uorder)]
    for k in range(1, a + 1):
        log_coeffs.append(_scaled_tangent_ch(k, n, nmax, uorder) * Fraction(1, k))
    return _t_adic_exp(log_coeffs, a, n, nmax, uorder)[a]


@lru_cache(maxsize=None)
def ch_ext_power(b: int, n: int, nmax: int, uorder: int) -> PontPoly:
    """ch(Lambda^b T_C) via [t^b] exp(sum_k (-1)^(k-1) t^k/k * (...))."""
    if b == 0:
        return PontPoly.const(1, nmax, uorder)
    log_coeffs = [PontPoly({}, nmax, uorder)]
    for k in range(1, b + 1):
        sign = 1 if k % 2 == 1 else -1
        log_coeffs.append(_scaled_tangent_ch(k, n, nmax, uorder) * Fraction(sign, k))
    return _t_adic_exp(log_coeffs, b, n, nmax, uorder)[b]


def ch_monomial(mono: BundleMonomial, n: int, nmax: int, uorder: int | None = None) -> PontPoly:
    """Chern character of a bundle monomial (ch is multiplicative)."""
    if uorder is None:
        uorder = default_uorder()
    result = PontPoly.const(1, nmax, uorder)
    for a in mono.sym:
        result = result * ch_sym_power(a, n, nmax, uorder)
    for b in mono.ext:
        result = result * ch_ext_power(b, n, nmax, uorder)
    return result


def ch_virtual(v: VirtualBundlePoly, nmax: int, uorder: int | None = None) -> PontPoly:
    if uorder is None:
        uorder = default_uorder()
    result = PontPoly({}, nmax, uorder)
    for mono, coef in v.items():
        result = result + ch_monomial(mono, v.n, nmax, uorder) * coef
    return result


# ---------------------------------------------------------------------------
# The bundle route to Ell_2
# ---------------------------------------------------------------------------


def index_bundle(m: Manifold, v: VirtualBundlePoly) -> Fraction:
    """<A-hat(TM) ch(v), [M]>: the index of the v-twisted Dirac operator."""
    if v.n != m.n:
        raise DimMismatch(f"bundle built for n = {v.n}, manifold has n = {m.n}")
    cls = ahat_class(m.n, 1) * ch_virtual(v, m.n, 1)
    return pair(cls, m).coeff(0)


@lru_cache(maxsize=None)
def _index_class(n: int, uorder: int, k: int) -> PontPoly:
    bk = expand_witten("theta2", n, uorder).coeff(k)
    return ahat_class(n, 1) * ch_virtual(bk, n, 1)


def ell2_via_bundles(m: Manifold, uorder: int | None = None) -> USeries:
    """Ell_2 as sum_k ind(D x B_k) u^k: the bundle route."""
    if uorder is None:
        uorder = default_uorder()
    if m.dim % 4:
        raise DimMismatch(f"dimension {m.dim} not a multiple of 4")
    coeffs = {}
    for k in range(uorder):
        value = pair(_index_class(m.n, uorder, k), m).coeff(0)
        if value:
            coeffs[k] = value
    return USeries(coeffs, uorder)
