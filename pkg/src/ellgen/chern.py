"""Chern-root calculus: from per-root factors to Pontryagin-class polynomials.

A 4n-manifold enters as its Pontryagin numbers, indexed by partitions of n.
A multiplicative genus enters as one even power series f(x) per formal root;
`genus_class` turns prod_{j=1}^{2n} f(x_j) into a polynomial in p_1..p_n via
log/exp and Newton power sums, and `pair` contracts the weight-n part with
the Pontryagin numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from .errors import DimMismatch, NonUnitConstant, OddTermPresent, WeightViolation
from .series import Scalar, USeries, default_uorder

Partition = tuple[int, ...]


def partition_key(parts) -> Partition:
    """Canonical partition: weakly decreasing tuple of positive integers."""
    t = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in t):
        raise ValueError(f"partition parts must be positive: {parts}")
    return t


def weight(p: Partition) -> int:
    return sum(p)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, parts weakly decreasing."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ((),)
    out: list[Partition] = []

    def gen(rest: int, maxpart: int, prefix: tuple[int, ...]):
        if rest == 0:
            out.append(prefix)
            return
        for p in range(min(rest, maxpart), 0, -1):
            gen(rest - p, p, prefix + (p,))

    gen(n, n, ())
    return tuple(out)


def partition_to_str(p: Partition) -> str:
    return "[" + ",".join(str(i) for i in p) + "]"


def partition_from_str(s: str) -> Partition:
    parts = json.loads(s)
    if not isinstance(parts, list):
        raise ValueError(f"partition key must be a JSON array: {s!r}")
    return partition_key(parts)


# ---------------------------------------------------------------------------
# Manifolds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Manifold:
    """A 4n-dimensional pairing target: name, dimension, Pontryagin numbers.

    `pont` maps partitions of n = dim/4 to rationals; absent keys read as 0.
    """

    name: str
    dim: int
    pont: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 4:
            raise DimMismatch(f"dimension {self.dim} is not a positive multiple of 4")
        n = self.dim // 4
        clean: dict[Partition, Fraction] = {}
        for k, v in self.pont.items():
            key = partition_key(k)
            if weight(key) != n:
                raise ValueError(
                    f"partition {key} has weight {weight(key)}, expected {n} for dim {self.dim}"
                )
            v = Fraction(v)
            if v:
                clean[key] = v
        object.__setattr__(self, "pont", clean)

    @property
    def n(self) -> int:
        return self.dim // 4

    def pont_number(self, parts) -> Fraction:
        return self.pont.get(partition_key(parts), Fraction(0))

    def missing_partitions(self) -> list[Partition]:
        return [p for p in partitions_of(self.n) if p not in self.pont]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "pontryagin_numbers": {
                partition_to_str(p): str(v) for p, v in sorted(self.pont.items())
            },
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Manifold":
        try:
            name = str(obj.get("name", ""))
            dim = int(obj["dim"])
            raw = obj.get("pontryagin_numbers", {})
            pont = {partition_from_str(k): Fraction(v) for k, v in raw.items()}
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed manifold JSON: {exc}") from exc
        return cls(name=name, dim=dim, pont=pont)


def disjoint_union(a: Manifold, b: Manifold) -> Manifold:
    """Pontryagin numbers add under disjoint union."""
    if a.dim != b.dim:
        raise DimMismatch(f"cannot union dim {a.dim} with dim {b.dim}")
    pont: dict[Partition, Fraction] = dict(a.pont)
    for k, v in b.pont.items():
        pont[k] = pont.get(k, Fraction(0)) + v
    return Manifold(name=f"{a.name}+{b.name}", dim=a.dim, pont=pont)


# ---------------------------------------------------------------------------
# RootSeries: truncated polynomials in one formal root variable x
# ---------------------------------------------------------------------------


class RootSeries:
    """Polynomial in x (degree < xdeg) with USeries coefficients.

    The root variable is normalized as x = 2*pi*sqrt(-1)*z, so hyperbolic
    per-root factors have rational coefficients.  Genus factors are even
    in x; `is_even` reports that property and `rotate` maps an even series
    f(x) to f(ix) (the tan-convention twin).
    """

    __slots__ = ("xdeg", "uorder", "_c")

    def __init__(self, coeffs: Mapping[int, USeries], xdeg: int, uorder: int):
        if xdeg < 1:
            raise ValueError("xdeg must be >= 1")
        self.xdeg = xdeg
        self.uorder = uorder
        c: dict[int, USeries] = {}
        for k, s in coeffs.items():
            if k < 0:
                raise ValueError(f"negative x-exponent {k}")
            if k >= xdeg:
                continue
            if s.order != uorder:
                s = s.truncate(uorder) if s.order > uorder else _extend_err(s, uorder)
            if not s.is_zero():
                c[k] = s
        self._c = c

    @classmethod
    def from_xpoly(cls, poly: Mapping[int, Scalar], xdeg: int, uorder: int) -> "RootSeries":
        """Lift a rational polynomial in x to a u-constant RootSeries."""
        return cls(
            {k: USeries.const(v, uorder) for k, v in poly.items() if v},
            xdeg,
            uorder,
        )

    @classmethod
    def const(cls, value: Union[Scalar, USeries], xdeg: int, uorder: int) -> "RootSeries":
        s = value if isinstance(value, USeries) else USeries.const(value, uorder)
        return cls({0: s}, xdeg, uorder)

    def coeff(self, k: int) -> USeries:
        if k >= self.xdeg:
            raise ValueError(f"x^{k} beyond truncation degree {self.xdeg}")
        return self._c.get(k, USeries.zero(self.uorder))

    def constant_term(self) -> USeries:
        return self.coeff(0)

    def items(self):
        return iter(sorted(self._c.items()))

    @property
    def is_even(self) -> bool:
        return all(k % 2 == 0 for k in self._c)

    def is_zero(self) -> bool:
        return not self._c

    def u_valuation(self) -> int | None:
        vals = [s.valuation() for s in self._c.values()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootSeries):
            return NotImplemented
        return (
            self.xdeg == other.xdeg
            and self.uorder == other.uorder
            and self._c == other._c
        )

    def __repr__(self) -> str:
        return f"RootSeries(xdeg={self.xdeg}, uorder={self.uorder}, terms={len(self._c)})"

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "RootSeries | None":
        if isinstance(other, RootSeries):
            return other
        if isinstance(other, (int, Fraction, USeries)):
            return RootSeries.const(other, self.xdeg, self.uorder)
        return None

    def __add__(self, other) -> "RootSeries":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        xdeg = min(self.xdeg, o.xdeg)
        uorder = min(self.uorder, o.uorder)
        c = {k: s.truncate(uorder) for k, s in self._c.items() if k < xdeg}
        for k, s in o._c.items():
            if k < xdeg:
                c[k] = c.get(k, USeries.zero(uorder)) + s
        return RootSeries(c, xdeg, uorder)

    __radd__ = __add__

    def __neg__(self) -> "RootSeries":
        return RootSeries({k: -s for k, s in self._c.items()}, self.xdeg, self.uorder)

    def __sub__(self, other) -> "RootSeries":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RootSeries":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "RootSeries":
        if isinstance(other, (int, Fraction, USeries)):
            s = other if isinstance(other, USeries) else USeries.const(other, self.uorder)
            return RootSeries(
                {k: c * s for k, c in self._c.items()}, self.xdeg, min(self.uorder, s.order)
            )
        if not isinstance(other, RootSeries):
            return NotImplemented
        xdeg = min(self.xdeg, other.xdeg)
        uorder = min(self.uorder, other.uorder)
        c: dict[int, USeries] = {}
        for k1, s1 in self._c.items():
            if k1 >= xdeg:
                continue
            for k2, s2 in other._c.items():
                k = k1 + k2
                if k >= xdeg:
                    continue
                prod = s1 * s2
                c[k] = c.get(k, USeries.zero(uorder)) + prod
        return RootSeries(c, xdeg, uorder)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RootSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = RootSeries.const(1, self.xdeg, self.uorder)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def inverse(self) -> "RootSeries":
        """x-adic inverse; the x^0 coefficient must be an invertible USeries."""
        c0 = self.constant_term()
        if not c0.constant():
            raise NonUnitConstant("x^0 coefficient has zero constant term")
        c0_inv = c0.inverse()
        # self = c0 (1 + M) with M of positive x-valuation: geometric series.
        m = self * c0_inv - 1
        result = RootSeries.const(1, self.xdeg, self.uorder)
        power = RootSeries.const(1, self.xdeg, self.uorder)
        sign = -1
        while not (power := power * m).is_zero():
            result = result + (power if sign > 0 else -power)
            sign = -sign
        return result * c0_inv

    def log_unit(self) -> "RootSeries":
        """log of a series with x^0 coefficient exactly 1 (x-adic expansion)."""
        if self.constant_term() != USeries.one(self.uorder):
            raise NonUnitConstant("log_unit requires x^0 coefficient 1")
        m = self - 1
        result = RootSeries({}, self.xdeg, self.uorder)
        power = RootSeries.const(1, self.xdeg, self.uorder)
        k = 1
        sign = 1
        while not (power := power * m).is_zero():
            result = result + power * Fraction(sign, k)
            k += 1
            sign = -sign
        return result

    # -- substitutions -------------------------------------------------------

    def scale_x(self, c: Scalar) -> "RootSeries":
        """Substitute x -> c*x."""
        c = Fraction(c)
        return RootSeries(
            {k: s * c**k for k, s in self._c.items()}, self.xdeg, self.uorder
        )

    def rotate(self) -> "RootSeries":
        """Substitute x -> ix on an even series: x^(2k) coefficients gain (-1)^k."""
        if not self.is_even:
            raise OddTermPresent("rotation x -> ix needs an even series")
        return RootSeries(
            {k: (s if k % 4 == 0 else -s) for k, s in self._c.items()},
            self.xdeg,
            self.uorder,
        )

    def truncate_x(self, xdeg: int) -> "RootSeries":
        if xdeg > self.xdeg:
            raise ValueError(f"cannot extend xdeg {self.xdeg} to {xdeg}")
        return RootSeries(self._c, xdeg, self.uorder)

    def truncate_u(self, uorder: int) -> "RootSeries":
        return RootSeries(
            {k: s.truncate(uorder) for k, s in self._c.items()}, self.xdeg, uorder
        )


def _extend_err(s: USeries, uorder: int) -> USeries:
    raise ValueError(
        f"coefficient series has order {s.order}, below the RootSeries order {uorder}"
    )


def rs_product(factors, xdeg: int, uorder: int) -> RootSeries:
    """RootSeries analogue of `us_product`: same weight contract in u."""
    result = RootSeries.const(1, xdeg, uorder)
    last_weight = None
    for w, factor in factors:
        if last_weight is not None and w <= last_weight:
            raise WeightViolation(f"factor weights must strictly increase at {w}")
        last_weight = w
        if w >= uorder:
            break
        dev = factor - 1
        val = dev.u_valuation()
        if val is not None and val < w:
            raise WeightViolation(
                f"factor deviates from 1 at u^{val}, below declared weight {w}"
            )
        result = result * factor
    return result


# ---------------------------------------------------------------------------
# PontPoly: polynomials in the Pontryagin generators
# ---------------------------------------------------------------------------


class PontPoly:
    """Graded polynomial in p_1..p_nmax with USeries coefficients.

    Keys are partitions (p_lambda = prod p_{lambda_i}); p_i has weight i.
    Terms of weight above nmax are dropped: only weight n ever pairs with a
    4n-manifold, so nmax = n loses nothing.
    """

    __slots__ = ("nmax", "uorder", "_t")

    def __init__(self, terms: Mapping[Partition, USeries], nmax: int, uorder: int):
        self.nmax = nmax
        self.uorder = uorder
        t: dict[Partition, USeries] = {}
        for k, s in terms.items():
            key = partition_key(k) if k else ()
            if weight(key) > nmax:
                continue
            if s.order != uorder:
                s = s.truncate(uorder) if s.order > uorder else _extend_err(s, uorder)
            if not s.is_zero():
                t[key] = s
        self._t = t

    @classmethod
    def const(cls, value: Union[Scalar, USeries], nmax: int, uorder: int) -> "PontPoly":
        s = value if isinstance(value, USeries) else USeries.const(value, uorder)
        return cls({(): s}, nmax, uorder)

    @classmethod
    def generator(cls, i: int, nmax: int, uorder: int) -> "PontPoly":
        """The class p_i."""
        return cls({(i,): USeries.one(uorder)}, nmax, uorder)

    def coeff(self, parts) -> USeries:
        return self._t.get(partition_key(parts) if parts else (), USeries.zero(self.uorder))

    def items(self):
        return iter(sorted(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def weight_part(self, w: int) -> "PontPoly":
        return PontPoly(
            {k: s for k, s in self._t.items() if weight(k) == w}, self.nmax, self.uorder
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PontPoly):
            return NotImplemented
        return (
            self.nmax == other.nmax
            and self.uorder == other.uorder
            and self._t == other._t
        )

    def __repr__(self) -> str:
        return f"PontPoly(nmax={self.nmax}, uorder={self.uorder}, terms={len(self._t)})"

    def _coerce(self, other) -> "PontPoly | None":
        if isinstance(other, PontPoly):
            return other
        if isinstance(other, (int, Fraction, USeries)):
            return PontPoly.const(other, self.nmax, self.uorder)
        return None

    def __add__(self, other) -> "PontPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nmax = min(self.nmax, o.nmax)
        uorder = min(self.uorder, o.uorder)
        t = {k: s.truncate(uorder) for k, s in self._t.items() if weight(k) <= nmax}
        for k, s in o._t.items():
            if weight(k) <= nmax:
                t[k] = t.get(k, USeries.zero(uorder)) + s
        return PontPoly(t, nmax, uorder)

    __radd__ = __add__

    def __neg__(self) -> "PontPoly":
        return PontPoly({k: -s for k, s in self._t.items()}, self.nmax, self.uorder)

    def __sub__(self, other) -> "PontPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "PontPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "PontPoly":
        if isinstance(other, (int, Fraction, USeries)):
            s = other if isinstance(other, USeries) else USeries.const(other, self.uorder)
            return PontPoly(
                {k: c * s for k, c in self._t.items()},
                self.nmax,
                min(self.uorder, s.order),
            )
        if not isinstance(other, PontPoly):
            return NotImplemented
        nmax = min(self.nmax, other.nmax)
        uorder = min(self.uorder, other.uorder)
        t: dict[Partition, USeries] = {}
        for k1, s1 in self._t.items():
            w1 = weight(k1)
            if w1 > nmax:
                continue
            for k2, s2 in other._t.items():
                if w1 + weight(k2) > nmax:
                    continue
                key = partition_key(k1 + k2) if (k1 or k2) else ()
                prod = s1 * s2
                t[key] = t.get(key, USeries.zero(uorder)) + prod
        return PontPoly(t, nmax, uorder)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PontPoly":
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = PontPoly.const(1, self.nmax, self.uorder)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def exp(self) -> "PontPoly":
        """exp of a polynomial with zero weight-0 part (nilpotent, finite sum)."""
        if not self.coeff(()).is_zero():
            raise ValueError("exp requires zero constant part")
        result = PontPoly.const(1, self.nmax, self.uorder)
        term = PontPoly.const(1, self.nmax, self.uorder)
        for k in range(1, self.nmax + 1):
            term = term * self * Fraction(1, k)
            if term.is_zero():
                break
            result = result + term
        return result


@lru_cache(maxsize=None)
def _newton_terms(k: int, nmax: int) -> tuple[tuple[Partition, int], ...]:
    """Power sum s_k = sum_j (x_j^2)^k in the p_i, as integer partition terms."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return (((1,), 1),)
    acc: dict[Partition, int] = {}
    # s_k = p_1 s_{k-1} - p_2 s_{k-2} + ... + (-1)^{k-1} k p_k
    for i in range(1, min(k - 1, nmax) + 1):
        sign = 1 if i % 2 == 1 else -1
        for part, coef in _newton_terms(k - i, nmax):
            if weight(part) + i > nmax:
                continue
            key = partition_key(part + (i,))
            acc[key] = acc.get(key, 0) + sign * coef
    if k <= nmax:
        key = (k,)
        acc[key] = acc.get(key, 0) + (1 if k % 2 == 1 else -1) * k
    return tuple(sorted((p, c) for p, c in acc.items() if c))


def newton_power_sum(k: int, nmax: int, uorder: int | None = None) -> PontPoly:
    """s_k = sum_j (x_j^2)^k expressed in the elementary symmetric p_i."""
    if uorder is None:
        uorder = default_uorder()
    return PontPoly(
        {p: USeries.const(c, uorder) for p, c in _newton_terms(k, nmax)}, nmax, uorder
    )


def genus_class(f: RootSeries, n: int) -> PontPoly:
    """Reduce prod_{j=1}^{2n} f(x_j) to a polynomial in p_1..p_n.

    Writes log(f/f(0)) = sum_k a_k x^(2k) and returns
    f(0)^(2n) * exp(sum_k a_k s_k); the cost is independent of the number
    of roots.
    """
    if not f.is_even:
        raise OddTermPresent("genus factor must be even in x")
    if f.xdeg < 2 * n + 1:
        raise ValueError(f"xdeg {f.xdeg} too small for n = {n} (need >= {2 * n + 1})")
    c0 = f.constant_term()
    if not c0.constant():
        raise NonUnitConstant("genus factor value at x = 0 is not invertible")
    uorder = f.uorder
    logf = (f * c0.inverse()).log_unit()
    acc = PontPoly({}, n, uorder)
    for k in range(1, n + 1):
        a_k = logf.coeff(2 * k)
        if a_k.is_zero():
            continue
        acc = acc + newton_power_sum(k, n, uorder) * a_k
    return acc.exp() * c0 ** (2 * n)


def ch_tangent(n: int, nmax: int, uorder: int | None = None) -> PontPoly:
    """Chern character of the complexified tangent bundle of a 4n-manifold.

    From roots {e^{x_j}, e^{-x_j}}: ch = 4n + sum_k 2 s_k / (2k)!.
    """
    if uorder is None:
        uorder = default_uorder()
    result = PontPoly.const(4 * n, nmax, uorder)
    fact = 1
    for k in range(1, nmax + 1):
        fact *= (2 * k) * (2 * k - 1)
        result = result + newton_power_sum(k, nmax, uorder) * Fraction(2, fact)
    return result


def pair(c: PontPoly, m: Manifold) -> USeries:
    """Contract the weight-n part of `c` with the Pontryagin numbers of `m`."""
    if m.dim % 4:
        raise DimMismatch(f"dimension {m.dim} not a multiple of 4")
    n = m.n
    if c.nmax < n:
        raise DimMismatch(f"class truncated at weight {c.nmax}, manifold needs {n}")
    acc = USeries.zero(c.uorder)
    for part in partitions_of(n):
        coef = c.coeff(part)
        if coef.is_zero():
            continue
        num = m.pont_number(part)
        if num:
            acc = acc + coef * num
    return acc
