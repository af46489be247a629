"""Graded intersection rings given by explicit structure constants.

A ring of complex dimension ``n`` has a basis in each degree ``0..n``.
Degree 0 is spanned by ``"1"`` and the top degree contains ``"pt"``,
normalised by ``integrate(pt) == 1``.  Products landing above degree ``n``
vanish, so an element never stores components above the top degree.

>>> ring = make_surface_ring(["H", "D"], [[1, 0], [0, -1]])
>>> ell = ring.divisor({"H": 1, "D": -3})
>>> integrate(ell * ell, ring)
Fraction(-8, 1)
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from ._rational import to_fraction
from .errors import InvalidRing, RingMismatch

UNIT = "1"
POINT = "pt"


class IntersectionRing:
    """Finite dimensional graded commutative algebra over the rationals."""

    def __init__(
        self,
        dim_base: int,
        basis: Sequence[Sequence[str]],
        products: Mapping[tuple[str, str], Mapping[str, object]] | None = None,
        top_degrees: Mapping[str, object] | None = None,
    ):
        if dim_base < 1:
            raise InvalidRing("dim_base must be at least 1")
        if len(basis) != dim_base + 1:
            raise InvalidRing(f"expected {dim_base + 1} graded pieces, got {len(basis)}")
        basis = tuple(tuple(piece) for piece in basis)
        if basis[0] != (UNIT,):
            raise InvalidRing('degree 0 must be spanned by the single class "1"')
        if POINT not in basis[dim_base]:
            raise InvalidRing('top degree must contain "pt"')
        names = [name for piece in basis for name in piece]
        if len(set(names)) != len(names):
            raise InvalidRing("basis names must be unique")

        self.dim_base = dim_base
        self.basis = basis
        self._where = {name: (d, i) for d, piece in enumerate(basis) for i, name in enumerate(piece)}

        top = {POINT: Fraction(1)}
        for name, value in (top_degrees or {}).items():
            if self._where.get(name, (None,))[0] != dim_base:
                raise InvalidRing(f"{name!r} is not a top-degree basis class")
            if name == POINT and to_fraction(value) != 1:
                raise InvalidRing("pt must integrate to 1")
            top[name] = to_fraction(value)
        missing = [name for name in basis[dim_base] if name not in top]
        if missing:
            raise InvalidRing(f"top-degree classes without a declared degree: {missing}")
        self._top = tuple(top[name] for name in basis[dim_base])

        self._table = self._build_table(products or {})

    def _build_table(self, products):
        declared: dict[tuple[str, str], tuple[Fraction, ...]] = {}
        for (left, right), value in products.items():
            for name in (left, right):
                if name not in self._where:
                    raise InvalidRing(f"unknown basis class {name!r}")
            d = self._where[left][0] + self._where[right][0]
            if d > self.dim_base:
                continue
            vec = [Fraction(0)] * len(self.basis[d])
            for name, coeff in value.items():
                loc = self._where.get(name)
                if loc is None or loc[0] != d:
                    raise InvalidRing(f"{left}*{right} must be a combination of degree-{d} classes, got {name!r}")
                vec[loc[1]] += to_fraction(coeff)
            vec = tuple(vec)
            for key in ((left, right), (right, left)):
                if key in declared and declared[key] != vec:
                    raise InvalidRing(f"{left}*{right} and {right}*{left} disagree")
                declared[key] = vec

        table = {}
        for (d1, p1), (d2, p2) in product(enumerate(self.basis), repeat=2):
            d = d1 + d2
            if d > self.dim_base:
                continue
            for (i1, a), (i2, b) in product(enumerate(p1), enumerate(p2)):
                if a == UNIT:
                    vec = _unit_vector(len(self.basis[d]), i2)
                elif b == UNIT:
                    vec = _unit_vector(len(self.basis[d]), i1)
                else:
                    vec = declared.get((a, b), (Fraction(0),) * len(self.basis[d]))
                table[d1, i1, d2, i2] = vec
        self._sparse = {key: tuple((j, c) for j, c in enumerate(vec) if c) for key, vec in table.items()}
        return table

    def _key(self):
        return (self.dim_base, self.basis, self._top, tuple(sorted(self._table.items())))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, IntersectionRing):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"IntersectionRing(dim_base={self.dim_base}, basis={self.basis!r})"

    # element constructors

    def zero(self) -> GradedClass:
        return GradedClass(self, {})

    def one(self) -> GradedClass:
        return self.element(UNIT)

    def point(self) -> GradedClass:
        return self.element(POINT)

    def element(self, name: str, coeff=1) -> GradedClass:
        if name not in self._where:
            raise RingMismatch(f"{name!r} is not a basis class of this ring")
        d, i = self._where[name]
        vec = [Fraction(0)] * len(self.basis[d])
        vec[i] = to_fraction(coeff)
        return GradedClass(self, {d: tuple(vec)})

    def combination(self, coeffs: Mapping[str, object]) -> GradedClass:
        out = self.zero()
        for name, c in coeffs.items():
            out = out + self.element(name, c)
        return out

    def divisor(self, coeffs: Mapping[str, object]) -> GradedClass:
        """Degree-one class from ``{divisor_name: coefficient}``."""
        for name in coeffs:
            if self._where.get(name, (None,))[0] != 1:
                raise RingMismatch(f"{name!r} is not a divisor class of this ring")
        return self.combination(coeffs)

    def scalar(self, value) -> GradedClass:
        return self.element(UNIT, value)

    def degree_of(self, name: str) -> int:
        return self._where[name][0]

    # arithmetic

    def mul(self, a: GradedClass, b: GradedClass) -> GradedClass:
        self._own(a)
        self._own(b)
        out: dict[int, list[Fraction]] = {}
        for d1, v1 in a._comps.items():
            for d2, v2 in b._comps.items():
                d = d1 + d2
                if d > self.dim_base:
                    continue
                acc = out.setdefault(d, [Fraction(0)] * len(self.basis[d]))
                for i1, x in enumerate(v1):
                    if not x:
                        continue
                    for i2, y in enumerate(v2):
                        if not y:
                            continue
                        xy = x * y
                        for j, c in self._sparse[d1, i1, d2, i2]:
                            acc[j] += xy * c
        return GradedClass._trusted(self, {d: tuple(v) for d, v in out.items() if any(v)})

    def integrate(self, a: GradedClass) -> Fraction:
        self._own(a)
        vec = a._comps.get(self.dim_base)
        if vec is None:
            return Fraction(0)
        return sum((x * t for x, t in zip(vec, self._top)), Fraction(0))

    def basis_elements(self) -> Iterable[GradedClass]:
        for piece in self.basis:
            for name in piece:
                yield self.element(name)

    def associativity_failures(self) -> list[tuple[str, str, str]]:
        """Basis triples of total degree <= n where ``(xy)z != x(yz)``."""
        failures = []
        named = [(name, self.element(name)) for piece in self.basis for name in piece]
        for (a, x), (b, y), (c, z) in product(named, repeat=3):
            if self.degree_of(a) + self.degree_of(b) + self.degree_of(c) > self.dim_base:
                continue
            if (x * y) * z != x * (y * z):
                failures.append((a, b, c))
        return failures

    def _own(self, a: GradedClass):
        if a.ring is not self and a.ring != self:
            raise RingMismatch("class belongs to a different ring")


def _unit_vector(size, index):
    vec = [Fraction(0)] * size
    vec[index] = Fraction(1)
    return tuple(vec)


class GradedClass:
    """Possibly inhomogeneous element of an :class:`IntersectionRing`.

    Immutable.  Supports ``+``, ``-``, ``*`` (by classes or rationals) and
    exact equality.
    """

    __slots__ = ("ring", "_comps")

    def __init__(self, ring: IntersectionRing, comps: Mapping[int, Sequence[Fraction]]):
        self.ring = ring
        clean = {}
        for d, vec in comps.items():
            if d > ring.dim_base or d < 0:
                continue
            vec = tuple(x if type(x) is Fraction else Fraction(x) for x in vec)
            if any(vec):
                clean[d] = vec
        self._comps = clean

    @classmethod
    def _trusted(cls, ring, comps):
        # comps already holds nonzero tuples of Fractions within range
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._comps = comps
        return obj

    def component(self, degree: int) -> GradedClass:
        """The homogeneous part of the given degree."""
        if degree in self._comps:
            return GradedClass._trusted(self.ring, {degree: self._comps[degree]})
        return GradedClass._trusted(self.ring, {})

    def coefficients(self, degree: int) -> tuple[Fraction, ...]:
        return self._comps.get(degree, (Fraction(0),) * len(self.ring.basis[degree]))

    def coefficient(self, name: str) -> Fraction:
        d, i = self.ring._where[name]
        return self.coefficients(d)[i]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self._comps))

    def is_zero(self) -> bool:
        return not self._comps

    def is_homogeneous(self, degree: int) -> bool:
        return all(d == degree for d in self._comps)

    def truncate(self, max_degree: int) -> GradedClass:
        if all(d <= max_degree for d in self._comps):
            return self
        return GradedClass._trusted(self.ring, {d: v for d, v in self._comps.items() if d <= max_degree})

    def __add__(self, other):
        if not isinstance(other, GradedClass):
            other = self.ring.scalar(other)
        self.ring._own(other)
        out = {d: list(v) for d, v in self._comps.items()}
        for d, v in other._comps.items():
            acc = out.setdefault(d, [Fraction(0)] * len(v))
            for i, x in enumerate(v):
                acc[i] += x
        return GradedClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass._trusted(self.ring, {d: tuple(-x for x in v) for d, v in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            return self.ring.mul(self, other)
        c = to_fraction(other)
        return GradedClass(self.ring, {d: tuple(c * x for x in v) for d, v in self._comps.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent: int):
        out = self.ring.one()
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return (self.ring is other.ring or self.ring == other.ring) and self._comps == other._comps
        try:
            return self == self.ring.scalar(to_fraction(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._comps.items())))

    def __repr__(self):
        terms = []
        for d in sorted(self._comps):
            for name, c in zip(self.ring.basis[d], self._comps[d]):
                if c:
                    terms.append(f"{c}" if name == UNIT else f"{c}*{name}")
        return " + ".join(terms) if terms else "0"


def make_surface_ring(divisor_names: Sequence[str], intersection_matrix) -> IntersectionRing:
    """Ring ``{1; divisors; pt}`` of a surface from its intersection form."""
    names = list(divisor_names)
    rows = [list(row) for row in intersection_matrix]
    if len(rows) != len(names) or any(len(row) != len(names) for row in rows):
        raise InvalidRing("intersection matrix must be square of size len(divisor_names)")
    matrix = [[to_fraction(x) for x in row] for row in rows]
    for i, j in product(range(len(names)), repeat=2):
        if matrix[i][j] != matrix[j][i]:
            raise InvalidRing(f"intersection matrix is not symmetric at ({i}, {j})")
    if {UNIT, POINT} & set(names):
        raise InvalidRing('divisor names may not be "1" or "pt"')
    products = {
        (a, b): {POINT: matrix[i][j]}
        for i, a in enumerate(names)
        for j, b in enumerate(names)
    }
    return IntersectionRing(2, [[UNIT], names, [POINT]], products)


def mul(a: GradedClass, b: GradedClass, ring: IntersectionRing) -> GradedClass:
    return ring.mul(a, b)


def integrate(a: GradedClass, ring: IntersectionRing) -> Fraction:
    return ring.integrate(a)
