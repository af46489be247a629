"""Classes on a projectivised bundle and their pushforward to the base.

A :class:`FiberedClass` on ``P(E) -> B`` (``rank E = s + 1``) is a polynomial
``sum_i h^i * beta_i`` in the hyperplane class ``h = c_1(O(1))`` with
coefficients pulled back from ``B``.  No relation is imposed on ``h``;
instead integration goes through the pushforward

    pi_*(h^(s+j) * beta) = s_j(E) * beta,    pi_*(h^i * beta) = 0 for i < s,

where ``s(E) = c(E)^-1``.  Terms of total degree above ``s + n`` are dropped
on construction since they vanish on the ``(s + n)``-dimensional total space.

The adiabatic parameter ``k`` never enters the ring: expansions in ``k``
are dictionaries keyed by the power of ``k``, and integrated results are
:class:`KPolynomial` objects.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Mapping

from ._rational import to_fraction
from .chern import BundleData, segre_classes
from .errors import RankMismatch, RingMismatch
from .intersection_ring import GradedClass, IntersectionRing


class FiberedClass:
    __slots__ = ("ring", "fiber_dim", "_coeffs")

    def __init__(self, ring: IntersectionRing, fiber_dim: int, coeffs: Mapping[int, GradedClass]):
        self.ring = ring
        self.fiber_dim = fiber_dim
        top = fiber_dim + ring.dim_base
        clean = {}
        for i, beta in coeffs.items():
            if i > top:
                continue
            beta = beta.truncate(top - i)
            if not beta.is_zero():
                clean[i] = beta
        self._coeffs = clean

    @classmethod
    def hyperplane(cls, ring: IntersectionRing, fiber_dim: int, power: int = 1) -> FiberedClass:
        return cls(ring, fiber_dim, {power: ring.one()})

    def coefficient(self, power: int) -> GradedClass:
        return self._coeffs.get(power, self.ring.zero())

    @property
    def powers(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def is_zero(self) -> bool:
        return not self._coeffs

    def total_degree_part(self, degree: int) -> FiberedClass:
        """Sum of the ``h^i * beta_(degree - i)`` terms."""
        return FiberedClass(
            self.ring,
            self.fiber_dim,
            {i: beta.component(degree - i) for i, beta in self._coeffs.items() if degree - i >= 0},
        )

    def _coerce(self, other) -> FiberedClass:
        if isinstance(other, FiberedClass):
            if other.fiber_dim != self.fiber_dim or (other.ring is not self.ring and other.ring != self.ring):
                raise RingMismatch("classes live on different projective bundles")
            return other
        if isinstance(other, GradedClass):
            return lift(other, self.fiber_dim)
        return lift(self.ring.scalar(to_fraction(other)), self.fiber_dim)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._coeffs)
        for i, beta in other._coeffs.items():
            out[i] = out[i] + beta if i in out else beta
        return FiberedClass(self.ring, self.fiber_dim, out)

    __radd__ = __add__

    def __neg__(self):
        return FiberedClass(self.ring, self.fiber_dim, {i: -b for i, b in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (FiberedClass, GradedClass)):
            return fiber_mul(self, self._coerce(other), self.ring)
        c = to_fraction(other)
        return FiberedClass(self.ring, self.fiber_dim, {i: c * b for i, b in self._coeffs.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent: int):
        out = lift(self.ring.one(), self.fiber_dim)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FiberedClass):
            return NotImplemented
        return (
            self.fiber_dim == other.fiber_dim
            and (self.ring is other.ring or self.ring == other.ring)
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self.fiber_dim, tuple(sorted(self._coeffs.items()))))

    def __repr__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"h^{i}*({b!r})" for i, b in sorted(self._coeffs.items()))


def lift(beta: GradedClass, fiber_dim: int) -> FiberedClass:
    """Pull a base class back to the projective bundle."""
    return FiberedClass(beta.ring, fiber_dim, {0: beta})


def fiber_mul(a: FiberedClass, b: FiberedClass, ring: IntersectionRing | None = None) -> FiberedClass:
    if a.fiber_dim != b.fiber_dim or (a.ring is not b.ring and a.ring != b.ring):
        raise RingMismatch("classes live on different projective bundles")
    top = a.fiber_dim + a.ring.dim_base
    out: dict[int, GradedClass] = {}
    for i, x in a._coeffs.items():
        for j, y in b._coeffs.items():
            if i + j > top:
                continue
            xy = x * y
            out[i + j] = out[i + j] + xy if i + j in out else xy
    return FiberedClass(a.ring, a.fiber_dim, out)


def pushforward(a: FiberedClass, bundle: BundleData, ring: IntersectionRing | None = None) -> GradedClass:
    if bundle.rank != a.fiber_dim + 1:
        raise RankMismatch(f"bundle of rank {bundle.rank} does not match fiber dimension {a.fiber_dim}")
    if bundle.ring is not a.ring and bundle.ring != a.ring:
        raise RingMismatch("bundle lives on a different base ring")
    segre = segre_classes(bundle)
    out = a.ring.zero()
    for i, beta in a._coeffs.items():
        j = i - a.fiber_dim
        if 0 <= j < len(segre):
            out = out + segre[j] * beta
    return out


def total_space_c1(base_c1: GradedClass, bundle: BundleData) -> FiberedClass:
    """``c_1`` of ``P(E)``: ``c_1(B) + rank(E) h + c_1(E)``."""
    s = bundle.rank - 1
    return bundle.rank * FiberedClass.hyperplane(base_c1.ring, s) + lift(base_c1 + bundle.c1, s)


class KPolynomial:
    """Polynomial in the adiabatic parameter ``k`` with exact rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean = {}
        for p, c in (coeffs or {}).items():
            c = to_fraction(c)
            if c:
                clean[int(p)] = c
        self._coeffs = clean

    def coefficient(self, power: int) -> Fraction:
        return self._coeffs.get(power, Fraction(0))

    def __getitem__(self, power: int) -> Fraction:
        return self.coefficient(power)

    @property
    def degree(self) -> int | None:
        """Highest power with a nonzero coefficient, ``None`` for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self):
        """``(power, coefficient)`` pairs, highest power first."""
        return sorted(self._coeffs.items(), reverse=True)

    def __add__(self, other):
        if not isinstance(other, KPolynomial):
            other = KPolynomial({0: other})
        out = dict(self._coeffs)
        for p, c in other._coeffs.items():
            out[p] = out.get(p, 0) + c
        return KPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return KPolynomial({p: -c for p, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, KPolynomial):
            c = to_fraction(other)
            return KPolynomial({p: c * x for p, x in self._coeffs.items()})
        out: dict[int, Fraction] = {}
        for p, x in self._coeffs.items():
            for q, y in other._coeffs.items():
                out[p + q] = out.get(p + q, 0) + x * y
        return KPolynomial(out)

    def __rmul__(self, other):
        return self * other

    def __call__(self, k) -> Fraction:
        k = to_fraction(k)
        return sum((c * k**p for p, c in self._coeffs.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, KPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def __repr__(self):
        if not self._coeffs:
            return "KPolynomial(0)"
        return "KPolynomial(" + " + ".join(f"({c})*k^{p}" for p, c in self.items()) + ")"


def adiabatic_power(m: int, polarization: GradedClass, shift, fiber_dim: int) -> dict[int, FiberedClass]:
    """Expand ``(h + k L + shift)^m`` by powers of ``k``."""
    ring = polarization.ring
    base = FiberedClass.hyperplane(ring, fiber_dim) + lift(ring.scalar(to_fraction(shift)), fiber_dim)
    ell = lift(polarization, fiber_dim)
    ell_powers = [lift(ring.one(), fiber_dim)]
    base_powers = [ell_powers[0]]
    for _ in range(m):
        ell_powers.append(ell_powers[-1] * ell)
        base_powers.append(base_powers[-1] * base)
    out = {}
    for p in range(m + 1):
        term = comb(m, p) * (ell_powers[p] * base_powers[m - p])
        if p == 0 or not term.is_zero():
            out[p] = term
    return out


def multiply_expansion(expansion: Mapping[int, FiberedClass], factor: FiberedClass) -> dict[int, FiberedClass]:
    return {p: cls * factor for p, cls in expansion.items()}


def integrate_total(
    classes_by_k: Mapping[int, FiberedClass], bundle: BundleData, ring: IntersectionRing | None = None
) -> KPolynomial:
    return KPolynomial(
        {p: bundle.ring.integrate(pushforward(cls, bundle)) for p, cls in classes_by_k.items()}
    )
