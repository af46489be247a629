"""Characteristic classes of bundles on the base.

Bundles are recorded numerically by rank and total Chern class.  The
helpers that work on lists of homogeneous Chern components
(:func:`twist_chern_classes`, :func:`invert_total_class`) accept any ring
elements supporting ``+`` and ``*``; :mod:`adiabatic_df.projective_bundle`
reuses them for bundles on a projectivisation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from ._rational import to_fraction
from .errors import InvalidInput, NonDivisorTwist, RingMismatch, UnsupportedDimension
from .intersection_ring import GradedClass, IntersectionRing


@dataclass(frozen=True)
class BundleData:
    rank: int
    total_chern: GradedClass

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidInput(f"rank must be positive, got {self.rank}")
        top = min(self.rank, self.ring.dim_base)
        c = self.total_chern
        if c.component(0) != self.ring.one():
            raise InvalidInput("degree-0 Chern class must be 1")
        if any(d > top for d in c.degrees):
            raise InvalidInput(f"Chern classes above degree {top} must vanish for rank {self.rank}")

    @classmethod
    def from_classes(cls, ring: IntersectionRing, rank: int, classes: Sequence[GradedClass] = ()):
        """Bundle with ``c_1, c_2, ...`` given in order (missing ones are zero)."""
        total = ring.one()
        for d, cl in enumerate(classes, start=1):
            if not cl.is_homogeneous(d):
                raise InvalidInput(f"c_{d} must be homogeneous of degree {d}")
            total = total + cl
        return cls(rank, total)

    @property
    def ring(self) -> IntersectionRing:
        return self.total_chern.ring

    def c(self, i: int) -> GradedClass:
        return self.total_chern.component(i)

    @property
    def c1(self) -> GradedClass:
        return self.c(1)

    def chern_classes(self) -> list[GradedClass]:
        """``[c_0, c_1, ..., c_rank]`` (entries above the base dimension are zero)."""
        return [self.c(i) for i in range(self.rank + 1)]


def trivial_bundle(ring: IntersectionRing, rank: int) -> BundleData:
    return BundleData(rank, ring.one())


def line_bundle(c1: GradedClass) -> BundleData:
    return BundleData.from_classes(c1.ring, 1, [c1])


def _same_ring(a: BundleData, b: BundleData):
    if a.ring is not b.ring and a.ring != b.ring:
        raise RingMismatch("bundles live on different base rings")


def whitney_sum(a: BundleData, b: BundleData, ring: IntersectionRing | None = None) -> BundleData:
    _same_ring(a, b)
    return BundleData(a.rank + b.rank, a.total_chern * b.total_chern)


def dual(a: BundleData, ring: IntersectionRing | None = None) -> BundleData:
    total = a.ring.zero()
    for i, ci in enumerate(a.chern_classes()):
        total = total + (ci if i % 2 == 0 else -ci)
    return BundleData(a.rank, total)


def twist_chern_classes(chern: Sequence, rank: int, m, one):
    """Chern classes of ``E (x) M`` for a line bundle with first Chern class ``m``.

    ``chern`` is ``[c_0, ..., c_rank]`` of ``E``.  Splitting principle:
    ``c_k(E (x) M) = sum_i binom(rank - i, k - i) c_i(E) m^(k - i)``.
    """
    powers = [one]
    for _ in range(rank):
        powers.append(powers[-1] * m)
    out = []
    for k in range(rank + 1):
        term = 0 * one
        for i in range(k + 1):
            coeff = comb(rank - i, k - i)
            if coeff:
                term = term + coeff * (chern[i] * powers[k - i])
        out.append(term)
    return out


def invert_total_class(components: Sequence, max_degree: int, one):
    """Homogeneous pieces of ``(sum components)^-1`` up to ``max_degree``.

    ``components[0]`` must be ``one``.  Recursion ``s_j = -sum_{i>=1} c_i s_{j-i}``.
    """
    inverse = [one]
    for j in range(1, max_degree + 1):
        term = 0 * one
        for i in range(1, min(j, len(components) - 1) + 1):
            term = term - components[i] * inverse[j - i]
        inverse.append(term)
    return inverse


def tensor_by_line(a: BundleData, m: GradedClass, ring: IntersectionRing | None = None) -> BundleData:
    if not m.is_homogeneous(1):
        raise NonDivisorTwist("twisting class must be a pure degree-1 class")
    if m.ring is not a.ring and m.ring != a.ring:
        raise RingMismatch("twisting class lives on a different ring")
    classes = twist_chern_classes(a.chern_classes(), a.rank, m, a.ring.one())
    total = a.ring.zero()
    for cl in classes:
        total = total + cl
    return BundleData(a.rank, total)


def segre_classes(a: BundleData, ring: IntersectionRing | None = None) -> list[GradedClass]:
    """``[s_0, ..., s_n]`` with ``s(E) = c(E)^-1``."""
    n = a.ring.dim_base
    return invert_total_class([a.c(i) for i in range(n + 1)], n, a.ring.one())


def segre_total(a: BundleData, ring: IntersectionRing | None = None) -> GradedClass:
    total = a.ring.zero()
    for s in segre_classes(a):
        total = total + s
    return total


def slope(a: BundleData, polarization: GradedClass, ring: IntersectionRing | None = None) -> Fraction:
    """``c_1(E) . L^(n-1) / rank(E)``."""
    if not polarization.is_homogeneous(1):
        raise InvalidInput("polarization must be a degree-1 class")
    r = a.ring
    return r.integrate(a.c1 * polarization ** (r.dim_base - 1)) / a.rank


def power_sums(a: BundleData) -> list[GradedClass]:
    """Power sums ``p_k`` of the Chern roots for ``k = 0..n`` (Newton's identities)."""
    r = a.ring
    n = r.dim_base
    e = [a.c(i) for i in range(n + 1)]
    p = [r.scalar(a.rank)]
    for k in range(1, n + 1):
        term = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            term = term + (-1) ** (i - 1) * (e[i] * p[k - i])
        p.append(term)
    return p


def chern_character(a: BundleData) -> GradedClass:
    total = a.ring.zero()
    for k, pk in enumerate(power_sums(a)):
        total = total + Fraction(1, factorial(k)) * pk
    return total


def from_chern_character(rank: int, ch: GradedClass) -> BundleData:
    """Inverse of :func:`chern_character` for a bundle of the given rank."""
    r = ch.ring
    n = r.dim_base
    p = [ch.component(k) * factorial(k) for k in range(n + 1)]
    e = [r.one()]
    for k in range(1, n + 1):
        term = r.zero()
        for i in range(1, k + 1):
            term = term + (-1) ** (i - 1) * (e[k - i] * p[i])
        e.append(Fraction(1, k) * term)
    top = min(rank, n)
    if any(not e[k].is_zero() for k in range(top + 1, n + 1)):
        raise InvalidInput(f"Chern character is not that of a rank-{rank} bundle")
    return BundleData.from_classes(r, rank, e[1 : top + 1])


def tensor(a: BundleData, b: BundleData) -> BundleData:
    """``A (x) B`` via multiplicativity of the Chern character."""
    _same_ring(a, b)
    return from_chern_character(a.rank * b.rank, chern_character(a) * chern_character(b))


def euler_characteristic_surface(
    a: BundleData, c1B: GradedClass, c1sq_plus_c2, ring: IntersectionRing | None = None
) -> Fraction:
    """Riemann-Roch on a surface.

    ``chi(F) = ch_2(F) + c_1(F).c_1(B)/2 + rank(F) * (c_1(B)^2 + c_2(B))/12``
    """
    r = a.ring
    if r.dim_base != 2:
        raise UnsupportedDimension(f"Riemann-Roch is implemented for surfaces only, got dimension {r.dim_base}")
    ch2 = Fraction(1, 2) * (a.c1 * a.c1 - 2 * a.c(2))
    return (
        r.integrate(ch2)
        + Fraction(1, 2) * r.integrate(a.c1 * c1B)
        + a.rank * to_fraction(c1sq_plus_c2) / 12
    )


def h1_assuming_vanishing(chi: Fraction) -> Fraction:
    """``h^1 = -chi`` once ``h^0 = h^2 = 0`` is granted by the caller."""
    return -chi
