"""Shared input builders for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

from adiabatic_df import BundleData, TestConfigInput, line_bundle, make_surface_ring
from adiabatic_df.intersection_ring import IntersectionRing


def worked_example(ring, c2=1):
    L = ring.divisor({"H": 3, "D": -1})
    sub = BundleData.from_classes(ring, 2, [ring.zero(), c2 * ring.point()])
    quot = line_bundle(ring.divisor({"H": 1, "D": -3}))
    return TestConfigInput(ring, L, L, sub, quot)


def trivial_quotient_example(ring, c2=1):
    """Rank-2 bundle with c1 = 0 extended by O over P^2."""
    L = ring.divisor({"H": 1})
    sub = BundleData.from_classes(ring, 2, [ring.zero(), c2 * ring.point()])
    quot = BundleData(1, ring.one())
    return TestConfigInput(ring, L, ring.divisor({"H": 3}), sub, quot)


# seeded random generators shared by property-style tests


def random_surface(rng: random.Random, max_divisors=3):
    """Random integral intersection form together with an ample-enough L (L^2 > 0)."""
    while True:
        m = rng.randint(1, max_divisors)
        names = [f"E{i}" for i in range(m)]
        matrix = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                matrix[i][j] = matrix[j][i] = rng.randint(-3, 3)
        ring = make_surface_ring(names, matrix)
        ell = random_divisor(rng, ring)
        if ring.integrate(ell * ell) > 0:
            return ring, ell


def random_curve(rng: random.Random):
    ring = IntersectionRing(1, [["1"], ["pt"]])
    return ring, ring.element("pt", rng.randint(1, 4))


def random_divisor(rng: random.Random, ring, lo=-3, hi=3):
    if ring.dim_base == 1:
        return ring.element("pt", rng.randint(lo, hi))
    return ring.divisor({name: rng.randint(lo, hi) for name in ring.basis[1]})


def random_bundle(rng: random.Random, ring, rank):
    classes = [random_divisor(rng, ring)]
    for d in range(2, min(rank, ring.dim_base) + 1):
        classes.append(rng.randint(-4, 4) * ring.point())
    return BundleData.from_classes(ring, rank, classes)


def equal_slope_input(rng: random.Random, ring, ell, sub_rank):
    """Line-bundle quotient with c1(S) shifted by a multiple of L so that mu_L(S) = mu_L(E)."""
    n = ring.dim_base
    quot = line_bundle(random_divisor(rng, ring))
    start = random_divisor(rng, ring)
    pair = lambda cl: ring.integrate(cl * ell ** (n - 1))
    # mu(S) = mu(S + Q)  <=>  c1(S).L^(n-1) = rank(S) * c1(Q).L^(n-1)
    t = Fraction(sub_rank * pair(quot.c1) - pair(start), ring.integrate(ell**n))
    classes = [start + t * ell]
    if n >= 2 and sub_rank >= 2:
        classes.append(rng.randint(-4, 4) * ring.point())
    sub = BundleData.from_classes(ring, sub_rank, classes)
    return TestConfigInput(ring, ell, random_divisor(rng, ring), sub, quot)
