"""Adiabatic expansion of the Futaki invariant of a subbundle degeneration.

A subbundle ``S`` of ``E`` (quotient ``Q``, ``rank E = r + 1`` over a base of
dimension ``n``) degenerates ``X = P(E)`` to ``P(S (+) Q)``.  The generating
vector field has Hamiltonian ``-1`` on ``P(S)``, ``0`` on ``P(Q)``, and normal
weight ``-rank Q`` along ``P(S)``.  Localising onto ``P(S)`` gives

    vol * Fut = (n+r)/(n+r+1)! * beta(k) * gamma(k) - 1/(n+r)! * alpha(k) * delta(k)

with the four intersection brackets

    alpha = < w^(n+r), X >
    beta  = < c_1(X) w^(n+r-1), X >
    gamma = < (w+1)^(n+r+1) s(N), P(S) >
    delta = < (c_1(X) + q) (w+1)^(n+r) s(N), P(S) >

where ``w = h + kL`` and ``N = O(1) (x) Q`` is the normal bundle of ``P(S)``.
Only the ``P(S)`` fixed component is summed; the ``P(Q)`` component carries
zero Hamiltonian and is taken not to contribute.

The Donaldson-Futaki invariant is a negative multiple of this quantity, so
the subbundle is stabilising exactly when the leading nonzero coefficient
is negative.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Sequence

from .chern import BundleData, slope, twist_chern_classes, invert_total_class, whitney_sum
from .errors import (
    DegenerateVolume,
    InvalidInput,
    NonDecreasingWeights,
    RingMismatch,
    UnsupportedOrder,
    UnsupportedRank,
)
from .intersection_ring import GradedClass, IntersectionRing
from .projective_bundle import (
    FiberedClass,
    KPolynomial,
    adiabatic_power,
    integrate_total,
    lift,
    multiply_expansion,
    total_space_c1,
)


class Verdict(str, enum.Enum):
    STABLE = "stable_wrt_subbundle"
    UNSTABLE = "unstable_wrt_subbundle"
    EXHAUSTED = "strictly_semistable_order_exhausted"


@dataclass(frozen=True)
class TestConfigInput:
    """Base data plus an extension ``0 -> sub -> E -> quot -> 0``."""

    __test__ = False  # keep pytest from collecting this class

    ring: IntersectionRing
    polarization: GradedClass
    c1B: GradedClass
    sub: BundleData
    quot: BundleData
    total: BundleData = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for name in ("polarization", "c1B"):
            cl = getattr(self, name)
            if cl.ring != self.ring:
                raise RingMismatch(f"{name} lives on a different ring")
            if not cl.is_homogeneous(1):
                raise InvalidInput(f"{name} must be a degree-1 class")
        for name in ("sub", "quot"):
            if getattr(self, name).ring != self.ring:
                raise RingMismatch(f"{name} lives on a different ring")
        object.__setattr__(self, "total", whitney_sum(self.sub, self.quot))
        if self.r < 1:
            raise InvalidInput("the total bundle must have rank at least 2")
        if self.volume <= 0:
            raise InvalidInput(f"polarization is not ample: L^n = {self.volume}")

    @property
    def n(self) -> int:
        return self.ring.dim_base

    @property
    def r(self) -> int:
        return self.total.rank - 1

    @property
    def s(self) -> int:
        return self.sub.rank - 1

    @property
    def q(self) -> int:
        return self.quot.rank

    @property
    def volume(self) -> Fraction:
        """``L^n``."""
        return self.ring.integrate(self.polarization**self.n)

    @cached_property
    def brackets(self) -> dict[str, KPolynomial]:
        return {
            "alpha": alpha_bracket(self),
            "beta": beta_bracket(self),
            "gamma": gamma_bracket(self),
            "delta": delta_bracket(self),
        }


# brackets over X = P(E)


def alpha_bracket(inp: TestConfigInput) -> KPolynomial:
    """``< w^(n+r), X >``."""
    power = adiabatic_power(inp.n + inp.r, inp.polarization, 0, inp.r)
    return integrate_total(power, inp.total)


def beta_bracket(inp: TestConfigInput) -> KPolynomial:
    """``< c_1(X) w^(n+r-1), X >``."""
    power = adiabatic_power(inp.n + inp.r - 1, inp.polarization, 0, inp.r)
    c1X = total_space_c1(inp.c1B, inp.total)
    return integrate_total(multiply_expansion(power, c1X), inp.total)


# brackets over the fixed component P(S)


def normal_bundle_segre(inp: TestConfigInput) -> FiberedClass:
    """Total Segre class of ``N = O(1) (x) pi^*Q`` on ``P(S)``.

    The Chern classes of ``N`` come from twisting the pulled-back Chern
    classes of ``Q`` by the hyperplane class; inversion is by total degree.
    """
    s = inp.s
    hyper = FiberedClass.hyperplane(inp.ring, s)
    one = lift(inp.ring.one(), s)
    pulled = [lift(c, s) for c in inp.quot.chern_classes()]
    chern = twist_chern_classes(pulled, inp.q, hyper, one)
    segre = invert_total_class(chern, s + inp.n, one)
    total = 0 * one
    for piece in segre:
        total = total + piece
    return total


def _restricted_c1X(inp: TestConfigInput) -> FiberedClass:
    # c_1(X) restricted to P(S): the hyperplane class of P(E) restricts to that of P(S)
    s = inp.s
    return (inp.r + 1) * FiberedClass.hyperplane(inp.ring, s) + lift(inp.c1B + inp.total.c1, s)


def gamma_bracket(inp: TestConfigInput) -> KPolynomial:
    """``< (w+1)^(n+r+1) s(N), P(S) >``."""
    power = adiabatic_power(inp.n + inp.r + 1, inp.polarization, 1, inp.s)
    return integrate_total(multiply_expansion(power, normal_bundle_segre(inp)), inp.sub)


def delta_bracket(inp: TestConfigInput) -> KPolynomial:
    """``< (c_1(X) + q) (w+1)^(n+r) s(N), P(S) >``."""
    power = adiabatic_power(inp.n + inp.r, inp.polarization, 1, inp.s)
    factor = (_restricted_c1X(inp) + inp.q) * normal_bundle_segre(inp)
    return integrate_total(multiply_expansion(power, factor), inp.sub)


def futaki_k_polynomial(inp: TestConfigInput) -> KPolynomial:
    """``vol(k) * Fut`` as an exact polynomial of degree at most ``2n`` in ``k``."""
    b = inp.brackets
    if b["alpha"].is_zero():
        raise DegenerateVolume("volume polynomial of X vanishes identically")
    m = inp.n + inp.r
    return (
        Fraction(m, factorial(m + 1)) * (b["beta"] * b["gamma"])
        - Fraction(1, factorial(m)) * (b["alpha"] * b["delta"])
    )


def coefficient_list(poly: KPolynomial, top_power: int) -> list[Fraction]:
    """``[a_0, ..., a_top]`` where ``a_i`` multiplies ``k^(top - i)``."""
    return [poly.coefficient(top_power - i) for i in range(top_power + 1)]


def bracket_coefficient(inp: TestConfigInput, which: str, i: int) -> Fraction:
    """Coefficient of ``k^(n-i)`` in one of the four brackets."""
    return inp.brackets[which].coefficient(inp.n - i)


# closed forms (oracle side)


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def closed_form_coefficients(inp: TestConfigInput, which: str, i: int) -> Fraction:
    """Closed binomial-sum formula for ``alpha_i``, ``beta_i``, ``gamma_i`` or ``delta_i``.

    Valid for ``i <= 2``; ``gamma`` and ``delta`` additionally need a line
    bundle quotient.  Returned as the intersection number obtained by pairing
    with the remaining power ``L^(n-i)``.
    """
    if which not in ("alpha", "beta", "gamma", "delta"):
        raise ValueError(f"unknown bracket {which!r}")
    if not 0 <= i <= 2:
        raise UnsupportedOrder(f"closed forms are known for orders 0..2, not {i}")
    if which in ("gamma", "delta") and inp.q != 1:
        raise UnsupportedRank(f"{which} closed forms need a rank-1 quotient, got rank {inp.q}")
    n, r = inp.n, inp.r
    if i > n:
        return Fraction(0)

    ring = inp.ring
    ell = inp.polarization
    E1, E2 = inp.total.c(1), inp.total.c(2)
    S1, S2 = inp.sub.c(1), inp.sub.c(2)
    Q = inp.quot.c(1)
    B = inp.c1B

    def pair(cl: GradedClass) -> Fraction:
        return ring.integrate(cl * ell ** (n - i))

    def alt(lo, hi, sign_top, binom_top, term):
        return sum(
            (_binom(binom_top, j) * (-1) ** (sign_top - j) * term(j) for j in range(lo, hi + 1)),
            Fraction(0),
        )

    if which == "alpha":
        return [
            lambda: _binom(n + r, n) * pair(ring.one()),
            lambda: -_binom(n + r, n - 1) * pair(E1),
            lambda: _binom(n + r, n - 2) * pair(E1 * E1 - E2),
        ][i]()
    if which == "beta":
        return [
            lambda: _binom(n + r - 1, n) * (r + 1) * pair(ring.one()),
            lambda: _binom(n + r - 1, n - 1) * pair(B - r * E1),
            lambda: _binom(n + r - 1, n - 2) * pair(-(B * E1) + r * (E1 * E1) - (r + 1) * E2),
        ][i]()

    def second_order(shift: int) -> callable:
        # S1^2 - S2 - t S1.Q + t(t-1)/2 Q^2 with t = shift - j
        def term(j):
            t = shift - j
            return pair(S1 * S1 - S2 - t * (S1 * Q) + Fraction(t * (t - 1), 2) * (Q * Q))

        return term

    def first_order(shift: int) -> callable:
        return lambda j: pair(-S1 + (shift - j) * Q)

    if which == "gamma":
        if i == 0:
            return _binom(n + r + 1, n) * alt(0, r - 1, r - 1, r + 1, lambda j: pair(ring.one()))
        if i == 1:
            return _binom(n + r + 1, n - 1) * alt(0, r, r, r + 2, first_order(r))
        return _binom(n + r + 1, n - 2) * alt(0, r + 1, r + 1, r + 3, second_order(r + 1))

    # delta
    if i == 0:
        unit = lambda j: Fraction(1)
        return (
            _binom(n + r, n)
            * ((r + 1) * alt(0, r - 2, r - 2, r, unit) + alt(0, r - 1, r - 1, r, unit))
            * pair(ring.one())
        )
    if i == 1:
        c1X_base = pair(B + E1)
        return _binom(n + r, n - 1) * (
            alt(0, r - 1, r - 1, r + 1, lambda j: c1X_base)
            + (r + 1) * alt(0, r - 1, r - 1, r + 1, first_order(r - 1))
            + alt(0, r, r, r + 1, first_order(r))
        )
    return _binom(n + r, n - 2) * (
        (r + 1) * alt(0, r, r, r + 2, second_order(r))
        + alt(0, r, r, r + 2, lambda j: pair((-S1 + (r - j) * Q) * (B + E1)))
        + alt(0, r + 1, r + 1, r + 2, second_order(r + 1))
    )


@dataclass(frozen=True)
class CrosscheckRow:
    label: str
    engine: Fraction | None
    closed_form: Fraction | None
    equal: bool | None
    note: str = ""


@dataclass(frozen=True)
class CrosscheckReport:
    rows: tuple[CrosscheckRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.equal is not False for row in self.rows)

    @property
    def mismatches(self) -> list[CrosscheckRow]:
        return [row for row in self.rows if row.equal is False]


def cancellation_value(inp: TestConfigInput) -> Fraction:
    """``(n+r)/(n+r+1) beta_1 gamma_1 - alpha_1 delta_1`` from the engine brackets."""
    m = inp.n + inp.r
    c = lambda w: bracket_coefficient(inp, w, 1)
    return Fraction(m, m + 1) * c("beta") * c("gamma") - c("alpha") * c("delta")


def crosscheck(inp: TestConfigInput) -> CrosscheckReport:
    """Compare the engine's bracket expansions with the closed forms.

    When the sub- and total slopes agree, also confirm that the first-order
    cross terms cancel (see :func:`cancellation_value`).
    """
    rows = []
    for which in ("alpha", "beta", "gamma", "delta"):
        for i in range(min(2, inp.n) + 1):
            label = f"{which}_{i}"
            engine = bracket_coefficient(inp, which, i)
            try:
                closed = closed_form_coefficients(inp, which, i)
            except UnsupportedRank as exc:
                rows.append(CrosscheckRow(label, engine, None, None, f"skipped: {exc}"))
                continue
            rows.append(CrosscheckRow(label, engine, closed, engine == closed))
    if inp.q == 1 and slope(inp.sub, inp.polarization) == slope(inp.total, inp.polarization):
        value = cancellation_value(inp)
        rows.append(CrosscheckRow("first_order_cancellation", value, Fraction(0), value == 0))
    return CrosscheckReport(tuple(rows))


# verdict and filtrations


def verdict(poly: KPolynomial, top_power: int | None = None) -> tuple[int | None, Verdict]:
    """Leading index and verdict from the sign of the leading coefficient.

    ``top_power`` is the nominal degree ``2n``; the leading index counts down
    from it.  ``None`` means the polynomial vanishes.
    """
    if poly.is_zero():
        return None, Verdict.EXHAUSTED
    degree = poly.degree
    if top_power is None:
        top_power = degree
    lead = poly.coefficient(degree)
    return top_power - degree, Verdict.STABLE if lead < 0 else Verdict.UNSTABLE


def filtration_combine(terms: Sequence[tuple[KPolynomial, object]]) -> KPolynomial:
    """``sum_i (w_i - w_(i+1)) P_i`` over a filtration with decreasing weights.

    The last entry is the whole bundle, whose induced vector field is trivial,
    so only its weight enters.
    """
    weights = [Fraction(w) for _, w in terms]
    if any(a <= b for a, b in zip(weights, weights[1:])):
        raise NonDecreasingWeights(f"weights must be strictly decreasing: {weights}")
    out = KPolynomial()
    for (poly, _), a, b in zip(terms, weights, weights[1:]):
        out = out + (a - b) * poly
    return out


@dataclass(frozen=True)
class DFReport:
    fut_poly: KPolynomial
    coefficients: tuple[Fraction, ...]
    normalized: tuple[Fraction, ...]
    scaled: tuple[Fraction, ...]
    slopes: dict[str, Fraction]
    leading_index: int | None
    verdict: Verdict
    brackets: dict[str, KPolynomial]


def slopes(inp: TestConfigInput) -> dict[str, Fraction]:
    return {
        "mu_L_sub": slope(inp.sub, inp.polarization),
        "mu_L_total": slope(inp.total, inp.polarization),
        "mu_c1B_sub": slope(inp.sub, inp.c1B),
        "mu_c1B_total": slope(inp.total, inp.c1B),
    }


def analyze(inp: TestConfigInput, max_order: int | None = None) -> DFReport:
    """Full expansion, normalisations and verdict for one subbundle.

    ``max_order`` limits the verdict to ``a_0..a_max_order``; if all of those
    vanish the verdict is ``strictly_semistable_order_exhausted``.
    """
    poly = futaki_k_polynomial(inp)
    top = 2 * inp.n
    coeffs = coefficient_list(poly, top)
    if max_order is not None:
        coeffs = coeffs[: max_order + 1]
    considered = KPolynomial({top - i: a for i, a in enumerate(coeffs)})
    lead, v = verdict(considered, top)
    m = inp.n + inp.r
    norm = Fraction(factorial(m)) / inp.volume
    scale = Fraction(factorial(m + 1), 2) / inp.volume
    return DFReport(
        fut_poly=poly,
        coefficients=tuple(coeffs),
        normalized=tuple(norm * a for a in coeffs),
        scaled=tuple(scale * a for a in coeffs),
        slopes=slopes(inp),
        leading_index=lead,
        verdict=v,
        brackets=dict(inp.brackets),
    )
