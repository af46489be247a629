"""Exact adiabatic Donaldson-Futaki expansions for subbundle degenerations of projective bundles."""
from .chern import (
    BundleData,
    dual,
    euler_characteristic_surface,
    line_bundle,
    segre_total,
    slope,
    tensor,
    tensor_by_line,
    trivial_bundle,
    whitney_sum,
)
from .intersection_ring import GradedClass, IntersectionRing, integrate, make_surface_ring, mul
from .localization import (
    DFReport,
    TestConfigInput,
    Verdict,
    analyze,
    closed_form_coefficients,
    crosscheck,
    filtration_combine,
    futaki_k_polynomial,
    verdict,
)
from .projective_bundle import (
    FiberedClass,
    KPolynomial,
    adiabatic_power,
    fiber_mul,
    integrate_total,
    lift,
    pushforward,
    total_space_c1,
)

__version__ = "0.1.0"
