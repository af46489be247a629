"""Problem documents: schema, validation, serialisation and batch evaluation.

A problem document is JSON.  Rationals are integers or ``"p/q"`` strings;
floats are rejected.  Divisor combinations are objects mapping divisor names
to coefficients, e.g. ``{"H": 3, "D": -1}`` for ``3H - D``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, StrictInt, ValidationError

from ._rational import render, to_fraction
from .chern import BundleData, dual, euler_characteristic_surface, h1_assuming_vanishing, tensor
from .errors import AdiabaticError, SchemaError, SemanticError
from .intersection_ring import IntersectionRing, make_surface_ring
from .localization import TestConfigInput, analyze, crosscheck, slopes


def _rational(value):
    if isinstance(value, float):
        raise ValueError("floats are not allowed; write rationals as integers or 'p/q' strings")
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(str(exc)) from None


Rational = Annotated[Fraction, BeforeValidator(_rational), PlainSerializer(render, return_type=str)]
DivisorCombination = dict[str, Rational]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True, frozen=True)


class BaseSpec(_Strict):
    dim: Literal[2]
    divisors: list[str]
    intersection: list[list[Rational]]
    c1: DivisorCombination
    c1sq_plus_c2: Rational


class BundleSpec(_Strict):
    rank: Annotated[StrictInt, Field(gt=0)]
    c1: DivisorCombination = Field(default_factory=dict)
    c2: Rational = Fraction(0)


class SubbundleSpec(_Strict):
    name: str
    sub: BundleSpec
    quot: BundleSpec


class Options(_Strict):
    max_order: Union[Annotated[StrictInt, Field(ge=0)], Literal["all"]] = "all"
    crosscheck: bool = False
    assume_vanishing_h0_h2: bool = False


class ProblemSpec(_Strict):
    base: BaseSpec
    polarization: DivisorCombination
    subbundles: list[SubbundleSpec] = Field(default_factory=list)
    options: Options = Field(default_factory=Options)


def _loc(parts) -> str:
    return ".".join(str(p) for p in parts) or "<root>"


def parse(document: str | bytes | dict) -> ProblemSpec:
    """Validate a problem document and return the :class:`ProblemSpec`.

    Raises :class:`SchemaError` for malformed documents and
    :class:`SemanticError` for undeclared divisors, asymmetric matrices,
    non-ample polarisations and inconsistent bundles.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError([("<root>", f"invalid JSON: {exc}")]) from None
    try:
        spec = ProblemSpec.model_validate(document)
    except ValidationError as exc:
        raise SchemaError([(_loc(err["loc"]), err["msg"]) for err in exc.errors()]) from None
    problems = _semantic_problems(spec)
    if problems:
        raise SemanticError(problems)
    return spec


def _semantic_problems(spec: ProblemSpec) -> list[tuple[str, str]]:
    problems = []
    names = spec.base.divisors
    declared = set(names)
    if len(declared) != len(names):
        problems.append(("base.divisors", "divisor names must be unique"))

    def combo(path, value):
        for name in value:
            if name not in declared:
                problems.append((path, f"undeclared divisor {name!r}"))

    combo("base.c1", spec.base.c1)
    combo("polarization", spec.polarization)
    for i, entry in enumerate(spec.subbundles):
        for part in ("sub", "quot"):
            bundle = getattr(entry, part)
            combo(f"subbundles.{i}.{part}.c1", bundle.c1)
            if bundle.rank == 1 and bundle.c2 != 0:
                problems.append((f"subbundles.{i}.{part}.c2", "a line bundle has c2 = 0"))
    if problems:
        return problems

    try:
        ring = make_surface_ring(names, spec.base.intersection)
    except AdiabaticError as exc:
        return [("base.intersection", str(exc))]
    ell = ring.divisor(spec.polarization)
    if ring.integrate(ell * ell) <= 0:
        problems.append(("polarization", f"not ample: L^2 = {ring.integrate(ell * ell)}"))
    return problems


def serialize(spec: ProblemSpec) -> dict[str, Any]:
    return spec.model_dump(mode="json")


def build_ring(spec: ProblemSpec) -> IntersectionRing:
    return make_surface_ring(spec.base.divisors, spec.base.intersection)


def _bundle(ring: IntersectionRing, b: BundleSpec) -> BundleData:
    classes = [ring.divisor(b.c1)]
    if b.rank >= 2:
        classes.append(b.c2 * ring.point())
    return BundleData.from_classes(ring, b.rank, classes)


def build_inputs(spec: ProblemSpec) -> list[tuple[str, TestConfigInput]]:
    ring = build_ring(spec)
    ell = ring.divisor(spec.polarization)
    c1B = ring.divisor(spec.base.c1)
    return [
        (entry.name, TestConfigInput(ring, ell, c1B, _bundle(ring, entry.sub), _bundle(ring, entry.quot)))
        for entry in spec.subbundles
    ]


def _kpoly_json(poly) -> dict[str, str]:
    return {str(p): render(c) for p, c in poly.items()}


def base_report(spec: ProblemSpec) -> dict[str, Any]:
    ring = build_ring(spec)
    ell = ring.divisor(spec.polarization)
    c1B = ring.divisor(spec.base.c1)
    return {
        "dim": ring.dim_base,
        "L_n": render(ring.integrate(ell * ell)),
        "c1B_L": render(ring.integrate(c1B * ell)),
        "c1B_sq": render(ring.integrate(c1B * c1B)),
        "chi_O": render(spec.base.c1sq_plus_c2 / 12),
    }


def slope_entry(inp: TestConfigInput) -> dict[str, str]:
    return {key: render(value) for key, value in slopes(inp).items()}


def chi_entry(spec: ProblemSpec, inp: TestConfigInput) -> dict[str, Any]:
    """Riemann-Roch for ``sub (x) quot^*``, the bundle governing extensions."""
    hom = tensor(inp.sub, dual(inp.quot))
    chi = euler_characteristic_surface(hom, inp.c1B, spec.base.c1sq_plus_c2)
    assume = spec.options.assume_vanishing_h0_h2
    return {
        "bundle": "sub (x) quot^*",
        "chi": render(chi),
        "h1": render(h1_assuming_vanishing(chi)) if assume else None,
        "assumes_vanishing": assume,
    }


def crosscheck_entry(inp: TestConfigInput) -> dict[str, Any]:
    report = crosscheck(inp)
    rows = [
        {
            "label": row.label,
            "engine": None if row.engine is None else render(row.engine),
            "closed_form": None if row.closed_form is None else render(row.closed_form),
            "equal": row.equal,
            **({"note": row.note} if row.note else {}),
        }
        for row in report.rows
    ]
    return {"ok": report.ok, "rows": rows}


def df_entry(inp: TestConfigInput, max_order: int | None) -> dict[str, Any]:
    rep = analyze(inp, max_order=max_order)
    top = 2 * inp.n
    return {
        "ranks": {"sub": inp.sub.rank, "quot": inp.quot.rank, "total": inp.total.rank},
        "slopes": slope_entry(inp),
        "coefficients": [
            {
                "index": i,
                "k_power": top - i,
                "raw": render(a),
                "normalized": render(norm),
                "scaled": render(sc),
            }
            for i, (a, norm, sc) in enumerate(zip(rep.coefficients, rep.normalized, rep.scaled))
        ],
        "brackets": {name: _kpoly_json(poly) for name, poly in rep.brackets.items()},
        "leading_index": rep.leading_index,
        "verdict": rep.verdict.value,
    }


def _max_order(spec: ProblemSpec, override: int | None) -> int | None:
    if override is not None:
        return override
    return None if spec.options.max_order == "all" else spec.options.max_order


def run(spec: ProblemSpec, *, max_order: int | None = None, with_crosscheck: bool | None = None) -> dict[str, Any]:
    """Evaluate every supplied subbundle and assemble the report document."""
    order = _max_order(spec, max_order)
    want_cc = spec.options.crosscheck if with_crosscheck is None else with_crosscheck
    entries = []
    for name, inp in build_inputs(spec):
        entry = {"name": name, **df_entry(inp, order)}
        entry["riemann_roch"] = chi_entry(spec, inp)
        if want_cc:
            entry["crosscheck"] = crosscheck_entry(inp)
        entries.append(entry)
    return {
        "base": base_report(spec),
        "subbundles": entries,
        "verdict_scope": "with respect to supplied subbundles",
        "stable_wrt_supplied_list": all(e["verdict"] == "stable_wrt_subbundle" for e in entries),
    }


def crosscheck_ok(report: dict[str, Any]) -> bool:
    return all(e.get("crosscheck", {"ok": True})["ok"] for e in report.get("subbundles", []))
