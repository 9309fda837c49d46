"""The reproduction pipeline as a list of named exact checks.

Every stage is computed lazily once and shared between checks.  A check
compares canonical text: it passes iff expected and actual strings agree.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from functools import cached_property
from math import prod
from pathlib import Path
from typing import Callable

from . import __version__, reference as ref
from .fixtures import load_fixture
from .gf2core import (
    BitMatrix,
    char_poly,
    closure_from_generators,
    format_cycle_type,
    format_cycles,
    orbit_and_stabilizer,
    permutation_on_basis,
    submodules_of_dimension,
    vec_from_bits,
)
from .groebner import independent_mod_relations, is_zero_dimensional, quotient_basis_size
from .hilbert import RationalSeries, expand, numerator_for_degrees, secondary_profile
from .invariant_ring import (
    MAX_GROUP_ORDER,
    build_secondaries_G,
    build_setting,
    cm_certificate,
    degrees_feasible,
    dickson_invariants,
    free_module_counts,
    indecomposable_counts,
    optimal_degree_search,
    present_subgroup_algebra,
    quotient_to_natural,
    restrict_hsop,
    search_hsop,
    subgroup_secondaries,
    verify_hsop,
)
from .polyf2 import is_invariant

SYLOW_DEGREES = ref.SYLOW_PRIMARY_DEGREES


def _multiset(xs) -> str:
    return "{" + ",".join(str(x) for x in sorted(xs)) + "}"


@dataclass
class CheckResult:
    id: str
    description: str
    status: str  # pass | fail | skipped
    expected: str
    actual: str
    ms: int | None


@dataclass
class ReportDocument:
    version: str
    fixture_sha256: str
    checks: list[CheckResult]

    @property
    def summary(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self, artifacts: dict | None = None) -> str:
        doc = {
            "version": self.version,
            "fixture_sha256": self.fixture_sha256,
            "checks": [asdict(c) for c in self.checks],
            "summary": self.summary,
        }
        if artifacts is not None:
            doc["artifacts"] = artifacts
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def table(self) -> str:
        width = max((len(c.id) for c in self.checks), default=2)
        lines = []
        for c in self.checks:
            ms = "" if c.ms is None else f" ({c.ms} ms)"
            lines.append(f"{c.status.upper():7} {c.id:<{width}}  {c.description}{ms}")
            if c.status == "fail":
                lines.append(f"{'':7} {'':<{width}}  expected: {c.expected}")
                lines.append(f"{'':7} {'':<{width}}  actual:   {c.actual}")
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)


class Pipeline:
    """Lazily computed stages of the reproduction."""

    def __init__(self, fixture: str | Path | None = None, degree_bound: int = 10):
        self.mats, self.fixture_sha256 = load_fixture(fixture)
        self.degree_bound = degree_bound

    @cached_property
    def setting(self):
        return build_setting(self.mats)

    @cached_property
    def g_dw(self):
        return closure_from_generators([self.mats["DW_A"], self.mats["DW_B"]], MAX_GROUP_ORDER)

    @cached_property
    def omega_image(self):
        return permutation_on_basis(self.g_dw, list(self.mats["OMEGA"].data))

    @cached_property
    def orbit_stabilizer(self):
        return orbit_and_stabilizer(self.g_dw, vec_from_bits([0, 0, 0, 0, 0, 0, 1]))

    @cached_property
    def series_g(self) -> RationalSeries:
        return self.setting.hilbert_series()

    @cached_property
    def series_d(self) -> RationalSeries:
        return self.setting.hilbert_series(self.setting.sylow.group)

    @cached_property
    def hat_hsop(self):
        return verify_hsop(ref.primary_hat(), self.setting.w)

    @cached_property
    def primaries(self):
        return restrict_hsop(self.hat_hsop, self.setting)

    @cached_property
    def d_hsop(self):
        return search_hsop(self.setting.sylow, SYLOW_DEGREES)

    @cached_property
    def d_secondaries(self):
        return subgroup_secondaries(self.setting.sylow, self.d_hsop, self.series_d)

    @cached_property
    def d_certificate(self):
        return cm_certificate("S[W'*]^D", self.setting.sylow.group.order, self.d_hsop, self.d_secondaries)

    @cached_property
    def g_certificate(self):
        return cm_certificate(
            "S[W'*]^G", self.setting.wp.group.order, base=self.d_certificate, sub_order=self.setting.sylow.group.order
        )

    @cached_property
    def presentation(self):
        return present_subgroup_algebra(self.d_hsop, self.d_secondaries)

    @cached_property
    def g_secondaries(self):
        return build_secondaries_G(self.primaries, self.presentation, self.setting.wp, self.series_g)

    @cached_property
    def dickson(self):
        return dickson_invariants()

    # -- report pieces -------------------------------------------------------

    def artifacts(self) -> dict:
        res = self.g_secondaries
        sec = []
        for k, (p, d) in enumerate(zip(res.secondaries.polynomials, res.secondaries.degrees), start=1):
            entry = {"index": k, "degree": d}
            if k in res.secondaries.products:
                entry["product"] = list(res.secondaries.products[k])
            else:
                entry["polynomial"] = str(p)
            entry["presentation"] = str(res.expressions[k - 1])
            sec.append(entry)
        pres = self.presentation
        return {
            "hilbert_series": str(self.series_g),
            "primaries": [str(p) for p in self.primaries.polynomials],
            "primary_degrees": list(self.primaries.degrees),
            "sylow_primaries": [str(p) for p in self.d_hsop.polynomials],
            "sylow_secondaries": [str(p) for p in self.d_secondaries.polynomials],
            "presentation": {
                "generators": [f"{n}:{w}" for n, w in zip(pres.ring.names, pres.ring.weights)],
                "relations": [str(r) for r in pres.rewrite_relations],
                "primary_decompositions": [str(pres.decompose(f)) for f in self.primaries.polynomials],
            },
            "secondaries": sec,
            "certificates": [self.d_certificate.describe(), self.g_certificate.describe()],
            "dickson": {"c0": str(self.dickson.c0), "c1": str(self.dickson.c1), "c2": str(self.dickson.c2)},
        }


Check = tuple[str, str, Callable[[Pipeline], tuple[str, str]]]


def _perm(p: Pipeline, name: str) -> str:
    return format_cycles(p.omega_image.of(p.mats[name]))


def _perm_on_coordinates(p: Pipeline, name: str) -> str:
    perm = p.omega_image.of(p.mats[name])
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return format_cycles(inv)


def _census(p: Pipeline) -> str:
    c = p.omega_image.census()
    return ", ".join(f"{format_cycle_type(k)}:{v}" for k, v in sorted(c.items(), key=lambda kv: kv[1]))


def _charpolys(p: Pipeline, quotient: bool) -> str:
    c = p.mats["DW_C"]
    w2 = [1, 2, 4]
    if quotient:
        cp = BitMatrix.from_rows([r[:6] for r in c.to_rows()[:6]])
        r = char_poly(cp, w2, quotient=True)
    else:
        r = char_poly(c, w2)
    return f"{r} irreducible={r.irreducible}"


def _conjugates(p: Pipeline) -> str:
    m = p.mats
    pm = m["P_SPLIT"]
    return str(all(pm @ m[f"DW_{s}"] @ pm.inverse() == m[f"DWp_{s}"] for s in "AB"))


def _f1_zeros(p: Pipeline) -> str:
    f1 = ref.quadratic_form()
    return str(sum(1 for v in range(1, 64) if f1.evaluate(v) == 0))


def _product_witness(p: Pipeline) -> str:
    s, h, prod = p.d_certificate.witness
    return f"{s}*{h}={s * h}={prod}"


def _relation_degrees(p: Pipeline) -> str:
    rels = p.presentation.rewrite_relations
    # relations are emitted for (1,1), (1,2), (1,3), (2,2), (2,3), (3,3)
    picked = [rels[0], rels[1], rels[3]]
    return ",".join(str(r.degree()) if r.is_homogeneous() else "inhomogeneous" for r in picked)


def _product_table(p: Pipeline) -> str:
    res = p.g_secondaries
    degs = res.secondaries.degrees
    return "; ".join(
        f"g{k}={'*'.join('g' + str(i) for i in fac)}({degs[k - 1]})" for k, fac in sorted(res.secondaries.products.items())
    )


def _printed_product_table() -> str:
    return "; ".join(
        f"g{k}={'*'.join('g' + str(i) for i in fac)}({d})" for k, (fac, d) in sorted(ref.PRODUCT_TABLE.items())
    )


def _generator_degrees(p: Pipeline) -> str:
    res = p.g_secondaries
    sec_gens = [d for k, d in enumerate(res.secondaries.degrees, start=1) if k not in res.secondaries.products]
    ind = indecomposable_counts(p.setting.wp, 7)
    size = len(p.primaries) + len(sec_gens)
    return f"size={size} secondary={_multiset(sec_gens)} indecomposable={sum(ind.values()) + 1}"


def _max_generator_degree(p: Pipeline) -> str:
    res = p.g_secondaries
    sec_gens = [d for k, d in enumerate(res.secondaries.degrees, start=1) if k not in res.secondaries.products]
    return str(max(list(p.primaries.degrees) + sec_gens))


def _dickson_images(p: Pipeline) -> str:
    f = p.primaries.polynomials
    imgs = quotient_to_natural(f[3], f[4], f[5], p.setting)
    dt = p.dickson
    return f"{imgs[0] == dt.c2},{imgs[1] == dt.c1},{imgs[2] == dt.c0}"


def _klein_span(p: Pipeline) -> str:
    comp = p.setting.wpp.component(4)
    ck = ref.klein_twist()
    return f"dim={len(comp)} spans={len(comp) == 1 and comp[0] == ck}"


PAPER_CHECKS: list[Check] = [
    ("1.order", "order of <A,B> acting on W", lambda p: ("168", str(p.g_dw.order))),
    ("1.orbit", "orbit size of w_0", lambda p: ("7", str(len(p.orbit_stabilizer[0])))),
    ("1.stabilizer", "order of the stabilizer of w_0", lambda p: ("24", str(p.orbit_stabilizer[1].order))),
    ("1.perm_A", "permutation of A on the basis vectors", lambda p: (ref.PERMUTATION_A, _perm(p, "DW_A"))),
    ("1.perm_B", "permutation of B on the basis vectors", lambda p: (ref.PERMUTATION_B, _perm(p, "DW_B"))),
    ("1.perm_B_coordinates", "permutation of B on the coordinate functions (inverse)",
     lambda p: (ref.PERMUTATION_B, _perm_on_coordinates(p, "DW_B"))),
    ("1.perm_C", "permutation of C on the basis vectors", lambda p: ("(1,3,4,5,6,7,2)", _perm(p, "DW_C"))),
    ("1.census", "cycle census on the basis vectors",
     lambda p: ("1^7:1, 1^3*2^2:21, 1*2*4:42, 7:48, 1*3^2:56", _census(p))),
    ("2.charpoly_sub", "char poly of C on the 3-dim submodule of W'",
     lambda p: ("t^3+t+1 irreducible=True", _charpolys(p, False))),
    ("2.charpoly_quot", "char poly of C on the 3-dim quotient of W'",
     lambda p: ("t^3+t^2+1 irreducible=True", _charpolys(p, True))),
    ("2.conjugate", "splitting basis conjugates D_W to D'_W", lambda p: ("True", _conjugates(p))),
    ("2.submodules", "G-stable 3-dim subspaces of the dual 6-dim module",
     lambda p: ("1", str(len(submodules_of_dimension(p.setting.wp.group, 3))))),
    ("3.molien", "stripped Molien series equals the printed series",
     lambda p: ("True", str(p.series_g == RationalSeries.of(ref.HILBERT_NUMERATOR, ref.HILBERT_DENOMINATOR)))),
    ("3.expansion", "series coefficients in degrees 0..7",
     lambda p: ("1,0,1,2,3,4,8,10", ",".join(map(str, expand(p.series_g, 7))))),
    ("3.alternative", "alternative printed representation is the same series",
     lambda p: ("True", str(
         RationalSeries.of(ref.ALT_HILBERT_NUMERATOR, ref.ALT_HILBERT_DENOMINATOR)
         == RationalSeries.of(ref.HILBERT_NUMERATOR, ref.HILBERT_DENOMINATOR)))),
    ("4.zero_dimensional", "printed degree 1..7 primaries cut out a zero-dimensional ideal in 7 variables",
     lambda p: ("True", str(is_zero_dimensional(p.hat_hsop.certificate)))),
    ("4.quotient_dimension", "dimension of the quotient by the printed primaries",
     lambda p: ("3024", str(quotient_basis_size(p.hat_hsop.certificate)))),
    ("4.restricted_degrees", "degrees of the restricted hsop", lambda p: ("{2,3,3,4,6,7}", _multiset(p.primaries.degrees))),
    ("4.f1", "degree-2 restricted primary equals the printed quadratic form",
     lambda p: (str(ref.quadratic_form()), str(p.primaries.polynomials[0]))),
    ("5.zeros", "non-zero zeros of the quadratic form", lambda p: ("35", _f1_zeros(p))),
    ("6.sylow_order", "order of the Sylow 2-subgroup D", lambda p: ("8", str(p.setting.sylow.group.order))),
    ("6.hsop", "hsop degrees for D", lambda p: ("{1,1,2,2,2,4}", _multiset(p.d_hsop.degrees))),
    ("6.secondaries", "secondary degrees for D", lambda p: ("{0,3,3,6}", _multiset(p.d_secondaries.degrees))),
    ("6.product_criterion", "s*|D| equals the product of hsop degrees",
     lambda p: ("4*8=32=32", _product_witness(p))),
    ("6.transfer", "odd-index transfer from D to G",
     lambda p: ("index=21 valid=True", f"index={p.g_certificate.witness[1]} valid={p.g_certificate.valid()}")),
    ("7.relations_vanish", "presentation relations vanish after substitution",
     lambda p: ("True", str(all(not p.presentation.evaluate(r) for r in p.presentation.rewrite_relations)))),
    ("7.relation_degrees", "degrees of the relations for G1^2, G1*G2, G2^2", lambda p: ("6,6,6", _relation_degrees(p))),
    ("8.count", "number of secondaries of G", lambda p: ("18", str(len(p.g_secondaries.secondaries)))),
    ("8.degrees", "secondary degrees of G",
     lambda p: (_multiset(ref.SECONDARY_DEGREES), _multiset(p.g_secondaries.secondaries.degrees))),
    ("8.product_table", "secondaries of degree >= 8 as products", lambda p: (_printed_product_table(), _product_table(p))),
    ("8.independent", "images independent in the presented quotient",
     lambda p: ("True", str(independent_mod_relations(p.g_secondaries.quotient, list(p.g_secondaries.expressions))))),
    ("8.generators", "minimal algebra generating set",
     lambda p: ("size=12 secondary={0,4,5,5,6,7} indecomposable=12", _generator_degrees(p))),
    ("8.max_degree", "maximal algebra generator degree", lambda p: ("7", _max_generator_degree(p))),
    ("9.c0", "Dickson invariant c0", lambda p: (str(ref.dickson_reference()["c0"]), str(p.dickson.c0))),
    ("9.c1", "Dickson invariant c1", lambda p: (str(ref.dickson_reference()["c1"]), str(p.dickson.c1))),
    ("9.c2", "Dickson invariant c2", lambda p: (str(ref.dickson_reference()["c2"]), str(p.dickson.c2))),
    ("9.hsop", "Dickson triple is an hsop in 3 variables",
     lambda p: ("{4,6,7}", _multiset(verify_hsop(p.dickson.as_tuple(), p.setting.wpp).degrees))),
    ("9.images", "images of f4, f5, f6 modulo d, e, f are c2, c1, c0", lambda p: ("True,True,True", _dickson_images(p))),
    ("10.invariant", "degree-4 twist polynomial is G-invariant",
     lambda p: ("True", str(is_invariant(ref.klein_twist(), p.setting.wpp.group)))),
    ("10.spans", "twist polynomial spans the degree-4 invariants", lambda p: ("dim=1 spans=True", _klein_span(p))),
]

def _optimality(p: Pipeline) -> tuple[str, str]:
    res = optimal_degree_search(p.setting.wp, p.series_g, prod(p.primaries.degrees))
    return "feasible=none", "feasible=" + (";".join(_multiset(d) for d in res.feasible) or "none")


FEASIBILITY_CHECKS: list[Check] = [
    ("11.infeasible", "degrees {2,3,3,4,4,7} violate the sub-multiset dimension criterion",
     lambda p: ("False", str(degrees_feasible(p.setting.wp, (2, 3, 3, 4, 4, 7))))),
    ("11.feasible", "degrees {2,3,3,4,6,7} of the restricted hsop pass the criterion",
     lambda p: ("True", str(degrees_feasible(p.setting.wp, (2, 3, 3, 4, 6, 7))))),
    ("11.optimal", "no feasible degree multiset with product below 3024 (degrees at most 8)", _optimality),
]


def _free_counts(p: Pipeline, which: str) -> tuple[str, str]:
    if which == "G":
        amb, hsop, sec = p.setting.wp, p.primaries, p.g_secondaries.secondaries
    else:
        amb, hsop, sec = p.setting.sylow, p.d_hsop, p.d_secondaries
    rows = free_module_counts(amb, hsop, sec, p.degree_bound)
    return ",".join(str(r[2]) for r in rows), ",".join(str(r[1]) for r in rows)


def _molien_vs_components(p: Pipeline) -> tuple[str, str]:
    dims = [len(p.setting.wp.component(d)) for d in range(p.degree_bound + 1)]
    return ",".join(map(str, dims)), ",".join(map(str, expand(p.series_g, p.degree_bound)))


def _d_numerator(p: Pipeline) -> tuple[str, str]:
    return "1 + 2*t^3 + t^6", str(numerator_for_degrees(p.series_d, SYLOW_DEGREES))


def _g_profile(p: Pipeline) -> tuple[str, str]:
    s, degs = secondary_profile(numerator_for_degrees(p.series_g, p.primaries.degrees))
    return f"18 {_multiset(ref.SECONDARY_DEGREES)}", f"{s} {_multiset(degs)}"


PIPELINE_CHECKS: list[Check] = [
    ("P.molien_dimensions", "invariant component dimensions equal series coefficients", _molien_vs_components),
    ("P.sylow_numerator", "Hilbert numerator of D over its hsop degrees", _d_numerator),
    ("P.secondary_profile", "secondary profile from the series", _g_profile),
    ("P.free_G", "hsop-monomial times secondary products span each invariant component (G)",
     lambda p: _free_counts(p, "G")),
    ("P.free_D", "hsop-monomial times secondary products span each invariant component (D)",
     lambda p: _free_counts(p, "D")),
]


def run_checks(pipeline: Pipeline, checks: list[Check], timings: bool = False) -> ReportDocument:
    results = []
    for cid, desc, fn in checks:
        t0 = time.perf_counter()
        try:
            expected, actual = fn(pipeline)
            status = "pass" if expected == actual else "fail"
        except Exception as exc:  # a crashing stage is a failed check, not a crashed report
            expected, actual, status = "(no exception)", f"error: {type(exc).__name__}: {exc}", "fail"
        ms = int((time.perf_counter() - t0) * 1000) if timings else None
        results.append(CheckResult(cid, desc, status, expected, actual, ms))
    return ReportDocument(__version__, pipeline.fixture_sha256, results)
