"""Primary and secondary invariants, Cohen-Macaulay certificates, presentations.

The three ambient rings are ``S[W*]`` (variables ``w1..w7``, permutation
action on the seven basis vectors), ``S[W'*]`` (``a..f``) and ``S[W''*]``
(``x, y, z``, the natural module).  Secondary invariants of the large group
are certified through the free presentation of the invariants of a Sylow
2-subgroup ``D``: a family of ``G``-invariants is a valid set of secondaries
iff its image in ``S[W'*]^D / (f_1, ..., f_6)`` is linearly independent,
which is tested by normal forms in a finitely presented algebra.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product as iproduct
from math import prod
from typing import Iterable, Mapping, NamedTuple, Sequence

from .gf2core import (
    BitMatrix,
    MatrixGroup,
    closure_from_generators,
    homomorphic_image,
    permutation_on_basis,
    sylow_subgroup,
)
from .groebner import (
    GroebnerBasis,
    PresentedQuotient,
    groebner_basis,
    independent_mod_relations,
    is_zero_dimensional,
    krull_dimension,
)
from .hilbert import (
    CycleTypeCensus,
    IncompatibleDegrees,
    IntegerPolynomial,
    RationalSeries,
    molien_permutation,
    numerator_for_degrees,
    secondary_profile,
    strip_trivial_summand,
)
from .polyf2 import (
    M_RING,
    W_RING,
    WPRIME_RING,
    LinearVariableMap,
    PolyRing,
    Polynomial,
    first_breaking_generator,
    invariant_component,
)


class HsopError(ValueError):
    """A candidate family fails one of the hsop criteria."""


class DecompositionError(ValueError):
    pass


# --------------------------------------------------------------------------
# ambient data


@dataclass(frozen=True)
class Ambient:
    name: str
    ring: PolyRing
    group: MatrixGroup

    @property
    def arity(self) -> int:
        return self.ring.n

    def component(self, degree: int) -> list[Polynomial]:
        return list(invariant_component(self.group, self.ring, degree))


@dataclass(frozen=True)
class Setting:
    """All groups, rings and maps of the pipeline, built from the fixture."""

    w: Ambient
    wp: Ambient
    wpp: Ambient
    sylow: Ambient
    restriction: LinearVariableMap
    quotient: LinearVariableMap
    omega: BitMatrix
    perm_generators: tuple[BitMatrix, ...]
    to_perm: Mapping[BitMatrix, BitMatrix]

    def census(self, sub: MatrixGroup | None = None) -> CycleTypeCensus:
        """Cycle-type census on the seven basis vectors, of ``G`` or of a subgroup of ``wp.group``."""
        grp = self.w.group
        if sub is None:
            perms = grp
        else:
            perms = MatrixGroup.from_elements([self.to_perm[g] for g in sub.elements])
        image = permutation_on_basis(perms, [1 << i for i in range(7)])
        return CycleTypeCensus.from_image(image)

    def hilbert_series(self, sub: MatrixGroup | None = None) -> RationalSeries:
        """Series of ``S[W'*]^H``: Molien on the permutation module, one trivial summand stripped."""
        return strip_trivial_summand(molien_permutation(self.census(sub)))


# generous bound on the groups built from fixture matrices; |GL3(F2)| = 168
MAX_GROUP_ORDER = 20160


def build_setting(mats: Mapping[str, BitMatrix]) -> Setting:
    omega = mats["OMEGA"]
    oinv = omega.inverse()
    # permutation matrices of the generators in the basis given by the rows of OMEGA
    pa = omega @ mats["DW_A"] @ oinv
    pb = omega @ mats["DW_B"] @ oinv
    if not (pa.is_permutation() and pb.is_permutation()):
        raise ValueError("OMEGA does not turn the generators into permutations")
    gw = closure_from_generators([pa, pb], MAX_GROUP_ORDER)
    gp = closure_from_generators([mats["DWd_A"], mats["DWd_B"]], MAX_GROUP_ORDER)
    gm = closure_from_generators([mats["A3"], mats["B3"]], MAX_GROUP_ORDER)
    to_perm = homomorphic_image([mats["DWd_A"], mats["DWd_B"]], [pa, pb])
    d = sylow_subgroup(gp, 2)
    # dual of the inclusion W' -> W: coordinate i goes to sum_j (OMEGA^-1)[j, i] x_j, j < 6
    rows = [sum(oinv[j, i] << j for j in range(6)) for i in range(7)]
    restriction = LinearVariableMap.from_matrix(W_RING, WPRIME_RING, rows)
    quotient = LinearVariableMap.by_names(WPRIME_RING, M_RING, {"a": "x", "b": "y", "c": "z"})
    return Setting(
        w=Ambient("W*", W_RING, gw),
        wp=Ambient("W'*", WPRIME_RING, gp),
        wpp=Ambient("W''*", M_RING, gm),
        sylow=Ambient("W'*|D", WPRIME_RING, d),
        restriction=restriction,
        quotient=quotient,
        omega=omega,
        perm_generators=(pa, pb),
        to_perm=to_perm,
    )


# --------------------------------------------------------------------------
# linear algebra on polynomials


class _Span:
    """Incremental echelon form of polynomials (as term sets), with combination tags."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.pivots: dict[int, tuple[set, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, terms: Iterable[int], tag: int = 0) -> tuple[set, int]:
        low = self.ring.low
        v = set(terms)
        while v:
            lm = max(v, key=low.__xor__)
            hit = self.pivots.get(lm)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        return v, tag

    def add(self, terms: Iterable[int], tag: int = 0) -> bool:
        v, tag = self.reduce(terms, tag)
        if not v:
            return False
        self.pivots[max(v, key=self.ring.low.__xor__)] = (v, tag)
        return True


class _MonomialEvaluator:
    """Evaluates monomials in named generators as polynomials, with memoisation."""

    def __init__(self, gen_ring: PolyRing, images: Sequence[Polynomial]):
        if len(images) != gen_ring.n:
            raise ValueError("one image per generator")
        self.gen_ring = gen_ring
        self.images = tuple(images)
        self.target = images[0].ring
        self._memo: dict[int, Polynomial] = {0: self.target.one}

    def __call__(self, m: int) -> Polynomial:
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        exps = self.gen_ring.exponents(m)
        i = max(k for k, e in enumerate(exps) if e)
        val = self(m - self.gen_ring.var_monomials[i]) * self.images[i]
        self._memo[m] = val
        return val

    def polynomial(self, expr: Polynomial) -> Polynomial:
        acc = self.target.zero
        for m in expr.terms:
            acc = acc + self(m)
        return acc


def _free_first_key(gen_ring: PolyRing, module_vars: set[int]):
    """Order generator monomials: at most one module generator factor first, then grevlex."""

    def key(m: int):
        exps = gen_ring.exponents(m)
        extra = sum(exps[i] for i in module_vars)
        return (extra > 1, m ^ gen_ring.low)

    return key


def decompose_over_subring(
    p: Polynomial,
    gen_ring: PolyRing,
    images: Sequence[Polynomial],
    module_vars: Iterable[int] = (),
    evaluator: _MonomialEvaluator | None = None,
) -> Polynomial:
    """Express homogeneous ``p`` as a polynomial in the generators ``images``.

    Solved by exact linear algebra over the generator monomials of matching
    weighted degree; earlier monomials in the ``_free_first_key`` order are
    preferred as pivots, so the answer is deterministic.
    """
    if not p.terms:
        return gen_ring.zero
    if not p.is_homogeneous():
        raise DecompositionError("polynomial is not homogeneous")
    ev = evaluator or _MonomialEvaluator(gen_ring, images)
    d = p.degree()
    monos = sorted(gen_ring.monomials_of_degree(d), key=_free_first_key(gen_ring, set(module_vars)))
    span = _Span(p.ring)
    for k, m in enumerate(monos):
        span.add(ev(m).terms, 1 << k)
    rest, tag = span.reduce(p.terms)
    if rest:
        raise DecompositionError("not in subring")
    return gen_ring.poly(monos[k] for k in range(len(monos)) if (tag >> k) & 1)


# --------------------------------------------------------------------------
# primary invariants


@dataclass(frozen=True)
class Hsop:
    polynomials: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    ambient: str
    certificate: GroebnerBasis

    def __len__(self) -> int:
        return len(self.polynomials)


def verify_hsop(candidates: Sequence[Polynomial], ambient: Ambient) -> Hsop:
    cands = list(candidates)
    if len(cands) != ambient.arity:
        raise HsopError(f"wrong count: {len(cands)} candidates for {ambient.arity} variables")
    for k, p in enumerate(cands):
        if p.ring != ambient.ring:
            raise HsopError(f"candidate {k + 1} lives in the wrong ring")
        if not p.terms or not p.is_homogeneous():
            raise HsopError(f"candidate {k + 1} is not a non-zero homogeneous polynomial")
        bad = first_breaking_generator(p, ambient.group)
        if bad is not None:
            raise HsopError(f"candidate {k + 1} is not invariant: generator {bad} moves it")
    gb = groebner_basis(cands)
    if not is_zero_dimensional(gb):
        raise HsopError("candidates do not cut out a zero-dimensional ideal")
    return Hsop(tuple(cands), tuple(p.degree() for p in cands), ambient.name, gb)


def search_hsop(
    ambient: Ambient,
    degrees: Sequence[int],
    pool: Mapping[int, Sequence[Polynomial]] | None = None,
) -> Hsop:
    """First hsop in lexicographic order over pool indices.

    Slots are the target degrees sorted ascending; equal degrees take strictly
    increasing pool indices.  A prefix of length k is kept only if its ideal
    has Krull dimension ``n - k`` (every subfamily of an hsop does).
    """
    slots = sorted(degrees)
    n = ambient.arity
    if len(slots) != n:
        raise HsopError(f"wrong count: {len(slots)} degrees for {n} variables")
    if pool is None:
        pool = {d: ambient.component(d) for d in set(slots)}
    for d in set(slots):
        if not pool.get(d):
            raise HsopError(f"no hsop with these degrees among pool: no invariants of degree {d}")

    def dfs(chosen: list[Polynomial], last: int) -> Hsop | None:
        k = len(chosen)
        if k == n:
            return verify_hsop(chosen, ambient)
        d = slots[k]
        start = last + 1 if k and slots[k - 1] == d else 0
        for i in range(start, len(pool[d])):
            cand = chosen + [pool[d][i]]
            gb = groebner_basis(cand)
            if krull_dimension(gb) != n - len(cand):
                continue
            found = dfs(cand, i)
            if found is not None:
                return found
        return None

    found = dfs([], -1)
    if found is None:
        raise HsopError("no hsop with these degrees among pool")
    return found


def _sub_multisets(degrees: Sequence[int]):
    counts: dict[int, int] = {}
    for d in degrees:
        counts[d] = counts.get(d, 0) + 1
    keys = sorted(counts)
    for mult in iproduct(*(range(counts[k] + 1) for k in keys)):
        if any(mult):
            yield {k: m for k, m in zip(keys, mult) if m}


CUT_TRIALS = 8


def _random_forms(ring: PolyRing, count: int, rng: random.Random) -> list[Polynomial]:
    return [ring.linear_form(rng.randrange(1, 1 << ring.n)) for _ in range(count)]


def _dimension_bound(ambient: Ambient, gens: list[Polynomial], bound: int, seed: int = 0) -> int | None:
    """An upper bound ``<= bound`` on dim(gens), or None if none was found.

    Adding ``c`` linear forms lowers the dimension by at most ``c``, so
    ``dim(I + L) + c`` bounds ``dim I`` from above.  Cutting first makes the
    Groebner basis far cheaper than the one of ``I`` itself.
    """
    n = ambient.arity
    if not gens or bound < 0:
        return None
    if bound >= n - 1:
        # a single nonzero homogeneous form already cuts out a hypersurface
        return n - 1
    ring = ambient.ring
    rng = random.Random(seed)
    for c in range(bound, 0, -1):
        for _ in range(CUT_TRIALS):
            dim = krull_dimension(groebner_basis(gens + _random_forms(ring, c, rng)))
            if dim + c <= bound:
                return dim + c
    return None


class FeasibilityRow(NamedTuple):
    """One sub-multiset ``A`` of a candidate degree list.

    ``dimension`` is the Krull dimension of the ideal of all invariants
    of degrees in ``A`` when ``exact`` holds, otherwise an upper bound
    certified by hyperplane sections or by a smaller ideal inside it.
    """

    sub: dict[int, int]
    dimension: int
    exact: bool
    ok: bool


def feasibility_report(
    ambient: Ambient, degrees: Sequence[int], stop_at_failure: bool = False
) -> list[FeasibilityRow]:
    """One row per sub-multiset ``A``, with ``ok`` iff dim I_A <= n - |A|.

    The ideal only depends on the set of distinct degrees in ``A``, and
    ``I_K`` contains ``I_K'`` for ``K'`` inside ``K``.  Each set is examined
    once, against the largest multiplicities available; exact dimensions
    are only computed when no cheaper upper bound suffices.  Sets are
    visited by increasing largest degree so low-degree ideals come first.
    """
    if len(degrees) != ambient.arity:
        raise ValueError("need one degree per variable")
    n = ambient.arity
    comps: dict[int, list[Polynomial]] = {}
    known: dict[tuple[int, ...], tuple[int, bool]] = {}

    def dimension(key: tuple[int, ...], bound: int) -> tuple[int, bool]:
        if key in known:
            return known[key]
        for other, (dim, _) in known.items():
            if dim <= bound and set(other) <= set(key):
                return dim, False
        gens = []
        for d in key:
            if d not in comps:
                comps[d] = ambient.component(d)
            gens.extend(comps[d])
        cert = _dimension_bound(ambient, gens, bound, seed=sum(d << (4 * i) for i, d in enumerate(key)))
        if cert is not None:
            result = (cert, False)
        else:
            result = (krull_dimension(groebner_basis(gens)) if gens else n, True)
        known[key] = result
        return result

    counts = Counter(degrees)
    subs = sorted(_sub_multisets(degrees), key=lambda a: (max(a), sum(k * m for k, m in a.items()), sorted(a.items())))
    out = []
    for sub in subs:
        key = tuple(sorted(sub))
        # the tightest requirement on I_key comes from full multiplicities
        dim, exact = dimension(key, n - sum(counts[d] for d in key))
        row = FeasibilityRow(sub, dim, exact, dim <= n - sum(sub.values()))
        out.append(row)
        if stop_at_failure and not row.ok:
            break
    return out


def degrees_feasible(ambient: Ambient, degrees: Sequence[int]) -> bool:
    """Necessary condition for an hsop with these degrees (all sub-multisets)."""
    return all(row.ok for row in feasibility_report(ambient, degrees, stop_at_failure=True))


@dataclass(frozen=True)
class OptimalitySearch:
    product_bound: int
    max_degree: int
    candidates: tuple[tuple[int, ...], ...]  # passed the Hilbert series filter
    feasible: tuple[tuple[int, ...], ...]


def optimal_degree_search(
    ambient: Ambient, series: RationalSeries, product_bound: int, max_degree: int = 8
) -> OptimalitySearch:
    """Degree multisets with product below ``product_bound`` that could carry an hsop.

    A multiset survives the cheap filter when the series times the matching
    denominator is a polynomial with non-negative coefficients; survivors
    are then run through :func:`degrees_feasible`.
    """
    candidates = []
    for degs in combinations_with_replacement(range(1, max_degree + 1), ambient.arity):
        if prod(degs) >= product_bound:
            continue
        try:
            numerator_for_degrees(series, degs)
        except IncompatibleDegrees:
            continue
        candidates.append(degs)
    feasible = tuple(d for d in candidates if degrees_feasible(ambient, d))
    return OptimalitySearch(product_bound, max_degree, tuple(candidates), feasible)


def restrict_hsop(hsop: Hsop, setting: Setting) -> Hsop:
    """Drop the linear element and restrict the rest to ``W'``."""
    lin = [p for p in hsop.polynomials if p.degree() == 1]
    if len(lin) != 1:
        raise HsopError("input must contain exactly one linear invariant")
    images = [setting.restriction(p) for p in hsop.polynomials if p.degree() != 1]
    return verify_hsop(images, setting.wp)


# --------------------------------------------------------------------------
# secondary invariants of the subgroup


@dataclass(frozen=True)
class SecondarySet:
    polynomials: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    products: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.polynomials)


def _hsop_ring(hsop: Hsop, prefix: str = "F") -> PolyRing:
    return PolyRing([f"{prefix}{i + 1}" for i in range(len(hsop))], hsop.degrees)


def subgroup_secondaries(ambient: Ambient, hsop: Hsop, series: RationalSeries) -> SecondarySet:
    """Secondaries degree by degree, completing the span of hsop-monomials times earlier ones."""
    try:
        num = numerator_for_degrees(series, hsop.degrees)
    except IncompatibleDegrees as exc:
        raise HsopError("hsop degrees inconsistent") from exc
    ring = ambient.ring
    fring = _hsop_ring(hsop)
    ev = _MonomialEvaluator(fring, hsop.polynomials)
    chosen: list[Polynomial] = []
    for d in range(num.degree() + 1):
        span = _Span(ring)
        for g in chosen:
            for m in fring.monomials_of_degree(d - g.degree()):
                span.add((ev(m) * g).terms)
        comp = ambient.component(d)
        need = num[d]
        if len(span) + need != len(comp):
            raise HsopError(f"degree {d}: span {len(span)} plus {need} new differs from dimension {len(comp)}")
        added = 0
        for p in comp:
            if added == need:
                break
            if span.add(p.terms):
                chosen.append(p)
                added += 1
        if added != need:
            raise HsopError(f"degree {d}: could not complete the span")
    return SecondarySet(tuple(chosen), tuple(p.degree() for p in chosen))


def free_module_counts(ambient: Ambient, hsop: Hsop, secondaries: SecondarySet, upto: int) -> list[tuple[int, int, int]]:
    """Per degree: (d, rank of hsop-monomial * secondary products, dim of the invariant component)."""
    fring = _hsop_ring(hsop)
    ev = _MonomialEvaluator(fring, hsop.polynomials)
    out = []
    for d in range(upto + 1):
        span = _Span(ambient.ring)
        for g in secondaries.polynomials:
            for m in fring.monomials_of_degree(d - g.degree()):
                span.add((ev(m) * g).terms)
        out.append((d, len(span), len(ambient.component(d))))
    return out


# --------------------------------------------------------------------------
# Cohen-Macaulay certificates


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class CMCertificate:
    kind: str  # "product-criterion" | "subgroup-transfer" | "odd-order"
    chain: tuple[str, ...]
    witness: tuple[int, int, int]
    base: "CMCertificate | None" = None

    def valid(self) -> bool:
        s, h, prod = self.witness
        if self.kind == "product-criterion":
            return s * h == prod
        if self.kind == "subgroup-transfer":
            return h % 2 == 1 and self.base is not None and self.base.valid()
        if self.kind == "odd-order":
            return h % 2 == 1
        return False

    def describe(self) -> str:
        s, h, prod = self.witness
        if self.kind == "product-criterion":
            return f"{self.chain[-1]}: {s} secondaries * |H| = {s}*{h} = {prod} = product of hsop degrees"
        if self.kind == "subgroup-transfer":
            return f"{' -> '.join(self.chain)}: index {h} is odd; base: {self.base.describe()}"
        return f"{self.chain[-1]}: group order {h} is odd"


def product_certificate(name: str, group_order: int, hsop: Hsop, secondaries: SecondarySet) -> CMCertificate:
    prod = 1
    for d in hsop.degrees:
        prod *= d
    cert = CMCertificate("product-criterion", (name,), (len(secondaries), group_order, prod))
    if not cert.valid():
        raise CertificateError(
            f"product criterion fails: {len(secondaries)}*{group_order} != {prod}"
        )
    return cert


def transfer_certificate(base: CMCertificate, big_name: str, big_order: int, sub_order: int) -> CMCertificate:
    if big_order % sub_order:
        raise CertificateError("subgroup order does not divide the group order")
    index = big_order // sub_order
    if index % 2 == 0:
        raise CertificateError(f"index {index} is even; transfer is not available in characteristic 2")
    if not base.valid():
        raise CertificateError("base certificate does not validate")
    return CMCertificate("subgroup-transfer", base.chain + (big_name,), (0, index, 0), base)


def cm_certificate(
    name: str,
    group_order: int,
    hsop: Hsop | None = None,
    secondaries: SecondarySet | None = None,
    base: CMCertificate | None = None,
    sub_order: int | None = None,
) -> CMCertificate:
    """Product criterion when hsop and secondaries are given, odd-index transfer from ``base`` otherwise."""
    if base is not None:
        if sub_order is None:
            raise CertificateError("transfer needs the subgroup order")
        return transfer_certificate(base, name, group_order, sub_order)
    if group_order % 2 == 1:
        return CMCertificate("odd-order", (name,), (0, group_order, 0))
    if hsop is None or secondaries is None:
        raise CertificateError("product criterion needs hsop and secondaries")
    return product_certificate(name, group_order, hsop, secondaries)


# --------------------------------------------------------------------------
# presentation of the subgroup invariants


@dataclass
class AlgebraPresentation:
    ring: PolyRing
    images: tuple[Polynomial, ...]
    rewrite_relations: tuple[Polynomial, ...]
    module_vars: tuple[int, ...]
    evaluator: _MonomialEvaluator = field(repr=False)

    @property
    def names(self) -> tuple[str, ...]:
        return self.ring.names

    def evaluate(self, expr: Polynomial) -> Polynomial:
        return self.evaluator.polynomial(expr)

    def decompose(self, p: Polynomial) -> Polynomial:
        return decompose_over_subring(p, self.ring, self.images, self.module_vars, self.evaluator)

    def quotient(self, extra: Sequence[Polynomial] = ()) -> PresentedQuotient:
        return PresentedQuotient(self.ring, tuple(self.rewrite_relations) + tuple(extra))


def present_subgroup_algebra(hsop: Hsop, secondaries: SecondarySet) -> AlgebraPresentation:
    """Generators F1.., G1..; one rewrite relation per product of two non-unit secondaries."""
    gs = [g for g in secondaries.polynomials if g.degree() > 0]
    if len(gs) + 1 != len(secondaries):
        raise ValueError("exactly one secondary must be the constant 1")
    names = [f"F{i + 1}" for i in range(len(hsop))] + [f"G{j + 1}" for j in range(len(gs))]
    weights = list(hsop.degrees) + [g.degree() for g in gs]
    ring = PolyRing(names, weights)
    images = tuple(hsop.polynomials) + tuple(gs)
    module_vars = tuple(range(len(hsop), len(names)))
    ev = _MonomialEvaluator(ring, images)
    rels = []
    for i in range(len(gs)):
        for j in range(i, len(gs)):
            gi, gj = ring.var(names[len(hsop) + i]), ring.var(names[len(hsop) + j])
            prod = gi * gj
            target = ev.polynomial(prod)
            d = target.degree() if target.terms else gs[i].degree() + gs[j].degree()
            # free basis only: F-monomials times 1 or a single G
            monos = [
                m for m in ring.monomials_of_degree(d)
                if sum(ring.exponents(m)[k] for k in module_vars) <= 1
            ]
            monos.sort(key=ring.low.__xor__)
            span = _Span(target.ring)
            for k, m in enumerate(monos):
                if not span.add(ev(m).terms, 1 << k):
                    raise DecompositionError("freeness violated")
            rest, tag = span.reduce(target.terms)
            if rest:
                raise DecompositionError("freeness violated")
            expr = ring.poly(monos[k] for k in range(len(monos)) if (tag >> k) & 1)
            rels.append(prod + expr)
    return AlgebraPresentation(ring, images, tuple(rels), module_vars, ev)


# --------------------------------------------------------------------------
# secondary invariants of G


@dataclass(frozen=True)
class GSecondaryResult:
    secondaries: SecondarySet
    expressions: tuple[Polynomial, ...]
    quotient: PresentedQuotient
    rejected_products: tuple[tuple[int, ...], ...]


def build_secondaries_G(
    primaries: Hsop,
    presentation: AlgebraPresentation,
    ambient: Ambient,
    series: RationalSeries,
) -> GSecondaryResult:
    """Greedy secondaries of ``ambient``: products of earlier ones first, fresh invariants otherwise."""
    num = numerator_for_degrees(series, primaries.degrees)
    s, target_degrees = secondary_profile(num)
    decomp = tuple(presentation.decompose(f) for f in primaries.polynomials)
    quotient = presentation.quotient(decomp)
    ring = presentation.ring

    chosen: list[Polynomial] = [ambient.ring.one]
    exprs: list[Polynomial] = [ring.one]
    degs: list[int] = [0]
    products: dict[int, tuple[int, ...]] = {}
    rejected: list[tuple[int, ...]] = []
    running: list[Polynomial] = [ring.one]

    def accepts(expr: Polynomial) -> bool:
        return independent_mod_relations(quotient, running + [expr])

    for d in sorted(set(target_degrees) - {0}):
        need = target_degrees.count(d)
        got = 0
        # products of at least two earlier non-unit secondaries, ordered by factor indices
        for factors in _factorisations(degs, d):
            if got == need:
                break
            expr = ring.one
            for k in factors:
                expr = expr * exprs[k]
            if accepts(expr):
                poly = ambient.ring.one
                for k in factors:
                    poly = poly * chosen[k]
                products[len(chosen) + 1] = tuple(k + 1 for k in factors)
                chosen.append(poly)
                exprs.append(expr)
                degs.append(d)
                running.append(expr)
                got += 1
            else:
                rejected.append(tuple(k + 1 for k in factors))
        if got < need:
            for p in ambient.component(d):
                if got == need:
                    break
                expr = presentation.decompose(p)
                if accepts(expr):
                    chosen.append(p)
                    exprs.append(expr)
                    degs.append(d)
                    running.append(expr)
                    got += 1
        if got < need:
            raise HsopError(f"degree {d}: found {got} of {need} secondaries")
    if len(chosen) != s:
        raise HsopError("secondary count differs from the series profile")
    return GSecondaryResult(
        SecondarySet(tuple(chosen), tuple(degs), products),
        tuple(exprs),
        quotient,
        tuple(rejected),
    )


def _factorisations(degs: Sequence[int], d: int) -> list[tuple[int, ...]]:
    """Non-decreasing index tuples (length >= 2, no unit) whose degrees sum to d, sorted lexicographically."""
    idx = [k for k, e in enumerate(degs) if e > 0]
    out: list[tuple[int, ...]] = []

    def rec(start: int, left: int, acc: tuple[int, ...]):
        if left == 0:
            if len(acc) >= 2:
                out.append(acc)
            return
        for pos in range(start, len(idx)):
            k = idx[pos]
            if degs[k] <= left:
                rec(pos, left - degs[k], acc + (k,))

    rec(0, d, ())
    out.sort()
    return out


def indecomposable_counts(ambient: Ambient, upto: int) -> dict[int, int]:
    """dim S^G_d minus dim of the degree-d part of (S^G_+)^2, for 1 <= d <= upto."""
    comps = {d: ambient.component(d) for d in range(1, upto + 1)}
    out = {}
    for d in range(1, upto + 1):
        span = _Span(ambient.ring)
        for a in range(1, d // 2 + 1):
            for p in comps[a]:
                for q in comps[d - a]:
                    span.add((p * q).terms)
        out[d] = len(comps[d]) - len(span)
    return out


# --------------------------------------------------------------------------
# Dickson invariants and the quotient W' -> W''


@dataclass(frozen=True)
class DicksonTriple:
    c0: Polynomial
    c1: Polynomial
    c2: Polynomial

    def as_tuple(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return (self.c0, self.c1, self.c2)


def dickson_invariants() -> DicksonTriple:
    """Coefficients of prod over v in span(x, y, z) of (X + v) = X^8 + c2 X^4 + c1 X^2 + c0 X."""
    ring = PolyRing(["x", "y", "z", "X"])
    big_x = ring.var("X")
    acc = ring.one
    for bits in range(8):
        acc = acc * (big_x + ring.linear_form(bits))
    coeffs: dict[int, set] = {}
    for m in acc.terms:
        e = ring.exponents(m)
        coeffs.setdefault(e[3], set()).add(M_RING.monomial(e[:3]))
    if set(coeffs) != {8, 4, 2, 1} or coeffs[8] != {0}:
        raise AssertionError("unexpected shape of the Dickson polynomial")
    return DicksonTriple(M_RING.poly(coeffs[1]), M_RING.poly(coeffs[2]), M_RING.poly(coeffs[4]))


def quotient_to_natural(f4: Polynomial, f5: Polynomial, f6: Polynomial, setting: Setting) -> tuple[Polynomial, ...]:
    """Images under d, e, f -> 0 (and a, b, c -> x, y, z), checked against the degrees 4, 6, 7."""
    out = tuple(setting.quotient(p) for p in (f4, f5, f6))
    for p, d in zip(out, (4, 6, 7)):
        if not p.terms or p.degree() != d or not p.is_homogeneous():
            raise ValueError(f"degree mismatch after substitution: expected {d}")
    return out
