"""Buchberger's algorithm over GF(2) in (weighted) graded reverse lex order.

Reduction over GF(2) is XOR of supports, so the hot loop works on plain sets
of packed monomials (see :mod:`gf2inv.polyf2`) with a heap of order keys.
Pairs are processed by increasing lcm degree (normal strategy) and pruned with
the Gebauer-Moeller criteria.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .polyf2 import PolyRing, Polynomial


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    generators: tuple[Polynomial, ...]

    @property
    def leading_monomials(self) -> tuple[int, ...]:
        return tuple(g.leading_monomial() for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()


class _Reducer:
    """Basis under construction: terms, leading monomials, divisor lookup cache."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.polys: list[frozenset] = []
        self.lms: list[int] = []
        self.masks: list[int] = []
        self.active: list[int] = []
        self._hit: dict[int, int] = {}
        self._miss: set[int] = set()

    def add(self, terms: frozenset, lm: int) -> int:
        idx = len(self.polys)
        self.polys.append(terms)
        self.lms.append(lm)
        self.masks.append(self.ring.support_mask(lm))
        self.active.append(idx)
        self._miss.clear()
        return idx

    def deactivate(self, idxs: set[int]) -> None:
        if idxs:
            self.active = [i for i in self.active if i not in idxs]
            self._hit = {t: i for t, i in self._hit.items() if i not in idxs}

    def divisor(self, t: int) -> int | None:
        i = self._hit.get(t)
        if i is not None:
            return i
        if t in self._miss:
            return None
        ring = self.ring
        tl = (t & ring.low) | ring.guard
        g = ring.guard
        lms = self.lms
        for i in self.active:
            if (tl - (lms[i] & ring.low)) & g == g:
                self._hit[t] = i
                return i
        self._miss.add(t)
        return None

    def normal_form(self, terms: Iterable[int], full: bool = True) -> frozenset:
        ring = self.ring
        low = ring.low
        pset = set(terms)
        heap = [-(m ^ low) for m in pset]
        heapq.heapify(heap)
        rem = []
        polys = self.polys
        lms = self.lms
        while heap:
            t = (-heapq.heappop(heap)) ^ low
            if t not in pset:
                continue
            i = self.divisor(t)
            if i is None:
                pset.discard(t)
                rem.append(t)
                if not full:
                    rem.extend(pset)
                    break
                continue
            shift = t - lms[i]
            for u in polys[i]:
                v = u + shift
                if v in pset:
                    pset.remove(v)
                else:
                    pset.add(v)
                    heapq.heappush(heap, -(v ^ low))
        return frozenset(rem)


def _lead(ring: PolyRing, terms: Iterable[int]) -> int:
    return max(terms, key=ring.low.__xor__)


def groebner_basis(generators: Sequence[Polynomial], *, reduced: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis; the result does not depend on input order."""
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators must share a ring")
    low = ring.low
    seeds = sorted({g.terms for g in gens if g.terms}, key=lambda ts: (_lead(ring, ts) ^ low, sorted(ts)))
    if not seeds:
        return GroebnerBasis(ring, ())
    homogeneous = all(len({m >> ring.shift for m in ts}) == 1 for ts in seeds)
    red = _Reducer(ring)
    pairs: list[tuple[int, int, int, int]] = []
    _Pairs(ring, red, pairs).run(seeds, homogeneous)
    basis = [red.polys[i] for i in red.active]
    if reduced:
        basis = _interreduce(ring, basis)
    else:
        basis.sort(key=lambda ts: _lead(ring, ts) ^ low)
    return GroebnerBasis(ring, tuple(Polynomial(ring, ts) for ts in basis))


class _Pairs:
    """Critical-pair bookkeeping with the Gebauer-Moeller criteria."""

    def __init__(self, ring: PolyRing, red: _Reducer, heap: list):
        self.ring = ring
        self.red = red
        self.heap = heap
        self.by_degree: dict[int, list[int]] = {}

    def insert(self, nf: frozenset, homogeneous: bool) -> None:
        ring, red = self.ring, self.red
        lm = _lead(ring, nf)
        if homogeneous:
            # keep same-degree tails reduced; h is already reduced w.r.t. the rest
            d = lm >> ring.shift
            polys = red.polys
            for g in self.by_degree.get(d, ()):
                if lm in polys[g]:
                    polys[g] = polys[g] ^ nf
        h = red.add(nf, lm)
        self.by_degree.setdefault(lm >> ring.shift, []).append(h)
        self.update(h)

    def update(self, h: int) -> None:
        ring, red = self.ring, self.red
        low, guard, sh = ring.low, ring.guard, ring.shift
        lms, masks = red.lms, red.masks
        lm_h = lms[h]
        mask_h = masks[h]
        cand = []
        for g in red.active:
            if g != h:
                l = ring.lcm(lm_h, lms[g])
                cand.append((l >> sh, l ^ low, g, l))
        cand.sort()
        kept: list[tuple[int, int]] = []
        kept_low: list[int] = []
        for _, _, g, l in cand:
            lg = (l & low) | guard
            if any((lg - k) & guard == guard for k in kept_low):
                continue
            kept.append((g, l))
            kept_low.append(l & low)
        heap = self.heap
        if heap:
            hl = lm_h & low
            filtered = []
            for entry in heap:
                _, key, i, j = entry
                l = key ^ low
                if (((l & low) | guard) - hl) & guard == guard:
                    if ring.lcm(lms[i], lm_h) != l and ring.lcm(lms[j], lm_h) != l:
                        continue
                filtered.append(entry)
            if len(filtered) != len(heap):
                heapq.heapify(filtered)
                heap[:] = filtered
        for g, l in kept:
            if masks[g] & mask_h:
                i, j = (g, h) if g < h else (h, g)
                heapq.heappush(heap, (l >> sh, l ^ low, i, j))
        drop = {g for g in red.active if g != h and ring.divides(lm_h, lms[g])}
        red.deactivate(drop)
        if drop:
            self.heap[:] = [e for e in self.heap if e[2] not in drop and e[3] not in drop]
            heapq.heapify(self.heap)

    def run(self, seeds: list[frozenset], homogeneous: bool) -> None:
        ring, red, heap = self.ring, self.red, self.heap
        sh = ring.shift
        if homogeneous:
            pending = sorted(seeds, key=lambda ts: (next(iter(ts)) >> sh, _lead(ring, ts) ^ ring.low))
        else:
            pending = []
            for ts in seeds:
                nf = red.normal_form(ts)
                if nf:
                    self.insert(nf, False)
        k = 0
        while heap or k < len(pending):
            if k < len(pending) and (not heap or (next(iter(pending[k])) >> sh) <= heap[0][0]):
                s = pending[k]
                k += 1
            else:
                _, _, i, j = heapq.heappop(heap)
                li, lj = red.lms[i], red.lms[j]
                l = ring.lcm(li, lj)
                si, sj = l - li, l - lj
                s = {u + si for u in red.polys[i]}
                s.symmetric_difference_update(u + sj for u in red.polys[j])
                if not s:
                    continue
            nf = red.normal_form(s)
            if nf:
                self.insert(nf, homogeneous)


def _interreduce(ring: PolyRing, basis: list[frozenset]) -> list[frozenset]:
    low = ring.low
    # minimal: drop elements whose lead is divisible by another lead
    basis = sorted(basis, key=lambda ts: _lead(ring, ts) ^ low)
    leads = [_lead(ring, ts) for ts in basis]
    minimal = []
    for k, (ts, lm) in enumerate(zip(basis, leads)):
        if any(ring.divides(leads[j], lm) for j in range(len(basis)) if j != k and (leads[j] != lm or j < k)):
            continue
        minimal.append((ts, lm))
    out = []
    for k, (ts, lm) in enumerate(minimal):
        red = _Reducer(ring)
        for j, (ts2, lm2) in enumerate(minimal):
            if j != k:
                red.add(ts2, lm2)
        tail = red.normal_form(ts - {lm})
        out.append(frozenset(tail | {lm}))
    out.sort(key=lambda ts: _lead(ring, ts) ^ low)
    return out


def _reducer_for(gb: GroebnerBasis) -> _Reducer:
    red = getattr(gb, "_reducer", None)
    if red is None:
        red = _Reducer(gb.ring)
        for g in gb.generators:
            red.add(g.terms, g.leading_monomial())
        object.__setattr__(gb, "_reducer", red)
    return red


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if p.ring != gb.ring:
        raise ValueError("arity mismatch between polynomial and basis")
    if not p.terms:
        return p
    return Polynomial(gb.ring, _reducer_for(gb).normal_form(p.terms))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    lf, lg = f.leading_monomial(), g.leading_monomial()
    l = ring.lcm(lf, lg)
    return ring.poly({u + (l - lf) for u in f.terms} ^ {u + (l - lg) for u in g.terms})


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: all S-polynomials reduce to zero."""
    for f, g in combinations(gb.generators, 2):
        if not normal_form(s_polynomial(f, g), gb).is_zero():
            return False
    return True


def is_zero_dimensional(gb: GroebnerBasis, arity: int | None = None) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    ring = gb.ring
    n = ring.n if arity is None else arity
    pure = 0
    for lm in gb.leading_monomials:
        mask = ring.support_mask(lm)
        if mask and mask & (mask - 1) == 0:
            pure |= mask
        if lm == 0:  # unit ideal
            return True
    return pure == (1 << n) - 1


def krull_dimension(gb: GroebnerBasis, arity: int | None = None) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    ring = gb.ring
    n = ring.n if arity is None else arity
    masks = [ring.support_mask(lm) for lm in gb.leading_monomials]
    if any(m == 0 for m in masks):
        return -1  # unit ideal: empty variety
    best = 0
    for s in range(1 << n):
        size = bin(s).count("1")
        if size <= best:
            continue
        if all(m & ~s for m in masks):
            best = size
    return best


def standard_monomials(gb: GroebnerBasis, limit: int = 10**6) -> list[int]:
    """Monomials outside the leading ideal (an order ideal), by search from 1."""
    ring = gb.ring
    lms = gb.leading_monomials
    low, guard = ring.low, ring.guard
    if any(l == 0 for l in lms):
        return []
    lms_low = [l & low for l in lms]
    seen = {0}
    stack = [0]
    while stack:
        m = stack.pop()
        for v in ring.var_monomials:
            u = m + v
            if u in seen:
                continue
            ul = (u & low) | guard
            if any((ul - l) & guard == guard for l in lms_low):
                continue
            seen.add(u)
            if len(seen) > limit:
                raise RuntimeError("too many standard monomials; ideal is probably not zero-dimensional")
            stack.append(u)
    return sorted(seen, key=low.__xor__)


def quotient_basis_size(gb: GroebnerBasis) -> int | None:
    """Vector-space dimension of the quotient if the ideal is zero-dimensional, else None."""
    if not is_zero_dimensional(gb):
        return None
    return len(standard_monomials(gb))


# --------------------------------------------------------------------------
# finitely presented quotients


@dataclass
class PresentedQuotient:
    """Graded algebra ``F2[generators] / (relations)`` with weighted degrees."""

    ring: PolyRing
    relations: tuple[Polynomial, ...]
    gb: GroebnerBasis = field(init=False)

    def __post_init__(self):
        for r in self.relations:
            if r.ring != self.ring:
                raise ValueError("relations must live in the presentation ring")
            if not r.is_homogeneous():
                raise ValueError(f"relation is not homogeneous for the weights: {r}")
        nonzero = [r for r in self.relations if r]
        self.gb = groebner_basis(nonzero) if nonzero else GroebnerBasis(self.ring, ())

    @classmethod
    def from_text(cls, generators: Sequence[tuple[str, int]], relations: Sequence[str]) -> "PresentedQuotient":
        ring = PolyRing([g for g, _ in generators], [d for _, d in generators])
        return cls(ring, tuple(ring.parse(r) for r in relations))

    def normal_form(self, p: Polynomial) -> Polynomial:
        if not self.gb.generators:
            return p
        return normal_form(p, self.gb)

    def coerce(self, element) -> Polynomial:
        if isinstance(element, str):
            try:
                return self.ring.parse(element)
            except ValueError as exc:
                if "unknown variable" not in str(exc):
                    raise
                raise ValueError(f"element uses unknown generator name: {exc}") from exc
        if element.ring != self.ring:
            raise ValueError("element uses unknown generator names")
        return element


def independent_mod_relations(q: PresentedQuotient, elements: Sequence) -> bool:
    """True iff the normal forms of ``elements`` are linearly independent over GF(2)."""
    pivots: dict[int, set] = {}
    low = q.ring.low
    for el in elements:
        nf = set(q.normal_form(q.coerce(el)).terms)
        while nf:
            lm = max(nf, key=low.__xor__)
            if lm in pivots:
                nf ^= pivots[lm]
            else:
                pivots[lm] = nf
                break
        if not nf:
            return False
    return True
