"""Sparse multivariate polynomials over GF(2).

A monomial is packed into one int: exponent of variable ``i`` in bits
``[8i, 8i+8)`` (top bit of each byte is a guard and stays clear), and the
weighted degree above all exponent bytes.  Multiplying monomials is integer
addition, and ``m ^ ring.low`` is a sort key realising the graded reverse
lexicographic order (weighted degree first, then smaller exponent of the
last variable is larger).  Coefficients are implicit: a polynomial is the
set of monomials occurring with coefficient 1.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .gf2core import BitMatrix, MatrixGroup, right_coset_representatives

FIELD = 8
FIELD_MASK = (1 << FIELD) - 1
MAX_EXP = (1 << (FIELD - 1)) - 1
MAX_COMPONENT_DEGREE = 25

W_NAMES = tuple(f"w{i}" for i in range(1, 8))
WPRIME_NAMES = ("a", "b", "c", "d", "e", "f")
M_NAMES = ("x", "y", "z")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PolyRing:
    """Polynomial ring over GF(2) with named variables and positive weights."""

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names) or not names:
            raise ValueError("variable names must be distinct and non-empty")
        self.names = names
        self.n = len(names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.n
        if len(self.weights) != self.n or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        self.shift = FIELD * self.n
        self.low = (1 << self.shift) - 1
        self.guard = sum(1 << (FIELD * i + FIELD - 1) for i in range(self.n))
        self.var_monomials = tuple((1 << (FIELD * i)) | (w << self.shift) for i, w in enumerate(self.weights))
        self.index = {nm: i for i, nm in enumerate(names)}

    def __repr__(self) -> str:
        if all(w == 1 for w in self.weights):
            return f"PolyRing({', '.join(self.names)})"
        return "PolyRing(" + ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights)) + ")"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.names, self.weights))

    # -- monomials ----------------------------------------------------------

    def monomial(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError("exponent vector has the wrong length")
        m = 0
        deg = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            m |= e << (FIELD * i)
            deg += e * self.weights[i]
        return m | (deg << self.shift)

    def exponents(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (FIELD * i)) & FIELD_MASK for i in range(self.n))

    def mdeg(self, m: int) -> int:
        return m >> self.shift

    def total_degree(self, m: int) -> int:
        return sum(self.exponents(m))

    def key(self, m: int) -> int:
        return m ^ self.low

    def divides(self, a: int, b: int) -> bool:
        return (((b & self.low) | self.guard) - (a & self.low)) & self.guard == self.guard

    def support_mask(self, m: int) -> int:
        mask = 0
        for i in range(self.n):
            if (m >> (FIELD * i)) & FIELD_MASK:
                mask |= 1 << i
        return mask

    def lcm(self, a: int, b: int) -> int:
        out = 0
        deg = 0
        for i in range(self.n):
            s = FIELD * i
            e = max((a >> s) & FIELD_MASK, (b >> s) & FIELD_MASK)
            out |= e << s
            deg += e * self.weights[i]
        return out | (deg << self.shift)

    def monomials_of_degree(self, d: int) -> list[int]:
        """All monomials of (weighted) degree d, in increasing term order."""
        out = []

        def rec(i: int, left: int, acc: int):
            if i == self.n - 1:
                w = self.weights[i]
                if left % w == 0 and left // w <= MAX_EXP:
                    out.append(acc | ((left // w) << (FIELD * i)))
                return
            w = self.weights[i]
            for e in range(left // w + 1):
                rec(i + 1, left - e * w, acc | (e << (FIELD * i)))

        if d < 0:
            return []
        rec(0, d, 0)
        top = d << self.shift
        return sorted((m | top for m in out), key=self.low.__xor__)

    def format_monomial(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.exponents(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomials ---------------------------------------------------------

    def poly(self, terms: Iterable[int]) -> "Polynomial":
        return Polynomial(self, frozenset(terms))

    @cached_property
    def zero(self) -> "Polynomial":
        return Polynomial(self, frozenset())

    @cached_property
    def one(self) -> "Polynomial":
        return Polynomial(self, frozenset((0,)))

    def var(self, name: str | int) -> "Polynomial":
        i = self.index[name] if isinstance(name, str) else name
        return Polynomial(self, frozenset((self.var_monomials[i],)))

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.n)]

    def linear_form(self, bits: int) -> "Polynomial":
        """Sum of the variables whose bit is set in ``bits``."""
        return self.poly(self.var_monomials[i] for i in range(self.n) if (bits >> i) & 1)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


W_RING = PolyRing(W_NAMES)
WPRIME_RING = PolyRing(WPRIME_NAMES)
M_RING = PolyRing(M_NAMES)


class Polynomial:
    """Immutable GF(2) polynomial; addition is symmetric difference of supports."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: frozenset):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _check(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise ValueError(f"arity mismatch: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.one if other & 1 else self.ring.zero
        self._check(other)
        return Polynomial(self.ring, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other & 1 else self.ring.zero
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (s,) = b
            return Polynomial(self.ring, frozenset(m + s for m in a))
        counts = Counter(x + y for x in a for y in b)
        return Polynomial(self.ring, frozenset(m for m, c in counts.items() if c & 1))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base.square()
        return result

    def square(self) -> "Polynomial":
        # Frobenius: cross terms cancel in characteristic 2
        return Polynomial(self.ring, frozenset(m + m for m in self.terms))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == (self.ring.one.terms if other & 1 else frozenset())
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[int]:
        """Monomials in decreasing term order."""
        return sorted(self.terms, key=self.ring.low.__xor__, reverse=True)

    def leading_monomial(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.low.__xor__)

    def degrees(self) -> set[int]:
        return {m >> self.ring.shift for m in self.terms}

    def degree(self) -> int:
        """Weighted degree; -1 for zero."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        sh = self.ring.shift
        return Polynomial(self.ring, frozenset(m for m in self.terms if m >> sh == d))

    def variables_used(self) -> set[str]:
        mask = 0
        for m in self.terms:
            mask |= self.ring.support_mask(m)
        return {self.ring.names[i] for i in range(self.ring.n) if (mask >> i) & 1}

    def evaluate(self, point: int) -> int:
        """Value at a point of F2^n given as a bit row (bit i = value of var i)."""
        total = 0
        for m in self.terms:
            mask = self.ring.support_mask(m)
            if mask & point == mask:
                total ^= 1
        return total

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# --------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[+*^]))")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``term (+ term)*`` with ``term = factor (* factor)*``, ``factor = var[^k] | 1``."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    if not tokens:
        raise PolynomialSyntaxError("empty input", 0)
    if len(tokens) == 1 and tokens[0][:2] == ("num", "0"):
        return ring.zero

    k = 0

    def expect_factor() -> int:
        nonlocal k
        if k >= len(tokens):
            raise PolynomialSyntaxError("expected a factor", len(text))
        kind, val, p = tokens[k]
        if kind == "num":
            if val != "1":
                raise PolynomialSyntaxError(f"only the constant 1 is allowed, got {val}", p)
            k += 1
            return 0
        if kind != "name":
            raise PolynomialSyntaxError(f"expected a variable, got {val!r}", p)
        if val not in ring.index:
            raise PolynomialSyntaxError(f"unknown variable {val!r}", p)
        k += 1
        e = 1
        if k < len(tokens) and tokens[k][1] == "^":
            k += 1
            if k >= len(tokens) or tokens[k][0] != "num":
                raise PolynomialSyntaxError("expected an exponent", tokens[k - 1][2] + 1)
            e = int(tokens[k][1])
            k += 1
        exps = [0] * ring.n
        exps[ring.index[val]] = e
        return ring.monomial(exps)

    counts: Counter = Counter()
    while True:
        m = expect_factor()
        while k < len(tokens) and tokens[k][1] == "*":
            k += 1
            m += expect_factor()
        counts[m] += 1
        if k == len(tokens):
            break
        kind, val, p = tokens[k]
        if val != "+":
            raise PolynomialSyntaxError(f"expected '+', got {val!r}", p)
        k += 1
    return ring.poly(m for m, c in counts.items() if c & 1)


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    return " + ".join(p.ring.format_monomial(m) for m in p.sorted_terms())


# --------------------------------------------------------------------------
# linear actions


class _ActionCache:
    """Images of monomials under one linear substitution, built incrementally."""

    def __init__(self, target: PolyRing, images: Sequence[Polynomial]):
        self.target = target
        self.images = list(images)
        self.memo: dict[int, frozenset] = {0: frozenset((0,))}

    def image(self, src_ring: PolyRing, m: int) -> frozenset:
        got = self.memo.get(m)
        if got is not None:
            return got
        # peel off the first variable present
        for i in range(src_ring.n):
            if (m >> (FIELD * i)) & FIELD_MASK:
                break
        rest = self.image(src_ring, m - src_ring.var_monomials[i])
        lin = self.images[i].terms
        counts = Counter(x + y for x in rest for y in lin)
        out = frozenset(t for t, c in counts.items() if c & 1)
        self.memo[m] = out
        return out

    def apply(self, src_ring: PolyRing, p: Polynomial) -> Polynomial:
        acc: set = set()
        for m in p.terms:
            acc.symmetric_difference_update(self.image(src_ring, m))
        return Polynomial(self.target, frozenset(acc))


_ACT_CACHES: dict = {}


def _matrix_images(ring: PolyRing, sigma: BitMatrix) -> list[Polynomial]:
    # variable i goes to the linear form given by row i of the matrix
    return [ring.linear_form(row) for row in sigma.data]


def _cache_for(ring: PolyRing, sigma: BitMatrix) -> _ActionCache:
    key = (ring, sigma)
    c = _ACT_CACHES.get(key)
    if c is None:
        if len(_ACT_CACHES) > 4096:
            _ACT_CACHES.clear()
        c = _ACT_CACHES[key] = _ActionCache(ring, _matrix_images(ring, sigma))
    return c


def act(p: Polynomial, sigma: BitMatrix) -> Polynomial:
    """Right action on polynomials: variable i is replaced by sum_j sigma[i,j] x_j.

    Satisfies ``act(act(p, s), t) == act(p, s @ t)``.
    """
    ring = p.ring
    if not sigma.is_square() or sigma.nrows != ring.n:
        raise ValueError(f"arity mismatch: matrix {sigma.shape} on {ring.n} variables")
    if any(w != 1 for w in ring.weights):
        raise ValueError("linear actions need an unweighted ring")
    if sigma.is_permutation():
        perm = [row.bit_length() - 1 for row in sigma.data]
        return ring.poly(_permute_monomial(ring, m, perm) for m in p.terms)
    return _cache_for(ring, sigma).apply(ring, p)


def _permute_monomial(ring: PolyRing, m: int, perm: Sequence[int]) -> int:
    out = m & ~ring.low
    for i in range(ring.n):
        e = (m >> (FIELD * i)) & FIELD_MASK
        if e:
            out |= e << (FIELD * perm[i])
    return out


def is_invariant(p: Polynomial, group_or_gens) -> bool:
    gens = group_or_gens.generators if isinstance(group_or_gens, MatrixGroup) else group_or_gens
    return all(act(p, g) == p for g in gens)


def first_breaking_generator(p: Polynomial, group: MatrixGroup) -> int | None:
    for i, g in enumerate(group.generators):
        if act(p, g) != p:
            return i
    return None


# --------------------------------------------------------------------------
# graded components


@dataclass(frozen=True)
class GradedComponentBasis:
    degree: int
    basis: tuple[Polynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i: int) -> Polynomial:
        return self.basis[i]


def _to_bits(p: Polynomial, index: dict[int, int]) -> int:
    v = 0
    for m in p.terms:
        v |= 1 << index[m]
    return v


def _from_bits(ring: PolyRing, v: int, monos: Sequence[int]) -> Polynomial:
    out = []
    while v:
        b = v.bit_length() - 1
        out.append(monos[b])
        v ^= 1 << b
    return ring.poly(out)


def echelon_polynomials(polys: Iterable[Polynomial]) -> list[Polynomial]:
    """Reduced echelon basis of the span, leading monomials distinct, sorted ascending."""
    polys = list(polys)
    if not polys:
        return []
    ring = polys[0].ring
    monos = sorted({m for p in polys for m in p.terms}, key=ring.low.__xor__)
    index = {m: i for i, m in enumerate(monos)}
    from .gf2core import echelon_rows

    rows = echelon_rows(_to_bits(p, index) for p in polys)
    return [_from_bits(ring, r, monos) for r in reversed(rows)]


def _kernel_combinations(vectors: Sequence[int], count: int) -> list[int]:
    """Bitmasks (over ``range(count)``) of combinations of ``vectors`` that vanish."""
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for i, v in enumerate(vectors):
        tag = 1 << i
        while v:
            p = v.bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                pivots[p] = (v, tag)
                break
            v ^= hit[0]
            tag ^= hit[1]
        if not v:
            kernel.append(tag)
    return kernel


def invariant_component(group: MatrixGroup | Sequence[BitMatrix], ring: PolyRing, degree: int) -> GradedComponentBasis:
    """Echelonised basis of the degree-d invariants: kernels of (sigma - 1) on generators."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree > MAX_COMPONENT_DEGREE:
        raise ValueError(f"degree cap {MAX_COMPONENT_DEGREE} exceeded")
    gens = list(group.generators) if isinstance(group, MatrixGroup) else list(group)
    monos = ring.monomials_of_degree(degree)
    index = {m: i for i, m in enumerate(monos)}
    # current basis of the common kernel, as bit vectors over monos
    basis: list[int] | None = None
    perm_gens = [g for g in gens if g.is_permutation()]
    other_gens = [g for g in gens if not g.is_permutation()]
    if perm_gens:
        basis = [_to_bits(orbit, index) for orbit in _orbit_sums_for(perm_gens, ring, monos)]
    else:
        basis = [1 << i for i in range(len(monos))]
    for g in other_gens:
        cache = _cache_for(ring, g)
        images = []
        for v in basis:
            acc = 0
            w = v
            while w:
                b = w.bit_length() - 1
                w ^= 1 << b
                img = cache.image(ring, monos[b])
                for t in img:
                    acc ^= 1 << index[t]
            images.append(acc ^ v)
        new_basis = []
        for tag in _kernel_combinations(images, len(basis)):
            acc = 0
            while tag:
                b = tag.bit_length() - 1
                tag ^= 1 << b
                acc ^= basis[b]
            new_basis.append(acc)
        basis = new_basis
    from .gf2core import echelon_rows

    rows = echelon_rows(basis)
    return GradedComponentBasis(degree, tuple(_from_bits(ring, r, monos) for r in reversed(rows)))


def _orbit_sums_for(perm_gens: Sequence[BitMatrix], ring: PolyRing, monos: Sequence[int]) -> list[Polynomial]:
    perms = [[row.bit_length() - 1 for row in g.data] for g in perm_gens]
    seen: set[int] = set()
    orbits = []
    for m in monos:
        if m in seen:
            continue
        orbit = {m}
        frontier = [m]
        while frontier:
            x = frontier.pop()
            for perm in perms:
                y = _permute_monomial(ring, x, perm)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        orbits.append(orbit)
    orbits.sort(key=lambda o: min(ring.exponents(m) for m in o))
    return [ring.poly(o) for o in orbits]


def orbit_sums(group: MatrixGroup | Sequence[BitMatrix], ring: PolyRing, degree: int) -> list[Polynomial]:
    """One orbit sum per orbit of degree-d monomials, sorted by least exponent tuple."""
    gens = list(group.generators) if isinstance(group, MatrixGroup) else list(group)
    if any(not g.is_permutation() for g in gens):
        raise ValueError("action does not permute monomials; use invariant_component")
    if any(g.nrows != ring.n for g in gens):
        raise ValueError("arity mismatch")
    return _orbit_sums_for(gens, ring, ring.monomials_of_degree(degree))


def relative_reynolds(sub: MatrixGroup, group: MatrixGroup, p: Polynomial) -> Polynomial:
    """Sum of ``p * s`` over right coset representatives of ``sub`` in ``group``.

    The index must be odd, so that its inverse in GF(2) is 1.
    """
    if group.order % sub.order:
        raise ValueError("subgroup order does not divide group order")
    if any(h not in group for h in sub.generators):
        raise ValueError("not a subgroup")
    index = group.order // sub.order
    if index % 2 == 0:
        raise ValueError("index not invertible in characteristic 2")
    if not is_invariant(p, sub):
        raise ValueError("polynomial is not invariant under the subgroup")
    acc = p.ring.zero
    for s in right_coset_representatives(group, sub):
        acc = acc + act(p, s)
    return acc


# --------------------------------------------------------------------------
# substitutions between rings


@dataclass(frozen=True)
class LinearVariableMap:
    source: PolyRing
    target: PolyRing
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise ValueError("need one image per source variable")
        for im in self.images:
            if im.ring != self.target:
                raise ValueError("images must live in the target ring")
            if any(self.target.mdeg(m) != 1 for m in im.terms):
                raise ValueError("images must be linear forms")

    @classmethod
    def from_matrix(cls, source: PolyRing, target: PolyRing, rows: Sequence[int]) -> "LinearVariableMap":
        """Source variable i goes to the sum of target variables set in ``rows[i]``."""
        return cls(source, target, tuple(target.linear_form(r) for r in rows))

    @classmethod
    def by_names(cls, source: PolyRing, target: PolyRing, mapping: dict[str, str | None]) -> "LinearVariableMap":
        imgs = []
        for nm in source.names:
            t = mapping.get(nm)
            imgs.append(target.zero if t is None else target.var(t))
        return cls(source, target, tuple(imgs))

    def __call__(self, p: Polynomial) -> Polynomial:
        return substitute(self, p)


_SUB_CACHES: dict = {}


def substitute(vmap: LinearVariableMap, p: Polynomial) -> Polynomial:
    if p.ring != vmap.source:
        raise ValueError("arity mismatch between map source and polynomial")
    key = id(vmap)
    cached = _SUB_CACHES.get(key)
    if cached is None or cached[0] is not vmap:
        cached = (vmap, _ActionCache(vmap.target, vmap.images))
        _SUB_CACHES[key] = cached
    return cached[1].apply(vmap.source, p)


def count_monomials(n: int, d: int) -> int:
    return comb(n + d - 1, d)
