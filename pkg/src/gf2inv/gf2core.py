"""GF(2) matrices, finite matrix groups and small-module searches.

Vectors are Python ints used as bit rows: bit ``j`` holds coordinate ``j``.
Matrices act on row vectors from the right, ``v -> v * M``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_SUBSPACE_DIM = 8


class NotAGroupGenerator(ValueError):
    pass


class GroupTooLarge(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def vec_from_bits(bits: Sequence[int]) -> int:
    v = 0
    for j, b in enumerate(bits):
        if b & 1:
            v |= 1 << j
    return v


def vec_to_bits(v: int, n: int) -> list[int]:
    return [(v >> j) & 1 for j in range(n)]


@dataclass(frozen=True)
class BitMatrix:
    """Dense matrix over GF(2) stored as a tuple of row bitmasks."""

    data: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if not self.data or self.ncols <= 0:
            raise ValueError("BitMatrix needs at least one row and one column")
        limit = 1 << self.ncols
        for r in self.data:
            if r < 0 or r >= limit:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(tuple(vec_from_bits(r) for r in rows), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.ncols)

    def is_square(self) -> bool:
        return len(self.data) == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def to_rows(self) -> list[list[int]]:
        return [vec_to_bits(r, self.ncols) for r in self.data]

    def row_times(self, v: int) -> int:
        """Return the row vector ``v * self``."""
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= self.data[i]
            v >>= 1
            i += 1
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return BitMatrix(tuple(other.row_times(r) for r in self.data), other.ncols)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BitMatrix(tuple(a ^ b for a, b in zip(self.data, other.data)), self.ncols)

    def transpose(self) -> "BitMatrix":
        rows = []
        for j in range(self.ncols):
            r = 0
            for i, row in enumerate(self.data):
                if (row >> j) & 1:
                    r |= 1 << i
            rows.append(r)
        return BitMatrix(tuple(rows), self.nrows)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def rank(self) -> int:
        return len(echelon_rows(self.data))

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> "BitMatrix":
        n = self.nrows
        if not self.is_square():
            raise ValueError("only square matrices can be inverted")
        # augmented rows: high n bits hold the identity
        rows = [r | (1 << (n + i)) for i, r in enumerate(self.data)]
        for col in range(n):
            piv = next((i for i in range(col, n) if (rows[i] >> col) & 1), None)
            if piv is None:
                raise ValueError("matrix is singular")
            rows[col], rows[piv] = rows[piv], rows[col]
            for i in range(n):
                if i != col and (rows[i] >> col) & 1:
                    rows[i] ^= rows[col]
        return BitMatrix(tuple(r >> n for r in rows), n)

    def is_permutation(self) -> bool:
        if not self.is_square():
            return False
        return all(popcount(r) == 1 for r in self.data) and len(set(self.data)) == self.nrows

    def __str__(self) -> str:
        return "\n".join(" ".join(str(b) for b in row) for row in self.to_rows())


def echelon_rows(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon form of bit rows, pivots on the highest set bit.

    Returned rows are sorted by decreasing pivot.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        for p in sorted(pivots, reverse=True):
            if (r >> p) & 1:
                r ^= pivots[p]
        if r:
            p = r.bit_length() - 1
            for q in pivots:
                if (pivots[q] >> p) & 1:
                    pivots[q] ^= r
            pivots[p] = r
    return [pivots[p] for p in sorted(pivots, reverse=True)]


def in_span(v: int, echelon: Sequence[int]) -> bool:
    for r in echelon:
        p = r.bit_length() - 1
        if (v >> p) & 1:
            v ^= r
    return v == 0


# --------------------------------------------------------------------------
# polynomials in F2[t] encoded as ints (bit i = coefficient of t^i)


def clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def cldivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q, a


def f2t_format(p: int, var: str = "t") -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(p.bit_length() - 1, -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return "+".join(terms)


def f2t_is_irreducible(p: int) -> bool:
    deg = p.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if cldivmod(p, q)[1] == 0:
                return False
    return True


def _det_f2t(entries: list[list[int]]) -> int:
    """Determinant of a small matrix with entries in F2[t] (Laplace + memo)."""
    n = len(entries)
    memo: dict[int, int] = {}

    def minor(row: int, cols: int) -> int:
        if row == n:
            return 1
        key = cols
        if key in memo:
            return memo[key]
        total = 0
        for j in range(n):
            if (cols >> j) & 1 and entries[row][j]:
                total ^= clmul(entries[row][j], minor(row + 1, cols & ~(1 << j)))
        memo[key] = total
        return total

    return minor(0, (1 << n) - 1)


def char_poly_matrix(m: BitMatrix) -> int:
    """Characteristic polynomial det(t*I + M) as an F2[t] int."""
    if not m.is_square():
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.nrows
    entries = [[m[i, j] ^ (0b10 if i == j else 0) for j in range(n)] for i in range(n)]
    return _det_f2t(entries)


# --------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class MatrixGroup:
    generators: tuple[BitMatrix, ...]
    elements: tuple[BitMatrix, ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.elements)})

    @property
    def dimension(self) -> int:
        return self.elements[0].nrows

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: BitMatrix) -> bool:
        return g in self._index

    def index(self, g: BitMatrix) -> int:
        return self._index[g]

    def identity(self) -> BitMatrix:
        return BitMatrix.identity(self.dimension)

    @classmethod
    def from_elements(cls, elements: Sequence[BitMatrix]) -> "MatrixGroup":
        """Wrap a closed element list; generators are picked greedily."""
        gens: list[BitMatrix] = []
        span: set[BitMatrix] = {BitMatrix.identity(elements[0].nrows)}
        for g in elements:
            if g not in span:
                gens.append(g)
                span = set(closure_from_generators(gens).elements)
        return cls(tuple(gens), tuple(elements))


def closure_from_generators(generators: Sequence[BitMatrix], max_order: int | None = None) -> MatrixGroup:
    """Breadth-first product closure, identity first, generators in given order.

    With ``max_order`` set, the enumeration stops with ``GroupTooLarge`` once it exceeds that size.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].nrows
    for g in generators:
        if not g.is_square() or g.nrows != n:
            raise ValueError("generators must be square of a common dimension")
        if not g.is_invertible():
            raise NotAGroupGenerator("not a group generator: matrix is singular")
    ident = BitMatrix.identity(n)
    seen = {ident}
    order = [ident]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for g in generators:
            y = x @ g
            if y not in seen:
                seen.add(y)
                order.append(y)
        if max_order is not None and len(order) > max_order:
            raise GroupTooLarge(f"group generated has more than {max_order} elements")
    return MatrixGroup(tuple(generators), tuple(order))


def element_order(g: BitMatrix) -> int:
    ident = BitMatrix.identity(g.nrows)
    x, k = g, 1
    while x != ident:
        x = x @ g
        k += 1
    return k


def orbit_and_stabilizer(group: MatrixGroup, vector: int) -> tuple[list[int], MatrixGroup]:
    if vector < 0 or vector >= (1 << group.dimension):
        raise ValueError("vector length does not match the group dimension")
    orbit: list[int] = []
    seen = set()
    stab = []
    for g in group.elements:
        w = g.row_times(vector)
        if w not in seen:
            seen.add(w)
            orbit.append(w)
        if w == vector:
            stab.append(g)
    return orbit, MatrixGroup.from_elements(stab)


def sylow_subgroup(group: MatrixGroup, p: int) -> MatrixGroup:
    """Deterministic Sylow p-subgroup.

    One greedy pass over the element list: an element is adjoined whenever the
    enlarged subgroup is still a p-group. A rejected element can never become
    admissible later, so the pass ends at a maximal, hence Sylow, p-subgroup.
    """
    order = group.order
    if order % p:
        raise ValueError(f"{p} does not divide the group order {order}")
    target = 1
    while order % (target * p) == 0:
        target *= p

    def is_p_power(k: int) -> bool:
        while k % p == 0:
            k //= p
        return k == 1

    gens: list[BitMatrix] = []
    current = closure_from_generators([group.identity()])
    for g in group.elements:
        if g in current:
            continue
        trial = closure_from_generators(gens + [g])
        if is_p_power(trial.order):
            gens.append(g)
            current = trial
            if current.order == target:
                break
    assert current.order == target
    return current


def right_coset_representatives(big: MatrixGroup, sub: MatrixGroup) -> list[BitMatrix]:
    """First-encountered representatives of the right cosets ``H*s``."""
    covered: set[BitMatrix] = set()
    reps = []
    for s in big.elements:
        if s in covered:
            continue
        reps.append(s)
        covered.update(h @ s for h in sub.elements)
    return reps


def homomorphic_image(
    source_gens: Sequence[BitMatrix], target_gens: Sequence[BitMatrix]
) -> dict[BitMatrix, BitMatrix]:
    """Extend ``source_gens[i] -> target_gens[i]`` to a map on the closure.

    Raises ValueError when the assignment does not define a homomorphism.
    """
    src = BitMatrix.identity(source_gens[0].nrows)
    dst = BitMatrix.identity(target_gens[0].nrows)
    phi = {src: dst}
    queue = [src]
    k = 0
    while k < len(queue):
        x = queue[k]
        k += 1
        for s, t in zip(source_gens, target_gens):
            y, img = x @ s, phi[x] @ t
            if y in phi:
                if phi[y] != img:
                    raise ValueError("generator images do not define a homomorphism")
            else:
                phi[y] = img
                queue.append(y)
    return phi


# --------------------------------------------------------------------------
# permutation images


def cycles_of(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles_of(perm)), reverse=True))


def format_cycles(perm: Sequence[int]) -> str:
    """1-based cycle notation, fixed points omitted, ``()`` for the identity."""
    parts = ["(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles_of(perm) if len(c) > 1]
    return "".join(parts) or "()"


def format_cycle_type(ct: Sequence[int]) -> str:
    counts = Counter(ct)
    return "*".join(f"{k}^{counts[k]}" if counts[k] > 1 else f"{k}" for k in sorted(counts))


@dataclass(frozen=True)
class PermutationImage:
    points: int
    group: MatrixGroup
    perms: tuple[tuple[int, ...], ...]  # indexed like group.elements

    def of(self, g: BitMatrix) -> tuple[int, ...]:
        return self.perms[self.group.index(g)]

    def census(self) -> dict[tuple[int, ...], int]:
        return cycle_census(self)


def permutation_on_basis(group: MatrixGroup, basis: Sequence[int]) -> PermutationImage:
    n = len(basis)
    if n != group.dimension or len(echelon_rows(basis)) != n:
        raise ValueError("basis must be linearly independent and spanning")
    pos = {b: i for i, b in enumerate(basis)}
    for gi, g in enumerate(group.generators):
        for i, b in enumerate(basis):
            if g.row_times(b) not in pos:
                raise ValueError(
                    f"generator {gi} does not permute the basis: image of basis vector {i + 1} "
                    "is not a basis vector"
                )
    perms = []
    for g in group.elements:
        perm = []
        for b in basis:
            w = g.row_times(b)
            if w not in pos:
                raise ValueError("basis is not permuted by the group")
            perm.append(pos[w])
        perms.append(tuple(perm))
    image = PermutationImage(n, group, tuple(perms))
    # homomorphism check on generators: pi(x*g) = pi(x) then pi(g)
    for x in group.elements[: min(len(group.elements), 64)]:
        px = image.of(x)
        for g in group.generators:
            pg = image.of(g)
            if image.of(x @ g) != tuple(pg[px[i]] for i in range(n)):
                raise ValueError("permutation action is not a homomorphism")
    return image


def cycle_census(image: PermutationImage) -> dict[tuple[int, ...], int]:
    """Cycle type -> number of group elements, keys sorted for determinism."""
    c = Counter(cycle_type(p) for p in image.perms)
    assert sum(c.values()) == image.group.order
    return dict(sorted(c.items(), reverse=True))


# --------------------------------------------------------------------------
# characteristic polynomials and submodules


def _basis_change_with_subspace(subspace: Sequence[int], n: int) -> list[int]:
    """Extend an independent list of rows to a basis of F2^n (subspace first)."""
    rows = list(subspace)
    ech = echelon_rows(rows)
    if len(ech) != len(rows):
        raise ValueError("subspace basis is not linearly independent")
    for j in range(n):
        if len(rows) == n:
            break
        e = 1 << j
        if not in_span(e, ech):
            rows.append(e)
            ech = echelon_rows(rows)
    return rows


def is_stable(m: BitMatrix, subspace: Sequence[int]) -> bool:
    ech = echelon_rows(subspace)
    return all(in_span(m.row_times(b), ech) for b in subspace)


def block_action(m: BitMatrix, subspace: Sequence[int]) -> tuple[BitMatrix, BitMatrix]:
    """Matrices of ``m`` on a stable subspace and on the quotient by it."""
    n = m.nrows
    k = len(subspace)
    if not is_stable(m, subspace):
        raise ValueError("subspace is not stable under the matrix")
    p = BitMatrix(tuple(_basis_change_with_subspace(subspace, n)), n)
    conj = p @ m @ p.inverse()
    low = (1 << k) - 1
    sub = BitMatrix(tuple(r & low for r in conj.data[:k]), k) if k else None
    quo = BitMatrix(tuple(r >> k for r in conj.data[k:]), n - k) if k < n else None
    return sub, quo


@dataclass(frozen=True)
class CharPoly:
    poly: int  # F2[t] encoded as int
    irreducible: bool

    def __str__(self) -> str:
        return f2t_format(self.poly)


def char_poly(m: BitMatrix, subspace: Sequence[int] | None = None, quotient: bool = False) -> CharPoly:
    """Characteristic polynomial of ``m``, optionally on a stable subspace or its quotient."""
    if subspace is not None:
        sub, quo = block_action(m, subspace)
        m = quo if quotient else sub
        if m is None:
            return CharPoly(1, False)
    p = char_poly_matrix(m)
    return CharPoly(p, f2t_is_irreducible(p))


@dataclass(frozen=True)
class SubmoduleReport:
    ambient_dimension: int
    target_dimension: int
    subspaces: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.subspaces)


def rref_subspaces(n: int, k: int):
    """All k-dimensional subspaces of F2^n as RREF row tuples (pivot = low bit)."""
    for pivots in itertools.combinations(range(n), k):
        # free positions: for row r, columns > pivot r that are not pivots
        free = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    free.append((r, c))
        for bits in range(1 << len(free)):
            rows = [1 << pc for pc in pivots]
            for idx, (r, c) in enumerate(free):
                if (bits >> idx) & 1:
                    rows[r] |= 1 << c
            yield tuple(rows)


def submodules_of_dimension(group: MatrixGroup, k: int) -> SubmoduleReport:
    n = group.dimension
    if n > MAX_SUBSPACE_DIM:
        raise ValueError(f"exhaustive subspace search is capped at dimension {MAX_SUBSPACE_DIM}")
    if not 0 <= k <= n:
        raise ValueError("k must lie between 0 and the dimension")
    found = [rows for rows in rref_subspaces(n, k) if all(is_stable(g, rows) for g in group.generators)]
    return SubmoduleReport(n, k, tuple(found))
