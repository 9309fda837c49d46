"""Exact Hilbert/Molien series for permutation modules.

For a permutation matrix ``sigma`` one has ``det(1 - t*sigma) = prod (1 - t^l)``
over the cycle lengths ``l`` of ``sigma``, so Molien's average only needs the
cycle-type census of the group.  Everything is integer arithmetic; series are
kept as ``numerator / prod (1 - t^d)`` with the denominator factored.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

MAX_EXPANSION = 64


class IntegerPolynomial:
    """Polynomial in ``t`` with integer coefficients, ascending, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> "IntegerPolynomial":
        return cls([0] * d + [c])

    @classmethod
    def one_minus_t_pow(cls, d: int) -> "IntegerPolynomial":
        if d <= 0:
            raise ValueError("factor degree must be positive")
        return cls([1] + [0] * (d - 1) + [-1])

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "IntegerPolynomial":
        """Sum of ``t^e`` over the multiset of degrees."""
        c = Counter(degrees)
        if not c:
            return cls()
        out = [0] * (max(c) + 1)
        for e, k in c.items():
            out[e] += k
        return cls(out)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntegerPolynomial([other])
        return isinstance(other, IntegerPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntegerPolynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntegerPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntegerPolynomial":
        out = IntegerPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod_exact(self, other: "IntegerPolynomial") -> tuple["IntegerPolynomial", "IntegerPolynomial"]:
        """Long division by a divisor with leading coefficient +-1."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntegerPolynomial(), self
        q = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * lead
            if c:
                q[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return IntegerPolynomial(q), IntegerPolynomial(rem)

    def exact_div(self, k: int) -> "IntegerPolynomial":
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(f"coefficients not divisible by {k}")
        return IntegerPolynomial(c // k for c in self.coeffs)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                tp = "t" if e == 1 else f"t^{e}"
                body = tp if mag == 1 else f"{mag}*{tp}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"


def _product(degrees: Iterable[int]) -> IntegerPolynomial:
    out = IntegerPolynomial([1])
    for d in degrees:
        out = out * IntegerPolynomial.one_minus_t_pow(d)
    return out


@dataclass(frozen=True)
class RationalSeries:
    """``numerator / prod_{d in denominator} (1 - t^d)``; equality by cross-multiplication."""

    numerator: IntegerPolynomial
    denominator: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "denominator", tuple(sorted(self.denominator)))
        if any(d <= 0 for d in self.denominator):
            raise ValueError("denominator factors must have positive degree")

    @classmethod
    def of(cls, numerator: Sequence[int] | IntegerPolynomial, denominator: Iterable[int]) -> "RationalSeries":
        if not isinstance(numerator, IntegerPolynomial):
            numerator = IntegerPolynomial(numerator)
        return cls(numerator, tuple(denominator))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.numerator * _product(other.denominator) == other.numerator * _product(self.denominator)

    def __hash__(self) -> int:
        # hash the expansion so that equal series hash alike
        return hash(tuple(expand(self, 16)))

    def cancelled(self) -> "RationalSeries":
        """Same series with every denominator factor that divides the numerator removed."""
        num = self.numerator
        keep = []
        for d in sorted(self.denominator, reverse=True):
            q, rem = num.divmod_exact(IntegerPolynomial.one_minus_t_pow(d)) if num else (num, num)
            if num and not rem:
                num = q
            else:
                keep.append(d)
        return RationalSeries(num, tuple(keep))

    def __str__(self) -> str:
        if not self.denominator:
            return f"({self.numerator})"
        den = "*".join("(1-t)" if d == 1 else f"(1-t^{d})" for d in self.denominator)
        return f"({self.numerator})/({den})"


@dataclass(frozen=True)
class CycleTypeCensus:
    """Cycle type (partition of ``points``) -> number of group elements of that type."""

    points: int
    order: int
    entries: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        if sum(k for _, k in self.entries) != self.order:
            raise ValueError("census counts must sum to the group order")
        for part, k in self.entries:
            if sum(part) != self.points or k <= 0 or any(l <= 0 for l in part):
                raise ValueError(f"bad census entry {part}: {k}")

    @classmethod
    def from_mapping(cls, census: Mapping[Sequence[int], int], points: int | None = None) -> "CycleTypeCensus":
        items = tuple(sorted(((tuple(sorted(p, reverse=True)), k) for p, k in census.items()), reverse=True))
        if points is None:
            points = sum(items[0][0]) if items else 0
        return cls(points, sum(k for _, k in items), items)

    @classmethod
    def from_image(cls, image) -> "CycleTypeCensus":
        from .gf2core import cycle_census

        return cls.from_mapping(cycle_census(image), image.points)


def molien_permutation(census: CycleTypeCensus) -> RationalSeries:
    """Molien series of the permutation module, exactly."""
    maxmult: Counter = Counter()
    for part, _ in census.entries:
        for l, m in Counter(part).items():
            maxmult[l] = max(maxmult[l], m)
    total = IntegerPolynomial()
    for part, k in census.entries:
        have = Counter(part)
        missing = [l for l in maxmult for _ in range(maxmult[l] - have[l])]
        total = total + _product(missing) * k
    try:
        num = total.exact_div(census.order)
    except ArithmeticError as exc:  # cannot happen for a genuine census
        raise AssertionError("Molien average is not integral") from exc
    den = [l for l in sorted(maxmult) for _ in range(maxmult[l])]
    return RationalSeries(num, tuple(den)).cancelled()


def strip_trivial_summand(series: RationalSeries) -> RationalSeries:
    """Multiply by ``(1 - t)``."""
    den = list(series.denominator)
    if 1 in den:
        den.remove(1)
        return RationalSeries(series.numerator, tuple(den))
    return RationalSeries(series.numerator * IntegerPolynomial.one_minus_t_pow(1), tuple(den))


def expand(series: RationalSeries, upto: int) -> list[int]:
    """Coefficients of ``t^0 .. t^upto``."""
    if upto < 0 or upto > MAX_EXPANSION:
        raise ValueError(f"expansion length must lie in 0..{MAX_EXPANSION}")
    c = [series.numerator[k] for k in range(upto + 1)]
    for d in series.denominator:
        for k in range(d, upto + 1):
            c[k] += c[k - d]
    return c


class IncompatibleDegrees(ValueError):
    pass


def numerator_for_degrees(series: RationalSeries, degrees: Iterable[int]) -> IntegerPolynomial:
    """``prod (1 - t^d_i) * series`` if it is a polynomial with non-negative coefficients."""
    num = series.numerator * _product(degrees)
    for d in series.denominator:
        num, rem = num.divmod_exact(IntegerPolynomial.one_minus_t_pow(d))
        if rem:
            raise IncompatibleDegrees("degrees incompatible with free-module structure")
    if any(c < 0 for c in num.coeffs):
        raise IncompatibleDegrees("degrees incompatible with free-module structure")
    return num


def secondary_profile(numerator: IntegerPolynomial) -> tuple[int, list[int]]:
    """Number of secondaries ``f(1)`` and their degree multiset."""
    if any(c < 0 for c in numerator.coeffs):
        raise ValueError("numerator has a negative coefficient")
    degs = [e for e, c in enumerate(numerator.coeffs) for _ in range(c)]
    return numerator.evaluate(1), degs
