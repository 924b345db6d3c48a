"""Finite skeletal generalized metric spaces with distances in the extended non-negative rationals.

Every Cauchy sequence in a finite skeletal space is eventually constant, so
embedding conditions phrased with sequences reduce to statements about points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterator, Sequence

from .errors import (
    InternalInconsistency,
    NotAntisymmetric,
    NotMonotone,
    NotParallel,
    NotSymmetric,
    NotTransitive,
    ParseError,
)


@total_ordering
@dataclass(frozen=True)
class ExtRat:
    """A non-negative rational, or infinity when ``value`` is None."""

    value: Fraction | None

    @classmethod
    def of(cls, x) -> "ExtRat":
        if isinstance(x, ExtRat):
            return x
        if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        if x is None:
            return INF
        try:
            q = Fraction(x)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"not a rational distance: {x!r}") from exc
        if q < 0:
            raise ParseError(f"negative distance: {x!r}")
        return cls(q)

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __add__(self, other: "ExtRat") -> "ExtRat":
        if self.is_inf or other.is_inf:
            return INF
        return ExtRat(self.value + other.value)

    def hom(self, other: "ExtRat") -> "ExtRat":
        """Internal hom [self, other] = max(other - self, 0)."""
        if other.is_inf:
            return ZERO if self.is_inf else INF
        if self.is_inf:
            return ZERO
        return ExtRat(max(other.value - self.value, Fraction(0)))

    def __lt__(self, other: "ExtRat") -> bool:
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return "inf" if self.is_inf else str(self.value)


INF = ExtRat(None)
ZERO = ExtRat(Fraction(0))


@dataclass(frozen=True)
class FinGMS:
    dist: tuple[tuple[ExtRat, ...], ...]
    points: tuple = ()

    def __post_init__(self) -> None:
        if not self.points:
            object.__setattr__(self, "points", tuple(range(len(self.dist))))

    @property
    def n(self) -> int:
        return len(self.dist)

    def d(self, a: int, b: int) -> ExtRat:
        return self.dist[a][b]

    def is_symmetric(self) -> bool:
        return all(self.dist[a][b] == self.dist[b][a] for a in range(self.n) for b in range(self.n))


def check_gms(dist: Sequence[Sequence], points: Sequence | None = None) -> FinGMS:
    """Validate zero diagonal, the triangle inequality and skeletality."""
    n = len(dist)
    rows = []
    for row in dist:
        if len(row) != n:
            raise ParseError("distance matrix is not square")
        rows.append(tuple(ExtRat.of(x) for x in row))
    for a in range(n):
        if rows[a][a] != ZERO:
            raise ParseError("self-distance must be zero", witness={"point": a})
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[a][b] + rows[b][c] < rows[a][c]:
            raise NotTransitive(
                "triangle inequality fails", witness={"a": a, "b": b, "c": c}
            )
    for a in range(n):
        for b in range(a + 1, n):
            if rows[a][b] == ZERO and rows[b][a] == ZERO:
                raise NotAntisymmetric("space is not skeletal", witness={"points": [a, b]})
    return FinGMS(tuple(rows), tuple(points) if points is not None else ())


@dataclass(frozen=True)
class NonExpansiveMap:
    dom: FinGMS
    cod: FinGMS
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        A, B = self.dom, self.cod
        if len(self.table) != A.n or any(not 0 <= v < B.n for v in self.table):
            raise ParseError("map table does not match the spaces")
        for a in range(A.n):
            for b in range(A.n):
                if B.d(self.table[a], self.table[b]) > A.d(a, b):
                    raise NotMonotone("map expands a distance", witness={"a": a, "b": b})

    def is_surjective(self) -> bool:
        return set(self.table) == set(range(self.cod.n))


def hom_leq_gms(f: NonExpansiveMap, g: NonExpansiveMap) -> bool:
    """f <= g iff B(f a, g a) = 0 for every a."""
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("maps are not parallel")
    return all(f.cod.d(x, y) == ZERO for x, y in zip(f.table, g.table))


def is_isometry(f: NonExpansiveMap) -> bool:
    A, B = f.dom, f.cod
    return all(
        B.d(f.table[a], f.table[b]) == A.d(a, b) for a in range(A.n) for b in range(A.n)
    )


def representing_point(f: NonExpansiveMap, b: int) -> int | None:
    """Some x with B(f a, b) = A(a, x) for all a."""
    A, B = f.dom, f.cod
    for x in range(A.n):
        if all(B.d(f.table[a], b) == A.d(a, x) for a in range(A.n)):
            return x
    return None


def is_q_embedding(f: NonExpansiveMap) -> bool:
    return is_isometry(f) and all(representing_point(f, b) is not None for b in range(f.cod.n))


def is_dense_isometry(f: NonExpansiveMap) -> bool:
    """On finite symmetric spaces density is surjectivity; agreement with is_q_embedding asserted."""
    if not (f.dom.is_symmetric() and f.cod.is_symmetric()):
        raise NotSymmetric("dense isometry is defined between symmetric spaces")
    out = is_isometry(f) and f.is_surjective()
    if out != is_q_embedding(f):
        raise InternalInconsistency("dense isometry and Q-embedding disagree", witness={"table": list(f.table)})
    return out


def identity_gms(A: FinGMS) -> NonExpansiveMap:
    return NonExpansiveMap(A, A, tuple(range(A.n)))


def non_expansive_maps(A: FinGMS, B: FinGMS) -> Iterator[NonExpansiveMap]:
    for table in itertools.product(range(B.n), repeat=A.n):
        if all(B.d(table[a], table[b]) <= A.d(a, b) for a in range(A.n) for b in range(A.n)):
            yield _unchecked(A, B, table)


def _unchecked(A: FinGMS, B: FinGMS, table) -> NonExpansiveMap:
    f = object.__new__(NonExpansiveMap)
    object.__setattr__(f, "dom", A)
    object.__setattr__(f, "cod", B)
    object.__setattr__(f, "table", tuple(table))
    return f


GRID_DISTANCES = (ZERO, ExtRat(Fraction(1)), ExtRat(Fraction(2)), INF)


def _canonical(dist: tuple[tuple[ExtRat, ...], ...]) -> tuple:
    n = len(dist)
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(str(dist[perm[i]][perm[j]]) for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return best


def symmetric_spaces(max_points: int = 4, distances: Sequence[ExtRat] = GRID_DISTANCES) -> list[FinGMS]:
    """Symmetric skeletal spaces up to isometry with off-diagonal distances from the grid."""
    positive = [d for d in distances if d != ZERO]
    out, seen = [], set()
    for n in range(max_points + 1):
        slots = [(a, b) for a in range(n) for b in range(a + 1, n)]
        for choice in itertools.product(positive, repeat=len(slots)):
            m = [[ZERO] * n for _ in range(n)]
            for (a, b), v in zip(slots, choice):
                m[a][b] = m[b][a] = v
            rows = tuple(tuple(r) for r in m)
            if any(rows[a][b] + rows[b][c] < rows[a][c] for a, b, c in itertools.product(range(n), repeat=3)):
                continue
            key = _canonical(rows)
            if key in seen:
                continue
            seen.add(key)
            out.append(FinGMS(rows))
    return out


def parse_gms(doc: dict) -> FinGMS:
    if not isinstance(doc, dict) or "dist" not in doc:
        raise ParseError("a space needs a 'dist' matrix")
    points = doc.get("points")
    if points is not None and len(points) != len(doc["dist"]):
        raise ParseError("points and distance matrix disagree in size")
    return check_gms(doc["dist"], points)


def describe_gms(A: FinGMS) -> dict:
    return {"points": list(A.points), "dist": [[str(x) for x in row] for row in A.dist]}
