"""Finite T0 spaces stored as posets under the order x <= y iff y is in the closure of {x}.

With that order the open sets are exactly the down-sets and closures are up-closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalInconsistency, NotAntisymmetric, ParseError
from .poset import MonotoneMap, Poset, bits, canonical_key, is_full


@dataclass(frozen=True)
class FinSpace:
    order: Poset

    @property
    def n(self) -> int:
        return self.order.n


@dataclass(frozen=True)
class OpenSet:
    space: FinSpace
    members: int

    def __post_init__(self) -> None:
        if not self.space.order.is_downset(self.members):
            raise ValueError("open sets must be down-closed")

    def points(self) -> list[int]:
        return list(bits(self.members))


def as_space(X: Poset | FinSpace) -> FinSpace:
    return X if isinstance(X, FinSpace) else FinSpace(X)


def open_masks(X: Poset | FinSpace) -> tuple[int, ...]:
    return as_space(X).order.downsets


def opens(X: Poset | FinSpace) -> list[OpenSet]:
    S = as_space(X)
    return [OpenSet(S, m) for m in S.order.downsets]


def closure(X: Poset | FinSpace, S: int) -> int:
    """Complement of the largest open set disjoint from S."""
    P = as_space(X).order
    largest = 0
    for U in P.downsets:
        if U & S == 0:
            largest |= U
    return P.full_mask & ~largest


def specialization_order(n: int, open_family: Sequence[int], labels: Sequence | None = None) -> Poset:
    """x <= y iff every open containing y also contains x."""
    down = []
    for y in range(n):
        d = (1 << n) - 1
        for U in open_family:
            if (U >> y) & 1:
                d &= U
        down.append(d)
    for y in range(n):
        for x in bits(down[y] & ~(1 << y)):
            if (down[x] >> y) & 1:
                raise NotAntisymmetric("space is not T0", witness={"points": [x, y]})
    return Poset(tuple(down), tuple(labels) if labels is not None else None)


def space_from_opens(n: int, open_family: Sequence[int], labels: Sequence | None = None) -> FinSpace:
    """Validate a finite topology given by its open sets and convert it to the order form."""
    fam = set(open_family)
    full = (1 << n) - 1
    if 0 not in fam or full not in fam:
        raise ParseError("topology must contain the empty set and the whole space")
    for U in fam:
        if U & ~full:
            raise ParseError("open set mentions a point outside the space")
        for V in fam:
            if U | V not in fam or U & V not in fam:
                raise ParseError(
                    "open sets are not closed under union and intersection",
                    witness={"sets": [sorted(bits(U)), sorted(bits(V))]},
                )
    P = specialization_order(n, sorted(fam), labels)
    if set(P.downsets) != fam:
        raise InternalInconsistency("finite topology differs from the Alexandrov topology")
    return FinSpace(P)


def is_continuous_table(X: Poset, Y: Poset, table: Sequence[int]) -> bool:
    """Preimages of open sets are open."""
    dom_opens = set(X.downsets)
    for V in Y.downsets:
        pre = 0
        for x, v in enumerate(table):
            if (V >> v) & 1:
                pre |= 1 << x
        if pre not in dom_opens:
            return False
    return True


def _embedding_by_opens(f: MonotoneMap) -> bool:
    if not f.is_injective():
        return False
    preimages = {f.preimage(V) for V in f.cod.downsets}
    return all(U in preimages for U in f.dom.downsets)


def is_embedding(f: MonotoneMap) -> bool:
    """Topological embedding; the open-set and order characterizations must agree."""
    by_opens = _embedding_by_opens(f)
    by_order = f.is_injective() and is_full(f)
    if by_opens != by_order:
        raise InternalInconsistency(
            "embedding characterizations disagree", witness={"table": list(f.table)}
        )
    return by_opens


def is_dense(f: MonotoneMap) -> bool:
    return closure(f.cod, f.image_mask()) == f.cod.full_mask


def sorted_opens(masks: Sequence[int]) -> list[int]:
    return sorted(masks, key=canonical_key)
