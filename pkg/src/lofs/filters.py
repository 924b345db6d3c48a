"""Filters of open sets on finite T0 spaces and the filter monad with its submonads.

A filter is a bitmask over the canonical list of open sets of the base space.
The filter space carries the topology generated by the sets
``sharp(U) = {phi : U in phi}``; its order is the specialization order of that
topology, which comes out as reverse inclusion of filters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded, ClassNotPreserved, InternalInconsistency
from .monad import MonadInstance
from .poset import (
    MonotoneMap,
    Poset,
    _trusted,
    bits,
    canonical_key,
    enumerate_downsets,
    reverse_inclusion_order,
)
from .space import FinSpace, as_space

DEFAULT_CAP_OPENS = 6000
DEFAULT_CAP_POINTS = {"all": 4, "proper": 5, "prime": 5, "completely_prime": 5}


class FilterClass(enum.Enum):
    ALL = "all"
    PROPER = "proper"
    PRIME = "prime"
    COMPLETELY_PRIME = "completely_prime"


@dataclass(frozen=True)
class Filter:
    space: FinSpace
    opens_mask: int


def _is_up_closed(members: int, opens_list: Sequence[int]) -> bool:
    for i in bits(members):
        U = opens_list[i]
        for j, V in enumerate(opens_list):
            if U & ~V == 0 and not (members >> j) & 1:
                return False
    return True


def is_filter(members: int, opens_list: Sequence[int], index: dict[int, int]) -> bool:
    """Contains the whole space, up-closed and closed under binary meets."""
    full = max(opens_list, key=lambda m: bin(m).count("1")) if opens_list else 0
    if not (members >> index[full]) & 1:
        return False
    if not _is_up_closed(members, opens_list):
        return False
    mem = list(bits(members))
    for a in mem:
        for b in mem:
            if not (members >> index[opens_list[a] & opens_list[b]]) & 1:
                return False
    return True


def is_proper(members: int, index: dict[int, int]) -> bool:
    return not (members >> index[0]) & 1


def is_prime(members: int, opens_list: Sequence[int], index: dict[int, int]) -> bool:
    """Proper, and U ∪ V in the filter forces U or V in it."""
    if not is_proper(members, index):
        return False
    outside = [U for k, U in enumerate(opens_list) if not (members >> k) & 1]
    for U in outside:
        for V in outside:
            if (members >> index[U | V]) & 1:
                return False
    return True


def is_completely_prime(members: int, opens_list: Sequence[int], index: dict[int, int]) -> bool:
    """No member is the union of a (possibly empty) family of non-members."""
    outside = [U for k, U in enumerate(opens_list) if not (members >> k) & 1]
    for k in bits(members):
        U = opens_list[k]
        union = 0
        for V in outside:
            if V & ~U == 0:
                union |= V
        if union == U:
            return False
    return True


def in_class(cls: FilterClass, members: int, opens_list: Sequence[int], index: dict[int, int]) -> bool:
    if cls is FilterClass.ALL:
        return True
    if cls is FilterClass.PROPER:
        return is_proper(members, index)
    prime = is_prime(members, opens_list, index)
    cprime = is_completely_prime(members, opens_list, index)
    if prime != cprime:
        raise InternalInconsistency(
            "prime and completely prime disagree on a finite space",
            witness={"filter": sorted(bits(members))},
        )
    return prime


@dataclass(frozen=True, eq=False)
class FilterSpace:
    base: FinSpace
    cls: FilterClass
    opens: tuple[int, ...]
    open_index: dict
    filters: tuple[int, ...]
    filter_index: dict
    as_space: FinSpace

    @property
    def poset(self) -> Poset:
        return self.as_space.order

    def sharp(self, k: int) -> int:
        """Points of the filter space containing the k-th open set."""
        return sum(1 << i for i, phi in enumerate(self.filters) if (phi >> k) & 1)


def all_filters_bruteforce(X: Poset | FinSpace) -> list[int]:
    """Every filter of the open-set lattice, found without assuming principality."""
    P = as_space(X).order
    ops = list(P.downsets)
    index = {U: k for k, U in enumerate(ops)}
    lattice = reverse_inclusion_order(ops, P.n)  # down-sets here are up-sets of O(X)
    return [
        m for m in enumerate_downsets(lattice) if m and is_filter(m, ops, index)
    ]


def principal_filter(G: int, ops: Sequence[int]) -> int:
    return sum(1 << k for k, U in enumerate(ops) if G & ~U == 0)


def filter_space(
    X: Poset | FinSpace,
    cls: FilterClass = FilterClass.ALL,
    cap_opens: int = DEFAULT_CAP_OPENS,
    verify_topology: bool | None = None,
) -> FilterSpace:
    S = as_space(X)
    P = S.order
    ops = enumerate_downsets(P, cap=cap_opens)
    index = {U: k for k, U in enumerate(ops)}
    # every filter of a finite lattice is generated by the meet of its members
    cands = [principal_filter(G, ops) for G in ops]
    filters = sorted((m for m in cands if in_class(cls, m, ops, index)), key=canonical_key)
    labels = tuple(tuple(P.labels[i] for i in bits(_generator(m, ops, P))) for m in filters)
    order = reverse_inclusion_order(filters, len(ops), labels)
    if verify_topology is None:
        verify_topology = len(filters) <= 256
    if verify_topology:
        _check_generated_topology(filters, len(ops), order)
    return FilterSpace(
        S, cls, ops, index, tuple(filters), {m: i for i, m in enumerate(filters)}, FinSpace(order)
    )


def _generator(members: int, ops: Sequence[int], P: Poset) -> int:
    g = P.full_mask
    for k in bits(members):
        g &= ops[k]
    return g


def _check_generated_topology(filters: Sequence[int], nopens: int, order: Poset) -> None:
    # specialization order of the topology with subbasis sharp(U)
    sharp = [0] * nopens
    for i, phi in enumerate(filters):
        for k in bits(phi):
            sharp[k] |= 1 << i
    full = (1 << len(filters)) - 1
    for j, psi in enumerate(filters):
        d = full
        for k in bits(psi):
            d &= sharp[k]
        if d != order.down[j]:
            raise InternalInconsistency(
                "specialization order of the generated topology is not reverse inclusion",
                witness={"filter": j},
            )


class FilterTables:
    def __init__(self, cls: FilterClass, cap_opens: int = DEFAULT_CAP_OPENS):
        self.cls = cls
        self.cap_opens = cap_opens
        self._cache: dict[Poset, FilterSpace] = {}

    def space(self, X: Poset) -> FilterSpace:
        out = self._cache.get(X)
        if isinstance(out, CapExceeded):
            raise CapExceeded(str(out), witness=out.witness)
        if out is None:
            try:
                out = self._cache[X] = filter_space(X, self.cls, self.cap_opens)
            except CapExceeded as exc:
                self._cache[X] = exc
                raise
        return out

    def on_objects(self, X: Poset) -> Poset:
        return self.space(X).poset

    def on_maps(self, f: MonotoneMap) -> MonotoneMap:
        # Ff(phi) = {V : f^{-1}(V) in phi}
        A, B = self.space(f.dom), self.space(f.cod)
        pre = [A.open_index[f.preimage(V)] for V in B.opens]
        table = []
        for phi in A.filters:
            out = 0
            for v, k in enumerate(pre):
                if (phi >> k) & 1:
                    out |= 1 << v
            i = B.filter_index.get(out)
            if i is None:
                raise ClassNotPreserved(
                    f"image filter is not in class {self.cls.value}",
                    witness={"filter": sorted(bits(phi))},
                )
            table.append(i)
        return _trusted(A.poset, B.poset, tuple(table))

    def unit(self, X: Poset) -> MonotoneMap:
        A = self.space(X)
        table = []
        for x in range(X.n):
            nbhd = sum(1 << k for k, U in enumerate(A.opens) if (U >> x) & 1)
            i = A.filter_index.get(nbhd)
            if i is None:
                raise ClassNotPreserved("neighbourhood filter outside the class", witness={"point": x})
            table.append(i)
        return _trusted(X, A.poset, tuple(table))

    def mult(self, X: Poset) -> MonotoneMap:
        # mu(Theta) = {U : sharp(U) in Theta}
        A = self.space(X)
        AA = self.space(A.poset)
        sharp_idx = [AA.open_index[A.sharp(k)] for k in range(len(A.opens))]
        table = []
        for theta in AA.filters:
            out = 0
            for k, s in enumerate(sharp_idx):
                if (theta >> s) & 1:
                    out |= 1 << k
            i = A.filter_index.get(out)
            if i is None:
                raise ClassNotPreserved("multiplication leaves the class")
            table.append(i)
        return _trusted(AA.poset, A.poset, tuple(table))

    def inclusion(self, full: "FilterTables", X: Poset) -> MonotoneMap:
        """Component at X of the inclusion of this class into a wider one."""
        A, B = self.space(X), full.space(X)
        return _trusted(A.poset, B.poset, tuple(B.filter_index[m] for m in A.filters))


MONAD_NAMES = {
    FilterClass.ALL: "F",
    FilterClass.PROPER: "F1",
    FilterClass.PRIME: "Fomega",
    FilterClass.COMPLETELY_PRIME: "FOmega",
}


def as_monad_instance(
    cls: FilterClass = FilterClass.ALL,
    universe: Sequence[Poset] = (),
    cap_points: int | None = None,
    cap_opens: int = DEFAULT_CAP_OPENS,
) -> MonadInstance:
    cap = cap_points if cap_points is not None else DEFAULT_CAP_POINTS[cls.value]
    for X in universe:
        if X.n > cap:
            raise CapExceeded(
                f"base space with {X.n} points exceeds the cap of {cap}", witness={"points": X.n}
            )
    tabs = FilterTables(cls, cap_opens)
    M = MonadInstance(
        MONAD_NAMES[cls], tabs.on_objects, tabs.on_maps, tabs.unit, tabs.mult, universe=list(universe)
    )
    M.tables = tabs  # type: ignore[attr-defined]
    return M


def F_on_maps(f: MonotoneMap, cls: FilterClass = FilterClass.ALL) -> MonotoneMap:
    return FilterTables(cls).on_maps(f)


def filter_unit(X: Poset, cls: FilterClass = FilterClass.ALL) -> MonotoneMap:
    return FilterTables(cls).unit(X)


def filter_mult(X: Poset, cls: FilterClass = FilterClass.ALL) -> MonotoneMap:
    return FilterTables(cls).mult(X)
