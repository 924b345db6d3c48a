"""The down-set monad P: down-sets ordered by inclusion, with union as multiplication."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceeded
from .monad import MonadInstance
from .poset import MonotoneMap, Poset, _trusted, bits, enumerate_downsets, inclusion_order

DEFAULT_CAP = 6000


@dataclass(frozen=True)
class DownsetLattice:
    base: Poset
    space: Poset
    masks: tuple[int, ...]
    index: dict

    def element(self, mask: int) -> int:
        return self.index[mask]


class DownsetTables:
    """Memoised down-set lattices keyed by the underlying poset."""

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self._cache: dict[Poset, DownsetLattice] = {}

    def lattice(self, X: Poset) -> DownsetLattice:
        out = self._cache.get(X)
        if isinstance(out, CapExceeded):
            raise CapExceeded(str(out), witness=out.witness)
        if out is None:
            try:
                masks = enumerate_downsets(X, cap=self.cap)
            except CapExceeded as exc:
                self._cache[X] = exc
                raise
            labels = tuple(tuple(X.labels[i] for i in bits(m)) for m in masks)
            space = inclusion_order(masks, X.n, labels)
            out = DownsetLattice(X, space, masks, {m: k for k, m in enumerate(masks)})
            self._cache[X] = out
        return out

    def on_objects(self, X: Poset) -> Poset:
        return self.lattice(X).space

    def on_maps(self, f: MonotoneMap) -> MonotoneMap:
        # f_*(Z) = union of the principal down-sets of the images
        A, B = self.lattice(f.dom), self.lattice(f.cod)
        Y = f.cod
        table = []
        for Z in A.masks:
            img = 0
            for x in bits(Z):
                img |= Y.down[f.table[x]]
            table.append(B.index[img])
        return _trusted(A.space, B.space, tuple(table))

    def unit(self, X: Poset) -> MonotoneMap:
        A = self.lattice(X)
        return _trusted(X, A.space, tuple(A.index[X.down[x]] for x in range(X.n)))

    def mult(self, X: Poset) -> MonotoneMap:
        A = self.lattice(X)
        AA = self.lattice(A.space)
        table = []
        for fam in AA.masks:
            u = 0
            for k in bits(fam):
                u |= A.masks[k]
            table.append(A.index[u])
        return _trusted(AA.space, A.space, tuple(table))


def downset_monad(universe: Sequence[Poset] = (), cap: int = DEFAULT_CAP) -> MonadInstance:
    tabs = DownsetTables(cap)
    M = MonadInstance(
        "P", tabs.on_objects, tabs.on_maps, tabs.unit, tabs.mult, universe=list(universe)
    )
    M.tables = tabs  # type: ignore[attr-defined]
    return M
