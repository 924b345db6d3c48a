"""Finite posets, monotone maps, comma objects, adjoints and Kan-style extensions.

Elements are dense indices ``0..n-1``. A poset is stored as a tuple of bitmasks
``down[i] = {j : j <= i}``; labels are metadata and never take part in equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CodomainMismatch,
    InternalInconsistency,
    NotAntisymmetric,
    NotComposable,
    NotMonotone,
    NotParallel,
    NotReflexive,
    NotTransitive,
    UniversalPropertyFailure,
)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    if mask.bit_length() > 256:
        raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
        yield from np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()
        return
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key for subsets: cardinality first, then lexicographic on members."""
    members = tuple(bits(mask))
    return (len(members), members)


@dataclass(frozen=True, eq=False)
class Poset:
    down: tuple[int, ...]
    labels: tuple = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(len(self.down))))
        elif len(self.labels) != len(self.down):
            raise ValueError("labels must match the number of elements")
        object.__setattr__(self, "_hash", hash(self.down))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poset) and self.down == other.down

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.down)

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.cover_pairs()})"

    @property
    def n(self) -> int:
        return len(self.down)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return (self.down[j] >> i) & 1 == 1

    @cached_property
    def up(self) -> tuple[int, ...]:
        if self.n > 64:
            return _transpose(self.down, self.n)
        up = [0] * self.n
        for j, d in enumerate(self.down):
            for i in bits(d):
                up[i] |= 1 << j
        return tuple(up)

    @cached_property
    def lower_covers(self) -> tuple[int, ...]:
        """``lower_covers[j]`` = mask of elements covered by ``j``."""
        strict = [d & ~(1 << j) for j, d in enumerate(self.down)]
        out = []
        for j, s in enumerate(strict):
            below = 0
            for k in bits(s):
                below |= strict[k]
            out.append(s & ~below)
        return tuple(out)

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in bits(self.lower_covers[j])]

    @cached_property
    def linear_order(self) -> tuple[int, ...]:
        """A linear extension (smaller down-sets first)."""
        return tuple(sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i)))

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: Any) -> int:
        return self._label_index[label]

    def is_downset(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def greatest_in(self, mask: int) -> int | None:
        for i in bits(mask):
            if mask & ~self.down[i] == 0:
                return i
        return None

    def least_in(self, mask: int) -> int | None:
        for i in bits(mask):
            if mask & ~self.up[i] == 0:
                return i
        return None

    def dual(self) -> "Poset":
        return Poset(self.up, self.labels)

    def leq_matrix(self) -> list[list[bool]]:
        return [[self.leq(i, j) for j in range(self.n)] for i in range(self.n)]

    @cached_property
    def downsets(self) -> tuple[int, ...]:
        """All down-sets as bitmasks, in canonical order."""
        return enumerate_downsets(self)


# ---------------------------------------------------------------- constructors


def _transpose(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """Transpose an n by n bit matrix given as row masks."""
    nbytes = (n + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    M = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes), axis=1, bitorder="little")[:, :n]
    cols = np.packbits(np.ascontiguousarray(M.T), axis=1, bitorder="little")
    return tuple(int.from_bytes(cols[i].tobytes(), "little") for i in range(n))


def check_poset(
    relation: Sequence[Sequence[Any]], labels: Sequence | None = None, close: bool = False
) -> Poset:
    """Validate a boolean matrix ``relation[i][j] == (i <= j)``.

    With ``close=True`` the reflexive-transitive closure is taken first;
    otherwise a non-transitive input is rejected.
    """
    n = len(relation)
    if any(len(row) != n for row in relation):
        raise ValueError("relation must be a square matrix")
    down = [0] * n
    for i in range(n):
        for j in range(n):
            if relation[i][j]:
                down[j] |= 1 << i
    if close:
        down = _reflexive_transitive_closure(down)
    else:
        for i in range(n):
            if not (down[i] >> i) & 1:
                raise NotReflexive(f"element {i} is not <= itself", witness={"element": i})
    for j in range(n):
        for i in bits(down[j] & ~(1 << j)):
            if (down[i] >> j) & 1:
                raise NotAntisymmetric(
                    f"{i} <= {j} <= {i} with {i} != {j}", witness={"pair": [i, j]}
                )
    if not close:
        for k in range(n):
            for j in bits(down[k]):
                missing = down[j] & ~down[k]
                if missing:
                    i = next(bits(missing))
                    raise NotTransitive(
                        f"{i} <= {j} <= {k} but not {i} <= {k}",
                        witness={"triple": [i, j, k]},
                    )
    return Poset(tuple(down), tuple(labels) if labels is not None else None)


def _reflexive_transitive_closure(down: list[int]) -> list[int]:
    n = len(down)
    down = [d | (1 << i) for i, d in enumerate(down)]
    changed = True
    while changed:
        changed = False
        for j in range(n):
            acc = down[j]
            for i in bits(down[j]):
                acc |= down[i]
            if acc != down[j]:
                down[j] = acc
                changed = True
    return down


def from_covers(n: int, covers: Iterable[tuple[int, int]], labels: Sequence | None = None) -> Poset:
    """Poset generated by pairs ``(a, b)`` meaning ``a <= b``."""
    rel = [[False] * n for _ in range(n)]
    for a, b in covers:
        rel[a][b] = True
    return check_poset(rel, labels, close=True)


def chain(n: int) -> Poset:
    return Poset(tuple((1 << (i + 1)) - 1 for i in range(n)))


def antichain(n: int) -> Poset:
    return Poset(tuple(1 << i for i in range(n)))


def terminal() -> Poset:
    return chain(1)


def empty() -> Poset:
    return Poset(())


def product(X: Poset, Y: Poset) -> Poset:
    pairs = [(x, y) for x in range(X.n) for y in range(Y.n)]
    pos = {p: k for k, p in enumerate(pairs)}
    down = []
    for x, y in pairs:
        m = 0
        for a in bits(X.down[x]):
            for b in bits(Y.down[y]):
                m |= 1 << pos[(a, b)]
        down.append(m)
    return Poset(tuple(down), tuple((X.labels[x], Y.labels[y]) for x, y in pairs))


def inclusion_order(masks: Sequence[int], nbits: int, labels: Sequence | None = None) -> Poset:
    """Poset of the given distinct sets ordered by inclusion."""
    return Poset(_inclusion_down(masks, nbits), tuple(labels) if labels is not None else None)


def reverse_inclusion_order(
    masks: Sequence[int], nbits: int, labels: Sequence | None = None
) -> Poset:
    """Poset of the given distinct sets ordered by reverse inclusion."""
    down = _inclusion_down(masks, nbits, reverse=True)
    return Poset(down, tuple(labels) if labels is not None else None)


def _inclusion_down(masks: Sequence[int], nbits: int, reverse: bool = False) -> tuple[int, ...]:
    m = len(masks)
    if m <= 48:
        out = []
        for a in masks:
            d = 0
            for j, b in enumerate(masks):
                sub = (b & ~a == 0) if not reverse else (a & ~b == 0)
                if sub:
                    d |= 1 << j
            out.append(d)
        return tuple(out)
    nbytes = max(1, (nbits + 7) // 8)
    A = np.zeros((m, nbytes * 8), dtype=np.float32)
    for i, a in enumerate(masks):
        row = np.frombuffer(a.to_bytes(nbytes, "little"), dtype=np.uint8)
        A[i] = np.unpackbits(row, bitorder="little")
    # viol[j, i] = |A_j \ A_i|
    viol = A @ (1.0 - A).T
    incl = viol == 0  # incl[j, i]: A_j subset of A_i
    if reverse:
        incl = incl.T
    cols = np.packbits(incl.T, axis=1, bitorder="little")
    return tuple(int.from_bytes(cols[i].tobytes(), "little") for i in range(m))


def induced_subposet(X: Poset, members: Sequence[int]) -> Poset:
    members = list(members)
    pos = {x: k for k, x in enumerate(members)}
    down = []
    for x in members:
        m = 0
        for a in bits(X.down[x]):
            if a in pos:
                m |= 1 << pos[a]
        down.append(m)
    return Poset(tuple(down), tuple(X.labels[x] for x in members))


def enumerate_downsets(X: Poset, cap: int | None = None) -> tuple[int, ...]:
    """All down-sets of ``X`` sorted by cardinality, then lexicographically."""
    from .errors import CapExceeded

    sets = [0]
    for i in X.linear_order:
        below = X.down[i] & ~(1 << i)
        bit = 1 << i
        sets += [s | bit for s in sets if below & ~s == 0]
        if cap is not None and len(sets) > cap:
            raise CapExceeded(
                f"more than {cap} down-sets on a {X.n}-element poset", witness={"size": X.n}
            )
    sets.sort(key=canonical_key)
    return tuple(sets)


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    """All posets on ``n`` elements up to isomorphism, in a fixed order."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    closures = set()
    for sel in range(1 << len(pairs)):
        down = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if (sel >> k) & 1:
                down[j] |= 1 << i
        for j in range(n):
            acc = down[j]
            for i in bits(down[j] & ~(1 << j)):
                acc |= down[i]
            down[j] = acc
        closures.add(tuple(down))
    perms = list(itertools.permutations(range(n)))
    canon = set()
    for down in closures:
        best = None
        for p in perms:
            new = [0] * n
            for j in range(n):
                new[p[j]] = mask_of(p[i] for i in bits(down[j]))
            t = tuple(new)
            if best is None or t < best:
                best = t
        canon.add(best)
    ordered = sorted(canon, key=lambda d: (-sum(popcount(x) for x in d), d))
    # natural relabelling so that i <= j implies i is listed first
    out = []
    for d in ordered:
        P = Poset(d)
        order = P.linear_order
        out.append(Poset(induced_subposet(P, order).down))
    return tuple(out)


def posets_up_to(n: int) -> list[Poset]:
    return [P for k in range(n + 1) for P in all_posets(k)]


# ------------------------------------------------------------------- maps


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    dom: Poset
    cod: Poset
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.dom.n:
            raise ValueError(f"table has {len(table)} entries, domain has {self.dom.n}")
        for v in table:
            if not 0 <= v < self.cod.n:
                raise ValueError(f"value {v} outside codomain of size {self.cod.n}")
        bad = monotonicity_witness(self.dom, self.cod, table)
        if bad is not None:
            x, y = bad
            raise NotMonotone(
                f"not monotone: {x} <= {y} but f({x})={table[x]} is not <= f({y})={table[y]}",
                witness={"x": x, "y": y, "fx": table[x], "fy": table[y]},
            )
        object.__setattr__(self, "_hash", hash((self.dom, self.cod, table)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonotoneMap)
            and self.table == other.table
            and self.dom == other.dom
            and self.cod == other.cod
        )

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self) -> str:
        return f"MonotoneMap({self.dom.n}->{self.cod.n}, {list(self.table)})"

    def __matmul__(self, other: "MonotoneMap") -> "MonotoneMap":
        """``g @ f`` is the composite g∘f."""
        if other.cod != self.dom:
            raise NotComposable("codomain of the right factor differs from domain of the left")
        return _trusted(other.dom, self.cod, tuple(self.table[v] for v in other.table))

    def image_mask(self) -> int:
        return mask_of(self.table)

    def preimage(self, mask: int) -> int:
        return mask_of(x for x, v in enumerate(self.table) if (mask >> v) & 1)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return self.image_mask() == self.cod.full_mask

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.table == tuple(range(self.dom.n))

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective() and is_full(self)


def _trusted(dom: Poset, cod: Poset, table: tuple[int, ...]) -> MonotoneMap:
    obj = object.__new__(MonotoneMap)
    object.__setattr__(obj, "dom", dom)
    object.__setattr__(obj, "cod", cod)
    object.__setattr__(obj, "table", table)
    object.__setattr__(obj, "_hash", hash((dom, cod, table)))
    return obj


def monotonicity_witness(dom: Poset, cod: Poset, table: Sequence[int]) -> tuple[int, int] | None:
    for y in range(dom.n):
        cy = cod.down[table[y]]
        for x in bits(dom.lower_covers[y]):
            if not (cy >> table[x]) & 1:
                return (x, y)
    return None


def identity(X: Poset) -> MonotoneMap:
    return _trusted(X, X, tuple(range(X.n)))


def constant(X: Poset, Y: Poset, y: int) -> MonotoneMap:
    return _trusted(X, Y, (y,) * X.n)


def to_terminal(X: Poset) -> MonotoneMap:
    return constant(X, terminal(), 0)


def compose(*maps: MonotoneMap) -> MonotoneMap:
    """``compose(h, g, f)`` = h∘g∘f."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


def _require_parallel(f: MonotoneMap, g: MonotoneMap) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("maps do not share domain and codomain")


def hom_leq_witness(f: MonotoneMap, g: MonotoneMap) -> int | None:
    """First x with f(x) not <= g(x), or None when f <= g pointwise."""
    _require_parallel(f, g)
    C = f.cod
    for x, (a, b) in enumerate(zip(f.table, g.table)):
        if not C.leq(a, b):
            return x
    return None


def hom_leq(f: MonotoneMap, g: MonotoneMap) -> bool:
    return hom_leq_witness(f, g) is None


def full_witness(f: MonotoneMap) -> tuple[int, int] | None:
    """A pair x, y with f(x) <= f(y) but x not <= y, or None when f is full."""
    X, Y = f.dom, f.cod
    fibre = [0] * Y.n
    for x, v in enumerate(f.table):
        fibre[v] |= 1 << x
    for x, v in enumerate(f.table):
        above = 0
        for w in bits(Y.up[v]):
            above |= fibre[w]
        bad = above & ~X.up[x]
        if bad:
            return (x, next(bits(bad)))
    return None


def is_full(f: MonotoneMap) -> bool:
    return full_witness(f) is None


def monotone_maps(
    X: Poset, Y: Poset, allowed: Sequence[int] | None = None
) -> Iterator[MonotoneMap]:
    """Every monotone map X -> Y whose value at x lies in ``allowed[x]`` (a bitmask)."""
    n = X.n
    if n == 0:
        yield _trusted(X, Y, ())
        return
    full = Y.full_mask
    allow = list(allowed) if allowed is not None else [full] * n
    order = X.linear_order
    covers = X.lower_covers
    up = Y.up
    table = [0] * n

    def candidates(k: int) -> list[int]:
        i = order[k]
        c = allow[i]
        for j in bits(covers[i]):
            c &= up[table[j]]
        return list(bits(c))

    stack = [iter(candidates(0))]
    while stack:
        k = len(stack) - 1
        v = next(stack[-1], None)
        if v is None:
            stack.pop()
            continue
        table[order[k]] = v
        if k + 1 == n:
            yield _trusted(X, Y, tuple(table))
        else:
            stack.append(iter(candidates(k + 1)))


def least_map(maps: Sequence[MonotoneMap]) -> MonotoneMap | None:
    """Pointwise least member of a nonempty family, or None when there is none."""
    if not maps:
        return None
    C = maps[0].cod
    n = maps[0].dom.n
    table = []
    for x in range(n):
        vals = mask_of(m.table[x] for m in maps)
        lo = C.least_in(vals)
        if lo is None:
            return None
        table.append(lo)
    t = tuple(table)
    for m in maps:
        if m.table == t:
            return m
    return None


# ----------------------------------------------------------- comma objects


@dataclass(frozen=True, eq=False)
class CommaCone:
    apex: Poset
    d0: MonotoneMap
    d1: MonotoneMap
    pairs: tuple[tuple[int, int], ...]

    @cached_property
    def position(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.pairs)}

    def index(self, x: int, y: int) -> int:
        return self.position[(x, y)]

    def mediate(self, h0: MonotoneMap, h1: MonotoneMap) -> MonotoneMap:
        """The unique map W -> apex with d0∘m = h0 and d1∘m = h1."""
        if h0.dom != h1.dom:
            raise NotParallel("mediating pair must share a domain")
        table = []
        for w in range(h0.dom.n):
            key = (h0.table[w], h1.table[w])
            if key not in self.position:
                raise UniversalPropertyFailure(
                    f"pair {key} at {w} is not an element of the cone apex",
                    witness={"element": w, "pair": list(key)},
                )
            table.append(self.position[key])
        return _trusted(h0.dom, self.apex, tuple(table))


def _cone(X: Poset, Y: Poset, pairs: list[tuple[int, int]]) -> CommaCone:
    # (a, b) <= (x, y) iff a <= x and b <= y, so each down-set is an intersection
    by_first, by_second = [0] * X.n, [0] * Y.n
    for k, (x, y) in enumerate(pairs):
        by_first[x] |= 1 << k
        by_second[y] |= 1 << k
    below_first = [0] * X.n
    for x in range(X.n):
        for a in bits(X.down[x]):
            below_first[x] |= by_first[a]
    below_second = [0] * Y.n
    for y in range(Y.n):
        for b in bits(Y.down[y]):
            below_second[y] |= by_second[b]
    down = [below_first[x] & below_second[y] for x, y in pairs]
    apex = Poset(tuple(down), tuple((X.labels[x], Y.labels[y]) for x, y in pairs))
    d0 = _trusted(apex, X, tuple(p[0] for p in pairs))
    d1 = _trusted(apex, Y, tuple(p[1] for p in pairs))
    return CommaCone(apex, d0, d1, tuple(pairs))


def comma_object(f: MonotoneMap, g: MonotoneMap) -> CommaCone:
    """f↓g = {(x, y) : f(x) <= g(y)} with the componentwise order."""
    if f.cod != g.cod:
        raise CodomainMismatch("comma object needs a common codomain")
    C = f.cod
    pairs = []
    for x in range(f.dom.n):
        above = C.up[f.table[x]]
        for y in range(g.dom.n):
            if (above >> g.table[y]) & 1:
                pairs.append((x, y))
    return _cone(f.dom, g.dom, pairs)


def arrow_poset(X: Poset) -> CommaCone:
    return comma_object(identity(X), identity(X))


def pullback(f: MonotoneMap, g: MonotoneMap) -> CommaCone:
    if f.cod != g.cod:
        raise CodomainMismatch("pullback needs a common codomain")
    pairs = [
        (x, y) for x in range(f.dom.n) for y in range(g.dom.n) if f.table[x] == g.table[y]
    ]
    return _cone(f.dom, g.dom, pairs)


# ------------------------------------------------------------- adjunctions


@dataclass(frozen=True)
class Adjunction:
    left: MonotoneMap
    right: MonotoneMap

    def holds(self) -> bool:
        return hom_leq(identity(self.left.dom), self.right @ self.left) and hom_leq(
            self.left @ self.right, identity(self.left.cod)
        )


@dataclass(frozen=True)
class Absent:
    """A missing value together with the reason it is missing."""

    reason: str
    witness: Any = None

    def __bool__(self) -> bool:
        return False


NO_FILLER = "no filler"
NO_MINIMUM = "no minimum"


def right_adjoint(f: MonotoneMap) -> Adjunction | Absent:
    """Right adjoint via g(y) = max{x : f(x) <= y}, validated."""
    X, Y = f.dom, f.cod
    table = []
    for y in range(Y.n):
        S = f.preimage(Y.down[y])
        top = X.greatest_in(S)
        if top is None:
            return Absent("no right adjoint", {"y": y, "candidates": list(bits(S))})
        table.append(top)
    if monotonicity_witness(Y, X, table) is not None:
        return Absent("candidate not monotone")
    adj = Adjunction(f, _trusted(Y, X, tuple(table)))
    if not adj.holds():
        raise InternalInconsistency("max-preimage candidate fails the adjunction inequalities")
    return adj


def left_adjoint(f: MonotoneMap) -> Adjunction | Absent:
    """Left adjoint via g(y) = min{x : y <= f(x)}, validated."""
    X, Y = f.dom, f.cod
    table = []
    for y in range(Y.n):
        S = f.preimage(Y.up[y])
        bot = X.least_in(S)
        if bot is None:
            return Absent("no left adjoint", {"y": y, "candidates": list(bits(S))})
        table.append(bot)
    if monotonicity_witness(Y, X, table) is not None:
        return Absent("candidate not monotone")
    adj = Adjunction(_trusted(Y, X, tuple(table)), f)
    if not adj.holds():
        raise InternalInconsistency("min-preimage candidate fails the adjunction inequalities")
    return adj


def right_adjoints_brute(f: MonotoneMap) -> list[MonotoneMap]:
    """All monotone g with 1 <= g∘f and f∘g <= 1, by exhaustive search."""
    X, Y = f.dom, f.cod
    out = []
    idX, idY = identity(X), identity(Y)
    for g in monotone_maps(Y, X):
        if hom_leq(idX, g @ f) and hom_leq(f @ g, idY):
            out.append(g)
    return out


def left_adjoints_brute(f: MonotoneMap) -> list[MonotoneMap]:
    X, Y = f.dom, f.cod
    out = []
    idX, idY = identity(X), identity(Y)
    for g in monotone_maps(Y, X):
        if hom_leq(idY, f @ g) and hom_leq(g @ f, idX):
            out.append(g)
    return out


def is_lari(f: MonotoneMap) -> bool:
    adj = right_adjoint(f)
    return bool(adj) and (adj.right @ f).is_identity()


def is_rali(f: MonotoneMap) -> bool:
    adj = left_adjoint(f)
    return bool(adj) and (f @ adj.left).is_identity()


# ---------------------------------------------------- extensions and liftings


def left_extension(j: MonotoneMap, f: MonotoneMap) -> MonotoneMap | Absent:
    """Least g with f <= g∘j, searched exhaustively and cross-checked with f∘j*."""
    if j.dom != f.dom:
        raise NotParallel("extension needs a common domain")
    Y, Z = j.cod, f.cod
    allowed = [Z.full_mask] * Y.n
    for x in range(j.dom.n):
        allowed[j.table[x]] &= Z.up[f.table[x]]
    cands = list(monotone_maps(Y, Z, allowed))
    result: MonotoneMap | Absent
    if not cands:
        result = Absent(NO_FILLER)
    else:
        lo = least_map(cands)
        result = lo if lo is not None else Absent(NO_MINIMUM, [list(c.table) for c in cands])
    adj = right_adjoint(j)
    if adj:
        expected = f @ adj.right
        if not (isinstance(result, MonotoneMap) and result == expected):
            raise InternalInconsistency(
                "left extension disagrees with composite through the right adjoint",
                witness={"search": repr(result), "formula": list(expected.table)},
            )
    return result


def left_lifting(j: MonotoneMap, f: MonotoneMap) -> MonotoneMap | Absent:
    """Least g with f <= j∘g, searched exhaustively and cross-checked with jl∘f."""
    if j.cod != f.cod:
        raise CodomainMismatch("lifting needs a common codomain")
    X, Y, Z = f.dom, j.dom, j.cod
    allowed = [j.preimage(Z.up[f.table[x]]) for x in range(X.n)]
    cands = list(monotone_maps(X, Y, allowed))
    result: MonotoneMap | Absent
    if not cands:
        result = Absent(NO_FILLER)
    else:
        lo = least_map(cands)
        result = lo if lo is not None else Absent(NO_MINIMUM, [list(c.table) for c in cands])
    adj = left_adjoint(j)
    if adj:
        expected = adj.left @ f
        if not (isinstance(result, MonotoneMap) and result == expected):
            raise InternalInconsistency(
                "left lifting disagrees with composite through the left adjoint",
                witness={"search": repr(result), "formula": list(expected.table)},
            )
    return result


def all_maps_between(objects: Sequence[Poset]) -> list[MonotoneMap]:
    return [f for X in objects for Y in objects for f in monotone_maps(X, Y)]
