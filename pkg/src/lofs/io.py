"""JSON loading and dumping for posets, maps, spaces, squares and tabulated monads.

A document may carry a ``"posets"`` dictionary of named posets; anywhere a poset
is expected, a string is resolved against it or against the built-in names
``chain:n``, ``antichain:n``, ``terminal``, ``empty`` and ``sierpinski``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import LofsError, ParseError, StructureMismatch
from .monad import MonadInstance, validate_monad
from .poset import MonotoneMap, Poset, antichain, chain, check_poset, empty, terminal
from .report import describe_map, describe_poset, render_label
from .space import space_from_opens


def _hashable(x: Any) -> Any:
    if isinstance(x, list):
        return tuple(_hashable(v) for v in x)
    if isinstance(x, dict):
        raise ParseError("element labels must not be objects")
    return x


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _builtin(name: str) -> Poset | None:
    if name == "terminal":
        return terminal()
    if name == "empty":
        return empty()
    if name == "sierpinski":
        return chain(2)
    kind, _, size = name.partition(":")
    if kind in ("chain", "antichain") and size.isdigit():
        return chain(int(size)) if kind == "chain" else antichain(int(size))
    return None


class Loader:
    """Resolves poset references within one document."""

    def __init__(self, doc: Any = None):
        self.named: dict[str, Poset] = {}
        if isinstance(doc, dict) and isinstance(doc.get("posets"), dict):
            for name, spec in doc["posets"].items():
                self.named[name] = self.poset(spec)

    def poset(self, spec: Any) -> Poset:
        if isinstance(spec, str):
            if spec in self.named:
                return self.named[spec]
            out = _builtin(spec)
            if out is None:
                raise ParseError(f"unknown poset reference {spec!r}")
            return out
        if not isinstance(spec, dict):
            raise ParseError("a poset must be an object or a reference")
        if "opens" in spec:
            return self.space(spec)
        elements = spec.get("elements")
        if not isinstance(elements, list):
            raise ParseError("a poset needs an 'elements' list")
        labels = [_hashable(e) for e in elements]
        index = self._index(labels)
        n = len(labels)
        try:
            if "leq" in spec:
                rel = spec["leq"]
                if len(rel) != n or any(len(row) != n for row in rel):
                    raise ParseError("'leq' must be an n by n matrix")
                return check_poset([[bool(v) for v in row] for row in rel], labels)
            rel = [[False] * n for _ in range(n)]
            for pair in spec.get("covers", []):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ParseError("each cover must be a pair [lower, upper]")
                a, b = (self._lookup(index, labels, v) for v in pair)
                rel[a][b] = True
            return check_poset(rel, labels, close=True)
        except ParseError:
            raise
        except LofsError as exc:
            raise ParseError(f"not a poset: {exc}", witness=exc.witness) from exc

    def space(self, spec: dict) -> Poset:
        points = spec.get("points")
        if not isinstance(points, list):
            raise ParseError("a space needs a 'points' list")
        labels = [_hashable(p) for p in points]
        index = self._index(labels)
        masks = []
        for U in spec["opens"]:
            m = 0
            for p in U:
                m |= 1 << self._lookup(index, labels, p)
            masks.append(m)
        try:
            return space_from_opens(len(labels), masks, labels).order
        except ParseError:
            raise
        except LofsError as exc:
            raise ParseError(f"not a T0 topology: {exc}", witness=exc.witness) from exc

    def map(self, spec: Any) -> MonotoneMap:
        if not isinstance(spec, dict) or "dom" not in spec or "cod" not in spec:
            raise ParseError("a map needs 'dom' and 'cod'")
        X, Y = self.poset(spec["dom"]), self.poset(spec["cod"])
        if "table" in spec:
            table = spec["table"]
            if not isinstance(table, list) or len(table) != X.n:
                raise ParseError("'table' length differs from the domain size")
            if any(not isinstance(v, int) or not 0 <= v < Y.n for v in table):
                raise ParseError("'table' entry out of range")
        elif "map" in spec:
            assignment = spec["map"]
            xi, yi = self._index(list(X.labels)), self._index(list(Y.labels))
            table = [None] * X.n
            for k, v in assignment.items():
                table[self._lookup(xi, list(X.labels), k)] = self._lookup(yi, list(Y.labels), v)
            if None in table:
                raise ParseError("map is not total", witness={"missing": [render_label(X.labels[i]) for i, v in enumerate(table) if v is None]})
        else:
            raise ParseError("a map needs 'map' or 'table'")
        try:
            return MonotoneMap(X, Y, tuple(table))
        except LofsError as exc:
            raise ParseError(f"not a monotone map: {exc}", witness=exc.witness) from exc

    @staticmethod
    def _index(labels: list) -> dict:
        index: dict = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise ParseError(f"duplicate element {lab!r}")
            index[lab] = i
            index.setdefault(str(lab), i)
        return index

    @staticmethod
    def _lookup(index: dict, labels: list, key: Any) -> int:
        k = _hashable(key)
        if k in index:
            return index[k]
        if str(k) in index:
            return index[str(k)]
        raise ParseError(f"unknown element {key!r}")


def load_poset(doc: Any) -> Poset:
    return Loader(doc).poset(doc)


def load_map(doc: Any) -> MonotoneMap:
    return Loader(doc).map(doc)


def load_square(doc: Any):
    from .awfs import Square

    if not isinstance(doc, dict):
        raise ParseError("a square must be an object")
    ld = Loader(doc)
    try:
        parts = {k: ld.map(doc[k]) for k in ("left", "right", "top", "bottom")}
    except KeyError as exc:
        raise ParseError(f"square is missing {exc}") from exc
    try:
        return Square(**parts)
    except LofsError as exc:
        raise ParseError(f"not a commutative square: {exc}", witness=exc.witness) from exc


def dump_poset(X: Poset) -> dict:
    return describe_poset(X)


def dump_map(f: MonotoneMap) -> dict:
    return describe_map(f)


def dump_square(sq) -> dict:
    return {k: dump_map(getattr(sq, k)) for k in ("left", "right", "top", "bottom")}


def load_monad(doc: Any, validate: bool = False) -> tuple[MonadInstance, list[Poset], list[MonotoneMap]]:
    """A tabulated monad.

    Format: ``{"name", "posets": {...}, "T": {"X": "TX"}, "unit": {"X": table},
    "mult": {"X": table}, "maps": [{"dom", "cod", "table", "image": table}],
    "universe": {"objects": [...], "maps": [...]}}``. Tables are value lists
    indexed by domain elements; ``image`` tabulates the action on a map.
    ``universe`` names the objects and lists the indices of the maps that are
    validated; by default these are the objects with a multiplication and the
    maps between them. Identity maps need not be listed.
    """
    if not isinstance(doc, dict):
        raise ParseError("a monad must be an object")
    ld = Loader(doc)
    try:
        T = {ld.poset(k): ld.poset(v) for k, v in doc["T"].items()}
        unit, mult = {}, {}
        for k, table in doc["unit"].items():
            X = ld.poset(k)
            unit[X] = MonotoneMap(X, T[X], tuple(table))
        for k, table in doc.get("mult", {}).items():
            X = ld.poset(k)
            mult[X] = MonotoneMap(T[T[X]], T[X], tuple(table))
        action: dict = {}
        maps = []
        for spec in doc.get("maps", []):
            f = ld.map(spec)
            action[f] = MonotoneMap(T[f.dom], T[f.cod], tuple(spec["image"]))
            maps.append(f)
        uni = doc.get("universe")
        if uni is not None:
            objects = [ld.poset(k) for k in uni["objects"]]
            universe_maps = [maps[i] for i in uni["maps"]]
        else:
            objects = list(mult)
            universe_maps = [f for f in maps if f.dom in mult and f.cod in mult]
    except (KeyError, IndexError, TypeError) as exc:
        raise ParseError(f"monad table is missing an entry: {exc!r}") from exc
    except ParseError:
        raise
    except LofsError as exc:
        raise ParseError(f"invalid monad table: {exc}", witness=exc.witness) from exc

    def lookup(table: dict, key, what: str):
        if key not in table:
            raise ParseError(f"monad has no {what} for the requested argument")
        return table[key]

    def on_maps(f: MonotoneMap) -> MonotoneMap:
        if f in action:
            return action[f]
        if f.dom == f.cod and f.is_identity() and f.dom in T:
            return MonotoneMap(T[f.dom], T[f.dom], tuple(range(T[f.dom].n)))
        return lookup(action, f, "action")

    M = MonadInstance(
        str(doc.get("name", "user")),
        lambda X: lookup(T, X, "object image"),
        on_maps,
        lambda X: lookup(unit, X, "unit"),
        lambda X: lookup(mult, X, "multiplication"),
        universe=objects,
        maps=universe_maps,
    )
    if validate:
        rep = validate_monad(M, objects, universe_maps)
        if not rep.ok:
            raise StructureMismatch(
                "tabulated monad fails its laws",
                witness={"laws": rep.laws_failed(), "first": rep.failures[0].to_dict()},
            )
    return M, objects, universe_maps


def dump_monad(M: MonadInstance, objects: list[Poset], maps: list[MonotoneMap], factorizations: bool = True) -> dict:
    """Tabulate M in the format read by load_monad.

    Enough structure maps are included for the law checks and, with
    ``factorizations``, for the simplicity check on every listed map.
    """
    from .monad import factorize

    names: dict[Poset, str] = {}

    def name(X: Poset) -> str:
        if X not in names:
            names[X] = f"o{len(names)}"
        return names[X]

    T, unit, mult = {}, {}, {}
    action: dict = {}

    def add_action(g: MonotoneMap) -> None:
        if g not in action:
            action[g] = M.fmap(g)

    for X in objects:
        tower = [X]
        for _ in range(3):
            tower.append(M.T(tower[-1]))
        for A in tower[:3]:
            unit[name(A)] = list(M.eta(A).table)
        for A in tower[:2]:
            mult[name(A)] = list(M.mu(A).table)
        for g in (M.eta(X), M.mu(X), M.eta(tower[1]), M.fmap(M.eta(X))):
            add_action(g)
    for f in maps:
        add_action(f)
        add_action(M.fmap(f))
        if factorizations:
            fa = factorize(M, f)
            unit[name(fa.K)] = list(M.eta(fa.K).table)
            add_action(fa.L)
            add_action(fa.q)
    entries = list(action)
    needs_image = set(objects) | {M.T(X) for X in objects} | {M.T(M.T(X)) for X in objects}
    for f in entries:
        needs_image.update((f.dom, f.cod))
    for X in sorted(needs_image, key=lambda P: (P.n, P.down)):
        T[name(X)] = name(M.T(X))
    index = {f: i for i, f in enumerate(entries)}
    return {
        "name": M.name,
        "posets": {v: describe_poset(k) for k, v in names.items()},
        "T": T,
        "unit": unit,
        "mult": mult,
        "maps": [
            {"dom": name(f.dom), "cod": name(f.cod), "table": list(f.table), "image": list(action[f].table)}
            for f in entries
        ],
        "universe": {"objects": [name(X) for X in objects], "maps": [index[f] for f in maps]},
    }
