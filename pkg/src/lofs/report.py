"""Verdicts, failure reports and JSON-friendly descriptions of posets and maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import CapExceeded, LofsError
from .poset import MonotoneMap, Poset


def render_label(label: Any) -> Any:
    if isinstance(label, (tuple, list)):
        return [render_label(x) for x in label]
    if isinstance(label, (frozenset, set)):
        return sorted((render_label(x) for x in label), key=repr)
    if isinstance(label, (str, int, float, bool)) or label is None:
        return label
    return str(label)


def describe_poset(X: Poset) -> dict:
    return {
        "elements": [render_label(lab) for lab in X.labels],
        "covers": [[render_label(X.labels[i]), render_label(X.labels[j])] for i, j in X.cover_pairs()],
    }


def describe_map(f: MonotoneMap) -> dict:
    return {"dom": describe_poset(f.dom), "cod": describe_poset(f.cod), "table": list(f.table)}


def first_difference(f: MonotoneMap, g: MonotoneMap) -> dict | None:
    """Localized witness for two parallel maps that differ."""
    for x, (a, b) in enumerate(zip(f.table, g.table)):
        if a != b:
            return {
                "element": x,
                "element_label": render_label(f.dom.labels[x]),
                "lhs": a,
                "rhs": b,
                "lhs_label": render_label(f.cod.labels[a]),
                "rhs_label": render_label(f.cod.labels[b]),
            }
    return None


def pointwise_leq_failure(f: MonotoneMap, g: MonotoneMap) -> dict | None:
    C = f.cod
    for x, (a, b) in enumerate(zip(f.table, g.table)):
        if not C.leq(a, b):
            return {
                "element": x,
                "element_label": render_label(f.dom.labels[x]),
                "lhs": a,
                "rhs": b,
                "lhs_label": render_label(C.labels[a]),
                "rhs_label": render_label(C.labels[b]),
            }
    return None


@dataclass
class Failure:
    law: str
    witness: dict

    def to_dict(self) -> dict:
        return {"law": self.law, "witness": self.witness}


@dataclass
class Report:
    check: str
    failures: list[Failure] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def record(self, law: str, thunk: Callable[[], dict | None], context: dict | None = None) -> bool:
        """Run one law check; a returned dict or a raised LofsError becomes a failure.

        Cap overflows propagate: they are operational limits, not counterexamples.
        """
        self.counts[law] = self.counts.get(law, 0) + 1
        try:
            bad = thunk()
        except CapExceeded:
            raise
        except LofsError as exc:
            bad = {"error": type(exc).__name__, "message": str(exc), "detail": exc.witness}
        if bad is None:
            return True
        witness = dict(context or {})
        witness.update(bad)
        self.failures.append(Failure(law, witness))
        return False

    def record_or_skip(self, law: str, thunk: Callable[[], dict | None], context: dict | None = None) -> bool | None:
        """Like record, but a cap overflow is tallied under info["skipped"] and yields None."""
        try:
            return self.record(law, thunk, context)
        except CapExceeded:
            self.counts[law] -= 1
            skipped = self.info.setdefault("skipped", {})
            skipped[law] = skipped.get(law, 0) + 1
            return None

    def laws_failed(self) -> list[str]:
        return sorted({f.law for f in self.failures})

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "ok": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "failures": [f.to_dict() for f in self.failures],
            "info": self.info,
        }


@dataclass
class Verdict:
    ok: bool
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "witness": self.witness, "details": self.details}
