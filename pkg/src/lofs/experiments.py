"""Exhaustive experiments over small universes, each returning a plain result dict.

Every function reports ``ok``, the wall-clock ``seconds`` and the counts it
checked, so that tests and scripts can share them.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field
from typing import Callable

from . import awfs
from .downset import downset_monad
from .errors import CapExceeded, LofsError, ParseError
from .filters import FilterClass, as_monad_instance
from .io import load_map
from .gms import is_dense_isometry, is_q_embedding, non_expansive_maps, symmetric_spaces
from .monad import (
    MonadInstance,
    induced_lofs,
    is_lax_idempotent,
    is_simple,
    is_T_embedding,
    simple_at,
    validate_monad,
)
from .poset import (
    MonotoneMap,
    Poset,
    _trusted,
    chain,
    left_adjoint,
    monotone_maps,
    posets_up_to,
    product,
    right_adjoint,
)
from .report import describe_map
from .space import is_dense, is_embedding


@dataclass
class Universe:
    objects: list[Poset]
    maps: list[MonotoneMap] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.maps:
            self.maps = [f for X in self.objects for Y in self.objects for f in monotone_maps(X, Y)]


def small_universe(max_size: int = 3) -> Universe:
    return Universe(posets_up_to(max_size))


def mixed_universe() -> Universe:
    """All posets with at most three elements plus the 4-chain and the 2x2 square."""
    return Universe(posets_up_to(3) + [chain(4), product(chain(2), chain(2))])


def timed(fn: Callable[..., dict]) -> Callable[..., dict]:
    def wrapper(*args, **kwargs) -> dict:
        start = time.perf_counter()
        out = fn(*args, **kwargs)
        out["seconds"] = round(time.perf_counter() - start, 3)
        return out

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ----------------------------------------------------------------- adjoints


@timed
def adjoint_agreement(max_size: int = 4) -> dict:
    """Brute-force adjoint search against the preimage formulas for every map."""
    objects = posets_up_to(max_size)
    hom = {(X, Y): [f.table for f in monotone_maps(X, Y)] for X in objects for Y in objects}
    maps = disagreements = 0
    first = None
    for X in objects:
        for Y in objects:
            back = hom[(Y, X)]
            for ft in hom[(X, Y)]:
                maps += 1
                rights, lefts = [], []
                for gt in back:
                    unit_up = all(X.leq(x, gt[ft[x]]) for x in range(X.n))
                    counit_down = all(Y.leq(ft[gt[y]], y) for y in range(Y.n))
                    if unit_up and counit_down:
                        rights.append(gt)
                    unit_down = all(X.leq(gt[ft[x]], x) for x in range(X.n))
                    counit_up = all(Y.leq(y, ft[gt[y]]) for y in range(Y.n))
                    if unit_down and counit_up:
                        lefts.append(gt)
                f = _trusted(X, Y, ft)
                r, l = right_adjoint(f), left_adjoint(f)
                ok = (
                    len(rights) <= 1
                    and len(lefts) <= 1
                    and (rights[0] if rights else None) == (r.right.table if r else None)
                    and (lefts[0] if lefts else None) == (l.left.table if l else None)
                )
                if not ok:
                    disagreements += 1
                    first = first or describe_map(f)
    return {"ok": disagreements == 0, "maps": maps, "disagreements": disagreements, "first": first}


# ------------------------------------------------------------------- monads


def monad_suite(M: MonadInstance, uni: Universe) -> dict:
    rep = validate_monad(M, uni.objects, uni.maps)
    lax = is_lax_idempotent(M, uni.objects)
    simple = is_simple(M, uni.maps)
    return {
        "ok": rep.ok and bool(lax) and bool(simple),
        "monad_laws": rep.ok,
        "law_checks": sum(rep.counts.values()),
        "skipped": rep.info.get("skipped", {}),
        "first_failure": rep.failures[0].to_dict() if rep.failures else None,
        "lax_idempotent": bool(lax),
        "simple": bool(simple),
        "simple_witness": simple.witness,
        "objects": len(uni.objects),
        "maps": len(uni.maps),
    }


@timed
def downset_suite(max_size: int = 3) -> dict:
    uni = small_universe(max_size)
    return monad_suite(downset_monad(uni.objects), uni)


def embedding_agreement(M: MonadInstance, maps: list[MonotoneMap], predicate: Callable[[MonotoneMap], bool]) -> dict:
    mismatches = [describe_map(f) for f in maps if is_T_embedding(M, f) != predicate(f)]
    return {
        "agree": not mismatches,
        "T_embeddings": sum(is_T_embedding(M, f) for f in maps),
        "mismatches": len(mismatches),
        "first_mismatch": mismatches[0] if mismatches else None,
    }


def dense_embedding(f: MonotoneMap) -> bool:
    return is_embedding(f) and is_dense(f)


@timed
def filter_suite(cls: FilterClass = FilterClass.ALL, max_size: int = 3, compare_with: str | None = "embedding") -> dict:
    uni = small_universe(max_size)
    M = as_monad_instance(cls, uni.objects)
    out = monad_suite(M, uni)
    out["class"] = cls.value
    if compare_with is not None:
        predicate = {"embedding": is_embedding, "dense embedding": dense_embedding}[compare_with]
        emb = embedding_agreement(M, uni.maps, predicate)
        out["embeddings"] = {"compared_with": compare_with, **emb}
        out["ok"] = out["ok"] and emb["agree"]
    return out


# ------------------------------------------------------------ LOFS universes


def lari_system(uni: Universe) -> awfs.AWFSRecord:
    return awfs.lari_opfib_awfs(uni.objects, uni.maps)


def downset_system(uni: Universe, cap: int = 3000) -> tuple[awfs.AWFSRecord, list[dict]]:
    """Induced system of P on the universe maps whose factorization fits in the cap."""
    P = downset_monad(uni.objects, cap=cap)
    kept, excluded = [], []
    for f in uni.maps:
        try:
            ok = bool(simple_at(P, f))
        except CapExceeded:
            excluded.append(describe_map(f))
            continue
        if not ok:
            raise AssertionError("down-set monad not simple at a universe map")
        kept.append(f)
    return induced_lofs(P, kept, check=False), excluded


def _structures(A: awfs.AWFSRecord, maps: list[MonotoneMap]):
    cos, algs = [], []
    for f in maps:
        try:
            s = awfs.coalgebra(A, f)
            p = awfs.algebra(A, f)
        except CapExceeded:
            continue
        if s is not None:
            cos.append(s)
        if p is not None:
            algs.append(p)
    return cos, algs


@timed
def kz_lifting_equivalence(A: awfs.AWFSRecord) -> dict:
    """Algebraic diagonal against the least filler on every coalgebra/algebra square."""
    maps = A.universe_maps()
    cos, algs = _structures(A, maps)
    squares = mismatches = 0
    first = None
    for s in cos:
        for p in algs:
            for sq in awfs.squares(s.morphism, p.morphism):
                squares += 1
                d = awfs.kz_diagonal(A, sq, s, p)
                if d != awfs.least_diagonal_oracle(sq):
                    mismatches += 1
                    first = first or sq.to_dict()
    identity_failures = 0
    for f in maps:
        Lf, Rf = A.L(f), A.R(f)
        sq = awfs.Square(Lf, Rf, Lf, Rf)
        d = awfs.kz_diagonal(A, sq, awfs.cofree_coalgebra(A, f), awfs.AlgebraOnMap(Rf, A.pi(f)))
        if not d.is_identity():
            identity_failures += 1
            first = first or {"identity_diagonal": describe_map(f)}
    return {
        "ok": mismatches == 0 and identity_failures == 0 and squares > 0,
        "system": A.name,
        "maps": len(maps),
        "coalgebras": len(cos),
        "algebras": len(algs),
        "squares": squares,
        "mismatches": mismatches,
        "identity_failures": identity_failures,
        "first": first,
    }


@timed
def distributivity(A: awfs.AWFSRecord) -> dict:
    rep = awfs.check_distributivity(A)
    return {
        "ok": rep.ok,
        "system": A.name,
        "maps": len(A.universe_maps()),
        "first": rep.failures[0].to_dict() if rep.failures else None,
        "skipped": rep.info.get("skipped", {}),
    }


CONDITIONS = ("R-algebra", "injective wrt L-coalgebras", "(R,Lambda)-algebra", "retract of an R-algebra")


@timed
def r_algebra_report(A: awfs.AWFSRecord, negative: MonotoneMap | None = None) -> dict:
    """The four algebra conditions on every map, with one positive and one negative witness."""
    maps = A.universe_maps()
    cos = awfs.coalgebra_maps(A, maps)
    rows = algebras = 0
    disagreements = []
    for g in maps:
        try:
            c = awfs.r_algebra_equivalents(A, g, cos, maps)
        except LofsError as exc:
            disagreements.append({"map": describe_map(g), "error": str(exc), "detail": exc.witness})
            continue
        rows += 1
        algebras += c.algebra
        if len({c.algebra, c.injective, c.unit_algebra, c.retract}) != 1:
            disagreements.append({"map": describe_map(g), **c.to_dict()})
    # the free algebra R f on a non-identity map f
    f = next((m for m in maps if m.dom.n > 0 and not m.is_identity()), maps[0])
    c = awfs.r_algebra_equivalents(A, A.R(f), cos, maps)
    positive = {"of_map": describe_map(f), "map": describe_map(A.R(f)), **c.to_dict()}
    neg = None
    if negative is not None:
        c = awfs.r_algebra_equivalents(A, negative, cos, maps)
        neg = {"map": describe_map(negative), **c.to_dict()}
    ok = (
        not disagreements
        and all(positive[k] for k in CONDITIONS)
        and (neg is None or not any(neg[k] for k in CONDITIONS))
    )
    return {
        "ok": ok,
        "system": A.name,
        "maps": rows,
        "algebras": algebras,
        "disagreements": disagreements[:3],
        "positive_witness": positive,
        "negative_witness": neg,
    }


def cancellation_row(A: awfs.AWFSRecord) -> dict:
    canc = awfs.is_cancellative(A)
    refl = awfs.is_kz_reflective_instancewise(A, cancellative=canc)
    return {
        "system": A.name,
        "cancellative": canc.ok,
        "cancellative_witness": canc.witness,
        "reflective": refl.ok,
        "reflective_witness": refl.witness,
        "sub_lari": refl.details["sub_lari"],
    }


@timed
def cancellation_suite(max_size: int = 3) -> dict:
    """LARI, P and F are cancellative and reflective; the trivial system is caught by its witness."""
    uni = small_universe(max_size)
    systems = [
        lari_system(uni),
        induced_lofs(downset_monad(uni.objects), uni.maps),
        induced_lofs(as_monad_instance(FilterClass.ALL, uni.objects), uni.maps),
    ]
    rows = [cancellation_row(A) for A in systems]
    trivial = cancellation_row(awfs.trivial_ofs(uni.objects, uni.maps))
    w = trivial["reflective_witness"] or {}
    trivial_caught = not trivial["reflective"] and bool(w.get("lari")) and not w.get("iso")
    ok = all(r["cancellative"] and r["reflective"] for r in rows) and trivial_caught
    return {"ok": ok, "systems": rows, "trivial": trivial, "trivial_caught": trivial_caught}


# ------------------------------------------------------------ fault injection


def _constant_like(m: MonotoneMap) -> MonotoneMap:
    if m.dom.n == 0:
        return m
    return _trusted(m.dom, m.cod, (m.table[0],) * m.dom.n)


@timed
def fault_injection() -> dict:
    """Three deliberate faults, each of which must be rejected with a witness naming the broken law."""
    two = chain(2)
    out: dict = {}

    P = downset_monad([two])

    def bad_mult(X: Poset) -> MonotoneMap:
        m = P.mu(X)
        table = list(m.table)
        table[0], table[-1] = table[-1], table[0]
        return _trusted(m.dom, m.cod, tuple(table))

    rep = validate_monad(P.corrupted(mult=bad_mult), [two], [])
    out["corrupted multiplication"] = {
        "rejected": not rep.ok,
        "law": rep.failures[0].law if rep.failures else None,
        "witness": rep.failures[0].witness if rep.failures else None,
    }

    uni = small_universe(2)
    A = lari_system(uni)
    broken = dataclasses.replace(A, comult_fn=lambda f: _constant_like(A.sigma(f)))
    rep = awfs.validate_awfs(broken, associativity=False)
    out["broken comultiplication"] = {
        "rejected": not rep.ok,
        "law": rep.failures[0].law if rep.failures else None,
        "witness": rep.failures[0].witness if rep.failures else None,
    }

    try:
        load_map({"dom": "chain:2", "cod": "chain:2", "table": [1, 0]})
        out["non-monotone table"] = {"rejected": False, "law": None, "witness": None}
    except ParseError as exc:
        out["non-monotone table"] = {"rejected": True, "law": str(exc), "witness": exc.witness}

    ok = all(v["rejected"] and v["law"] and v["witness"] for v in out.values())
    return {"ok": ok, "faults": out}


# ---------------------------------------------------------------------- GMS


@timed
def gms_agreement(max_points: int = 4) -> dict:
    spaces = symmetric_spaces(max_points)
    maps = disagreements = q = 0
    first = None
    for A in spaces:
        for B in spaces:
            for f in non_expansive_maps(A, B):
                maps += 1
                qe = is_q_embedding(f)
                q += qe
                if qe != is_dense_isometry(f):
                    disagreements += 1
                    first = first or {"table": list(f.table)}
    return {"ok": disagreements == 0, "spaces": len(spaces), "maps": maps, "q_embeddings": q, "disagreements": disagreements, "first": first}


# ------------------------------------------------------------ criteria


def _bottom_inclusion() -> MonotoneMap:
    return MonotoneMap(chain(1), chain(2), (0,))


def _lofs_pair() -> tuple[awfs.AWFSRecord, awfs.AWFSRecord, list[dict]]:
    uni = mixed_universe()
    P, excluded = downset_system(uni)
    return lari_system(uni), P, excluded


@timed
def criterion_adjoints() -> dict:
    return adjoint_agreement(4)


@timed
def criterion_downset() -> dict:
    return downset_suite(3)


@timed
def criterion_filter() -> dict:
    return filter_suite(FilterClass.ALL, 3, "embedding")


@timed
def criterion_submonads() -> dict:
    runs = {
        "F1": filter_suite(FilterClass.PROPER, 3, "dense embedding"),
        "Fomega": filter_suite(FilterClass.PRIME, 3, None),
        "FOmega": filter_suite(FilterClass.COMPLETELY_PRIME, 3, None),
    }
    return {"ok": all(r["ok"] for r in runs.values()), "runs": runs}


@timed
def criterion_kz_lifting() -> dict:
    lari, P, excluded = _lofs_pair()
    runs = [kz_lifting_equivalence(lari), kz_lifting_equivalence(P)]
    return {"ok": all(r["ok"] for r in runs), "runs": runs, "excluded_from_P": excluded}


@timed
def criterion_distributivity() -> dict:
    lari, P, excluded = _lofs_pair()
    runs = [distributivity(lari), distributivity(P)]
    return {"ok": all(r["ok"] for r in runs), "runs": runs, "excluded_from_P": excluded}


@timed
def criterion_r_algebras() -> dict:
    lari, _, _ = _lofs_pair()
    uni = small_universe(3)
    P3, _ = downset_system(uni)
    runs = [r_algebra_report(lari, _bottom_inclusion()), r_algebra_report(P3, _bottom_inclusion())]
    return {"ok": all(r["ok"] for r in runs), "runs": runs}


@timed
def criterion_cancellation() -> dict:
    return cancellation_suite(3)


@timed
def criterion_gms() -> dict:
    return gms_agreement(4)


@timed
def criterion_faults() -> dict:
    return fault_injection()


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[], dict]
    budget: float | None  # seconds


CRITERIA = [
    Criterion(1, "adjoints agree with brute force on posets <= 4", criterion_adjoints, 10),
    Criterion(2, "down-set monad laws, lax idempotency, simplicity on posets <= 3", criterion_downset, 60),
    Criterion(3, "filter monad suite and F-embeddings = embeddings", criterion_filter, 300),
    Criterion(4, "F1, Fomega, FOmega suites and F1-embeddings = dense embeddings", criterion_submonads, 300),
    Criterion(5, "algebraic diagonal = least filler, identity diagonals", criterion_kz_lifting, 120),
    Criterion(6, "least filler of the distributivity square = sigma.pi", criterion_distributivity, 120),
    Criterion(7, "four R-algebra conditions agree, with witnesses", criterion_r_algebras, None),
    Criterion(8, "cancellative and reflective systems, trivial OFS caught", criterion_cancellation, 120),
    Criterion(9, "Q-embedding iff dense isometry on symmetric spaces <= 4", criterion_gms, 30),
    Criterion(10, "faults rejected with a named law", criterion_faults, None),
]


def evaluate(c: Criterion) -> dict:
    result = c.run()
    in_time = c.budget is None or result["seconds"] < c.budget
    return {"criterion": c.number, "title": c.title, "budget": c.budget, "passed": bool(result["ok"]) and in_time, "in_time": in_time, **result}


def summary_line(row: dict) -> str:
    status = "PASS" if row["passed"] else "FAIL"
    budget = f" (budget {row['budget']:g} s)" if row["budget"] is not None else ""
    return f"{status} criterion {row['criterion']}: {row['title']} [{row['seconds']:.1f} s{budget}]"
