"""Tabulated monads on finite posets and the factorization they induce.

A monad is given by four callables (object map, map action, unit, multiplication)
that are memoised per argument. All checks run over a finite list of test
objects and maps, the *universe*.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (
    CapExceeded,
    EquivalenceMismatch,
    InternalInconsistency,
    LofsError,
    NotSimple,
    UniversalPropertyFailure,
)
from .poset import (
    Absent,
    CommaCone,
    MonotoneMap,
    Poset,
    comma_object,
    full_witness,
    hom_leq,
    identity,
    is_full,
    is_lari,
    left_adjoint,
    left_extension,
    monotone_maps,
)
from .report import (
    Report,
    Verdict,
    describe_map,
    describe_poset,
    first_difference,
    pointwise_leq_failure,
)


@dataclass(eq=False)
class MonadInstance:
    name: str
    on_objects: Callable[[Poset], Poset]
    on_maps: Callable[[MonotoneMap], MonotoneMap]
    unit: Callable[[Poset], MonotoneMap]
    mult: Callable[[Poset], MonotoneMap]
    universe: list[Poset] = field(default_factory=list)
    maps: list[MonotoneMap] | None = None

    def __post_init__(self) -> None:
        self._obj: dict = {}
        self._fmap: dict = {}
        self._eta: dict = {}
        self._mu: dict = {}
        self._fact: dict = {}

    def T(self, X: Poset) -> Poset:
        out = self._obj.get(X)
        if out is None:
            out = self._obj[X] = self.on_objects(X)
        return out

    def fmap(self, f: MonotoneMap) -> MonotoneMap:
        out = self._fmap.get(f)
        if out is None:
            out = self._fmap[f] = self.on_maps(f)
        return out

    def eta(self, X: Poset) -> MonotoneMap:
        out = self._eta.get(X)
        if out is None:
            out = self._eta[X] = self.unit(X)
        return out

    def mu(self, X: Poset) -> MonotoneMap:
        out = self._mu.get(X)
        if out is None:
            out = self._mu[X] = self.mult(X)
        return out

    def universe_maps(self) -> list[MonotoneMap]:
        if self.maps is not None:
            return list(self.maps)
        return [f for X in self.universe for Y in self.universe for f in monotone_maps(X, Y)]

    def with_universe(self, objects: Sequence[Poset], maps: Sequence[MonotoneMap] | None = None):
        return dataclasses.replace(
            self, universe=list(objects), maps=list(maps) if maps is not None else None
        )

    def corrupted(self, **callables) -> "MonadInstance":
        """Copy with some of the four callables replaced (fault injection)."""
        return dataclasses.replace(self, **callables)


def identity_monad(universe: Sequence[Poset] = ()) -> MonadInstance:
    return MonadInstance(
        "Id", lambda X: X, lambda f: f, identity, identity, universe=list(universe)
    )


# ------------------------------------------------------------------ laws


def _eq(f: MonotoneMap, g: MonotoneMap) -> dict | None:
    if f.dom != g.dom or f.cod != g.cod:
        return {"error": "shape", "message": "composites have different domain or codomain"}
    return first_difference(f, g)


def _typed(m: MonotoneMap, dom: Poset, cod: Poset) -> dict | None:
    if m.dom != dom or m.cod != cod:
        return {"error": "shape", "message": "component has the wrong domain or codomain"}
    return None


def _raise_cap():
    raise CapExceeded("object image exceeds the cap")


def validate_monad(
    M: MonadInstance,
    objects: Sequence[Poset] | None = None,
    maps: Sequence[MonotoneMap] | None = None,
    compositions: bool = True,
) -> Report:
    """Check functoriality, naturality and the unit/associativity laws on the universe."""
    objects = list(objects) if objects is not None else list(M.universe)
    maps = list(maps) if maps is not None else M.universe_maps()
    rep = Report(f"monad-laws[{M.name}]")
    rep.info["objects"] = len(objects)
    rep.info["maps"] = len(maps)
    for X in objects:
        ctx = {"object": describe_poset(X)}
        try:
            TX = M.T(X)
            TTX = M.T(TX)
        except CapExceeded:
            rep.record_or_skip("object map", _raise_cap, ctx)
            continue
        except LofsError as exc:
            rep.record("object map", lambda: {"error": type(exc).__name__, "message": str(exc)}, ctx)
            continue
        rep.record_or_skip("unit component typing", lambda: _typed(M.eta(X), X, TX), ctx)
        rep.record_or_skip("multiplication component typing", lambda: _typed(M.mu(X), TTX, TX), ctx)
        rep.record_or_skip("functor preserves identities", lambda: _eq(M.fmap(identity(X)), identity(TX)), ctx)
        rep.record_or_skip(
            "left unit law mu.T(eta) = 1",
            lambda: _eq(M.mu(X) @ M.fmap(M.eta(X)), identity(TX)),
            ctx,
        )
        rep.record_or_skip(
            "right unit law mu.eta_T = 1",
            lambda: _eq(M.mu(X) @ M.eta(TX), identity(TX)),
            ctx,
        )
        rep.record_or_skip(
            "associativity mu.T(mu) = mu.mu_T",
            lambda: _eq(M.mu(X) @ M.fmap(M.mu(X)), M.mu(X) @ M.mu(TX)),
            ctx,
        )
    for f in maps:
        ctx = {"map": describe_map(f)}
        rep.record_or_skip("functor typing", lambda: _typed(M.fmap(f), M.T(f.dom), M.T(f.cod)), ctx)
        rep.record_or_skip(
            "naturality of unit",
            lambda: _eq(M.fmap(f) @ M.eta(f.dom), M.eta(f.cod) @ f),
            ctx,
        )
        rep.record_or_skip(
            "naturality of multiplication",
            lambda: _eq(M.fmap(f) @ M.mu(f.dom), M.mu(f.cod) @ M.fmap(M.fmap(f))),
            ctx,
        )
    by_dom: dict[Poset, list[MonotoneMap]] = {}
    for f in maps:
        by_dom.setdefault(f.dom, []).append(f)
    for X, fs in by_dom.items():
        for f, g in itertools.combinations(fs, 2):
            if f.cod != g.cod:
                continue
            for a, b in ((f, g), (g, f)):
                if hom_leq(a, b):
                    rep.record_or_skip(
                        "local monotonicity",
                        lambda: pointwise_leq_failure(M.fmap(a), M.fmap(b)),
                        {"lower": describe_map(a), "upper": describe_map(b)},
                    )
    if compositions:
        for f in maps:
            for g in by_dom.get(f.cod, []):
                rep.record_or_skip(
                    "functor preserves composition",
                    lambda: _eq(M.fmap(g @ f), M.fmap(g) @ M.fmap(f)),
                    {"first": describe_map(f), "second": describe_map(g)},
                )
    return rep


def is_lax_idempotent(M: MonadInstance, objects: Sequence[Poset] | None = None) -> Verdict:
    """T(eta) <= eta_T on every object, cross-checked against 1 <= eta_T.mu."""
    objects = list(objects) if objects is not None else list(M.universe)
    first = second = None
    for X in objects:
        TX = M.T(X)
        if first is None:
            bad = pointwise_leq_failure(M.fmap(M.eta(X)), M.eta(TX))
            if bad is not None:
                first = {"object": describe_poset(X), **bad}
        if second is None:
            bad = pointwise_leq_failure(identity(M.T(TX)), M.eta(TX) @ M.mu(X))
            if bad is not None:
                second = {"object": describe_poset(X), **bad}
    if (first is None) != (second is None):
        raise EquivalenceMismatch(
            "the two forms of lax idempotency disagree",
            witness={"T(eta)<=eta_T": first, "1<=eta_T.mu": second},
        )
    return Verdict(first is None, first, {"objects": len(objects)})


# --------------------------------------------------------- factorization


@dataclass(frozen=True, eq=False)
class Factorization:
    f: MonotoneMap
    cone: CommaCone
    L: MonotoneMap
    R: MonotoneMap
    q: MonotoneMap

    @property
    def K(self) -> Poset:
        return self.cone.apex


def factorize(M: MonadInstance, f: MonotoneMap) -> Factorization:
    """Kf = Tf ↓ eta_Y with Lf = (eta_X, f), Rf and q_f the two projections."""
    out = M._fact.get(f)
    if out is not None:
        return out
    cone = comma_object(M.fmap(f), M.eta(f.cod))
    L = cone.mediate(M.eta(f.dom), f)
    out = Factorization(f, cone, L, cone.d1, cone.d0)
    if out.R @ L != f or out.q @ L != M.eta(f.dom):
        raise InternalInconsistency("factorization triangles fail", witness=describe_map(f))
    M._fact[f] = out
    return out


def _simple_inequality(M: MonadInstance, fa: Factorization) -> dict | None:
    return pointwise_leq_failure(M.fmap(fa.L) @ fa.q, M.eta(fa.K))


def _simple_adjunction(M: MonadInstance, fa: Factorization) -> dict | None:
    X = fa.f.dom
    TL = M.fmap(fa.L)
    back = M.mu(X) @ M.fmap(fa.q)
    bad = pointwise_leq_failure(identity(M.T(X)), back @ TL)
    if bad is not None:
        return {"side": "unit", **bad}
    bad = pointwise_leq_failure(TL @ back, identity(M.T(fa.K)))
    if bad is not None:
        return {"side": "counit", **bad}
    return None


def simple_at(M: MonadInstance, f: MonotoneMap) -> Verdict:
    fa = factorize(M, f)
    ineq = _simple_inequality(M, fa)
    adj = _simple_adjunction(M, fa)
    if (ineq is None) != (adj is None):
        raise EquivalenceMismatch(
            "inequality and adjunction forms of simplicity disagree",
            witness={"map": describe_map(f), "inequality": ineq, "adjunction": adj},
        )
    if ineq is None:
        return Verdict(True)
    return Verdict(False, {"map": describe_map(f), **ineq})


def is_simple(M: MonadInstance, maps: Sequence[MonotoneMap] | None = None) -> Verdict:
    """T(Lf).q_f <= eta_Kf for every map, cross-checked with the adjunction form."""
    maps = list(maps) if maps is not None else M.universe_maps()
    for f in maps:
        v = simple_at(M, f)
        if not v:
            return Verdict(False, v.witness, {"maps": len(maps)})
    return Verdict(True, None, {"maps": len(maps)})


@dataclass(frozen=True)
class KappaResult:
    kappa: MonotoneMap
    full: bool
    witness: tuple[int, int] | None


def comparison_kappa(M: MonadInstance, f: MonotoneMap) -> KappaResult:
    """kappa: T(Kf) -> T^2 f ↓ T(eta_Y), induced by (T q_f, T Rf)."""
    fa = factorize(M, f)
    target = comma_object(M.fmap(M.fmap(f)), M.fmap(M.eta(f.cod)))
    kappa = target.mediate(M.fmap(fa.q), M.fmap(fa.R))
    if M.fmap(fa.q) != target.d0 @ kappa or M.fmap(fa.R) != target.d1 @ kappa:
        raise UniversalPropertyFailure("kappa does not satisfy its two triangles")
    bad = full_witness(kappa)
    if bad is None and _simple_inequality(M, fa) is not None:
        raise InternalInconsistency(
            "kappa is full but the simplicity inequality fails", witness=describe_map(f)
        )
    return KappaResult(kappa, bad is None, bad)


def is_T_embedding(M: MonadInstance, f: MonotoneMap) -> bool:
    return is_lari(M.fmap(f))


# ------------------------------------------------------------- algebras


@dataclass(frozen=True)
class AlgebraStructure:
    carrier: Poset
    action: MonotoneMap


def unit_retractions(M: MonadInstance, X: Poset) -> list[MonotoneMap]:
    """All monotone r: TX -> X with r.eta_X = 1, by exhaustive search."""
    eta = M.eta(X)
    TX = M.T(X)
    allowed = [X.full_mask] * TX.n
    for x, v in enumerate(eta.table):
        allowed[v] &= 1 << x
    return list(monotone_maps(TX, X, allowed))


def algebra_structure(M: MonadInstance, X: Poset) -> AlgebraStructure | Absent:
    """Left adjoint of eta_X that splits it; agreement with retraction search asserted."""
    eta = M.eta(X)
    adj = left_adjoint(eta)
    found: AlgebraStructure | Absent
    if adj and (adj.left @ eta).is_identity():
        found = AlgebraStructure(X, adj.left)
    else:
        found = Absent("unit has no left adjoint retraction")
    has_retraction = bool(unit_retractions(M, X))
    if bool(found) != has_retraction:
        raise EquivalenceMismatch(
            "algebra structure and unit retraction disagree",
            witness={"object": describe_poset(X), "structure": bool(found)},
        )
    return found


def algebra_axioms(M: MonadInstance, alg: AlgebraStructure) -> dict | None:
    X, a = alg.carrier, alg.action
    bad = first_difference(a @ M.eta(X), identity(X))
    if bad is not None:
        return {"law": "unit", **bad}
    bad = first_difference(a @ M.mu(X), a @ M.fmap(a))
    if bad is not None:
        return {"law": "associativity", **bad}
    return None


def kz_injectivity_check(
    M: MonadInstance, X: Poset, embeddings: Sequence[MonotoneMap] | None = None
) -> Verdict:
    """Every map A -> X has a least extension along every T-embedding A -> B.

    The embeddings default to the T-embeddings among the universe maps together
    with the unit components of the universe objects.
    """
    if embeddings is None:
        embeddings = [j for j in M.universe_maps() if is_T_embedding(M, j)]
        embeddings += [M.eta(A) for A in M.universe]
    witness = None
    for j in embeddings:
        for a in monotone_maps(j.dom, X):
            ext = left_extension(j, a)
            if not ext or ext @ j != a:
                witness = {
                    "embedding": describe_map(j),
                    "map": describe_map(a),
                    "reason": ext.reason if isinstance(ext, Absent) else "extension does not restrict",
                }
                break
        if witness:
            break
    ok = witness is None
    if ok != bool(algebra_structure(M, X)):
        raise EquivalenceMismatch(
            "injectivity and algebra existence disagree",
            witness={"object": describe_poset(X), "injective": ok, "detail": witness},
        )
    return Verdict(ok, witness, {"embeddings": len(embeddings)})


# ------------------------------------------------- embeddings and morphisms


def units_full(M: MonadInstance, objects: Sequence[Poset] | None = None) -> bool:
    objects = list(objects) if objects is not None else list(M.universe)
    return all(is_full(M.eta(X)) for X in objects)


def embeddings_full(M: MonadInstance, maps: Sequence[MonotoneMap] | None = None) -> bool:
    maps = list(maps) if maps is not None else M.universe_maps()
    maps = maps + [M.eta(X) for X in M.universe]
    return all(is_full(f) for f in maps if is_T_embedding(M, f))


def monad_morphisms(
    S: MonadInstance, T: MonadInstance, objects: Sequence[Poset]
) -> list[dict[Poset, MonotoneMap]]:
    """All families phi_X: SX -> TX (X in objects and TX) obeying the monad-morphism laws.

    Components are searched at each object X and at TX, because the
    multiplication law at X involves phi at TX. Naturality is required along
    all maps between the given objects. Returned families are restricted to
    the given objects.
    """
    objects = list(objects)

    def candidates(X: Poset) -> list[MonotoneMap]:
        SX, TX = S.T(X), T.T(X)
        allowed = [TX.full_mask] * SX.n
        for x in range(X.n):
            allowed[S.eta(X).table[x]] &= 1 << T.eta(X).table[x]
        return list(monotone_maps(SX, TX, allowed))

    per_object: list[list[MonotoneMap]] = []
    for X in objects:
        TX = T.T(X)
        good = []
        outer = candidates(TX)
        for phi in candidates(X):
            for phi_T in outer:
                # mu^T . T(phi) . phi_S = phi . mu^S, with phi at TX on S(TX)
                # route: S S X --S phi--> S T X --phi_TX--> T T X --mu--> T X
                lhs = T.mu(X) @ phi_T @ S.fmap(phi)
                rhs = phi @ S.mu(X)
                if lhs == rhs:
                    good.append(phi)
                    break
        per_object.append(good)
    maps = [f for X in objects for Y in objects for f in monotone_maps(X, Y)]
    families = []
    for combo in itertools.product(*per_object):
        fam = dict(zip(objects, combo))
        if all(T.fmap(f) @ fam[f.dom] == fam[f.cod] @ S.fmap(f) for f in maps):
            families.append(fam)
    return families


def submonad_transfer(
    S: MonadInstance,
    T: MonadInstance,
    inclusion: Callable[[Poset], MonotoneMap],
    objects: Sequence[Poset],
    maps: Sequence[MonotoneMap],
) -> dict:
    """Hypotheses and conclusions of the submonad transfer statement on a universe."""
    comps_emb = all(is_T_embedding(T, inclusion(X)) for X in objects)
    hyp = (
        comps_emb
        and bool(is_lax_idempotent(T, objects))
        and bool(is_simple(T, maps))
        and units_full(T, objects)
    )
    concl = bool(is_lax_idempotent(S, objects)) and bool(is_simple(S, maps))
    return {"hypotheses": hyp, "components_are_embeddings": comps_emb, "conclusion": concl}


# ----------------------------------------------------------- induced LOFS


def induced_lofs(
    M: MonadInstance, maps: Sequence[MonotoneMap] | None = None, check: bool = True
):
    """The AWFS with Kf = Tf ↓ eta_Y; requires simplicity on the given maps."""
    from .awfs import AWFSRecord

    maps = list(maps) if maps is not None else M.universe_maps()
    if check:
        v = is_simple(M, maps)
        if not v:
            raise NotSimple("monad is not simple on the universe", witness=v.witness)

    def factor(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
        fa = factorize(M, f)
        return fa.L, fa.R

    def square_action(f, g, h, k) -> MonotoneMap:
        ff, fg = factorize(M, f), factorize(M, g)
        return fg.cone.mediate(M.fmap(h) @ ff.q, k @ ff.R)

    def comult(f: MonotoneMap) -> MonotoneMap:
        fa = factorize(M, f)
        fl = factorize(M, fa.L)
        try:
            return fl.cone.mediate(fa.q, identity(fa.K))
        except UniversalPropertyFailure as exc:
            raise NotSimple("comultiplication is undefined at this map", witness=exc.witness)

    def mult(f: MonotoneMap) -> MonotoneMap:
        fa = factorize(M, f)
        fr = factorize(M, fa.R)
        first = M.mu(f.dom) @ M.fmap(fa.q) @ fr.q
        return fa.cone.mediate(first, fr.R)

    return AWFSRecord(
        f"induced[{M.name}]",
        factor,
        square_action,
        comult,
        mult,
        objects=list(M.universe),
        maps=maps,
        cone_of=lambda f: factorize(M, f).cone,
    )
