"""Randomised law checks over small posets and maps."""

from hypothesis import given, settings, strategies as st

from lofs.awfs import lari_opfib_awfs, validate_awfs
from lofs.downset import downset_monad
from lofs.filters import FilterClass, F_on_maps
from lofs.monad import identity_monad, is_lax_idempotent, simple_at, validate_monad
from lofs.poset import (
    comma_object,
    hom_leq,
    identity,
    is_full,
    is_lari,
    left_adjoint,
    left_adjoints_brute,
    monotone_maps,
    right_adjoint,
    right_adjoints_brute,
)

from .strategies import maps, maps_between, posets


@given(maps(4))
def test_adjoints_match_brute_force(f):
    if f is None:
        return
    brute = right_adjoints_brute(f)
    adj = right_adjoint(f)
    assert len(brute) <= 1 and (brute[0] if brute else None) == (adj.right if adj else None)
    lbrute = left_adjoints_brute(f)
    ladj = left_adjoint(f)
    assert (lbrute[0] if lbrute else None) == (ladj.left if ladj else None)


@given(maps(3))
def test_full_maps_are_monic(f):
    if f is None or not is_full(f):
        return
    for W in [f.dom]:
        seen = {}
        for h in monotone_maps(W, f.dom):
            key = (f @ h).table
            assert key not in seen
            seen[key] = h


@given(maps(3), st.data())
def test_comma_projections_satisfy_inequality(f, data):
    if f is None:
        return
    g = data.draw(maps_between(f.cod, f.cod))
    cone = comma_object(f, g)
    assert hom_leq(f @ cone.d0, g @ cone.d1)


@settings(max_examples=30)
@given(posets(3))
def test_downset_monad_laws_random(X):
    P = downset_monad([X])
    maps = list(monotone_maps(X, X))
    assert validate_monad(P, [X], maps).ok
    assert is_lax_idempotent(P, [X])
    assert all(simple_at(P, f) for f in maps)


@settings(max_examples=30)
@given(maps(3), st.sampled_from(list(FilterClass)))
def test_filter_functor_preserves_composition(f, cls):
    if f is None:
        return
    for g in monotone_maps(f.cod, f.cod):
        assert F_on_maps(g @ f, cls) == F_on_maps(g, cls) @ F_on_maps(f, cls)
    assert F_on_maps(identity(f.dom), cls).is_identity()


@settings(max_examples=30)
@given(maps(3))
def test_identity_monad_is_trivially_fine(f):
    if f is None:
        return
    Id = identity_monad([f.dom, f.cod])
    assert validate_monad(Id, [f.dom, f.cod], [f]).ok
    assert simple_at(Id, f)


@settings(max_examples=30)
@given(maps(3))
def test_left_maps_of_lari_system_are_laris(f):
    if f is None:
        return
    A = lari_opfib_awfs()
    assert is_lari(A.L(f))
    assert validate_awfs(A, [f]).ok
