import pytest

from lofs.errors import CapExceeded
from lofs.filters import (
    FilterClass,
    F_on_maps,
    all_filters_bruteforce,
    as_monad_instance,
    filter_mult,
    filter_space,
    filter_unit,
)
from lofs.monad import is_lax_idempotent, is_simple, validate_monad
from lofs.poset import MonotoneMap, antichain, chain, identity, is_full, monotone_maps, posets_up_to, terminal

SIERPINSKI = chain(2)


def test_filter_counts():
    assert len(filter_space(terminal()).filters) == 2
    assert len(filter_space(SIERPINSKI).filters) == 3
    assert len(filter_space(SIERPINSKI, FilterClass.PROPER).filters) == 2


def test_filters_of_finite_spaces_are_principal():
    for X in posets_up_to(3):
        assert sorted(filter_space(X).filters) == sorted(all_filters_bruteforce(X))


def test_image_of_principal_filter():
    f = MonotoneMap(terminal(), SIERPINSKI, (0,))
    FX = filter_space(terminal())
    FY = filter_space(SIERPINSKI)
    Ff = F_on_maps(f)
    principal = FX.filters.index(0b10)  # filter {X} of the one-point space
    image = FY.filters[Ff.table[principal]]
    # generated by {0}: the opens {0} and {0,1}
    assert image == sum(1 << FY.open_index[U] for U in (0b01, 0b11))


def test_functor_preserves_identities_and_improper_filter():
    for X in posets_up_to(3):
        assert F_on_maps(identity(X)) == identity(filter_space(X).poset)
    f = MonotoneMap(SIERPINSKI, terminal(), (0, 0))
    FX, FY = filter_space(SIERPINSKI), filter_space(terminal())
    improper_x = FX.filters.index((1 << len(FX.opens)) - 1)
    assert FY.filters[F_on_maps(f).table[improper_x]] == (1 << len(FY.opens)) - 1


def test_unit_examples():
    FX = filter_space(terminal())
    assert FX.filters[filter_unit(terminal()).table[0]] == 0b10
    S = filter_space(SIERPINSKI)
    eta = filter_unit(SIERPINSKI)
    assert S.filters[eta.table[0]] == sum(1 << S.open_index[U] for U in (0b01, 0b11))
    assert S.filters[eta.table[1]] == 1 << S.open_index[0b11]
    for cls in FilterClass:
        for X in posets_up_to(3):
            e = filter_unit(X, cls)
            assert e.is_injective() and is_full(e)


def test_multiplication_unit_laws_and_associativity_on_sierpinski():
    for cls in FilterClass:
        eta_F = filter_unit(filter_space(SIERPINSKI, cls).poset, cls)
        mu = filter_mult(SIERPINSKI, cls)
        assert (mu @ eta_F).is_identity()
        assert (mu @ F_on_maps(filter_unit(SIERPINSKI, cls), cls)).is_identity()
        FF = filter_space(SIERPINSKI, cls).poset
        assert mu @ F_on_maps(mu, cls) == mu @ filter_mult(FF, cls)


@pytest.mark.parametrize("cls", list(FilterClass))
def test_filter_monads_on_small_spaces(cls):
    objects = posets_up_to(3)
    M = as_monad_instance(cls, objects)
    rep = validate_monad(M)
    assert rep.ok, rep.failures[:1]
    assert is_lax_idempotent(M)
    assert is_simple(M)


def test_point_cap():
    with pytest.raises(CapExceeded):
        as_monad_instance(FilterClass.ALL, [antichain(5)])
