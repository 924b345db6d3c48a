import pytest
from hypothesis import given

from lofs.errors import NotAntisymmetric, ParseError
from lofs.poset import MonotoneMap, antichain, chain, identity, monotone_maps, posets_up_to, terminal
from lofs.space import (
    FinSpace,
    closure,
    is_continuous_table,
    is_dense,
    is_embedding,
    opens,
    space_from_opens,
    specialization_order,
)

from .strategies import maps, posets

SIERPINSKI = chain(2)
OPEN_POINT = MonotoneMap(terminal(), SIERPINSKI, (0,))
CLOSED_POINT = MonotoneMap(terminal(), SIERPINSKI, (1,))


def test_opens_examples():
    assert [U.members for U in opens(terminal())] == [0, 1]
    assert sorted(U.members for U in opens(SIERPINSKI)) == [0, 0b01, 0b11]
    assert len(opens(antichain(2))) == 4


def test_closure_examples():
    assert closure(SIERPINSKI, 0) == 0
    assert closure(SIERPINSKI, 0b01) == 0b11
    assert closure(SIERPINSKI, 0b11) == 0b11


@given(posets(4))
def test_closure_is_up_closure(X):
    for S in range(1 << X.n):
        assert closure(X, S) == X.up_closure(S)


def test_embedding_examples():
    assert is_embedding(identity(SIERPINSKI))
    assert not is_embedding(MonotoneMap(antichain(2), SIERPINSKI, (0, 1)))
    assert is_embedding(OPEN_POINT)


def test_density_examples():
    assert is_dense(MonotoneMap(SIERPINSKI, terminal(), (0, 0)))
    assert is_dense(OPEN_POINT)
    assert not is_dense(CLOSED_POINT)


def test_continuity_is_monotonicity():
    objects = posets_up_to(3)
    for X in objects:
        for Y in objects:
            mono = {f.table for f in monotone_maps(X, Y)}
            import itertools

            for table in itertools.product(range(Y.n), repeat=X.n):
                assert is_continuous_table(X, Y, table) == (table in mono)


def test_space_from_opens_round_trip():
    for X in posets_up_to(3):
        S = space_from_opens(X.n, X.downsets)
        assert S.order == X


def test_non_topology_rejected():
    with pytest.raises(ParseError):
        space_from_opens(2, [0, 1, 2])
    with pytest.raises(NotAntisymmetric):
        specialization_order(2, [0, 3])


@given(maps(3))
def test_embedding_characterizations_agree(f):
    # is_embedding raises if the two characterizations disagree
    if f is not None:
        is_embedding(f)
