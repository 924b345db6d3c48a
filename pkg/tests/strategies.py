"""Hypothesis strategies for small posets and monotone maps."""

from hypothesis import strategies as st

from lofs.poset import Poset, check_poset, monotone_maps


@st.composite
def posets(draw, max_size: int = 4) -> Poset:
    n = draw(st.integers(0, max_size))
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rel[i][j] = draw(st.booleans())
    perm = draw(st.permutations(range(n)))
    shuffled = [[rel[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    return check_poset(shuffled, close=True)


@st.composite
def maps_between(draw, X: Poset, Y: Poset):
    choices = list(monotone_maps(X, Y))
    if not choices:
        return None
    return draw(st.sampled_from(choices))


@st.composite
def maps(draw, max_size: int = 3):
    X = draw(posets(max_size))
    Y = draw(posets(max_size).filter(lambda P: P.n > 0 or X.n == 0))
    return draw(maps_between(X, Y))


@st.composite
def parallel_pair(draw, max_size: int = 3):
    f = draw(maps(max_size))
    g = draw(maps_between(f.dom, f.cod))
    return f, g
