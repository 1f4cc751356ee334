from hypothesis import given, settings, strategies as st

from curvature_transfer.matching import hopcroft_karp

from oracles import max_matching_enum


@st.composite
def bipartite(draw):
    nl = draw(st.integers(0, 6))
    nr = draw(st.integers(0, 12 - nl))
    pairs = [(a, b) for a in range(nl) for b in range(nr)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return nl, nr, edges


@settings(max_examples=300, deadline=None)
@given(bipartite())
def test_matches_exhaustive_enumeration(case):
    nl, nr, edges = case
    adj = [[b for a2, b in edges if a2 == a] for a in range(nl)]
    assert hopcroft_karp(adj, nr) == max_matching_enum(range(nl), range(nr), edges)


def test_small_cases():
    assert hopcroft_karp([], 0) == 0
    assert hopcroft_karp([[0], [0]], 1) == 1
    # a greedy first choice must be undone by an augmenting path
    assert hopcroft_karp([[0, 1], [0]], 2) == 2
    assert hopcroft_karp([[0, 1, 2], [0], [1]], 3) == 3
