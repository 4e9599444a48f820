import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from symstoch.graphfactor import (
    ONE,
    TWO,
    LoopMultigraph,
    decompose,
    euler_orient,
    graph_to_matrix,
    matrix_to_graph,
    petersen_two_factorize,
)
from symstoch.symmat import S, SymIntMatrix, enumerate_points

TRI = SymIntMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
D2 = SymIntMatrix.diagonal([2, 2, 2])


def in_out(arcs, n):
    out, inn = [0] * n, [0] * n
    for u, v in arcs:
        out[u] += 1
        inn[v] += 1
    return out, inn


def test_graph_translation():
    G = matrix_to_graph(D2, ONE)
    assert G.loops == [2, 2, 2] and G.degrees() == [2, 2, 2] and not G.edges
    G = matrix_to_graph(TRI, ONE)
    assert G.degrees() == [2, 2, 2] and sum(G.edges.values()) == 3
    X = SymIntMatrix.from_rows([[2, 1, 1], [1, 2, 1], [1, 1, 2]])
    G = matrix_to_graph(X, ONE)
    assert G.loops == [2, 2, 2] and G.degrees() == [4, 4, 4]


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(0, 3), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda e: SymIntMatrix(n, tuple(e)))))
def test_graph_round_trip(X):
    assert graph_to_matrix(matrix_to_graph(X, ONE)) == X
    if all(X[i, i] % 2 == 0 for i in range(X.n)):
        assert graph_to_matrix(matrix_to_graph(X, TWO)) == X


def test_convention_two_needs_even_diagonal():
    with pytest.raises(ValueError):
        matrix_to_graph(SymIntMatrix.from_rows([[1, 1], [1, 1]]), TWO)


def test_orient_triangle():
    arcs = euler_orient(matrix_to_graph(TRI))
    assert len(arcs) == 3
    assert in_out(arcs, 3) == ([1, 1, 1], [1, 1, 1])
    assert Counter(tuple(sorted(a)) for a in arcs) == Counter([(0, 1), (0, 2), (1, 2)])


def test_orient_loops_only():
    G = LoopMultigraph(1, convention=TWO)
    G.loops[0] = 3
    assert euler_orient(G) == [(0, 0)] * 3


def test_orient_two_triangles():
    G = LoopMultigraph(6, convention=TWO)
    for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
        G.add_edge(a, b)
    arcs = euler_orient(G)
    assert in_out(arcs, 6) == ([1] * 6, [1] * 6)
    assert Counter(tuple(sorted(a)) for a in arcs) == G.edge_multiset()


def test_orient_rejects_odd_degree():
    G = LoopMultigraph(2, convention=TWO)
    G.add_edge(0, 1)
    with pytest.raises(ValueError):
        euler_orient(G)


def factors_partition(G, factors):
    total = Counter()
    for F in factors:
        assert all(d == 2 for d in F.degrees())
        total += F.edge_multiset()
    return total == G.edge_multiset()


def test_two_regular_is_own_factor():
    G = matrix_to_graph(TRI, TWO)
    (F,) = petersen_two_factorize(G, 1)
    assert F.edge_multiset() == G.edge_multiset()


def test_triangle_with_loops():
    G = matrix_to_graph(SymIntMatrix.from_rows([[2, 1, 1], [1, 2, 1], [1, 1, 2]]), TWO)
    factors = petersen_two_factorize(G, 2)
    assert len(factors) == 2 and factors_partition(G, factors)


def test_doubled_four_cycles():
    G = LoopMultigraph(8, convention=TWO)
    for base in (0, 4):
        for k in range(4):
            G.add_edge(base + k, base + (k + 1) % 4, 2)
    factors = petersen_two_factorize(G, 2)
    # parallel edges may pair up into digons, so only the partition is checked
    assert len(factors) == 2 and factors_partition(G, factors)


@pytest.mark.parametrize("rows", [
    [[2, 1, 1], [1, 2, 1], [1, 1, 2]],
    [[4, 0, 0], [0, 0, 4], [0, 4, 0]],
    [[1, 1, 2], [1, 1, 2], [2, 2, 0]],
])
def test_decompose_examples(rows):
    X = SymIntMatrix.from_rows(rows)
    dec = decompose(X)
    assert dec.m == 2 and dec.verify()
    pts = set(enumerate_points(3, 1, S).points)
    assert all(Y in pts for Y in dec.summands)


def test_decompose_all_of_2s3():
    for X in enumerate_points(3, 2, S):
        assert decompose(X, 2).verify()


def test_decompose_sample_3s4():
    pts = enumerate_points(4, 3, S).points
    for X in random.Random(5).sample(pts, 100):
        assert decompose(X, 3).verify()


@pytest.mark.parametrize("n,m", [(2, 3), (3, 3), (4, 2), (5, 2)])
def test_decompose_exhaustive_small(n, m):
    for X in enumerate_points(n, m, S):
        dec = decompose(X, m)
        assert dec.verify()


def test_decompose_rejects_wrong_dilate():
    with pytest.raises(ValueError):
        decompose(D2, 2)
    with pytest.raises(ValueError):
        decompose(SymIntMatrix.from_rows([[1, 0], [0, 1]]))


@st.composite
def dilate_points(draw):
    n = draw(st.integers(2, 6))
    m = draw(st.integers(1, 4))
    # sum of m random lattice points of S_n built from random involutions and 2-factors
    total = SymIntMatrix(n, (0,) * (n * (n + 1) // 2))
    for _ in range(m):
        perm = draw(st.permutations(range(n)))
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][perm[i]] += 1
            rows[perm[i]][i] += 1
        total = total + SymIntMatrix.from_rows(rows)
    return total, m


@given(dilate_points())
@settings(max_examples=150, deadline=None)
def test_decompose_property(case):
    X, m = case
    dec = decompose(X, m)
    assert dec.verify()
    assert all(all(r == 2 for r in Y.row_sums()) for Y in dec.summands)
