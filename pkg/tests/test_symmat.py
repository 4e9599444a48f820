import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from symstoch.errors import CapacityError
from symstoch.symmat import (
    FULL,
    S,
    SIGMA,
    UPPER,
    PointList,
    SymIntMatrix,
    count_points,
    dumps_matrix,
    enumerate_points,
    is_lattice_point,
    loads_matrix,
    two_count,
    zero_count,
)


def brute_points(n, line):
    """Every symmetric nonnegative matrix with all row sums equal to `line`, by product search."""
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for vals in itertools.product(range(line + 1), repeat=len(cells)):
        rows = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, vals):
            rows[i][j] = rows[j][i] = v
        if all(sum(r) == line for r in rows):
            out.append(rows)
    return out


def test_s2_points_listed():
    pts = enumerate_points(2, 1, S)
    assert [X.rows() for X in pts] == [[[0, 2], [2, 0]], [[1, 1], [1, 1]], [[2, 0], [0, 2]]]


def test_small_counts():
    assert count_points(3, 1, S) == 11
    assert count_points(3, 2, S) == 42
    assert count_points(3, 3, S) == 106
    assert count_points(3, 1, SIGMA) == 4
    assert [count_points(3, m, SIGMA) for m in range(8)] == [1, 4, 11, 23, 42, 69, 106, 154]
    assert [count_points(4, m, S) for m in range(4)] == [1, 56, 641, 3616]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("family", [S, SIGMA])
def test_zero_dilate(n, family):
    assert count_points(n, 0, family) == 1
    assert len(enumerate_points(n, 0, family)) == 1


@pytest.mark.parametrize("n,line", [(2, 2), (2, 4), (3, 1), (3, 2), (3, 4), (4, 2)])
def test_enumeration_matches_brute_force(n, line):
    expected = sorted(brute_points(n, line))
    family, m = (SIGMA, line) if line % 2 else (S, line // 2)
    got = [X.rows() for X in enumerate_points(n, m, family)]
    assert got == expected
    assert count_points(n, m, family) == len(expected)


def test_sigma_three_are_involutions():
    pts = enumerate_points(3, 1, SIGMA)
    assert len(pts) == 4
    for X in pts:
        assert X.is_zero_one()


@given(st.integers(1, 5), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_s_is_twice_sigma(n, m):
    assert count_points(n, m, S) == count_points(n, 2 * m, SIGMA)


@given(st.integers(1, 4), st.integers(0, 3))
@settings(max_examples=25, deadline=None)
def test_enumeration_sorted_and_valid(n, m):
    pts = enumerate_points(n, m, S)
    assert list(pts.points) == sorted(pts.points)
    assert len(set(pts.points)) == len(pts)
    assert all(is_lattice_point(X, m, S) for X in pts)


def test_capacity_error():
    with pytest.raises(CapacityError):
        enumerate_points(4, 3, S, max_points=1000)


def test_two_and_zero_counts():
    d = SymIntMatrix.diagonal([2, 2, 2])
    tri = SymIntMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    ones = SymIntMatrix.from_rows([[1, 1], [1, 1]])
    assert (two_count(d), zero_count(d)) == (3, 6)
    assert (two_count(tri), zero_count(tri)) == (0, 3)
    assert (two_count(ones), zero_count(ones)) == (0, 0)
    assert (two_count(d, UPPER), zero_count(d, UPPER)) == (3, 3)
    assert zero_count(tri, FULL) == 3


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymIntMatrix.from_rows([[0, 1], [2, 0]])


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(0, 6), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda e: SymIntMatrix(n, tuple(e))))


@given(matrices)
def test_json_round_trip(X):
    assert SymIntMatrix.from_json(json.loads(json.dumps(X.to_json()))) == X
    assert loads_matrix(dumps_matrix(X)) == X


@given(matrices, matrices)
def test_add_sub(X, Y):
    if X.n != Y.n:
        return
    assert (X + Y) - Y == X
    assert X.dominated_by(X + Y)


def test_point_list_round_trip():
    pl = enumerate_points(3, 1, S)
    back = PointList.from_json(json.loads(json.dumps(pl.to_json())))
    assert back.points == pl.points
    assert pl.index(pl[5]) == 5
