from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from symstoch.ehrhart import (
    Polynomial,
    dim_S,
    ehrhart_S,
    hstar_S,
    hstar_sigma,
    interpolate,
    interpolate_points,
    is_unimodal,
    numerator_coefficients,
    quasipoly_sigma,
    reciprocity_check,
)
from symstoch.geometry import involution_count
from symstoch.symmat import S, count_points

# values produced by the DP counter and the alternating-sum oracle below
H_S4 = (1, 49, 270, 270, 49, 1)
H_S5 = (1, 337, 10978, 78904, 175840, 134969, 34533, 2412, 26)


def hstar_oracle(counts, d):
    """Multiply the Ehrhart series by (1 - t)^(d+1) as power series."""
    out = []
    for j in range(len(counts)):
        out.append(sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(min(j, d + 1) + 1)))
    return out


def test_interpolate_examples():
    assert interpolate([1, 3], 1) == Polynomial([1, 2])
    with pytest.raises(ValueError):
        interpolate([1, 3, 6], 1)
    p = interpolate([1, 11, 42, 106], 3)
    m = Polynomial([0, 1])
    c2 = m * (m - Polynomial([1])) * Fraction(1, 2)
    c3 = c2 * (m - Polynomial([2])) * Fraction(1, 3)
    assert p == Polynomial([1]) + m * 10 + c2 * 21 + c3 * 12
    assert interpolate([1, 1], 0) == Polynomial([1])


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_interpolation_recovers_polynomial(coeffs):
    p = Polynomial(coeffs)
    d = max(p.degree, 0)
    xs = list(range(d + 1))
    assert interpolate_points(xs, [p(x) for x in xs]) == p


@pytest.mark.parametrize("n,h", [(2, (1, 1)), (3, (1, 7, 4)), (4, H_S4), (5, H_S5)])
def test_hstar_S(n, h):
    got = hstar_S(n)
    assert got.coefficients == h
    counts = [count_points(n, m, S) for m in range(len(h) + 2)]
    oracle = hstar_oracle(counts, dim_S(n))
    assert tuple(oracle[:len(h)]) == h and all(x == 0 for x in oracle[len(h):])


def test_hstar_degrees():
    for n in range(2, 6):
        k, r = divmod(n, 2)
        want = 2 * k * k - 2 * k + 1 if r == 0 else 2 * k * k
        assert hstar_S(n).degree == want
        assert hstar_S(n).palindromic == (r == 0)


def test_s3_guard_coefficient():
    counts = [count_points(3, m, S) for m in range(4)]
    assert numerator_coefficients(counts, 3, 1, 3) == [1, 7, 4, 0]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_normalized_volume(n):
    data = ehrhart_S(n)
    d = dim_S(n)
    assert sum(hstar_S(n).coefficients) == data.polynomial.leading() * factorial(d) == data.normalized_volume()


def test_hstar_sigma():
    assert hstar_sigma(2).coefficients == (1, 2, 1)
    h3 = hstar_sigma(3)
    assert h3.coefficients == (1, 4, 7, 7, 4, 1)
    assert h3.even_part() == (1, 7, 4) and h3.palindromic and h3.degree == 5
    assert hstar_sigma(2).even_part() == (1, 1)


def test_hstar_sigma_four():
    h = hstar_sigma(4)
    assert h.even_part() == H_S4
    assert h.degree == 10


@pytest.mark.parametrize("n,dg", [(3, 0), (4, 0)])
def test_quasipolynomial_degrees(n, dg):
    q = quasipoly_sigma(n)
    assert q.f.degree == comb(n, 2) and q.g.degree == dg
    for t in range(12):
        assert q(t) == count_points(n, t, "Sigma")
    for t in range(6):
        assert q.f(2 * t) + q.g(2 * t) == count_points(n, t, S)


def test_quasipolynomial_n2():
    q = quasipoly_sigma(2)
    assert q.f == Polynomial([1, 1]) and q.g.is_zero()


def test_reciprocity():
    L = ehrhart_S(3).polynomial
    assert L(-1) == 0 and -L(-2) == 4
    for n, want in ((3, 4), (5, 26)):
        rep = reciprocity_check(n)
        assert rep.ok
        assert rep.signed_value == rep.interior_count == want == involution_count(n)


def test_unimodal():
    assert is_unimodal((1, 3, 3, 1))
    assert is_unimodal((1, 7, 4))
    assert is_unimodal(())
    assert is_unimodal((2, 2, 2))
    assert not is_unimodal((1, 3, 2, 3))
