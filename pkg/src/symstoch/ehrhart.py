"""Ehrhart counts, (quasi)polynomial interpolation and h*-vectors for S_n and Sigma_n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import FalsificationError
from .symmat import S, SIGMA, count_points


class Polynomial:
    """Univariate polynomial with exact rational coefficients (lowest degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        k = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (k - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (k - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "Polynomial":
        return Polynomial([-x for x in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial([x * Fraction(other) for x in self.coeffs])
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def compose_scale(self, k) -> "Polynomial":
        """p(k x)."""
        return Polynomial([c * Fraction(k) ** i for i, c in enumerate(self.coeffs)])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*m^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(terms) + ")"


def interpolate_points(xs: Sequence, ys: Sequence) -> Polynomial:
    """Newton divided differences through (xs[i], ys[i])."""
    xs = [Fraction(x) for x in xs]
    dd = [Fraction(y) for y in ys]
    k = len(xs)
    coef = [dd[0]]
    for level in range(1, k):
        dd = [(dd[i + 1] - dd[i]) / (xs[i + level] - xs[i]) for i in range(k - level)]
        coef.append(dd[0])
    poly = Polynomial([])
    basis = Polynomial([1])
    for c, x in zip(coef, xs):
        poly = poly + basis * c
        basis = basis * Polynomial([-x, 1])
    return poly


def forward_differences(counts: Sequence[int]) -> list[int]:
    """Leading forward differences: counts(m) = sum_k diffs[k] * C(m, k)."""
    d = list(counts)
    out = []
    while d:
        out.append(d[0])
        d = [d[i + 1] - d[i] for i in range(len(d) - 1)]
    return out


def interpolate(counts: Sequence[int], d: int) -> Polynomial:
    """Unique polynomial of degree <= d through (m, counts[m]), m = 0..len-1.

    Exactly d+1 counts determine it; any further counts are verification data
    and a mismatch raises ValueError.
    """
    if len(counts) < d + 1:
        raise ValueError(f"need {d + 1} counts for degree {d}, got {len(counts)}")
    diffs = forward_differences(counts[: d + 1])
    poly = Polynomial([])
    basis = Polynomial([1])
    for k, c in enumerate(diffs):
        poly = poly + basis * c
        basis = basis * Polynomial([Fraction(-k, k + 1), Fraction(1, k + 1)])
    for m in range(d + 1, len(counts)):
        if poly(m) != counts[m]:
            raise ValueError(f"counts inconsistent with degree {d}: p({m}) = {poly(m)} != {counts[m]}")
    return poly


def is_unimodal(seq: Sequence[int]) -> bool:
    """True iff seq weakly increases to some peak and weakly decreases after it."""
    k = 0
    while k + 1 < len(seq) and seq[k] <= seq[k + 1]:
        k += 1
    while k + 1 < len(seq) and seq[k] >= seq[k + 1]:
        k += 1
    return k >= len(seq) - 1


@dataclass(frozen=True)
class HStarVector:
    coefficients: tuple[int, ...]
    dimension: int
    den: int = 1

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def even_part(self) -> tuple[int, ...]:
        return self.coefficients[::2]

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def to_json(self) -> dict:
        return {
            "d": self.dimension,
            "degree": self.degree,
            "den": self.den,
            "hstar": list(self.coefficients),
            "palindromic": self.palindromic,
        }


@dataclass(frozen=True)
class EhrhartData:
    dimension: int
    counts: tuple[int, ...]
    polynomial: Polynomial | None = None
    constituents: tuple[Polynomial, Polynomial] | None = None

    def normalized_volume(self) -> Fraction:
        return factorial(self.dimension) * self.polynomial.leading()

    def csv(self) -> str:
        return "m,count\n" + "".join(f"{m},{c}\n" for m, c in enumerate(self.counts))


def numerator_coefficients(counts: Sequence[int], d: int, den: int = 1, upto: int | None = None) -> list[int]:
    """Coefficients of E(t) * (1 - t^den)^(d+1), indices 0..upto.

    Finite alternating sum; needs counts[0..upto].
    """
    if upto is None:
        upto = len(counts) - 1
    if upto >= len(counts):
        raise ValueError(f"need counts up to {upto}, got {len(counts)}")
    out = []
    for j in range(upto + 1):
        s = 0
        for i in range(d + 2):
            if j - den * i < 0:
                break
            s += (-1) ** i * comb(d + 1, i) * counts[j - den * i]
        out.append(s)
    return out


def _as_hstar(coeffs: list[int], d: int, den: int) -> HStarVector:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if c[0] != 1:
        raise FalsificationError(f"h*_0 = {c[0]} != 1")
    neg = [j for j, x in enumerate(c) if x < 0]
    if neg:
        raise FalsificationError(f"negative h* coefficients at {neg}: {c}")
    return HStarVector(tuple(c), d, den)


def hstar_from_counts(counts: Sequence[int], d: int) -> HStarVector:
    """h*-vector of a lattice polytope of dimension d from counts L(0..d)."""
    return _as_hstar(numerator_coefficients(counts, d, 1, d), d, 1)


def dim_S(n: int) -> int:
    return comb(n, 2)


def expected_hstar_degree_S(n: int) -> int:
    if n % 2 == 0:
        k = n // 2
        return 2 * k * k - 2 * k + 1
    k = (n - 1) // 2
    return 2 * k * k


def ehrhart_S(n: int, extra: int = 1) -> EhrhartData:
    d = dim_S(n)
    counts = tuple(count_points(n, m, S) for m in range(d + 1 + extra))
    return EhrhartData(d, counts, interpolate(counts, d))


def hstar_S(n: int) -> HStarVector:
    """h*-vector of S_n, with its degree checked against the known closed form."""
    if n < 2:
        raise ValueError("need n >= 2")
    d = dim_S(n)
    deg = expected_hstar_degree_S(n)
    top = max(d, deg + 1)
    counts = [count_points(n, m, S) for m in range(top + 1)]
    coeffs = numerator_coefficients(counts, d, 1, top)
    tail = [(j, c) for j, c in enumerate(coeffs) if j > deg and c != 0]
    if tail:
        raise FalsificationError(f"h*(S_{n}) has nonzero coefficients beyond degree {deg}: {tail}")
    if coeffs[deg] == 0:
        raise FalsificationError(f"h*(S_{n}) has degree < {deg}: {coeffs}")
    return _as_hstar(coeffs, d, 1)


def hstar_sigma(n: int, guards: int = 2) -> HStarVector:
    """h*-vector of Sigma_n written over (1 - t^2)^(d+1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    d = dim_S(n)
    top = 2 * (d + 1) - 1 + guards
    counts = [count_points(n, m, SIGMA) for m in range(top + 1)]
    coeffs = numerator_coefficients(counts, d, 2, top)
    if any(coeffs[2 * (d + 1):]):
        raise FalsificationError(f"h*(Sigma_{n}) numerator not proper: {coeffs}")
    h = _as_hstar(coeffs, d, 2)
    hs = hstar_S(n)
    if h.even_part() != hs.coefficients:
        raise FalsificationError(
            f"even-indexed entries of h*(Sigma_{n}) {h.even_part()} != h*(S_{n}) {hs.coefficients}"
        )
    if not h.palindromic:
        raise FalsificationError(f"h*(Sigma_{n}) not symmetric: {h.coefficients}")
    want = 2 * hs.degree + (n % 2)
    if h.degree != want:
        raise FalsificationError(f"deg h*(Sigma_{n}) = {h.degree}, expected {want}")
    return h


def expected_quasi_degrees(n: int) -> tuple[int, int]:
    g = comb(n - 1, 2) - 1 if n % 2 else comb(n - 2, 2) - 1
    return comb(n, 2), g


@dataclass(frozen=True)
class QuasiPolynomial:
    """L(t) = f(t) + (-1)^t g(t)."""

    f: Polynomial
    g: Polynomial

    def __call__(self, t: int) -> Fraction:
        return self.f(t) + (-1) ** (t % 2) * self.g(t)

    def constituents(self) -> tuple[Polynomial, Polynomial]:
        return self.f + self.g, self.f - self.g


def quasipoly_sigma(n: int, check_degrees: bool | None = None) -> QuasiPolynomial:
    """Period-two Ehrhart quasipolynomial of Sigma_n from its even and odd constituents.

    Degree checks against the known formulas are skipped at n = 2, where the
    two constituents coincide and g vanishes.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    d = dim_S(n)
    npts = d + 2  # d+1 to interpolate, one guard per parity
    counts = [count_points(n, m, SIGMA) for m in range(2 * npts)]
    even = interpolate_points([2 * j for j in range(d + 1)], [counts[2 * j] for j in range(d + 1)])
    odd = interpolate_points([2 * j + 1 for j in range(d + 1)], [counts[2 * j + 1] for j in range(d + 1)])
    for t, c in enumerate(counts):
        p = even if t % 2 == 0 else odd
        if p(t) != c:
            raise FalsificationError(f"Sigma_{n} constituent of degree {d} misses L({t}) = {c}")
    half = Fraction(1, 2)
    q = QuasiPolynomial((even + odd) * half, (even - odd) * half)
    if check_degrees is None:
        check_degrees = n > 2
    if check_degrees:
        df, dg = expected_quasi_degrees(n)
        if q.f.degree != df or q.g.degree != dg:
            raise FalsificationError(f"deg f = {q.f.degree}, deg g = {q.g.degree}; expected {df}, {dg}")
    for t in range(npts):
        if q.f(2 * t) + q.g(2 * t) != count_points(n, t, S):
            raise FalsificationError(f"L_S{n}({t}) != f({2 * t}) + g({2 * t})")
    return q


@dataclass(frozen=True)
class ReciprocityReport:
    n: int
    first_interior_dilate: int
    signed_value: int
    interior_count: int
    vanishing: dict
    ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "first_interior_dilate": self.first_interior_dilate,
            "signed_value": self.signed_value,
            "interior_count": self.interior_count,
            "vanishing": {str(k): v for k, v in self.vanishing.items()},
            "ok": self.ok,
        }


def reciprocity_check(n: int) -> ReciprocityReport:
    """Compare (-1)^d L(-m) with a direct interior count at m = (n+1)/2 for odd n."""
    from .geometry import interior_count

    if n % 2 == 0 or n < 3:
        raise ValueError("reciprocity check is for odd n >= 3")
    data = ehrhart_S(n)
    d = data.dimension
    L = data.polynomial
    m0 = (n + 1) // 2
    signed = (-1) ** d * L(-m0)
    vanishing = {m: L(-m) for m in range(1, m0)}
    direct = interior_count(n, m0)
    ok = signed == direct and all(v == 0 for v in vanishing.values())
    return ReciprocityReport(n, m0, int(signed), direct, {m: int(v) for m, v in vanishing.items()}, ok)
