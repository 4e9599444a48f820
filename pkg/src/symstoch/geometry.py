"""Facet descriptions, Gorenstein witnesses, the circulant special simplex,
interior counts, vertex identification and exact V-to-H conversion.

All polyhedral work happens in the C(n+1, 2) upper-triangular coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import _linalg
from .ehrhart import HStarVector, hstar_from_counts, interpolate, is_unimodal
from .errors import CapacityError, FalsificationError
from .symmat import (
    S,
    SIGMA,
    PointList,
    SymIntMatrix,
    count_symmetric,
    enumerate_points,
    matrix_sum,
    upper_index,
)

Row = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class HRep:
    """{x : a.x = b for (a, b) in eqs, a.x >= b for (a, b) in ineqs}."""

    eqs: tuple[Row, ...]
    ineqs: tuple[Row, ...]
    dim: int | None = None

    def contains(self, x: Sequence[int], m: int = 1) -> bool:
        for a, b in self.eqs:
            if _dot(a, x) != m * b:
                return False
        return all(_dot(a, x) >= m * b for a, b in self.ineqs)

    def tight(self, x: Sequence[int], m: int = 1) -> frozenset[int]:
        return frozenset(k for k, (a, b) in enumerate(self.ineqs) if _dot(a, x) == m * b)

    def to_json(self) -> dict:
        return {
            "eqs": [list(a) + [b] for a, b in self.eqs],
            "ineqs": [list(a) + [b] for a, b in self.ineqs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HRep":
        def rows(key):
            return tuple((tuple(r[:-1]), r[-1]) for r in obj[key])

        return cls(rows("eqs"), rows("ineqs"))


def _dot(a, x):
    return sum(p * q for p, q in zip(a, x))


def facet_hrep_S(n: int, m_sum: int = 2) -> HRep:
    """Row sums equal to m_sum and nonnegativity of each upper-triangular coordinate."""
    D = n * (n + 1) // 2
    eqs = []
    for i in range(n):
        a = [0] * D
        for j in range(n):
            a[upper_index(n, i, j)] += 1
        eqs.append((tuple(a), m_sum))
    ineqs = []
    for k in range(D):
        a = [0] * D
        a[k] = 1
        ineqs.append((tuple(a), 0))
    return HRep(tuple(eqs), tuple(ineqs), n * (n - 1) // 2)


def gorenstein_witness(n: int) -> tuple[int, SymIntMatrix] | None:
    """(r, c) with c a lattice point of r*S_n at lattice distance one from every facet, or None."""
    if n < 2:
        raise ValueError("need n >= 2")
    H = facet_hrep_S(n)
    D = n * (n + 1) // 2
    # l_i(c) = 1 for every facet functional; the facets are coordinate functionals so c is forced
    R, piv = _linalg.rref([list(a) + [1] for a, _ in H.ineqs])
    if len(piv) != D:
        raise FalsificationError("facet functionals do not determine a unique point")
    c = [int(R[piv.index(k)][-1]) for k in range(D)]
    C = SymIntMatrix(n, tuple(c))
    sums = set(C.row_sums())
    if len(sums) != 1:
        return None
    (line,) = sums
    if line % 2:
        return None
    return line // 2, C


def circulant(n: int, a: Sequence[int]) -> SymIntMatrix:
    """Matrix with entry (r, c) = a[(c - r) mod n]; symmetric when a[i] = a[n - i]."""
    rows = [[a[(c - r) % n] for c in range(n)] for r in range(n)]
    return SymIntMatrix.from_rows(rows)


@dataclass(frozen=True)
class SpecialSimplex:
    n: int
    vertices: tuple[SymIntMatrix, ...]

    def check(self) -> list[str]:
        """Return the list of violated invariants (empty when all hold)."""
        bad = []
        n = self.n
        for k, V in enumerate(self.vertices):
            if any(r != 2 for r in V.row_sums()):
                bad.append(f"vertex {k} not a lattice point of S_{n}")
        for (i, A), (j, B) in combinations(enumerate(self.vertices), 2):
            if any(x and y for x, y in zip(A.entries, B.entries)):
                bad.append(f"vertices {i} and {j} share support")
        if matrix_sum(self.vertices, n) != SymIntMatrix.ones(n):
            bad.append("vertices do not sum to the all-ones matrix")
        diffs = [[x - y for x, y in zip(V.entries, self.vertices[0].entries)] for V in self.vertices[1:]]
        k = len(self.vertices)
        if (_linalg.rank(diffs) if diffs else 0) != k - 1:
            bad.append(f"vertices not affinely independent (expected dimension {k - 1})")
        H = facet_hrep_S(n)
        total = matrix_sum(self.vertices, n)
        if any(_dot(a, total.entries) != 1 for a, _ in H.ineqs):
            bad.append("vertex sum not at lattice distance one from every facet")
        return bad


def special_simplex(n: int) -> SpecialSimplex:
    """The k = n/2 circulant lattice points of S_n with disjoint supports summing to all-ones."""
    if n < 2 or n % 2:
        raise ValueError(f"special simplex needs even n >= 2, got {n}")
    k = n // 2
    verts = []
    for i in range(1, k):
        a = [0] * n
        a[i] = a[n - i] = 1
        verts.append(circulant(n, a))
    a = [0] * n
    a[0] = 1
    a[k] += 1
    verts.append(circulant(n, a))
    simplex = SpecialSimplex(n, tuple(verts))
    bad = simplex.check()
    if bad:
        raise FalsificationError("; ".join(bad))
    return simplex


def involution_count(n: int) -> int:
    a, b = 1, 1  # I(0), I(1)
    if n == 0:
        return 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b


def interior_count(n: int, m: int) -> int:
    """Lattice points of m*S_n with every entry >= 1 (all facet inequalities strict)."""
    if n < 2:
        raise ValueError("need n >= 2")
    # subtracting the all-ones matrix leaves a nonnegative symmetric matrix with row sums 2m - n
    return count_symmetric(n, 2 * m - n)


def interior_points(n: int, m: int) -> list[SymIntMatrix]:
    return [X for X in enumerate_points(n, m, S) if all(e >= 1 for e in X.entries)]


def is_vertex_by_rank(X: SymIntMatrix, hrep: HRep | None = None) -> bool:
    """Vertex iff the equalities and tight facets at X have full ambient rank."""
    n = X.n
    if hrep is None:
        hrep = facet_hrep_S(n, sum(X.row_sums()) // n)
    active = [a for a, _ in hrep.eqs] + [hrep.ineqs[k][0] for k in sorted(hrep.tight(X.entries))]
    return _linalg.rank(active) == len(X.entries)


def convex_combination(target: SymIntMatrix, points: Sequence[SymIntMatrix]) -> list[Fraction] | None:
    """Weights lambda >= 0, sum 1, with sum lambda_i points_i = target; exact LP."""
    if not points:
        return None
    D = len(target.entries)
    A = [[P.entries[k] for P in points] for k in range(D)] + [[1] * len(points)]
    b = list(target.entries) + [1]
    return _linalg.solve_feasible(A, b)


@dataclass(frozen=True)
class VertexData:
    points: PointList
    vertices: PointList
    certificates: dict = field(default_factory=dict)  # non-vertex -> weights over vertices

    def to_json(self) -> dict:
        cert = []
        for X, lam in sorted(self.certificates.items()):
            cert.append({
                "point": X.to_json(),
                "weights": [str(w) for w in lam],
            })
        return {
            "n": self.points.n,
            "vertices": [V.to_json() for V in self.vertices],
            "certificates": cert,
        }


def vertices(n: int) -> VertexData:
    """Vertices among the lattice points of S_n, decided by exact LP."""
    if n > 4:
        raise CapacityError(f"vertex identification is limited to n <= 4, got {n}")
    pts = enumerate_points(n, 1, S)
    verts = []
    for k, X in enumerate(pts):
        others = pts.points[:k] + pts.points[k + 1:]
        if convex_combination(X, others) is None:
            verts.append(X)
    vlist = PointList(n, S, 1, tuple(verts))
    certs = {}
    for X in pts:
        if X in verts:
            continue
        lam = convex_combination(X, verts)
        if lam is None:
            raise FalsificationError(f"{X} not in the hull of the computed vertices")
        certs[X] = tuple(lam)
    return VertexData(pts, vlist, certs)


def affine_hull(vectors: Sequence[Sequence[int]]) -> tuple[list[Row], int, list[int]]:
    """Equations of the affine hull, its dimension, and coordinates that parametrize it."""
    D = len(vectors[0])
    rows = [list(v) + [-1] for v in vectors]
    eqs = []
    ns = _linalg.nullspace(rows, D + 1)
    if ns:
        R, _ = _linalg.rref(ns)
        for r in R:
            p = _linalg.primitive(r)
            eqs.append((tuple(p[:D]), p[D]))
    diffs = [[x - y for x, y in zip(v, vectors[0])] for v in vectors[1:]]
    if diffs:
        _, piv = _linalg.rref(diffs)
    else:
        piv = []
    return eqs, len(piv), piv


def _cone_rays(H: list[list[int]]) -> list[tuple[list[int], frozenset[int]]]:
    """Extreme rays of the pointed cone {y : H y >= 0} by the double description method.

    H must have full column rank. Rows are added in the given order.
    """
    D = len(H[0])
    basis_rows: list[int] = []
    for k in range(len(H)):
        if _linalg.rank([H[i] for i in basis_rows + [k]]) == len(basis_rows) + 1:
            basis_rows.append(k)
            if len(basis_rows) == D:
                break
    if len(basis_rows) < D:
        raise ValueError("constraint matrix does not have full column rank")
    B = [H[i] for i in basis_rows]
    # columns of B^{-1}
    aug = [list(B[i]) + [1 if j == i else 0 for j in range(D)] for i in range(D)]
    R, _ = _linalg.rref(aug)
    inv_cols = [[R[i][D + j] for i in range(D)] for j in range(D)]
    rays = []
    for j, col in enumerate(inv_cols):
        z = frozenset(basis_rows[i] for i in range(D) if i != j)
        rays.append((_linalg.primitive(col), z))
    for k in range(len(H)):
        if k in basis_rows:
            continue
        a = H[k]
        vals = [_dot(a, r) for r, _ in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new = [rays[i] for i in plus] + [(rays[i][0], rays[i][1] | {k}) for i in zero]
        for p in plus:
            for q in minus:
                common = rays[p][1] & rays[q][1]
                if len(common) < D - 2:
                    continue
                if any(t != p and t != q and common <= rays[t][1] for t in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                vec = [vp * y - vq * x for x, y in zip(rays[p][0], rays[q][0])]
                new.append((_linalg.primitive(vec), common | {k}))
        rays = new
    return rays


def v_to_h(points: Sequence[SymIntMatrix], max_points: int = 16) -> HRep:
    """Exact H-representation of the convex hull of the given matrices, in
    upper-triangular coordinates.

    Inequalities live on the affine hull: each is written using only the
    coordinates chosen to parametrize it, with a primitive integer functional.
    """
    if len(points) > max_points:
        raise CapacityError(f"{len(points)} points exceeds limit {max_points}")
    vecs = sorted({tuple(P.entries) for P in points})
    eqs, dim, coords = affine_hull(vecs)
    if dim == 0:
        return HRep(tuple(eqs), (), 0)
    H = [[1] + [v[c] for c in coords] for v in vecs]
    rays = _cone_rays(H)
    D = len(vecs[0])
    ineqs = set()
    for y, _ in rays:
        lin = y[1:]
        g = 0
        for x in lin:
            g = gcd(g, x)
        a = [0] * D
        for c, x in zip(coords, lin):
            a[c] = x // g
        if y[0] % g:
            raise ArithmeticError("facet offset not integral")
        ineqs.add((tuple(a), -y[0] // g))
    return HRep(tuple(eqs), tuple(sorted(ineqs)), dim)


def lattice_points_of_dilate(hrep: HRep, m: int, n: int, family: str = SIGMA) -> PointList:
    """Lattice points of m*P, where P is given by hrep and contained in the family's polytope."""
    cands = enumerate_points(n, m, family)
    pts = tuple(X for X in cands if hrep.contains(X.entries, m))
    return PointList(n, family, m, pts)


def lattice_points_sigma(n: int) -> PointList:
    return enumerate_points(n, 1, SIGMA)


@dataclass(frozen=True)
class PolytopeHStar:
    hstar: HStarVector
    counts: tuple[int, ...]
    unimodal: bool
    hrep: HRep

    def to_json(self) -> dict:
        out = self.hstar.to_json()
        out["counts"] = list(self.counts)
        out["unimodal"] = self.unimodal
        out["facets"] = len(self.hrep.ineqs)
        return out


def hstar_P(n: int) -> PolytopeHStar:
    """h*-vector of P_n, the convex hull of the symmetric permutation matrices."""
    if n > 4:
        raise CapacityError(f"P_n computations are limited to n <= 4, got {n}")
    pts = lattice_points_sigma(n)
    hrep = v_to_h(pts.points)
    d = hrep.dim
    counts = tuple(len(lattice_points_of_dilate(hrep, m, n)) for m in range(d + 2))
    if counts[1] != len(pts):
        raise FalsificationError("first dilate of P_n misses lattice points of Sigma_n")
    interpolate(counts, d)  # raises if the guard count disagrees
    h = hstar_from_counts(counts, d)
    return PolytopeHStar(h, counts, is_unimodal(h.coefficients), hrep)
