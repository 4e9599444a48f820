"""Exact rational / integer linear algebra on plain Python lists."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {x : A x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive(vec: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Lattice basis of {x in Z^ncols : A x = 0}.

    Column-reduces A with unimodular operations tracked in U; the columns of U
    that end up as zero columns of A U span the integer kernel.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    cols = [[A[i][j] for i in range(m)] for j in range(ncols)]
    U = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]  # U[j] = column j
    lead = 0
    for i in range(m):
        # gcd-reduce row i over columns lead..ncols-1
        while True:
            nz = [j for j in range(lead, ncols) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda j: (abs(cols[j][i]), j))
            for j in nz:
                if j == p:
                    continue
                q = cols[j][i] // cols[p][i]
                if q:
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[p])]
                    U[j] = [a - q * b for a, b in zip(U[j], U[p])]
        nz = [j for j in range(lead, ncols) if cols[j][i] != 0]
        if nz:
            p = nz[0]
            cols[lead], cols[p] = cols[p], cols[lead]
            U[lead], U[p] = U[p], U[lead]
            lead += 1
    return [U[j] for j in range(lead, ncols)]


def solve_feasible(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A point x >= 0 with A x = b, or None if infeasible.

    Phase I of the simplex method on exact rationals, Bland's rule.
    """
    m = len(A)
    if m == 0:
        return [Fraction(0)] * 0
    n = len(A[0])
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        T.append(row + art + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials, expressed in reduced costs
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for k in range(width + 1):
            cost[k] -= T[i][k]
    for k in range(n, width):
        cost[k] += 1
    while True:
        enter = next((k for k in range(width) if cost[k] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("phase I objective unbounded; cannot happen")
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        f = cost[enter]
        cost = [a - f * c for a, c in zip(cost, T[r])]
        basis[r] = enter
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, v in enumerate(basis):
        if v < n:
            x[v] = T[i][-1]
    return x
