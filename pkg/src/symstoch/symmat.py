"""Symmetric nonnegative integer matrices and the lattice points of dilates of
S_n (row sums 2m) and Sigma_n (row sums m).

Lattice points are stored by their upper-triangular entries; the canonical
order on points is lexicographic on the full row-major entry sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError

S = "S"
SIGMA = "Sigma"
FAMILIES = (S, SIGMA)

DEFAULT_MAX_POINTS = 10**7

FULL = "full"
UPPER = "upper"


def upper_index(n: int, i: int, j: int) -> int:
    """Position of entry (i, j), 0-based with i <= j, in the upper-triangular storage."""
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i)


def upper_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


@dataclass(frozen=True)
class SymIntMatrix:
    n: int
    entries: tuple[int, ...]
    _full: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"matrix side must be positive, got {self.n}")
        if len(self.entries) != self.n * (self.n + 1) // 2:
            raise ValueError(
                f"expected {self.n * (self.n + 1) // 2} upper-triangular entries, got {len(self.entries)}"
            )
        if any(e < 0 for e in self.entries):
            raise ValueError(f"negative entry in {self.entries}")
        n = self.n
        full = tuple(self.entries[upper_index(n, i, j)] for i in range(n) for j in range(n))
        object.__setattr__(self, "_full", full)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SymIntMatrix":
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        return cls(n, tuple(int(rows[i][j]) for i, j in upper_pairs(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "SymIntMatrix":
        n = len(values)
        return cls(n, tuple(values[i] if i == j else 0 for i, j in upper_pairs(n)))

    @classmethod
    def ones(cls, n: int) -> "SymIntMatrix":
        return cls(n, (1,) * (n * (n + 1) // 2))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[upper_index(self.n, i, j)]

    entry = __getitem__

    @property
    def full(self) -> tuple[int, ...]:
        """Row-major n*n entry sequence; also the canonical sort key."""
        return self._full

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self._full[i * n:(i + 1) * n]) for i in range(n)]

    def row_sums(self) -> tuple[int, ...]:
        n = self.n
        return tuple(sum(self._full[i * n:(i + 1) * n]) for i in range(n))

    def __lt__(self, other: "SymIntMatrix") -> bool:
        return (self.n, self._full) < (other.n, other._full)

    def __le__(self, other: "SymIntMatrix") -> bool:
        return (self.n, self._full) <= (other.n, other._full)

    def __add__(self, other: "SymIntMatrix") -> "SymIntMatrix":
        _same_side(self, other)
        return SymIntMatrix(self.n, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "SymIntMatrix") -> "SymIntMatrix":
        _same_side(self, other)
        return SymIntMatrix(self.n, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, k: int) -> "SymIntMatrix":
        return SymIntMatrix(self.n, tuple(k * a for a in self.entries))

    def dominated_by(self, other: "SymIntMatrix") -> bool:
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def is_zero_one(self) -> bool:
        return all(e in (0, 1) for e in self.entries)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": self.rows()}

    @classmethod
    def from_json(cls, obj: dict) -> "SymIntMatrix":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ValueError("matrix JSON must be an object with a 'rows' field")
        rows = obj["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("'rows' must be a list of lists")
        if any(not isinstance(v, int) or isinstance(v, bool) for r in rows for v in r):
            raise ValueError("matrix entries must be integers")
        if "n" in obj and obj["n"] != len(rows):
            raise ValueError(f"declared n={obj['n']} but {len(rows)} rows given")
        return cls.from_rows(rows)

    def __str__(self) -> str:
        return "[" + ", ".join(str(r) for r in self.rows()) + "]"


def _same_side(a: SymIntMatrix, b: SymIntMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"side mismatch: {a.n} vs {b.n}")


def row_sum_target(family: str, m: int) -> int:
    if family == S:
        return 2 * m
    if family == SIGMA:
        return m
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def is_lattice_point(X: SymIntMatrix, m: int, family: str = S) -> bool:
    t = row_sum_target(family, m)
    return all(r == t for r in X.row_sums())


@dataclass(frozen=True)
class PointList:
    n: int
    family: str
    dilate: int
    points: tuple[SymIntMatrix, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[SymIntMatrix]:
        return iter(self.points)

    def __getitem__(self, k: int) -> SymIntMatrix:
        return self.points[k]

    def index(self, X: SymIntMatrix) -> int:
        return self.points.index(X)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.dilate,
            "n": self.n,
            "points": [p.to_json() for p in self.points],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PointList":
        pts = tuple(sorted(SymIntMatrix.from_json(p) for p in obj["points"]))
        return cls(obj["n"], obj["family"], obj["m"], pts)


def _fill_rows(n: int, residual: list[int], row: int, cells: list[int]) -> Iterator[tuple[int, ...]]:
    # cells holds the upper-triangular entries of rows < row
    if row == n:
        yield tuple(cells)
        return
    r = residual[row]
    width = n - row - 1

    def offdiag(j: int, left: int, chosen: list[int]):
        if j == n:
            # diagonal absorbs whatever is left of this row
            saved = residual[row]
            residual[row] = 0
            for c, col in zip(chosen, range(row + 1, n)):
                residual[col] -= c
            cells.append(left)
            cells.extend(chosen)
            yield from _fill_rows(n, residual, row + 1, cells)
            del cells[len(cells) - width - 1:]
            for c, col in zip(chosen, range(row + 1, n)):
                residual[col] += c
            residual[row] = saved
            return
        for v in range(min(left, residual[j]) + 1):
            chosen.append(v)
            yield from offdiag(j + 1, left - v, chosen)
            chosen.pop()

    yield from offdiag(row + 1, r, [])


def enumerate_points(n: int, m: int, family: str = S, max_points: int = DEFAULT_MAX_POINTS) -> PointList:
    """All symmetric nonnegative integer n x n matrices with constant row sum
    (2m for S, m for Sigma), in canonical order."""
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    total = count_points(n, m, family)
    if total > max_points:
        raise CapacityError(f"{total} points in dilate {m} of {family}_{n} exceeds limit {max_points}")
    t = row_sum_target(family, m)
    pts = [SymIntMatrix(n, cells) for cells in _fill_rows(n, [t] * n, 0, [])]
    pts.sort()
    return PointList(n, family, m, tuple(pts))


@lru_cache(maxsize=None)
def _count_sym(residual: tuple[int, ...]) -> int:
    # residual is sorted; the first row is completed against the remaining columns
    if not residual:
        return 1
    r, rest = residual[0], residual[1:]
    total = 0

    def spread(j: int, left: int, new: list[int]):
        nonlocal total
        if j == len(rest):
            total += _count_sym(tuple(sorted(new)))
            return
        for v in range(min(left, rest[j]) + 1):
            new.append(rest[j] - v)
            spread(j + 1, left - v, new)
            new.pop()

    spread(0, r, [])
    return total


def count_symmetric(n: int, row_sum: int) -> int:
    """Number of symmetric nonnegative integer n x n matrices with every row sum equal to row_sum."""
    if row_sum < 0:
        return 0
    return _count_sym((row_sum,) * n)


def count_points(n: int, m: int, family: str = S) -> int:
    """Lattice-point count of the m-th dilate, by dynamic programming over residual column sums."""
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    return count_symmetric(n, row_sum_target(family, m))


def two_count(M: SymIntMatrix, mode: str = FULL) -> int:
    return _value_count(M, 2, mode)


def zero_count(M: SymIntMatrix, mode: str = FULL) -> int:
    return _value_count(M, 0, mode)


def _value_count(M: SymIntMatrix, value: int, mode: str) -> int:
    if mode == FULL:
        return sum(1 for e in M.full if e == value)
    if mode == UPPER:
        return sum(1 for e in M.entries if e == value)
    raise ValueError(f"unknown count mode {mode!r}; expected {FULL!r} or {UPPER!r}")


def matrix_sum(mats: Iterable[SymIntMatrix], n: int) -> SymIntMatrix:
    acc = [0] * (n * (n + 1) // 2)
    for M in mats:
        if M.n != n:
            raise ValueError(f"side mismatch: {M.n} vs {n}")
        for k, e in enumerate(M.entries):
            acc[k] += e
    return SymIntMatrix(n, tuple(acc))


def dumps_matrix(M: SymIntMatrix) -> str:
    return json.dumps(M.to_json(), sort_keys=True)


def loads_matrix(text: str) -> SymIntMatrix:
    return SymIntMatrix.from_json(json.loads(text))
