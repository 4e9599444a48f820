"""Toric ideals of point configurations and their reduced Groebner bases.

Every polynomial that occurs is a difference of two monomials x^u - x^v, so
the engine works on exponent-vector pairs only. Bases are computed from a
lattice basis of the integer kernel, saturated one variable at a time, then
completed by Buchberger's algorithm under the requested graded reverse
lexicographic order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from . import _linalg
from .errors import CapacityError
from .symmat import FULL, S, SymIntMatrix, enumerate_points, two_count, zero_count

Mono = tuple[int, ...]

LITERAL = "LiteralDef32"
PROOF = "ProofConsistent"
REFINED = "Refined"
CUSTOM = "Custom"
CONVENTIONS = (LITERAL, PROOF, REFINED)

LEX = "lex"
ANTILEX = "antilex"


@dataclass(frozen=True)
class PointConfig:
    """Points in the order they were given; variables follow this order."""

    points: tuple[SymIntMatrix, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("configuration points must be distinct")
        if self.points and len({P.n for P in self.points}) != 1:
            raise ValueError("configuration mixes matrix sizes")

    def __len__(self) -> int:
        return len(self.points)

    def vectors(self) -> list[tuple[int, ...]]:
        """Upper-triangular coordinates with the homogenizing coordinate 1 appended."""
        return [tuple(P.entries) + (1,) for P in self.points]

    def canonical(self) -> "PointConfig":
        return PointConfig(tuple(sorted(self.points)))


def full_config(n: int) -> PointConfig:
    return PointConfig(enumerate_points(n, 1, S).points)


def vertex_config(n: int) -> PointConfig:
    from .geometry import vertices

    return PointConfig(vertices(n).vertices.points)


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse lexicographic order from a ranking of the points.

    rank[k] is the rank of canonical point k; higher rank = larger variable.
    """

    convention: str
    points: tuple[SymIntMatrix, ...]
    rank: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.rank) != list(range(1, len(self.points) + 1)):
            raise ValueError("ranking must be a bijection onto 1..s")

    def ascending(self) -> list[int]:
        """Canonical variable indices from lowest to highest rank."""
        return sorted(range(len(self.rank)), key=lambda k: self.rank[k])

    def key(self, u: Mono) -> tuple:
        asc = self.ascending()
        return (sum(u), tuple(-u[k] for k in asc))

    def key_for(self, points: Sequence[SymIntMatrix]) -> Callable[[Mono], tuple]:
        """Sort key for exponent vectors indexed by the given point order."""
        pos = {P: k for k, P in enumerate(self.points)}
        by_rank = sorted(range(len(points)), key=lambda i: self.rank[pos[points[i]]])

        def key(u: Mono) -> tuple:
            return (sum(u), tuple([-u[i] for i in by_rank]))

        return key

    def to_json(self) -> dict:
        return {"convention": self.convention, "ranking": self.ascending()}


def _variable_key(P: SymIntMatrix, convention: str, count_mode: str, tie_break: str):
    seq = P.full if tie_break == LEX else tuple(-x for x in P.full)
    twos = two_count(P, count_mode)
    if convention == LITERAL:
        return (-twos, seq)
    if convention == PROOF:
        return (twos, seq)
    if convention == REFINED:
        zeros = zero_count(P, count_mode) if twos == 0 else 0
        return (twos, zeros, seq)
    raise ValueError(f"unknown order convention {convention!r}")


def make_order(points: Iterable[SymIntMatrix], convention: str = PROOF,
               count_mode: str = FULL, tie_break: str = LEX) -> TermOrder:
    """Linear extension of the 'number of 2s' partial order, ties broken on the entry sequence."""
    if tie_break not in (LEX, ANTILEX):
        raise ValueError(f"unknown tie break {tie_break!r}")
    pts = tuple(sorted(points))
    order = sorted(range(len(pts)), key=lambda k: _variable_key(pts[k], convention, count_mode, tie_break))
    rank = [0] * len(pts)
    for r, k in enumerate(order, start=1):
        rank[k] = r
    return TermOrder(convention, pts, tuple(rank))


def custom_order(points: Iterable[SymIntMatrix], ascending: Sequence[int]) -> TermOrder:
    """Order in which canonical point ascending[0] is the smallest variable, and so on."""
    pts = tuple(sorted(points))
    rank = [0] * len(pts)
    for r, k in enumerate(ascending, start=1):
        rank[k] = r
    return TermOrder(CUSTOM, pts, tuple(rank))


def compare(u: Mono, v: Mono, order: TermOrder) -> int:
    """-1, 0 or 1 as u is smaller than, equal to, or larger than v."""
    ku, kv = order.key(u), order.key(v)
    return (ku > kv) - (ku < kv)


@dataclass(frozen=True)
class Binomial:
    """lead - trail, with lead the initial term."""

    lead: Mono
    trail: Mono

    @property
    def degree(self) -> int:
        return sum(self.lead)

    def monomials(self) -> tuple[Mono, Mono]:
        return self.lead, self.trail

    def to_json(self) -> dict:
        return {"lead": _sparse(self.lead), "trail": _sparse(self.trail)}


def _sparse(u: Mono) -> dict:
    return {str(k): e for k, e in enumerate(u) if e}


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Mono, b: Mono) -> bool:
    return not any(x and y for x, y in zip(a, b))


def is_squarefree(u: Mono) -> bool:
    return all(e <= 1 for e in u)


def is_free(u: Mono, power: int) -> bool:
    """No variable occurs to exponent >= power."""
    return all(e < power for e in u)


def image(u: Mono, config: PointConfig) -> tuple[int, ...]:
    """Exponent of pi(x^u): weighted sum of homogenized points."""
    vecs = config.vectors()
    out = [0] * len(vecs[0])
    for k, e in enumerate(u):
        if e:
            for c, x in enumerate(vecs[k]):
                out[c] += e * x
    return tuple(out)


def image_matrix(u: Mono, config: PointConfig) -> SymIntMatrix:
    img = image(u, config)
    return SymIntMatrix(config.points[0].n, img[:-1])


class _Engine:
    """Buchberger's algorithm on monomial differences for one term order."""

    def __init__(self, key: Callable[[Mono], tuple], max_basis: int, deadline: float | None):
        self.key = key
        self.max_basis = max_basis
        self.deadline = deadline
        self.G: list[tuple[Mono, Mono]] = []

    def nf(self, u: Mono) -> Mono:
        G = self.G
        changed = True
        while changed:
            changed = False
            for lead, trail in G:
                if _divides(lead, u):
                    u = tuple(a - l + t for a, l, t in zip(u, lead, trail))
                    changed = True
                    break
        return u

    def orient(self, u: Mono, v: Mono) -> tuple[Mono, Mono] | None:
        if u == v:
            return None
        return (u, v) if self.key(u) > self.key(v) else (v, u)

    def run(self, gens: Iterable[tuple[Mono, Mono]]) -> list[tuple[Mono, Mono]]:
        key = self.key
        pending: dict[tuple[int, int], tuple] = {}
        for u, v in gens:
            b = self.orient(u, v)
            if b is None:
                continue
            r = self.orient(self.nf(b[0]), self.nf(b[1]))
            if r is not None:
                self._add(r, pending)
        while pending:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise CapacityError(
                    f"time budget exhausted: basis size {len(self.G)}, {len(pending)} S-pairs queued"
                )
            ij = min(pending, key=lambda p: (pending[p], p))
            del pending[ij]
            i, j = ij
            (li, ti), (lj, tj) = self.G[i], self.G[j]
            L = _lcm(li, lj)
            if any(
                k != i and k != j
                and _divides(self.G[k][0], L)
                and (min(i, k), max(i, k)) not in pending
                and (min(j, k), max(j, k)) not in pending
                for k in range(len(self.G))
            ):
                continue
            a = tuple(x - l + t for x, l, t in zip(L, li, ti))
            b = tuple(x - l + t for x, l, t in zip(L, lj, tj))
            r = self.orient(self.nf(a), self.nf(b))
            if r is not None:
                self._add(r, pending)
        return self.reduce()

    def _add(self, b: tuple[Mono, Mono], pending: dict) -> None:
        if len(self.G) >= self.max_basis:
            raise CapacityError(f"basis size limit {self.max_basis} reached, {len(pending)} S-pairs queued")
        k = len(self.G)
        self.G.append(b)
        for i in range(k):
            li = self.G[i][0]
            if _coprime(li, b[0]):
                continue
            pending[(i, k)] = self.key(_lcm(li, b[0]))

    def reduce(self) -> list[tuple[Mono, Mono]]:
        key = self.key
        G = sorted(self.G, key=lambda g: key(g[0]))
        minimal: list[tuple[Mono, Mono]] = []
        for lead, trail in G:
            if not any(_divides(l, lead) for l, _ in minimal):
                minimal.append((lead, trail))
        self.G = minimal
        out = []
        for idx, (lead, trail) in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            saved, self.G = self.G, others
            t = self.nf(trail)
            self.G = saved
            out.append((lead, t))
        self.G = out
        return out


def _grevlex_last(s: int, var: int) -> Callable[[Mono], tuple]:
    order = [var] + [k for k in range(s) if k != var]

    def key(u: Mono) -> tuple:
        return (sum(u), tuple([-u[k] for k in order]))

    return key


def lattice_generators(config: PointConfig) -> list[tuple[Mono, Mono]]:
    vecs = config.vectors()
    s = len(vecs)
    rows = [[vecs[k][c] for k in range(s)] for c in range(len(vecs[0]))]
    gens = []
    for w in _linalg.integer_kernel(rows, s):
        gens.append((tuple(max(x, 0) for x in w), tuple(max(-x, 0) for x in w)))
    return gens


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Binomial, ...]
    order: TermOrder
    config: PointConfig  # canonical; variable k is config.points[k]
    reduced: bool = True

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leads(self) -> list[Mono]:
        return [g.lead for g in self.elements]

    def max_degree(self) -> int:
        return max((g.degree for g in self.elements), default=0)

    def to_json(self) -> dict:
        return {"order": self.order.to_json(), "elements": [g.to_json() for g in self.elements]}


def toric_groebner(config: PointConfig, order: TermOrder, max_basis: int = 20000,
                   time_budget: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the toric ideal of config under order.

    Variables of the result follow canonical point order regardless of the
    order the configuration was given in.
    """
    if len(config) == 0:
        raise ValueError("empty configuration")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    s = len(config)
    gens = lattice_generators(config)
    for var in range(s):
        if not any(u[var] or v[var] for u, v in gens):
            continue
        eng = _Engine(_grevlex_last(s, var), max_basis, deadline)
        sat = []
        for u, v in eng.run(gens):
            k = min(u[var], v[var])
            if k:
                u = u[:var] + (u[var] - k,) + u[var + 1:]
                v = v[:var] + (v[var] - k,) + v[var + 1:]
            sat.append((u, v))
        gens = sat
    eng = _Engine(order.key_for(config.points), max_basis, deadline)
    result = eng.run(gens)

    canon = config.canonical()
    pos = {P: k for k, P in enumerate(canon.points)}
    perm = [pos[P] for P in config.points]  # local index -> canonical index

    def relabel(u: Mono) -> Mono:
        out = [0] * s
        for i, e in enumerate(u):
            out[perm[i]] = e
        return tuple(out)

    elems = []
    for lead, trail in result:
        lead, trail = relabel(lead), relabel(trail)
        if not _coprime(lead, trail):
            raise ArithmeticError("reduced toric basis element with a common variable")
        elems.append(Binomial(lead, trail))
    elems.sort(key=lambda g: order.key(g.lead))
    return GroebnerBasis(tuple(elems), order, canon)


def normal_form(u: Mono, basis: GroebnerBasis) -> Mono:
    eng = _Engine(basis.order.key, 0, None)
    eng.G = [(g.lead, g.trail) for g in basis.elements]
    return eng.nf(tuple(u))


def in_kernel(g: Binomial, config: PointConfig) -> bool:
    return image(g.lead, config) == image(g.trail, config)


def s_pair_failures(basis: GroebnerBasis, pairs: Iterable[tuple[int, int]] | None = None) -> list[tuple[int, int]]:
    """Pairs whose S-polynomial does not reduce to zero (empty for a Groebner basis)."""
    G = basis.elements
    if pairs is None:
        pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    bad = []
    for i, j in pairs:
        L = _lcm(G[i].lead, G[j].lead)
        a = tuple(x - l + t for x, l, t in zip(L, G[i].lead, G[i].trail))
        b = tuple(x - l + t for x, l, t in zip(L, G[j].lead, G[j].trail))
        if normal_form(a, basis) != normal_form(b, basis):
            bad.append((i, j))
    return bad


def is_reduced(basis: GroebnerBasis) -> bool:
    leads = basis.leads()
    for i, g in enumerate(basis.elements):
        for j, l in enumerate(leads):
            if i != j and (_divides(l, g.lead) or _divides(l, g.trail)):
                return False
    return True


def standard_monomial_count(basis: GroebnerBasis, degree: int) -> int:
    s = len(basis.config)
    leads = basis.leads()
    count = 0
    for combo in combinations_with_replacement(range(s), degree):
        u = [0] * s
        for k in combo:
            u[k] += 1
        if not any(_divides(l, u) for l in leads):
            count += 1
    return count


def hilbert_check(basis: GroebnerBasis, m: int) -> tuple[bool, int, int]:
    """Compare the number of degree-m standard monomials with the lattice-point count of m*S_n."""
    from .symmat import count_points

    n = basis.config.points[0].n
    std = standard_monomial_count(basis, m)
    expected = count_points(n, m, S)
    return std == expected, std, expected


@dataclass
class Theorem13Report:
    p1: bool
    p2: bool
    p3: bool
    p4: bool
    no_squarefree_term: list[Binomial] = field(default_factory=list)
    missing_from_degree_two: list[int] = field(default_factory=list)
    absent_variables: list[int] = field(default_factory=list)
    nonsquarefree_degree_two_leads: list[Binomial] = field(default_factory=list)
    cube_leads: list[Binomial] = field(default_factory=list)

    @property
    def all(self) -> bool:
        return self.p1 and self.p2 and self.p3 and self.p4

    def to_json(self) -> dict:
        return {
            "p1": self.p1,
            "p2": self.p2,
            "p3": self.p3,
            "p4": self.p4,
            "witnesses": {
                "no_squarefree_term": [g.to_json() for g in self.no_squarefree_term],
                "missing_from_degree_two": self.missing_from_degree_two,
                "absent_variables": self.absent_variables,
                "nonsquarefree_degree_two_leads": [g.to_json() for g in self.nonsquarefree_degree_two_leads],
                "cube_leads": [g.to_json() for g in self.cube_leads],
            },
        }


def verify_theorem13(basis: GroebnerBasis) -> Theorem13Report:
    s = len(basis.config)
    elems = basis.elements
    no_sqf = [g for g in elems if not (is_squarefree(g.lead) or is_squarefree(g.trail))]
    in_deg2 = set()
    anywhere = set()
    for g in elems:
        support = {k for k in range(s) if g.lead[k] or g.trail[k]}
        anywhere |= support
        if g.degree == 2:
            in_deg2 |= support
    missing = [k for k in range(s) if k not in in_deg2]
    absent = [k for k in range(s) if k not in anywhere]
    bad3 = [g for g in elems if g.degree == 2 and not is_squarefree(g.lead)]
    bad4 = [g for g in elems if not is_free(g.lead, 3)]
    return Theorem13Report(not no_sqf, not missing, not bad3, not bad4, no_sqf, missing, absent, bad3, bad4)


def squarefree_initial_report(basis: GroebnerBasis) -> tuple[bool, list[Binomial]]:
    """Whether every initial term is squarefree, i.e. the initial ideal is squarefree."""
    bad = [g for g in basis.elements if not is_squarefree(g.lead)]
    return not bad, bad
