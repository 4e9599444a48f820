"""Loop multigraphs of lattice points and the Petersen 2-factor decomposition
that writes a lattice point of m*S_n as a sum of m lattice points of S_n.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import FalsificationError
from .symmat import SymIntMatrix, matrix_sum

ONE = "one"
TWO = "two"


@dataclass
class LoopMultigraph:
    vertex_count: int
    edges: Counter = field(default_factory=Counter)  # (i, j) with i < j -> multiplicity
    loops: list[int] = field(default_factory=list)
    convention: str = ONE

    def __post_init__(self):
        if not self.loops:
            self.loops = [0] * self.vertex_count
        if self.convention not in (ONE, TWO):
            raise ValueError(f"loop degree convention must be {ONE!r} or {TWO!r}")

    def loop_weight(self) -> int:
        return 1 if self.convention == ONE else 2

    def degree(self, v: int) -> int:
        d = self.loops[v] * self.loop_weight()
        for (i, j), k in self.edges.items():
            if i == v or j == v:
                d += k
        return d

    def degrees(self) -> list[int]:
        deg = [l * self.loop_weight() for l in self.loops]
        for (i, j), k in self.edges.items():
            deg[i] += k
            deg[j] += k
        return deg

    def add_edge(self, i: int, j: int, k: int = 1) -> None:
        if i == j:
            self.loops[i] += k
        else:
            self.edges[(min(i, j), max(i, j))] += k

    def edge_multiset(self) -> Counter:
        out = Counter(self.edges)
        for v, l in enumerate(self.loops):
            if l:
                out[(v, v)] = l
        return +out

    def components(self) -> list[list[int]]:
        """Connected components through non-loop edges, restricted to vertices of positive degree."""
        adj: dict[int, set[int]] = {v: set() for v in range(self.vertex_count)}
        for (i, j), k in self.edges.items():
            if k:
                adj[i].add(j)
                adj[j].add(i)
        deg = self.degrees()
        seen = set()
        comps = []
        for s in range(self.vertex_count):
            if s in seen or deg[s] == 0:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


def matrix_to_graph(X: SymIntMatrix, convention: str = ONE) -> LoopMultigraph:
    n = X.n
    G = LoopMultigraph(n, convention=convention)
    for i in range(n):
        d = X[i, i]
        if convention == TWO:
            if d % 2:
                raise ValueError(f"odd diagonal entry {d} at {i} under loop convention 'two'")
            d //= 2
        G.loops[i] = d
        for j in range(i + 1, n):
            if X[i, j]:
                G.edges[(i, j)] = X[i, j]
    return G


def graph_to_matrix(G: LoopMultigraph) -> SymIntMatrix:
    n = G.vertex_count
    rows = [[0] * n for _ in range(n)]
    for v, l in enumerate(G.loops):
        rows[v][v] = l * G.loop_weight()
    for (i, j), k in G.edges.items():
        rows[i][j] += k
        rows[j][i] += k
    return SymIntMatrix.from_rows(rows)


def euler_orient(G: LoopMultigraph) -> list[tuple[int, int]]:
    """Orient every edge along an Euler circuit of its component; loops become v -> v arcs."""
    if G.convention == ONE and any(G.loops):
        raise ValueError("loops must be counted with degree two to be oriented")
    deg = G.degrees()
    odd = [v for v, d in enumerate(deg) if d % 2]
    if odd:
        raise ValueError(f"vertices of odd degree: {odd}")
    # adjacency of edge ids; each parallel copy is its own edge
    ends: list[tuple[int, int]] = []
    adj: list[list[int]] = [[] for _ in range(G.vertex_count)]
    for (i, j) in sorted(G.edges):
        for _ in range(G.edges[(i, j)]):
            adj[i].append(len(ends))
            adj[j].append(len(ends))
            ends.append((i, j))
    used = [False] * len(ends)
    ptr = [0] * G.vertex_count
    arcs: list[tuple[int, int]] = []
    for start in range(G.vertex_count):
        # Hierholzer, iterative; records arcs as they are traversed
        stack = [start]
        while stack:
            v = stack[-1]
            while ptr[v] < len(adj[v]) and used[adj[v][ptr[v]]]:
                ptr[v] += 1
            if ptr[v] == len(adj[v]):
                stack.pop()
                continue
            e = adj[v][ptr[v]]
            used[e] = True
            a, b = ends[e]
            w = b if a == v else a
            arcs.append((v, w))
            stack.append(w)
    for v, l in enumerate(G.loops):
        arcs.extend([(v, v)] * l)
    return arcs


def _perfect_matching(n: int, arcs: Counter) -> list[tuple[int, int]]:
    """Perfect matching of the bipartite multigraph tails -> heads by augmenting paths."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v), k in sorted(arcs.items()):
        if k:
            adj[u].append(v)
    match_right = [-1] * n

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(n):
        if not augment(u, [False] * n):
            raise FalsificationError(f"no perfect matching covering tail {u}; graph not regular")
    return sorted((match_right[v], v) for v in range(n))


def petersen_two_factorize(G: LoopMultigraph, m: int) -> list[LoopMultigraph]:
    """Split a 2m-regular loop multigraph (loops of degree two) into m 2-factors."""
    if G.convention != TWO:
        raise ValueError("2-factorization expects loops counted with degree two")
    for v, d in enumerate(G.degrees()):
        if d != 2 * m:
            raise ValueError(f"vertex {v} has degree {d}, graph is not {2 * m}-regular")
    n = G.vertex_count
    arcs = Counter(euler_orient(G))
    factors = []
    for _ in range(m):
        matching = _perfect_matching(n, arcs)
        F = LoopMultigraph(n, convention=TWO)
        for u, v in matching:
            arcs[(u, v)] -= 1
            F.add_edge(u, v)
        factors.append(F)
    if +arcs:
        raise FalsificationError("arcs left over after peeling m matchings")
    return factors


@dataclass(frozen=True)
class Decomposition:
    target: SymIntMatrix
    m: int
    summands: tuple[SymIntMatrix, ...]

    def verify(self) -> bool:
        return (
            len(self.summands) == self.m
            and all(all(r == 2 for r in X.row_sums()) for X in self.summands)
            and matrix_sum(self.summands, self.target.n) == self.target
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "summands": [X.to_json() for X in self.summands],
            "target": self.target.to_json(),
        }


def decompose(X: SymIntMatrix, m: int | None = None) -> Decomposition:
    """Write a lattice point of m*S_n as a sum of m lattice points of S_n."""
    n = X.n
    sums = set(X.row_sums())
    if len(sums) != 1 or next(iter(sums)) % 2:
        raise ValueError(f"not a lattice point of a dilate of S_{n}: row sums {X.row_sums()}")
    line = next(iter(sums))
    if m is None:
        m = line // 2
    if line != 2 * m:
        raise ValueError(f"row sums {line} do not match dilate {m}")
    if m == 0:
        return Decomposition(X, 0, ())

    odd = [v for v in range(n) if X[v, v] % 2]
    # loops have degree one here, so an odd loop count needs an odd partner
    if len(odd) % 2:
        raise FalsificationError(f"odd number of loops in G_X for {X}")
    t, s = divmod(len(odd), 2 * m)
    if s % 2:
        raise FalsificationError(f"s = {s} is odd for {X}")

    helpers = t + 1 if odd else 0
    N = n + helpers
    G = LoopMultigraph(N, convention=TWO)
    for i in range(n):
        for j in range(i + 1, n):
            if X[i, j]:
                G.add_edge(i, j, X[i, j])
    deg_w = [0] * helpers
    for v in range(n):
        if v in odd:
            G.loops[v] = (X[v, v] - 1) // 2
            w = next(k for k in range(helpers) if deg_w[k] < 2 * m)
            deg_w[w] += 1
            G.add_edge(v, n + w)
        else:
            G.loops[v] = X[v, v] // 2
    if helpers:
        G.loops[n + t] += (2 * m - s) // 2

    summands = []
    for F in petersen_two_factorize(G, m):
        rows = [[0] * n for _ in range(n)]
        for v in range(n):
            rows[v][v] = 2 * F.loops[v]
        for (i, j), k in F.edges.items():
            if j >= n:
                # edge v_i w_j: drop it and put the unit on the diagonal instead
                if i < n:
                    rows[i][i] += k
            else:
                rows[i][j] += k
                rows[j][i] += k
        summands.append(SymIntMatrix.from_rows(rows))
    dec = Decomposition(X, m, tuple(sorted(summands)))
    if not dec.verify():
        raise FalsificationError(f"decomposition of {X} failed verification")
    return dec
