"""The acceptance battery: small-n exact reproduction plus property checks.

Each criterion returns (passed, detail); `run_all` times them against their
budgets.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import conjectures as cj
from .ehrhart import ehrhart_S, hstar_S, hstar_sigma, numerator_coefficients, quasipoly_sigma
from .geometry import (
    gorenstein_witness,
    hstar_P,
    interior_points,
    involution_count,
    special_simplex,
)
from .graphfactor import decompose
from .symmat import S, SymIntMatrix, count_points, enumerate_points
from .toric import (
    LITERAL,
    PROOF,
    REFINED,
    PointConfig,
    full_config,
    hilbert_check,
    in_kernel,
    make_order,
    normal_form,
    s_pair_failures,
    toric_groebner,
    vertex_config,
    verify_theorem13,
)

# Reference vertices of the special simplex for n = 6.
SIMPLEX_6 = (
    [[0, 1, 0, 0, 0, 1], [1, 0, 1, 0, 0, 0], [0, 1, 0, 1, 0, 0],
     [0, 0, 1, 0, 1, 0], [0, 0, 0, 1, 0, 1], [1, 0, 0, 0, 1, 0]],
    [[0, 0, 1, 0, 1, 0], [0, 0, 0, 1, 0, 1], [1, 0, 0, 0, 1, 0],
     [0, 1, 0, 0, 0, 1], [1, 0, 1, 0, 0, 0], [0, 1, 0, 1, 0, 0]],
    [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1],
     [1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]],
)


@dataclass
class Criterion:
    number: int
    title: str
    budget: float  # seconds
    run: Callable[[], tuple[bool, str]]


def c1_enumeration():
    vals = {
        "|S_2|": count_points(2, 1, S),
        "|S_3|": count_points(3, 1, S),
        "L_S3(2)": count_points(3, 2, S),
        "L_S3(3)": count_points(3, 3, S),
    }
    ok = vals == {"|S_2|": 3, "|S_3|": 11, "L_S3(2)": 42, "L_S3(3)": 106}
    mism = [(n, m, f) for n in range(1, 5) for m in range(0, 3) for f in ("S", "Sigma")
            if len(enumerate_points(n, m, f)) != count_points(n, m, f)]
    return ok and not mism, f"{vals}; enumeration/DP mismatches: {mism}"


def c2_hstar():
    h2, h3, h4 = hstar_S(2), hstar_S(3), hstar_S(4)
    counts = [count_points(3, m, S) for m in range(4)]
    guard = numerator_coefficients(counts, 3, 1, 3)[3]
    ok = (
        h2.coefficients == (1, 1) and h2.palindromic and h2.degree == 1
        and h3.coefficients == (1, 7, 4) and guard == 0 and h3.degree == 2
        and h4.palindromic and h4.degree == 5 and h4[0] == 1 and min(h4) >= 0
    )
    return ok, f"h*(S_2)={h2.coefficients} h*(S_3)={h3.coefficients} (h*_3={guard}) h*(S_4)={h4.coefficients}"


def c3_sigma():
    notes = []
    ok = True
    for n in (2, 3):
        hs, hS = hstar_sigma(n), hstar_S(n)
        ok &= hs.even_part() == hS.coefficients
        notes.append(f"h*(Sigma_{n})={hs.coefficients}")
    h3 = hstar_sigma(3)
    ok &= h3.palindromic and h3.degree == 5
    for n, dg in ((3, 0), (4, 0)):
        q = quasipoly_sigma(n)
        ok &= q.f.degree == n * (n - 1) // 2 and q.g.degree == dg
        ok &= all(q.f(2 * t) + q.g(2 * t) == count_points(n, t, S) for t in range(n * (n - 1) // 2 + 2))
        notes.append(f"n={n}: deg f={q.f.degree}, deg g={q.g.degree}")
    return ok, "; ".join(notes)


def c4_reciprocity():
    L = ehrhart_S(3).polynomial
    a, b = L(-1), -L(-2)
    inv = involution_count(3)
    direct = len(interior_points(3, 2))
    ok = a == 0 and b == 4 == inv and direct == 4
    return ok, f"L(-1)={a}, (-1)^3 L(-2)={b}, involutions(3)={inv}, interior points of 2S_3={direct}"


def c5_gorenstein():
    witnesses = {n: gorenstein_witness(n) for n in range(2, 9)}
    ok = all((w is not None) == (n % 2 == 0) for n, w in witnesses.items())
    for n in (2, 4, 6, 8):
        ok &= not special_simplex(n).check()
    six = [V.rows() for V in special_simplex(6).vertices]
    verbatim = six == [list(map(list, M)) for M in SIMPLEX_6]
    return ok and verbatim, f"Gorenstein n: {[n for n, w in witnesses.items() if w]}; n=6 reference vertices: {verbatim}"


def c6_integral_closure(samples: int = 100, seed: int = 2015):
    full = enumerate_points(3, 2, S)
    good = sum(decompose(X, 2).verify() for X in full)
    pts = enumerate_points(4, 3, S).points
    sample = random.Random(seed).sample(pts, samples)
    good4 = sum(decompose(X, 3).verify() for X in sample)
    ok = good == len(full) and good4 == samples
    return ok, f"2S_3: {good}/{len(full)}; 3S_4 sample: {good4}/{samples} of {len(pts)}"


def c7_theorem13():
    cfg = full_config(3)
    reports = {}
    for conv in (LITERAL, PROOF):
        gb = toric_groebner(cfg, make_order(cfg.points, conv))
        reports[conv] = (gb, verify_theorem13(gb))
    ok = all(r.p1 and r.p2 and r.p4 for _, r in reports.values())
    p3 = [c for c, (_, r) in reports.items() if r.p3]
    ok &= len(p3) == 1
    gb = reports[PROOF][0]
    hil = [hilbert_check(gb, m) for m in (1, 2, 3)]
    ok &= all(h[0] for h in hil)
    pts = list(cfg.points)
    random.Random(7).shuffle(pts)
    gb2 = toric_groebner(PointConfig(tuple(pts)), gb.order)
    same = gb2.elements == gb.elements
    return ok and same, (
        f"p3 holds for {p3}; hilbert {[(h[1], h[2]) for h in hil]}; permuted input identical: {same}"
    )


def c8_vertex_ideal():
    cfg = vertex_config(3)
    gb = toric_groebner(cfg, make_order(cfg.points, PROOF))
    pts = gb.config.points
    T = {SymIntMatrix.from_rows(r) for r in (
        [[0, 2, 0], [2, 0, 0], [0, 0, 2]], [[0, 0, 2], [0, 2, 0], [2, 0, 0]], [[2, 0, 0], [0, 0, 2], [0, 2, 0]])}
    I2 = SymIntMatrix.diagonal([2, 2, 2])
    C = SymIntMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    side_T = tuple(1 if P in T else 0 for P in pts)
    side_C = tuple(1 if P == I2 else 2 if P == C else 0 for P in pts)
    principal = len(gb) == 1
    g = gb.elements[0]
    generator = {g.lead, g.trail} == {side_T, side_C}
    rep = cj.check_vertex_ideal(3)
    ok = principal and generator and g.degree == 3 and rep.verdict == cj.HOLDS and rep.details["rankings"] == 120
    return ok, f"principal={principal}, generator matches={generator}, degree={g.degree}, rankings={rep.details['rankings']}: {rep.verdict}"


def _conjecture_reports(n: int = 3):
    cfg = full_config(n)
    out = []
    for conv in (PROOF, LITERAL):
        gb = toric_groebner(cfg, make_order(cfg.points, conv))
        out.append(cj.check_connectivity(gb))
        out.append(cj.check_zero_one_summand(gb))
        out.append(cj.check_squarefree_triangulation(n, conv))
    out.append(cj.check_refined_order(n))
    out.append(cj.check_hstar_P(n))
    return out


def c9_conjectures():
    first = _conjecture_reports(3)
    second = _conjecture_reports(3)
    same = json.dumps([r.to_json() for r in first], sort_keys=True) == json.dumps(
        [r.to_json() for r in second], sort_keys=True)
    ids = {r.conjecture for r in first}
    finished = all(r.verdict != cj.RESOURCE_LIMIT for r in first)
    rechecks = all(cj.recheck(r) for r in first)
    p = next(r for r in first if r.conjecture == "4.3")
    ok = same and ids >= {"3.3", "4.1a", "4.1b", "4.2", "4.3"} and finished and rechecks and "hstar" in p.details
    verdicts = ", ".join(f"{r.conjecture}/{r.convention or '-'}: {r.verdict}" for r in first)
    return ok, f"{verdicts}; h*(P_3)={p.details['hstar']}; deterministic={same}; rechecks={rechecks}"


def c10_properties(monomials: int = 1000, seed: int = 11):
    notes = []
    ok = True
    bases = []
    for n in (2, 3):
        cfg = full_config(n)
        for conv in (LITERAL, PROOF, REFINED):
            bases.append(toric_groebner(cfg, make_order(cfg.points, conv)))
    ok &= all(in_kernel(g, gb.config) for gb in bases for g in gb)
    ok &= all(not s_pair_failures(gb) for gb in bases)
    notes.append(f"{sum(len(b) for b in bases)} elements in kernel, S-pairs reduce to zero")
    rng = random.Random(seed)
    gb = bases[-2]
    s = len(gb.config)
    idem = 0
    for _ in range(monomials):
        u = tuple(rng.randint(0, 3) for _ in range(s))
        v = normal_form(u, gb)
        idem += normal_form(v, gb) == v
    ok &= idem == monomials
    notes.append(f"normal form idempotent on {idem}/{monomials}")
    pts = enumerate_points(4, 2, S).points + enumerate_points(3, 3, S).points
    rows_ok = all(all(r == 2 for X in decompose(Y).summands for r in X.row_sums()) for Y in pts)
    ok &= rows_ok
    notes.append(f"summand row sums all 2 over {len(pts)} decompositions: {rows_ok}")
    return ok, "; ".join(notes)


CRITERIA = [
    Criterion(1, "enumeration", 1.0, c1_enumeration),
    Criterion(2, "h*-vectors of S_n", 300.0, c2_hstar),
    Criterion(3, "Sigma_n relations", 300.0, c3_sigma),
    Criterion(4, "reciprocity and interior points", 1.0, c4_reciprocity),
    Criterion(5, "Gorenstein witnesses and special simplices", 1.0, c5_gorenstein),
    Criterion(6, "integral closure", 60.0, c6_integral_closure),
    Criterion(7, "Groebner basis properties at n=3", 600.0, c7_theorem13),
    Criterion(8, "vertex ideal at n=3", 10.0, c8_vertex_ideal),
    Criterion(9, "conjecture suite at n=3", 600.0, c9_conjectures),
    Criterion(10, "property suites", 600.0, c10_properties),
]


def run_criterion(c: Criterion) -> tuple[bool, str, float]:
    t0 = time.perf_counter()
    ok, detail = c.run()
    elapsed = time.perf_counter() - t0
    if elapsed > c.budget:
        ok = False
        detail += f" [over budget: {elapsed:.2f}s > {c.budget:.0f}s]"
    return ok, detail, elapsed


def format_line(c: Criterion, ok: bool, detail: str, elapsed: float) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] {c.number:2d} {c.title} ({elapsed:.2f}s): {detail}"


def run_all(echo=print) -> bool:
    all_ok = True
    for c in CRITERIA:
        ok, detail, elapsed = run_criterion(c)
        echo(format_line(c, ok, detail, elapsed))
        all_ok &= ok
    return all_ok
