"""Evidence-gathering checkers for the open conjectures about S_n, P_n and
their toric ideals. Checkers never raise on a failed conjecture; they return
a report whose witnesses can be re-verified with `recheck`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial

from .ehrhart import hstar_S, is_unimodal
from .errors import CapacityError
from .geometry import hstar_P
from .graphfactor import decompose, matrix_to_graph
from .symmat import S, SymIntMatrix, enumerate_points
from .toric import (
    PROOF,
    REFINED,
    Binomial,
    GroebnerBasis,
    custom_order,
    full_config,
    image_matrix,
    is_free,
    is_squarefree,
    make_order,
    squarefree_initial_report,
    toric_groebner,
    vertex_config,
)

HOLDS = "holds-at-this-n"
COUNTEREXAMPLE = "counterexample"
RESOURCE_LIMIT = "resource-limit"
INCONCLUSIVE = "inconclusive"


@dataclass
class ConjectureReport:
    conjecture: str
    n: int
    convention: str
    verdict: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "convention": self.convention,
            "details": self.details,
            "n": self.n,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


def _binomial_json(g: Binomial, basis: GroebnerBasis) -> dict:
    out = g.to_json()
    out["degree"] = g.degree
    out["matrix"] = image_matrix(g.lead, basis.config).to_json()
    return out


def _default_basis(n: int, convention: str, allow_large: bool) -> GroebnerBasis:
    if n > 3 and not allow_large:
        raise CapacityError(f"full Groebner runs at n = {n} need allow_large=True")
    cfg = full_config(n)
    return toric_groebner(cfg, make_order(cfg.points, convention))


def matrix_components(A: SymIntMatrix) -> list[list[int]]:
    return matrix_to_graph(A).components()


def check_connectivity(basis: GroebnerBasis) -> ConjectureReport:
    n = basis.config.points[0].n
    bad, checked = [], 0
    for g in basis.elements:
        if g.degree < 3:
            continue
        checked += 1
        A = image_matrix(g.lead, basis.config)
        comps = matrix_components(A)
        if len(comps) > 1:
            w = _binomial_json(g, basis)
            w["components"] = comps
            bad.append(w)
    return ConjectureReport(
        "4.1a", n, basis.order.convention, COUNTEREXAMPLE if bad else HOLDS, bad, {"checked": checked}
    )


def zero_one_decomposition(A: SymIntMatrix, k: int) -> list[SymIntMatrix] | None:
    """A = X_1 + ... + X_k with X_i lattice points of S_n and X_1 a 0/1 matrix, or None."""
    n = A.n
    if k == 1:
        return [A] if A.is_zero_one() and all(r == 2 for r in A.row_sums()) else None
    for X in enumerate_points(n, 1, S):
        if X.is_zero_one() and X.dominated_by(A):
            # A - X lies in (k-1)S_n, which always decomposes
            return [X] + list(decompose(A - X, k - 1).summands)
    return None


def check_zero_one_summand(basis: GroebnerBasis) -> ConjectureReport:
    n = basis.config.points[0].n
    bad, evidence = [], []
    for g in basis.elements:
        k = g.degree
        if k < 3:
            continue
        A = image_matrix(g.lead, basis.config)
        dec = zero_one_decomposition(A, k)
        if dec is None:
            w = _binomial_json(g, basis)
            w["k"] = k
            bad.append(w)
        else:
            evidence.append({"matrix": A.to_json(), "k": k, "summands": [X.to_json() for X in dec]})
    return ConjectureReport(
        "4.1b", n, basis.order.convention, COUNTEREXAMPLE if bad else HOLDS, bad,
        {"checked": len(bad) + len(evidence), "decompositions": evidence},
    )


def check_refined_order(n: int, allow_large: bool = False) -> ConjectureReport:
    try:
        basis = _default_basis(n, REFINED, allow_large)
    except CapacityError as e:
        return ConjectureReport("4.2", n, REFINED, RESOURCE_LIMIT, [], {"error": str(e)})
    bound = n - 1
    bad = []
    for g in basis.elements:
        reasons = []
        if g.degree > bound:
            reasons.append("degree")
        if g.degree > 2 and not (is_squarefree(g.lead) and is_squarefree(g.trail)):
            reasons.append("not squarefree")
        if reasons:
            w = _binomial_json(g, basis)
            w["reasons"] = reasons
            bad.append(w)
    details = {"basis_size": len(basis), "max_degree": basis.max_degree(), "degree_bound": bound}
    return ConjectureReport("4.2", n, REFINED, COUNTEREXAMPLE if bad else HOLDS, bad, details)


def check_unimodal(v) -> bool:
    return is_unimodal(tuple(v))


def check_hstar_P(n: int) -> ConjectureReport:
    try:
        res = hstar_P(n)
    except CapacityError as e:
        return ConjectureReport("4.3", n, "", RESOURCE_LIMIT, [], {"error": str(e)})
    h = list(res.hstar.coefficients)
    verdict = HOLDS if res.unimodal else COUNTEREXAMPLE
    wit = [] if res.unimodal else [{"hstar": h}]
    return ConjectureReport("4.3", n, "", verdict, wit, {"hstar": h, "counts": list(res.counts), "d": res.hstar.dimension})


def check_vertex_ideal(n: int, rankings: list[list[int]] | None = None, sample: int | None = None,
                       seed: int = 0, allow_large: bool = False) -> ConjectureReport:
    """Initial ideals of the vertex toric ideal under reverse lexicographic orders.

    By default every ranking of the vertices is tried; `sample` draws that many
    random rankings instead.
    """
    if n > 3 and not allow_large:
        return ConjectureReport("4.4", n, "revlex", RESOURCE_LIMIT, [], {"error": f"n = {n} needs allow_large=True"})
    cfg = vertex_config(n)
    s = len(cfg)
    if rankings is None:
        if sample is None:
            if factorial(s) > 10**6:
                raise CapacityError(f"{s}! rankings; pass sample=")
            rankings = [list(p) for p in permutations(range(s))]
        else:
            rng = random.Random(seed)
            rankings = []
            for _ in range(sample):
                p = list(range(s))
                rng.shuffle(p)
                rankings.append(p)
    want = 3 * (n - 2)
    bad = []
    degrees = set()
    generators = set()
    for asc in rankings:
        basis = toric_groebner(cfg, custom_order(cfg.points, asc))
        for g in basis.elements:
            degrees.add(g.degree)
            generators.add((g.lead, g.trail) if g.lead < g.trail else (g.trail, g.lead))
            if g.degree != want or not is_free(g.lead, n):
                w = _binomial_json(g, basis)
                w["ranking"] = list(asc)
                bad.append(w)
    details = {
        "vertices": s,
        "rankings": len(rankings),
        "generator_degrees": sorted(degrees),
        "expected_degree": want,
        "distinct_binomials": len(generators),
    }
    return ConjectureReport("4.4", n, "revlex", COUNTEREXAMPLE if bad else HOLDS, bad, details)


def check_squarefree_triangulation(n: int, convention: str = PROOF, groebner: bool | None = None,
                                   allow_large: bool = False) -> ConjectureReport:
    """Squarefree initial ideal (certifying a regular unimodular triangulation) and,
    for even n, unimodality of h*(S_n).

    A non-squarefree initial ideal under one order does not refute the
    conjecture; that case is reported as inconclusive.
    """
    if groebner is None:
        groebner = n <= 3 or allow_large
    details: dict = {}
    witnesses = []
    squarefree = None
    if groebner:
        try:
            basis = _default_basis(n, convention, allow_large)
            squarefree, bad = squarefree_initial_report(basis)
            witnesses = [_binomial_json(g, basis) for g in bad]
            details["basis_size"] = len(basis)
        except CapacityError as e:
            details["groebner_error"] = str(e)
    details["squarefree_initial_ideal"] = squarefree
    unimodal = None
    if n % 2 == 0:
        h = hstar_S(n)
        unimodal = is_unimodal(h.coefficients)
        details["hstar"] = list(h.coefficients)
    details["hstar_unimodal"] = unimodal
    if unimodal is False:
        verdict = COUNTEREXAMPLE
    elif squarefree:
        verdict = HOLDS
    elif squarefree is None and "groebner_error" in details:
        verdict = RESOURCE_LIMIT
    elif squarefree is None:
        verdict = HOLDS if unimodal else INCONCLUSIVE
    else:
        verdict = INCONCLUSIVE
    return ConjectureReport("3.3", n, convention, verdict, witnesses, details)


def _mono_from_sparse(d: dict, s: int) -> tuple[int, ...]:
    u = [0] * s
    for k, e in d.items():
        u[int(k)] = e
    return tuple(u)


def recheck(report: ConjectureReport) -> bool:
    """Re-verify every stored witness independently; True when all of them reproduce."""
    cid = report.conjecture
    for w in report.witnesses:
        if cid == "4.1a":
            A = SymIntMatrix.from_json(w["matrix"])
            if len(matrix_components(A)) < 2:
                return False
        elif cid == "4.1b":
            A = SymIntMatrix.from_json(w["matrix"])
            if zero_one_decomposition(A, w["k"]) is not None:
                return False
        elif cid in ("4.2", "3.3", "4.4"):
            s = 1 + max([int(k) for k in w["lead"]] + [int(k) for k in w["trail"]])
            lead, trail = _mono_from_sparse(w["lead"], s), _mono_from_sparse(w["trail"], s)
            deg = sum(lead)
            if cid == "3.3" and is_squarefree(lead):
                return False
            if cid == "4.2":
                ok_deg = deg <= report.details["degree_bound"]
                ok_sqf = deg <= 2 or (is_squarefree(lead) and is_squarefree(trail))
                if ok_deg and ok_sqf:
                    return False
            if cid == "4.4" and deg == report.details["expected_degree"] and is_free(lead, report.n):
                return False
        elif cid == "4.3":
            if is_unimodal(w["hstar"]):
                return False
    if cid == "4.1b":
        for ev in report.details.get("decompositions", []):
            A = SymIntMatrix.from_json(ev["matrix"])
            summands = [SymIntMatrix.from_json(x) for x in ev["summands"]]
            total = summands[0]
            for X in summands[1:]:
                total = total + X
            if total != A or not summands[0].is_zero_one() or len(summands) != ev["k"]:
                return False
            if any(r != 2 for X in summands for r in X.row_sums()):
                return False
    return True
