import json

import pytest

from symstoch import conjectures as cj
from symstoch.symmat import SymIntMatrix
from symstoch.toric import LITERAL, PROOF, full_config, make_order, toric_groebner


@pytest.fixture(scope="module")
def bases():
    cfg = full_config(3)
    return {c: toric_groebner(cfg, make_order(cfg.points, c)) for c in (LITERAL, PROOF)}


def test_unimodal_checker():
    assert cj.check_unimodal([1, 3, 3, 1])
    assert not cj.check_unimodal([1, 3, 1, 3])


def test_components_of_block_matrix():
    # two disjoint triangles: a disconnected graph
    rows = [[0] * 6 for _ in range(6)]
    for base in (0, 3):
        for i in range(3):
            for j in range(3):
                if i != j:
                    rows[base + i][base + j] = 1
    A = SymIntMatrix.from_rows(rows)
    assert cj.matrix_components(A) == [[0, 1, 2], [3, 4, 5]]
    tri = SymIntMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert len(cj.matrix_components(tri)) == 1


def test_connectivity_reports(bases):
    lit = cj.check_connectivity(bases[LITERAL])
    prf = cj.check_connectivity(bases[PROOF])
    assert prf.details["checked"] == 0 and prf.verdict == cj.HOLDS
    assert lit.details["checked"] > 0
    assert cj.recheck(lit) and cj.recheck(prf)


def test_zero_one_summand(bases):
    rep = cj.check_zero_one_summand(bases[LITERAL])
    assert cj.recheck(rep)
    for ev in rep.details["decompositions"]:
        assert SymIntMatrix.from_json(ev["summands"][0]).is_zero_one()


def test_zero_one_decomposition_direct():
    A = SymIntMatrix.from_rows([[2, 1, 1], [1, 2, 1], [1, 1, 2]])
    dec = cj.zero_one_decomposition(A, 2)
    assert dec[0].is_zero_one()
    assert dec[0] + dec[1] == A
    assert cj.zero_one_decomposition(SymIntMatrix.diagonal([4, 4]), 2) is None


def test_refined_order():
    rep = cj.check_refined_order(3)
    assert rep.verdict == cj.HOLDS and rep.details["max_degree"] <= 2
    assert cj.recheck(rep)
    boundary = cj.check_refined_order(2)
    # degree bound n - 1 = 1 cannot hold for a nonzero toric ideal
    assert boundary.verdict == cj.COUNTEREXAMPLE and cj.recheck(boundary)
    assert cj.check_refined_order(4).verdict == cj.RESOURCE_LIMIT


def test_hstar_P_report():
    rep = cj.check_hstar_P(3)
    assert rep.verdict == cj.HOLDS and rep.details["hstar"] == [1]
    assert cj.check_hstar_P(4).details["hstar"] == [1, 3, 3, 1]
    assert cj.check_hstar_P(5).verdict == cj.RESOURCE_LIMIT


def test_vertex_ideal():
    rep = cj.check_vertex_ideal(3)
    assert rep.verdict == cj.HOLDS and rep.details["rankings"] == 120
    assert rep.details["distinct_binomials"] == 1 and rep.details["generator_degrees"] == [3]
    sampled = cj.check_vertex_ideal(3, sample=10, seed=1)
    assert sampled.details["rankings"] == 10
    assert cj.check_vertex_ideal(4).verdict == cj.RESOURCE_LIMIT


def test_squarefree_triangulation():
    prf = cj.check_squarefree_triangulation(3, PROOF)
    lit = cj.check_squarefree_triangulation(3, LITERAL)
    assert prf.details["squarefree_initial_ideal"] in (True, False)
    assert lit.verdict in (cj.HOLDS, cj.INCONCLUSIVE)
    assert cj.recheck(prf) and cj.recheck(lit)
    even = cj.check_squarefree_triangulation(4, PROOF)
    assert even.details["hstar_unimodal"] is True and even.details["squarefree_initial_ideal"] is None
    assert even.verdict == cj.HOLDS


def test_reports_deterministic(bases):
    a = cj.check_zero_one_summand(bases[LITERAL]).to_json()
    b = cj.check_zero_one_summand(bases[LITERAL]).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_recheck_rejects_forged_witness():
    tri = SymIntMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    forged = cj.ConjectureReport("4.1a", 3, PROOF, cj.COUNTEREXAMPLE, [{"matrix": tri.to_json()}])
    assert not cj.recheck(forged)
    forged = cj.ConjectureReport("4.3", 3, "", cj.COUNTEREXAMPLE, [{"hstar": [1, 2, 1]}])
    assert not cj.recheck(forged)
