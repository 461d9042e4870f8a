from itertools import permutations

import pytest

from sparsekit.certificates import check_certificate
from sparsekit.generators import gen_cnf, gen_digraph, gen_graph
from sparsekit.instances import (
    BipartiteHamInstance,
    CnfFormula,
    DecisionInstance,
    Digraph,
    Graph,
    Hypergraph,
    ListColoringInstance,
    TsdInstance,
)
from sparsekit.oracles import (
    Limits,
    OracleRefused,
    solve_col_rbds,
    solve_decision,
    solve_dom_set,
    solve_graph_coloring,
    solve_ham_cycle,
    solve_ham_path_st,
    solve_hypergraph_2col,
    solve_list_coloring,
    solve_nae,
    solve_sat,
    solve_tsd,
)
from sparsekit.instances import EqColRbdsInstance
from sparsekit.reductions import naesat_to_hypergraph
from sparsekit.rng import Rng


def test_nae_eight_patterns_unsat():
    clauses = [[s1 * 1, s2 * 2, s3 * 3]
               for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1)]
    assert solve_nae(CnfFormula(3, clauses)).verdict == "no"


def test_empty_formula_yes():
    answer = solve_nae(CnfFormula(0, []))
    assert answer.verdict == "yes"
    assert solve_sat(CnfFormula(0, [])).verdict == "yes"


def test_nae_single_clause_yes_with_certificate():
    f = CnfFormula(3, [[1, 2, 3]])
    answer = solve_nae(f)
    assert answer.verdict == "yes"
    assert check_certificate(DecisionInstance("nae", f), answer.certificate)


def test_var_cap_refusal_distinct_from_timeout():
    f = CnfFormula(30, [[1, 2]])
    with pytest.raises(OracleRefused):
        solve_nae(f, Limits(var_cap=24))
    h = Hypergraph(30, [(1, 2)])
    with pytest.raises(OracleRefused):
        solve_hypergraph_2col(h, Limits(var_cap=24))


def test_node_budget_timeout_verdict():
    clauses = [[s1 * 1, s2 * 2, s3 * 3]
               for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1)]
    f = CnfFormula(3, clauses)
    answer = solve_nae(f, Limits(node_budget=3, time_limit=None))
    assert answer.verdict == "timeout"


def test_hypergraph_2col_examples():
    k4 = Hypergraph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    assert solve_hypergraph_2col(k4).verdict == "no"
    single = Hypergraph(3, [(1, 2, 3)])
    answer = solve_hypergraph_2col(single)
    assert answer.verdict == "yes"
    assert check_certificate(DecisionInstance("2col", single), answer.certificate)
    with_empty = Hypergraph(3, [(1, 2), ()])
    assert solve_hypergraph_2col(with_empty).verdict == "no"


def test_cross_oracle_agreement_nae_vs_2col():
    rng = Rng(19)
    for _ in range(500):
        f = gen_cnf(rng.randint(2, 5), rng.randint(2, 3), rng.randint(1, 10), rng)
        h, _ = naesat_to_hypergraph(f)
        assert solve_nae(f).verdict == solve_hypergraph_2col(h).verdict


def test_k5_not_4_colorable():
    k5 = Graph(5, [(u, v) for u in range(1, 6) for v in range(u + 1, 6)])
    assert solve_graph_coloring(k5, 4).verdict == "no"
    k4 = Graph(4, [(u, v) for u in range(1, 5) for v in range(u + 1, 5)])
    answer = solve_graph_coloring(k4, 4)
    assert answer.verdict == "yes"
    assert check_certificate(DecisionInstance("4col", k4), answer.certificate)


def test_list_coloring_with_singletons():
    g = Graph(3, [(1, 2), (2, 3), (1, 3)])
    inst = ListColoringInstance(g, [(1,), (1, 2), (1, 2, 3)])
    answer = solve_list_coloring(inst)
    assert answer.verdict == "yes"
    assert answer.certificate.colors == (1, 2, 3)
    impossible = ListColoringInstance(g, [(1,), (1,), (1, 2, 3)])
    assert solve_list_coloring(impossible).verdict == "no"


def test_tsd_oracle_respects_independent_set_palette():
    g = Graph(4, [(2, 3), (2, 4), (3, 4), (1, 2)])
    inst = TsdInstance(g, [1], [(2, 3, 4)])
    answer = solve_tsd(inst)
    assert answer.verdict == "yes"
    assert answer.certificate.color(1) in (1, 2)
    blocked = Graph(4, [(2, 3), (2, 4), (3, 4), (1, 2), (1, 3), (1, 4)])
    assert solve_tsd(TsdInstance(blocked, [1], [(2, 3, 4)])).verdict == "no"


def test_ham_cycle_conventions():
    assert solve_ham_cycle(Digraph(3, [(1, 2), (2, 3), (3, 1)])).verdict == "yes"
    assert solve_ham_cycle(Graph(3, [(1, 2), (2, 3)])).verdict == "no"
    assert solve_ham_cycle(Digraph(1, [])).verdict == "no"
    assert solve_ham_cycle(Graph(2, [(1, 2)])).verdict == "no"
    assert solve_ham_cycle(Digraph(2, [(1, 2), (2, 1)])).verdict == "yes"


def _brute_force_dhc(d: Digraph) -> str:
    n = d.num_vertices
    if n < 2:
        return "no"
    for perm in permutations(range(2, n + 1)):
        order = (1,) + perm
        if all((order[i], order[(i + 1) % n]) in d.arcs for i in range(n)):
            return "yes"
    return "no"


def test_hc_engines_agree_with_each_other_and_brute_force():
    from sparsekit.oracles import _Budget, _digraph_masks, _hc_backtrack, _hc_subset_dp
    rng = Rng(21)
    for trial in range(150):
        n = rng.randint(2, 7)
        d = gen_digraph(n, rng.randint(n, n * (n - 1)), rng)
        limits = Limits(time_limit=None)
        out, inn = _digraph_masks(d)
        dp = _hc_subset_dp(n, out, inn, _Budget(limits))
        bt = _hc_backtrack(n, out, inn, _Budget(limits))
        assert (dp is not None) == (bt is not None) == (_brute_force_dhc(d) == "yes")
    # larger cross-checks up to 18 vertices, through the DP size limit
    for n, arcs, seed in ((14, 50, 0), (14, 30, 1), (16, 48, 2), (16, 70, 3),
                          (18, 54, 4), (18, 40, 5)):
        d = gen_digraph(n, arcs, Rng(seed))
        out, inn = _digraph_masks(d)
        dp = _hc_subset_dp(n, out, inn, _Budget(Limits(time_limit=None)))
        bt = _hc_backtrack(n, out, inn, _Budget(Limits(time_limit=None)))
        assert (dp is None) == (bt is None)


def test_ham_path_st_small():
    g = Graph(3, [(1, 2), (1, 3)])
    inst = BipartiteHamInstance(g, [1], [2, 3], 2, 3)
    answer = solve_ham_path_st(inst)
    assert answer.verdict == "yes"
    assert answer.certificate.order == (2, 1, 3)
    g2 = Graph(5, [(1, 3), (1, 5), (2, 4)])
    inst2 = BipartiteHamInstance(g2, [1, 2], [3, 4, 5], 3, 5)
    assert solve_ham_path_st(inst2).verdict == "no"


def test_dom_set_star_and_budget_cap():
    star = Graph(6, [(1, v) for v in range(2, 7)])
    answer = solve_dom_set(star, 1)
    assert answer.verdict == "yes"
    assert answer.certificate.vertices == (1,)
    with pytest.raises(OracleRefused):
        solve_dom_set(star, 7, limits=Limits(budget_cap=6))
    two = Graph(2, [])
    assert solve_dom_set(two, 1).verdict == "no"
    assert solve_dom_set(two, 2).verdict == "yes"


def test_connected_dom_set_requires_connectivity():
    path = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    assert solve_dom_set(path, 2, connected=False).verdict == "yes"
    assert solve_dom_set(path, 2, connected=True).verdict == "no"
    assert solve_dom_set(path, 3, connected=True).verdict == "yes"


def test_col_rbds_trivial_yes():
    g = Graph(4, [(1, 2), (1, 3), (1, 4)])
    inst = EqColRbdsInstance(g, [(1,)], [2, 3, 4])
    answer = solve_col_rbds(inst)
    assert answer.verdict == "yes"
    assert answer.certificate.vertices == (1,)


def test_determinism_nodes_and_certificates():
    rng = Rng(33)
    f = gen_cnf(6, 3, 10, rng)
    a1, a2 = solve_nae(f), solve_nae(f)
    assert a1.verdict == a2.verdict
    assert a1.stats.nodes == a2.stats.nodes
    assert a1.certificate == a2.certificate
    g = gen_graph(12, 24, Rng(41))
    b1, b2 = solve_graph_coloring(g, 4), solve_graph_coloring(g, 4)
    assert b1.stats.nodes == b2.stats.nodes
    assert b1.certificate == b2.certificate


def test_solve_decision_dispatch():
    f = CnfFormula(2, [[1, 2]])
    assert solve_decision(DecisionInstance("sat", f)).verdict == "yes"
    assert solve_decision(DecisionInstance("nae", f)).verdict == "yes"
    g = Graph(3, [(1, 2), (2, 3), (1, 3)])
    assert solve_decision(DecisionInstance("hc", g)).verdict == "yes"
    assert solve_decision(DecisionInstance("ds", g, budget=1)).verdict == "yes"
    assert solve_decision(DecisionInstance("cds", g, budget=1)).verdict == "yes"


def test_completeness_below_caps_no_timeouts():
    rng = Rng(47)
    for _ in range(50):
        f = gen_cnf(rng.randint(2, 8), 3, rng.randint(1, 16), rng)
        assert solve_nae(f, Limits(time_limit=None)).verdict in ("yes", "no")
