import pytest

from sparsekit.instances import (
    Assignment,
    BipartiteHamInstance,
    CnfFormula,
    Coloring,
    DecisionInstance,
    Digraph,
    EqColRbdsInstance,
    Graph,
    Hypergraph,
    InvariantError,
    ListColoringInstance,
    TsdInstance,
    canonical_clause,
)


def test_clause_canonicalization():
    assert canonical_clause([3, -1, 3, 2]) == (-1, 2, 3)
    assert canonical_clause([-2, 2]) == (2, -2)  # variable asc, positive first
    with pytest.raises(InvariantError):
        canonical_clause([0])


def test_formula_dedupes_and_sorts():
    f = CnfFormula(3, [[2, -3, 2]])
    assert f.clauses == ((2, -3),)
    assert f.max_clause_size == 2


def test_formula_rejects_out_of_range():
    with pytest.raises(InvariantError):
        CnfFormula(2, [[3]])


def test_complementary_clause_is_retained():
    f = CnfFormula(1, [[1, -1]])
    assert f.clauses == ((1, -1),)


def test_hypergraph_sorts_edges_and_keeps_order():
    h = Hypergraph(4, [(3, 1), (2, 4)])
    assert h.edges == ((1, 3), (2, 4))
    with pytest.raises(InvariantError):
        Hypergraph(2, [(1, 1)])
    with pytest.raises(InvariantError):
        Hypergraph(2, [(1, 3)])


def test_graph_normalizes_pairs():
    g = Graph(3, [(3, 1), (1, 2)])
    assert g.sorted_edges() == [(1, 2), (1, 3)]
    assert g.has_edge(3, 1)
    with pytest.raises(InvariantError):
        Graph(3, [(2, 2)])


def test_digraph_keeps_direction():
    d = Digraph(3, [(2, 1)])
    assert (2, 1) in d.arcs and (1, 2) not in d.arcs
    with pytest.raises(InvariantError):
        Digraph(3, [(1, 1)])


def _tsd_graph():
    return Graph(5, [(3, 4), (3, 5), (4, 5), (1, 3), (2, 4)])


def test_tsd_validation():
    inst = TsdInstance(_tsd_graph(), [1, 2], [(3, 4, 5)])
    assert inst.independent_set == (1, 2)
    assert inst.num_triangles == 1
    # edge inside the independent set
    with pytest.raises(InvariantError):
        TsdInstance(Graph(5, [(3, 4), (3, 5), (4, 5), (1, 2)]), [1, 2], [(3, 4, 5)])
    # triple that is not a triangle
    with pytest.raises(InvariantError):
        TsdInstance(Graph(5, [(3, 4), (3, 5)]), [1, 2], [(3, 4, 5)])
    # cross-triangle edge
    bad = Graph(8, [(3, 4), (3, 5), (4, 5), (6, 7), (6, 8), (7, 8), (3, 6)])
    with pytest.raises(InvariantError):
        TsdInstance(bad, [1, 2], [(3, 4, 5), (6, 7, 8)])


def test_bipartite_ham_validation():
    g = Graph(5, [(1, 3), (1, 4), (2, 4), (2, 5)])
    inst = BipartiteHamInstance(g, [1, 2], [3, 4, 5], 3, 5)
    assert inst.b_order() == [3, 4, 5]
    with pytest.raises(InvariantError):  # |B| != |A| + 1
        BipartiteHamInstance(g, [1, 2, 3], [4, 5], 4, 5)
    with pytest.raises(InvariantError):  # s degree != 1
        BipartiteHamInstance(Graph(5, [(1, 3), (2, 3), (1, 4), (2, 5)]),
                             [1, 2], [3, 4, 5], 3, 5)
    with pytest.raises(InvariantError):  # edge within one side
        BipartiteHamInstance(Graph(5, [(1, 2), (1, 3), (2, 4), (2, 5)]),
                             [1, 2], [3, 4, 5], 3, 5)


def test_eq_col_rbds_validation():
    g = Graph(6, [(1, 5), (2, 6), (3, 5)])
    inst = EqColRbdsInstance(g, [(1, 2), (3, 4)], [5, 6])
    assert inst.k == 2 and inst.num_red == 4
    assert not inst.has_isolated_blue()
    isolated = EqColRbdsInstance(Graph(6, [(1, 5)]), [(1, 2), (3, 4)], [5, 6])
    assert isolated.has_isolated_blue()
    with pytest.raises(InvariantError):  # unequal classes
        EqColRbdsInstance(g, [(1,), (2, 3)], [4, 5, 6])
    with pytest.raises(InvariantError):  # red-red edge
        EqColRbdsInstance(Graph(6, [(1, 2)]), [(1, 2), (3, 4)], [5, 6])


def test_list_coloring_validation():
    g = Graph(2, [(1, 2)])
    inst = ListColoringInstance(g, [(1, 2), (4,)])
    assert inst.lists == ((1, 2), (4,))
    with pytest.raises(InvariantError):
        ListColoringInstance(g, [(1, 2)])  # wrong length
    with pytest.raises(InvariantError):
        ListColoringInstance(g, [(1,), ()])  # empty list
    with pytest.raises(InvariantError):
        ListColoringInstance(g, [(1,), (5,)])  # outside palette


def test_decision_instance_budget_rules():
    g = Graph(2, [(1, 2)])
    DecisionInstance("ds", g, budget=1)
    with pytest.raises(InvariantError):
        DecisionInstance("ds", g)  # missing budget
    with pytest.raises(InvariantError):
        DecisionInstance("hc", g, budget=1)  # budget on non-ds problem
    with pytest.raises(InvariantError):
        DecisionInstance("nae", g)  # wrong instance type
    with pytest.raises(InvariantError):
        DecisionInstance("tutte", g)


def test_certificates_normalize():
    assert Assignment([1, 0]).values == (True, False)
    assert Assignment([True, False]).value(-2) is True
    assert Coloring([1, 2]).color(2) == 2
    from sparsekit.instances import DomSet
    assert DomSet([3, 1, 3]).vertices == (1, 3)
