import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsekit.formats import (
    ParseError,
    parse_any,
    parse_certificate_json,
    parse_cnf,
    parse_digraph,
    parse_graph,
    parse_hypergraph,
    parse_instance_json,
    serialize_any,
    serialize_certificate,
    serialize_cnf,
    serialize_graph,
    serialize_hypergraph,
    serialize_instance,
)
from sparsekit.instances import (
    Assignment,
    BipartiteHamInstance,
    CnfFormula,
    Coloring,
    Digraph,
    DomSet,
    EqColRbdsInstance,
    Graph,
    HamCycle,
    Hypergraph,
    ListColoringInstance,
    TsdInstance,
)


def test_parse_cnf_dimacs_convention():
    f = parse_cnf("p cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2
    assert f.clauses == ((1, -2),)


def test_parse_hypergraph_format():
    h = parse_hypergraph("c a comment\np hyp 3 1\n1 2 3 0\n")
    assert h.num_vertices == 3
    assert h.edges == ((1, 2, 3),)


def test_parse_graph_self_loop_is_error():
    with pytest.raises(ParseError) as err:
        parse_graph("p edge 2 2\ne 1 2\ne 1 1\n")
    assert err.value.line == 3
    assert "self-loop" in str(err.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_cnf("p cnf 2 1\n1 x 0\n")
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_cnf("p cnf 1 1\n2 0\n")  # variable out of range
    assert "range" in str(err.value) and err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_hypergraph("p hyp 2 2\n1 2 0\n1 3 0\n")
    assert err.value.line == 3
    with pytest.raises(ParseError):
        parse_cnf("p cnf 2 2\n1 0\n")  # count mismatch
    with pytest.raises(ParseError):
        parse_cnf("p cnf 2 1\n1 2\n")  # missing terminator
    with pytest.raises(ParseError):
        parse_cnf("")
    with pytest.raises(ParseError):
        parse_hypergraph("p cnf 2 1\n1 0\n")  # wrong format keyword
    with pytest.raises(ParseError):
        parse_graph("p edge 2 2\ne 1 2\ne 2 1\n")  # duplicate edge
    with pytest.raises(ParseError):
        parse_digraph("p arc 2 1\na 1\n")  # truncated entry


def test_empty_clause_and_edge_round_trip():
    f = CnfFormula(2, [()])
    assert parse_cnf(serialize_cnf(f)) == f
    h = Hypergraph(3, [()])
    assert parse_hypergraph(serialize_hypergraph(h)) == h


def test_hypergraph_preserves_edge_order_and_duplicates():
    text = "p hyp 4 3\n3 4 0\n1 2 0\n3 4 0\n"
    h = parse_hypergraph(text)
    assert h.edges == ((3, 4), (1, 2), (3, 4))
    assert serialize_hypergraph(h) == text


def test_graph_serialization_is_canonical():
    g = parse_graph("p edge 3 2\ne 3 1\ne 1 2\n")
    assert serialize_graph(g) == "p edge 3 2\ne 1 2\ne 1 3\n"
    # re-serializing the parse of canonical text is byte-identical
    canonical = serialize_graph(g)
    assert serialize_graph(parse_graph(canonical)) == canonical


def _structured_instances():
    tsd = TsdInstance(Graph(5, [(3, 4), (3, 5), (4, 5), (1, 3)]), [1, 2], [(3, 4, 5)])
    ham = BipartiteHamInstance(Graph(3, [(1, 2), (1, 3)]), [1], [2, 3], 2, 3)
    rbds = EqColRbdsInstance(Graph(4, [(1, 3), (2, 4)]), [(1,), (2,)], [3, 4])
    lci = ListColoringInstance(Graph(2, [(1, 2)]), [(1, 2), (3, 4)])
    return [tsd, ham, rbds, lci]


def test_structured_instance_json_round_trip():
    for inst in _structured_instances():
        text = serialize_instance(inst)
        again = parse_instance_json(text)
        assert again == inst
        assert serialize_instance(again) == text


def test_certificate_json_round_trip():
    for cert in (Assignment([1, 0, 1]), Coloring([1, 2, 2]),
                 HamCycle([2, 1, 3]), DomSet([3, 1])):
        text = serialize_certificate(cert)
        assert parse_certificate_json(text) == cert


def test_parse_any_dispatch():
    assert isinstance(parse_any("p cnf 1 0\n"), CnfFormula)
    assert isinstance(parse_any("p hyp 1 0\n"), Hypergraph)
    assert isinstance(parse_any("p edge 1 0\n"), Graph)
    assert isinstance(parse_any("p arc 2 1\na 1 2\n"), Digraph)
    for inst in _structured_instances():
        assert parse_any(serialize_instance(inst)) == inst
    with pytest.raises(ParseError):
        parse_any("q cnf 1 0\n")
    with pytest.raises(ParseError):
        parse_any('{"type": "martian"}')


@st.composite
def formulas(draw):
    num_vars = draw(st.integers(min_value=1, max_value=6))
    literal = st.integers(min_value=1, max_value=num_vars).flatmap(
        lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(literal, min_size=1, max_size=4),
                            max_size=8))
    return CnfFormula(num_vars, clauses)


@settings(max_examples=60, deadline=None)
@given(formulas())
def test_cnf_round_trip_property(f):
    assert parse_cnf(serialize_cnf(f)) == f
    assert serialize_cnf(parse_cnf(serialize_cnf(f))) == serialize_cnf(f)


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    edge = st.lists(st.integers(min_value=1, max_value=n), min_size=1,
                    max_size=min(4, n), unique=True)
    return Hypergraph(n, draw(st.lists(edge, max_size=8)))


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_hypergraph_round_trip_property(h):
    assert parse_hypergraph(serialize_hypergraph(h)) == h


def test_serialize_any_covers_all_types():
    values = [CnfFormula(1, [[1]]), Hypergraph(2, [(1, 2)]),
              Graph(2, [(1, 2)]), Digraph(2, [(1, 2)]),
              Assignment([True]), *_structured_instances()]
    for v in values:
        assert parse_any(serialize_any(v)) == v or isinstance(v, Assignment)
