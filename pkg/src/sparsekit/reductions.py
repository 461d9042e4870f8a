"""Stand-alone polynomial-time transformations between problems.

Each reduction is a pure function returning the output instance together
with a :class:`ReductionTrace` exposing exact sizes and the deterministic
name-to-index maps of the construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .instances import (
    CnfFormula,
    Digraph,
    Graph,
    Hypergraph,
    InvariantError,
    TsdInstance,
)


@dataclass
class ReductionTrace:
    name: str
    input_size: dict[str, int] = field(default_factory=dict)
    output_size: dict[str, int] = field(default_factory=dict)
    index_map: dict[str, int] = field(default_factory=dict)
    notes: dict[str, int | str] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "input_size": dict(sorted(self.input_size.items())),
            "output_size": dict(sorted(self.output_size.items())),
            "index_map": dict(sorted(self.index_map.items())),
            "notes": dict(sorted(self.notes.items())),
        }


def pos_vertex(i: int) -> int:
    """Hypergraph vertex of the positive literal of variable i."""
    return 2 * i - 1


def neg_vertex(i: int) -> int:
    """Hypergraph vertex of the negative literal of variable i."""
    return 2 * i


def naesat_to_hypergraph(f: CnfFormula) -> tuple[Hypergraph, ReductionTrace]:
    """Encode NAE-satisfiability as hypergraph 2-colorability.

    Vertices 2i-1 and 2i stand for the two literals of variable i.  One
    edge per clause (in clause order) is followed by the n structural pair
    edges {2i-1, 2i}; the result is 2-colorable iff the formula has a
    NAE-satisfying assignment.
    """
    n = f.num_vars
    edges: list[tuple[int, ...]] = []
    for clause in f.clauses:
        edges.append(tuple(sorted(
            pos_vertex(l) if l > 0 else neg_vertex(-l) for l in clause)))
    for i in range(1, n + 1):
        edges.append((pos_vertex(i), neg_vertex(i)))
    h = Hypergraph(2 * n, edges)
    trace = ReductionTrace("naesat-hyp")
    trace.input_size = {"vars": n, "clauses": f.num_clauses}
    trace.output_size = {"vertices": 2 * n, "edges": len(edges),
                         "pair_edges": n}
    for i in range(1, n + 1):
        trace.index_map[f"x{i}"] = pos_vertex(i)
        trace.index_map[f"~x{i}"] = neg_vertex(i)
    return h, trace


def cnfsat_to_naesat(f: CnfFormula) -> CnfFormula:
    """Add one fresh variable as a positive literal to every clause; the
    result is NAE-satisfiable iff the input is satisfiable."""
    fresh = f.num_vars + 1
    return CnfFormula(fresh, [clause + (fresh,) for clause in f.clauses])


def _canonical_no_tsd() -> TsdInstance:
    # one X vertex adjacent to a whole triangle: its {1,2} color cannot
    # avoid all three triangle colors
    g = Graph(4, [(2, 3), (2, 4), (3, 4), (1, 2), (1, 3), (1, 4)])
    return TsdInstance(g, [1], [(2, 3, 4)])


def naesat3_to_tsd(f: CnfFormula) -> tuple[TsdInstance, ReductionTrace]:
    """NAE-SAT with clauses of size <= 3 to 2-3-coloring with triangle
    split decomposition.

    Literal vertices form the independent set X; one inequality triangle
    per variable forces the two literal colors apart, and one triangle per
    surviving clause forces its literal colors to be non-constant.  Clauses
    containing a complementary pair are dropped (always NAE-satisfied); a
    size-1 clause makes the whole instance a canonical NO.
    """
    if f.max_clause_size > 3:
        raise InvariantError("naesat3_to_tsd requires clauses of size <= 3")
    trace = ReductionTrace("naesat3-tsd")
    trace.input_size = {"vars": f.num_vars, "clauses": f.num_clauses}
    if any(len(c) == 0 for c in f.clauses):
        inst = _canonical_no_tsd()
        trace.notes["degenerate"] = "size-0 clause: canonical NO instance"
        trace.output_size = {"vertices": inst.graph.num_vertices,
                             "x_vertices": 1, "triangles": 1}
        return inst, trace

    n = f.num_vars
    lit_vertex = {}
    for i in range(1, n + 1):
        lit_vertex[i] = 2 * i - 1
        lit_vertex[-i] = 2 * i
        trace.index_map[f"x{i}"] = 2 * i - 1
        trace.index_map[f"~x{i}"] = 2 * i
    next_vertex = 2 * n + 1
    edges: list[tuple[int, int]] = []
    triangles: list[tuple[int, int, int]] = []

    def add_triangle(label: str) -> tuple[int, int, int]:
        nonlocal next_vertex
        t = (next_vertex, next_vertex + 1, next_vertex + 2)
        next_vertex += 3
        edges.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
        triangles.append(t)
        for idx, name in enumerate(("a", "b", "c")):
            trace.index_map[f"{label}.{name}"] = t[idx]
        return t

    def add_inequality(u: int, v: int, label: str) -> None:
        # triangle (a,b,c) with edges u-a, u-c, v-b pins color(v) to the
        # flip of color(u) within {1,2}
        a, b, c = add_triangle(label)
        edges.extend([(u, a), (u, c), (v, b)])

    for i in range(1, n + 1):
        add_inequality(lit_vertex[i], lit_vertex[-i], f"var{i}")

    clause_triangles = 0
    for idx, clause in enumerate(f.clauses, start=1):
        if any(-l in clause for l in clause):
            continue  # complementary pair: NAE-satisfied by every assignment
        if len(clause) == 1:
            inst = _canonical_no_tsd()
            trace.notes["degenerate"] = "size-1 clause: canonical NO instance"
            trace.output_size = {"vertices": inst.graph.num_vertices,
                                 "x_vertices": 1, "triangles": 1}
            return inst, trace
        clause_triangles += 1
        if len(clause) == 2:
            add_inequality(lit_vertex[clause[0]], lit_vertex[clause[1]],
                           f"cl{idx}")
        else:
            # triangle (p1,p2,p3) with edges literal_j-p_j: a rainbow
            # coloring of the triangle exists iff the literal colors are
            # not all equal
            t = add_triangle(f"cl{idx}")
            for j, lit in enumerate(clause):
                edges.append((lit_vertex[lit], t[j]))

    g = Graph(next_vertex - 1, edges)
    inst = TsdInstance(g, range(1, 2 * n + 1), triangles)
    trace.output_size = {"vertices": g.num_vertices,
                         "x_vertices": 2 * n,
                         "triangles": len(triangles),
                         "clause_triangles": clause_triangles}
    return inst, trace


def directed_hc_to_undirected(d: Digraph) -> tuple[Graph, ReductionTrace]:
    """Karp's transformation: vertex v becomes the path in-mid-out and each
    arc (u,v) becomes the edge {u.out, v.in}; exactly 3n vertices, with a
    Hamiltonian cycle iff the digraph has a directed one."""
    n = d.num_vertices
    trace = ReductionTrace("hc-karp")
    trace.input_size = {"vertices": n, "arcs": len(d.arcs)}

    def v_in(v: int) -> int:
        return 3 * v - 2

    def v_mid(v: int) -> int:
        return 3 * v - 1

    def v_out(v: int) -> int:
        return 3 * v

    edges: list[tuple[int, int]] = []
    for v in range(1, n + 1):
        edges.append((v_in(v), v_mid(v)))
        edges.append((v_mid(v), v_out(v)))
        trace.index_map[f"in{v}"] = v_in(v)
        trace.index_map[f"mid{v}"] = v_mid(v)
        trace.index_map[f"out{v}"] = v_out(v)
    for u, v in d.sorted_arcs():
        edges.append((v_out(u), v_in(v)))
    g = Graph(3 * n, edges)
    trace.output_size = {"vertices": 3 * n, "edges": len(g.edges)}
    return g, trace
