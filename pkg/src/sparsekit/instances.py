"""Core instance types: formulas, hypergraphs, graphs, and structured instances.

All values are immutable after construction and validated eagerly, so any
instance that exists is a legal one.  Vertices and variables are 1-indexed
to match DIMACS conventions.  Literals are signed integers DIMACS-style:
``+v`` is the positive literal of variable ``v``, ``-v`` the negative one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


class InvariantError(ValueError):
    """An instance or certificate violates a structural invariant."""


# --------------------------------------------------------------------------
# literals and formulas


def lit_var(lit: int) -> int:
    return abs(lit)


def lit_positive(lit: int) -> bool:
    return lit > 0


def canonical_clause(literals: Iterable[int]) -> tuple[int, ...]:
    """Deduplicate and sort a clause by (variable, polarity), positive first.

    A clause containing both x and -x is kept as-is; simplification is a
    transformation concern, not a representation one.
    """
    seen = set()
    for lit in literals:
        if not isinstance(lit, int) or lit == 0:
            raise InvariantError(f"bad literal {lit!r}")
        seen.add(lit)
    return tuple(sorted(seen, key=lambda l: (abs(l), l < 0)))


@dataclass(frozen=True)
class CnfFormula:
    """CNF formula; clause order is significant (kernel basis selection).

    Empty clauses are representable (they make the formula a trivial NO for
    both SAT and NAE-SAT) but are only ever produced deliberately.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __init__(self, num_vars: int, clauses: Iterable[Iterable[int]]):
        if num_vars < 0:
            raise InvariantError("num_vars must be >= 0")
        canon = tuple(canonical_clause(c) for c in clauses)
        for c in canon:
            for lit in c:
                if abs(lit) > num_vars:
                    raise InvariantError(
                        f"literal {lit} out of range for {num_vars} variables")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", canon)

    @property
    def max_clause_size(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


# --------------------------------------------------------------------------
# hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    """Vertex set [n] with an ordered list of hyperedges.

    Edge order is preserved by every operation in this package: kernel
    basis selection depends on it.  Repeated edges are allowed; an empty
    edge is representable (it is monochromatic under any coloring, hence a
    trivial NO for 2-coloring).
    """

    num_vertices: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, num_vertices: int, edges: Iterable[Iterable[int]]):
        if num_vertices < 0:
            raise InvariantError("num_vertices must be >= 0")
        canon = []
        for e in edges:
            se = tuple(sorted(e))
            if len(set(se)) != len(se):
                raise InvariantError(f"edge {se} has a repeated vertex")
            for v in se:
                if not 1 <= v <= num_vertices:
                    raise InvariantError(f"vertex {v} out of range")
            canon.append(se)
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def max_edge_size(self) -> int:
        return max((len(e) for e in self.edges), default=0)


# --------------------------------------------------------------------------
# graphs


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges stored with smaller endpoint first."""

    num_vertices: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int]]):
        if num_vertices < 0:
            raise InvariantError("num_vertices must be >= 0")
        norm = set()
        for u, v in edges:
            if u == v:
                raise InvariantError(f"self-loop at vertex {u}")
            if not (1 <= u <= num_vertices and 1 <= v <= num_vertices):
                raise InvariantError(f"edge ({u},{v}) out of range")
            norm.add(_norm_edge(u, v))
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "edges", frozenset(norm))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def adjacency(self) -> list[set[int]]:
        """Neighbor sets indexed 1..n (index 0 unused)."""
        adj: list[set[int]] = [set() for _ in range(self.num_vertices + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


@dataclass(frozen=True)
class Digraph:
    """Simple directed graph without self-loops."""

    num_vertices: int
    arcs: frozenset[tuple[int, int]]

    def __init__(self, num_vertices: int, arcs: Iterable[tuple[int, int]]):
        if num_vertices < 0:
            raise InvariantError("num_vertices must be >= 0")
        norm = set()
        for u, v in arcs:
            if u == v:
                raise InvariantError(f"self-loop at vertex {u}")
            if not (1 <= u <= num_vertices and 1 <= v <= num_vertices):
                raise InvariantError(f"arc ({u},{v}) out of range")
            norm.add((u, v))
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "arcs", frozenset(norm))

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def out_adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.num_vertices + 1)]
        for u, v in self.arcs:
            adj[u].add(v)
        return adj


# --------------------------------------------------------------------------
# structured instances


@dataclass(frozen=True)
class TsdInstance:
    """Graph with a triangle split decomposition.

    ``independent_set`` (X) induces no edges; the triangles partition the
    remaining vertices and are exactly the edges among them.  The decision
    question is whether a proper 3-coloring exists that uses only colors
    {1,2} on X.
    """

    graph: Graph
    independent_set: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]

    def __init__(self, graph: Graph,
                 independent_set: Iterable[int],
                 triangles: Iterable[tuple[int, int, int]]):
        x = tuple(sorted(set(independent_set)))
        tris = tuple(tuple(sorted(t)) for t in triangles)
        y_union: set[int] = set()
        for t in tris:
            if len(set(t)) != 3:
                raise InvariantError(f"triangle {t} has repeated vertices")
            if y_union & set(t):
                raise InvariantError("triangles are not pairwise disjoint")
            y_union |= set(t)
            for a, b in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
                if not graph.has_edge(a, b):
                    raise InvariantError(f"triple {t} does not induce a triangle")
        all_v = set(range(1, graph.num_vertices + 1))
        if set(x) & y_union:
            raise InvariantError("independent set overlaps the triangles")
        if set(x) | y_union != all_v:
            raise InvariantError("X and the triangles do not cover all vertices")
        tri_of = {v: i for i, t in enumerate(tris) for v in t}
        for u, v in graph.edges:
            if u in tri_of and v in tri_of and tri_of[u] != tri_of[v]:
                raise InvariantError(f"edge ({u},{v}) joins two distinct triangles")
            if u not in tri_of and v not in tri_of:
                raise InvariantError(f"edge ({u},{v}) lies inside the independent set")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "independent_set", x)
        object.__setattr__(self, "triangles", tris)

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)


@dataclass(frozen=True)
class BipartiteHamInstance:
    """Bipartite graph with |B| = |A| + 1 and degree-1 endpoints s, t in B.

    The decision question is whether a Hamiltonian path from s to t exists.
    """

    graph: Graph
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    s: int
    t: int

    def __init__(self, graph: Graph, side_a: Iterable[int],
                 side_b: Iterable[int], s: int, t: int):
        a = tuple(sorted(set(side_a)))
        b = tuple(sorted(set(side_b)))
        if set(a) & set(b):
            raise InvariantError("sides A and B overlap")
        if set(a) | set(b) != set(range(1, graph.num_vertices + 1)):
            raise InvariantError("sides A and B do not cover all vertices")
        if len(b) != len(a) + 1:
            raise InvariantError("|B| must equal |A| + 1")
        for u, v in graph.edges:
            if (u in set(a)) == (v in set(a)):
                raise InvariantError(f"edge ({u},{v}) is not between A and B")
        if s not in b or t not in b or s == t:
            raise InvariantError("s and t must be distinct vertices of B")
        adj = graph.adjacency()
        for endpoint in (s, t):
            if len(adj[endpoint]) != 1:
                raise InvariantError(f"endpoint {endpoint} must have degree 1")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def b_order(self) -> list[int]:
        """Canonical enumeration of B: s first, t last, rest sorted."""
        inner = [v for v in self.side_b if v not in (self.s, self.t)]
        return [self.s] + inner + [self.t]


@dataclass(frozen=True)
class EqColRbdsInstance:
    """Red/blue bipartite graph with equal-sized red color classes.

    The decision question: pick exactly one red vertex per class so that
    every blue vertex has a chosen neighbor.
    """

    graph: Graph
    red_classes: tuple[tuple[int, ...], ...]
    blue: tuple[int, ...]

    def __init__(self, graph: Graph,
                 red_classes: Iterable[Iterable[int]],
                 blue: Iterable[int]):
        classes = tuple(tuple(sorted(set(c))) for c in red_classes)
        b = tuple(sorted(set(blue)))
        if not classes:
            raise InvariantError("need at least one color class")
        sizes = {len(c) for c in classes}
        if len(sizes) != 1:
            raise InvariantError("color classes must have equal sizes")
        red: set[int] = set()
        for c in classes:
            if red & set(c):
                raise InvariantError("color classes overlap")
            red |= set(c)
        if red & set(b):
            raise InvariantError("red and blue sets overlap")
        if red | set(b) != set(range(1, graph.num_vertices + 1)):
            raise InvariantError("red and blue do not cover all vertices")
        for u, v in graph.edges:
            if (u in red) == (v in red):
                raise InvariantError(f"edge ({u},{v}) is not between red and blue")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "red_classes", classes)
        object.__setattr__(self, "blue", b)

    @property
    def k(self) -> int:
        return len(self.red_classes)

    @property
    def num_red(self) -> int:
        return sum(len(c) for c in self.red_classes)

    def has_isolated_blue(self) -> bool:
        adj = self.graph.adjacency()
        return any(not adj[v] for v in self.blue)


PALETTE = (1, 2, 3, 4)
COLOR_NAMES = {1: "x", 2: "y", 3: "z", 4: "a"}


@dataclass(frozen=True)
class ListColoringInstance:
    """Graph plus per-vertex allowed-color lists over the 4-color palette."""

    graph: Graph
    lists: tuple[tuple[int, ...], ...]

    def __init__(self, graph: Graph, lists: Iterable[Iterable[int]]):
        canon = tuple(tuple(sorted(set(l))) for l in lists)
        if len(canon) != graph.num_vertices:
            raise InvariantError("need one color list per vertex")
        for i, l in enumerate(canon, start=1):
            if not l:
                raise InvariantError(f"vertex {i} has an empty color list")
            for c in l:
                if c not in PALETTE:
                    raise InvariantError(f"color {c} outside the palette")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "lists", canon)


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Assignment:
    """Truth assignment, value of variable i at position i-1."""

    values: tuple[bool, ...]

    def __init__(self, values: Iterable[bool]):
        object.__setattr__(self, "values", tuple(bool(v) for v in values))

    def value(self, lit: int) -> bool:
        v = self.values[abs(lit) - 1]
        return v if lit > 0 else not v


@dataclass(frozen=True)
class Coloring:
    """Vertex coloring, color of vertex i at position i-1."""

    colors: tuple[int, ...]

    def __init__(self, colors: Iterable[int]):
        object.__setattr__(self, "colors", tuple(int(c) for c in colors))

    def color(self, v: int) -> int:
        return self.colors[v - 1]


@dataclass(frozen=True)
class HamCycle:
    """Vertex order of a Hamiltonian cycle (closing edge implied)."""

    order: tuple[int, ...]

    def __init__(self, order: Iterable[int]):
        object.__setattr__(self, "order", tuple(int(v) for v in order))


@dataclass(frozen=True)
class DomSet:
    """Chosen vertex set for (connected) dominating set or col-RBDS."""

    vertices: tuple[int, ...]

    def __init__(self, vertices: Iterable[int]):
        object.__setattr__(self, "vertices", tuple(sorted(set(int(v) for v in vertices))))


Certificate = Assignment | Coloring | HamCycle | DomSet


# --------------------------------------------------------------------------
# decision instances

PROBLEMS = (
    "sat",       # CnfFormula satisfiability
    "nae",       # CnfFormula not-all-equal satisfiability
    "2col",      # Hypergraph 2-colorability
    "4col",      # Graph proper 4-coloring
    "list4col",  # ListColoringInstance
    "23col",     # TsdInstance 2-3-coloring
    "hc",        # Graph Hamiltonian cycle
    "dhc",       # Digraph Hamiltonian cycle
    "hamst",     # BipartiteHamInstance Hamiltonian s-t path
    "ds",        # Graph dominating set of size <= budget
    "cds",       # Graph connected dominating set of size <= budget
    "colrbds",   # EqColRbdsInstance
)

_PROBLEM_TYPES = {
    "sat": CnfFormula,
    "nae": CnfFormula,
    "2col": Hypergraph,
    "4col": Graph,
    "list4col": ListColoringInstance,
    "23col": TsdInstance,
    "hc": Graph,
    "dhc": Digraph,
    "hamst": BipartiteHamInstance,
    "ds": Graph,
    "cds": Graph,
    "colrbds": EqColRbdsInstance,
}

_BUDGETED = ("ds", "cds")


@dataclass(frozen=True)
class DecisionInstance:
    """Tagged union pairing a problem name with an instance (plus DS budget)."""

    problem: str
    instance: object
    budget: Optional[int] = None

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise InvariantError(f"unknown problem {self.problem!r}")
        want = _PROBLEM_TYPES[self.problem]
        if not isinstance(self.instance, want):
            raise InvariantError(
                f"problem {self.problem!r} expects {want.__name__}, "
                f"got {type(self.instance).__name__}")
        if (self.budget is not None) != (self.problem in _BUDGETED):
            raise InvariantError(
                f"budget must be present iff problem is ds/cds (got {self.problem!r})")
        if self.budget is not None and self.budget < 0:
            raise InvariantError("budget must be >= 0")
