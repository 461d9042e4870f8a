"""Seeded random instance generators.

Every generator is deterministic in (params, seed) and only draws from the
package's counter-based Rng, so corpora are reproducible bit-for-bit.

The ``plant`` argument selects the distribution:

* ``natural``  plain random instance;
* ``yes``      a solution is generated first and the instance built around
  it, so the answer is guaranteed YES;
* ``no``       natural instances are resampled until the oracle answers NO
  (bounded retries; instances are desk-scale so this is cheap).
"""

from __future__ import annotations

from itertools import permutations

from . import oracles
from .instances import (
    BipartiteHamInstance,
    CnfFormula,
    Digraph,
    EqColRbdsInstance,
    Graph,
    Hypergraph,
    TsdInstance,
)
from .oracles import Limits
from .rng import Rng

_MAX_RESAMPLE = 200
_GEN_LIMITS = Limits(time_limit=None)


class GeneratorError(ValueError):
    """Unsatisfiable generator parameters or exhausted resampling."""


def _resample_no(make, solve, what: str):
    for _ in range(_MAX_RESAMPLE):
        inst = make()
        if solve(inst).verdict == oracles.NO:
            return inst
    raise GeneratorError(f"could not sample a NO {what} instance; "
                         f"parameters look too easy")


# --------------------------------------------------------------------------
# hypergraphs and formulas


def gen_hypergraph(n: int, d: int, num_edges: int, rng: Rng,
                   plant: str = "natural") -> Hypergraph:
    if n < 2 or d < 2:
        raise GeneratorError("need n >= 2 and d >= 2")
    max_size = min(d, n)

    def natural() -> Hypergraph:
        edges = []
        for _ in range(num_edges):
            size = rng.randint(2, max_size)
            edges.append(tuple(sorted(rng.sample(range(1, n + 1), size))))
        return Hypergraph(n, edges)

    if plant == "natural":
        return natural()
    if plant == "no":
        return _resample_no(natural, oracles.solve_hypergraph_2col, "hypergraph")
    if plant == "yes":
        side_one = rng.randint(1, n - 1)
        one = set(rng.sample(range(1, n + 1), side_one))
        edges = []
        while len(edges) < num_edges:
            size = rng.randint(2, max_size)
            e = rng.sample(range(1, n + 1), size)
            if any(v in one for v in e) and any(v not in one for v in e):
                edges.append(tuple(sorted(e)))
        return Hypergraph(n, edges)
    raise GeneratorError(f"unknown plant mode {plant!r}")


def gen_cnf(n: int, d: int, num_clauses: int, rng: Rng,
            plant: str = "natural", problem: str = "nae") -> CnfFormula:
    if n < 2 or d < 2:
        raise GeneratorError("need n >= 2 and d >= 2")
    max_size = min(d, n)

    def random_clause() -> tuple[int, ...]:
        size = rng.randint(2, max_size)
        variables = rng.sample(range(1, n + 1), size)
        return tuple(v if rng.chance(0.5) else -v for v in variables)

    def natural() -> CnfFormula:
        return CnfFormula(n, [random_clause() for _ in range(num_clauses)])

    if plant == "natural":
        return natural()
    if plant == "no":
        solve = oracles.solve_nae if problem == "nae" else oracles.solve_sat
        return _resample_no(natural, lambda f: solve(f, _GEN_LIMITS), problem)
    if plant == "yes":
        truth = [rng.chance(0.5) for _ in range(n)]

        def satisfied(clause) -> bool:
            values = [truth[abs(l) - 1] == (l > 0) for l in clause]
            if problem == "nae":
                return any(values) and not all(values)
            return any(values)

        clauses = []
        while len(clauses) < num_clauses:
            clause = random_clause()
            if satisfied(clause):
                clauses.append(clause)
        return CnfFormula(n, clauses)
    raise GeneratorError(f"unknown plant mode {plant!r}")


# --------------------------------------------------------------------------
# structured instances


def gen_tsd(m: int, n: int, rng: Rng, density: float = 0.35,
            plant: str = "natural") -> TsdInstance:
    """m independent-set vertices 1..m, n triangles on m+1..m+3n."""
    if m < 1 or n < 1:
        raise GeneratorError("need m >= 1 and n >= 1")
    triangles = [(m + 3 * g + 1, m + 3 * g + 2, m + 3 * g + 3) for g in range(n)]
    tri_edges = [e for t in triangles
                 for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))]

    def build(edge_ok) -> TsdInstance:
        edges = list(tri_edges)
        for u in range(1, m + 1):
            for v in range(m + 1, m + 3 * n + 1):
                if rng.chance(density) and edge_ok(u, v):
                    edges.append((u, v))
        return TsdInstance(Graph(m + 3 * n, edges), range(1, m + 1), triangles)

    if plant == "natural":
        return build(lambda u, v: True)
    if plant == "no":
        return _resample_no(lambda: build(lambda u, v: True),
                            lambda i: oracles.solve_tsd(i, _GEN_LIMITS), "tsd")
    if plant == "yes":
        color = {}
        for u in range(1, m + 1):
            color[u] = rng.randint(1, 2)
        for t in triangles:
            perm = rng.choice(list(permutations((1, 2, 3))))
            for v, c in zip(t, perm):
                color[v] = c
        return build(lambda u, v: color[u] != color[v])
    raise GeneratorError(f"unknown plant mode {plant!r}")


def gen_bipartite_ham(m: int, rng: Rng, density: float = 0.5,
                      plant: str = "natural", n: int | None = None) -> BipartiteHamInstance:
    """A = 1..m, B = m+1..2m+1 with s = m+1 and t = 2m+1 of degree 1."""
    if m < 1:
        raise GeneratorError("need m >= 1")
    if n is not None and n != m + 1:
        raise GeneratorError(f"need n = m + 1, got m={m}, n={n}")
    n = m + 1
    side_a = list(range(1, m + 1))
    side_b = list(range(m + 1, m + n + 1))
    s, t = side_b[0], side_b[-1]
    inner_b = side_b[1:-1]

    def build(forced: list[tuple[int, int]], noise_ok) -> BipartiteHamInstance:
        edges = set(forced)
        for a in side_a:
            for b in inner_b:
                if rng.chance(density) and noise_ok(a, b):
                    edges.add((a, b))
        return BipartiteHamInstance(Graph(m + n, edges), side_a, side_b, s, t)

    if plant == "yes":
        # plant the path s, a_p1, b_p1, a_p2, ..., b_p(m-1), a_pm, t
        a_perm = list(side_a)
        rng.shuffle(a_perm)
        b_perm = list(inner_b)
        rng.shuffle(b_perm)
        path = [s]
        for i, a in enumerate(a_perm):
            path.append(a)
            path.append(b_perm[i] if i < len(b_perm) else t)
        forced = [(path[i], path[i + 1]) for i in range(len(path) - 1)]
        return build(forced, lambda a, b: True)

    def natural() -> BipartiteHamInstance:
        forced = [(rng.choice(side_a), s), (rng.choice(side_a), t)]
        return build(forced, lambda a, b: True)

    if plant == "natural":
        return natural()
    if plant == "no":
        return _resample_no(natural,
                            lambda i: oracles.solve_ham_path_st(i, _GEN_LIMITS),
                            "bipartite-ham")
    raise GeneratorError(f"unknown plant mode {plant!r}")


def gen_eq_col_rbds(k: int, class_size: int, num_blue: int, rng: Rng,
                    density: float = 0.3, plant: str = "natural") -> EqColRbdsInstance:
    """k red classes of equal size followed by the blue vertices; every
    blue vertex receives at least one edge (the isolated-blue class is
    degenerate for the composition)."""
    if k < 1 or class_size < 1 or num_blue < 1:
        raise GeneratorError("need k, class size, and blue count >= 1")
    m = k * class_size
    classes = [tuple(range(p * class_size + 1, (p + 1) * class_size + 1))
               for p in range(k)]
    reds = list(range(1, m + 1))
    blues = list(range(m + 1, m + num_blue + 1))

    def finish(edges: set[tuple[int, int]]) -> EqColRbdsInstance:
        for r in reds:
            for b in blues:
                if rng.chance(density):
                    edges.add((r, b))
        adj_blue = {b: False for b in blues}
        for r, b in edges:
            adj_blue[b] = True
        for b in blues:
            if not adj_blue[b]:
                edges.add((rng.choice(reds), b))
        return EqColRbdsInstance(Graph(m + num_blue, edges), classes, blues)

    if plant == "yes":
        chosen = [rng.choice(cls) for cls in classes]
        edges = {(rng.choice(chosen), b) for b in blues}
        return finish(edges)

    def natural() -> EqColRbdsInstance:
        return finish(set())

    if plant == "natural":
        return natural()
    if plant == "no":
        return _resample_no(natural,
                            lambda i: oracles.solve_col_rbds(i, _GEN_LIMITS),
                            "eq-col-rbds")
    raise GeneratorError(f"unknown plant mode {plant!r}")


def gen_digraph(n: int, num_arcs: int, rng: Rng,
                plant: str = "natural") -> Digraph:
    if n < 2:
        raise GeneratorError("need n >= 2")
    all_arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    num_arcs = min(num_arcs, len(all_arcs))

    def natural() -> Digraph:
        return Digraph(n, rng.sample(all_arcs, num_arcs))

    if plant == "natural":
        return natural()
    if plant == "no":
        return _resample_no(natural,
                            lambda d: oracles.solve_ham_cycle(d, _GEN_LIMITS),
                            "digraph")
    if plant == "yes":
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        arcs = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
        pool = [a for a in all_arcs if a not in arcs]
        extra = max(0, num_arcs - len(arcs))
        arcs.update(rng.sample(pool, min(extra, len(pool))))
        return Digraph(n, arcs)
    raise GeneratorError(f"unknown plant mode {plant!r}")


def gen_graph(n: int, num_edges: int, rng: Rng) -> Graph:
    if n < 1:
        raise GeneratorError("need n >= 1")
    all_edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return Graph(n, rng.sample(all_edges, min(num_edges, len(all_edges))))


# --------------------------------------------------------------------------
# dispatch (CLI surface)

GEN_KINDS = ("hyp", "cnf", "tsd", "bipartite-ham", "eq-col-rbds", "digraph", "graph")


def generate(kind: str, params: dict, seed: int, plant: str = "natural"):
    rng = Rng(seed)
    if kind == "hyp":
        return gen_hypergraph(params.get("n", 10), params.get("d", 3),
                              params.get("edges", 3 * params.get("n", 10)),
                              rng, plant)
    if kind == "cnf":
        return gen_cnf(params.get("n", 8), params.get("d", 4),
                       params.get("clauses", 3 * params.get("n", 8)),
                       rng, plant, params.get("problem", "nae"))
    if kind == "tsd":
        return gen_tsd(params.get("m", 3), params.get("n", 2), rng,
                       params.get("density", 0.35), plant)
    if kind == "bipartite-ham":
        return gen_bipartite_ham(params.get("m", 2), rng,
                                 params.get("density", 0.5), plant,
                                 n=params.get("n"))
    if kind == "eq-col-rbds":
        return gen_eq_col_rbds(params.get("k", 2), params.get("class_size", 2),
                               params.get("n", 3), rng,
                               params.get("density", 0.3), plant)
    if kind == "digraph":
        return gen_digraph(params.get("n", 6), params.get("arcs", 12), rng, plant)
    if kind == "graph":
        return gen_graph(params.get("n", 6), params.get("edges", 9), rng)
    raise GeneratorError(f"unknown generator kind {kind!r}")
