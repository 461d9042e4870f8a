"""Polynomial-time certificate checkers for every supported problem.

``check_certificate`` is the single entry point used by the oracles, the
verification harness, and the CLI.  It never searches: it only validates a
proposed solution against the instance, in time polynomial in the instance
size.
"""

from __future__ import annotations

from .instances import (
    Assignment,
    BipartiteHamInstance,
    CnfFormula,
    Coloring,
    DecisionInstance,
    Digraph,
    DomSet,
    EqColRbdsInstance,
    Graph,
    HamCycle,
    Hypergraph,
    ListColoringInstance,
    TsdInstance,
)


class CertificateMismatch(TypeError):
    """The certificate variant does not fit the instance's problem."""


def _require(cert, want, problem):
    if not isinstance(cert, want):
        raise CertificateMismatch(
            f"problem {problem!r} expects a {want.__name__} certificate, "
            f"got {type(cert).__name__}")


def _check_sat(f: CnfFormula, a: Assignment) -> bool:
    if len(a.values) != f.num_vars:
        return False
    return all(any(a.value(l) for l in clause) for clause in f.clauses)


def _check_nae(f: CnfFormula, a: Assignment) -> bool:
    if len(a.values) != f.num_vars:
        return False
    for clause in f.clauses:
        values = [a.value(l) for l in clause]
        if not (any(values) and not all(values)):
            return False
    return True


def _check_2col(h: Hypergraph, c: Coloring) -> bool:
    if len(c.colors) != h.num_vertices:
        return False
    if any(col not in (1, 2) for col in c.colors):
        return False
    for e in h.edges:
        colors = {c.color(v) for v in e}
        if len(colors) <= 1:  # an empty edge is monochromatic too
            return False
    return True


def _proper(g: Graph, c: Coloring) -> bool:
    return all(c.color(u) != c.color(v) for u, v in g.edges)


def _check_kcol(g: Graph, c: Coloring, k: int) -> bool:
    if len(c.colors) != g.num_vertices:
        return False
    if any(not 1 <= col <= k for col in c.colors):
        return False
    return _proper(g, c)


def _check_list4col(inst: ListColoringInstance, c: Coloring) -> bool:
    if len(c.colors) != inst.graph.num_vertices:
        return False
    for v in range(1, inst.graph.num_vertices + 1):
        if c.color(v) not in inst.lists[v - 1]:
            return False
    return _proper(inst.graph, c)


def _check_tsd(inst: TsdInstance, c: Coloring) -> bool:
    if len(c.colors) != inst.graph.num_vertices:
        return False
    if any(not 1 <= col <= 3 for col in c.colors):
        return False
    if any(c.color(v) not in (1, 2) for v in inst.independent_set):
        return False
    return _proper(inst.graph, c)


def _check_hc_graph(g: Graph, cyc: HamCycle) -> bool:
    n = g.num_vertices
    if n < 3 or sorted(cyc.order) != list(range(1, n + 1)):
        return False
    return all(g.has_edge(cyc.order[i], cyc.order[(i + 1) % n]) for i in range(n))


def _check_hc_digraph(d: Digraph, cyc: HamCycle) -> bool:
    n = d.num_vertices
    if n < 2 or sorted(cyc.order) != list(range(1, n + 1)):
        return False
    return all((cyc.order[i], cyc.order[(i + 1) % n]) in d.arcs for i in range(n))


def _check_hamst(inst: BipartiteHamInstance, path: HamCycle) -> bool:
    # reuses the permutation certificate; order is the path, not cyclic
    n = inst.graph.num_vertices
    if sorted(path.order) != list(range(1, n + 1)):
        return False
    if path.order[0] != inst.s or path.order[-1] != inst.t:
        return False
    return all(inst.graph.has_edge(path.order[i], path.order[i + 1])
               for i in range(n - 1))


def _dominates(g: Graph, chosen: set[int]) -> bool:
    adj = g.adjacency()
    for v in range(1, g.num_vertices + 1):
        if v not in chosen and not (adj[v] & chosen):
            return False
    return True


def _induced_connected(g: Graph, chosen: set[int]) -> bool:
    if not chosen:
        return g.num_vertices == 0
    adj = g.adjacency()
    start = min(chosen)
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in adj[v] & chosen:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen == chosen


def _check_ds(g: Graph, budget: int, ds: DomSet, connected: bool) -> bool:
    chosen = set(ds.vertices)
    if len(chosen) > budget:
        return False
    if any(not 1 <= v <= g.num_vertices for v in chosen):
        return False
    if not _dominates(g, chosen):
        return False
    return _induced_connected(g, chosen) if connected else True


def _check_colrbds(inst: EqColRbdsInstance, ds: DomSet) -> bool:
    chosen = set(ds.vertices)
    for cls in inst.red_classes:
        if len(chosen & set(cls)) != 1:
            return False
    if len(chosen) != inst.k:
        return False
    adj = inst.graph.adjacency()
    return all(adj[b] & chosen for b in inst.blue)


def check_certificate(di: DecisionInstance, cert) -> bool:
    """True iff ``cert`` is a valid solution of ``di``.

    Raises CertificateMismatch when the certificate variant does not match
    the instance's problem.
    """
    p = di.problem
    if p == "sat":
        _require(cert, Assignment, p)
        return _check_sat(di.instance, cert)
    if p == "nae":
        _require(cert, Assignment, p)
        return _check_nae(di.instance, cert)
    if p == "2col":
        _require(cert, Coloring, p)
        return _check_2col(di.instance, cert)
    if p == "4col":
        _require(cert, Coloring, p)
        return _check_kcol(di.instance, cert, 4)
    if p == "list4col":
        _require(cert, Coloring, p)
        return _check_list4col(di.instance, cert)
    if p == "23col":
        _require(cert, Coloring, p)
        return _check_tsd(di.instance, cert)
    if p == "hc":
        _require(cert, HamCycle, p)
        return _check_hc_graph(di.instance, cert)
    if p == "dhc":
        _require(cert, HamCycle, p)
        return _check_hc_digraph(di.instance, cert)
    if p == "hamst":
        _require(cert, HamCycle, p)
        return _check_hamst(di.instance, cert)
    if p == "ds":
        _require(cert, DomSet, p)
        return _check_ds(di.instance, di.budget, cert, connected=False)
    if p == "cds":
        _require(cert, DomSet, p)
        return _check_ds(di.instance, di.budget, cert, connected=True)
    if p == "colrbds":
        _require(cert, DomSet, p)
        return _check_colrbds(di.instance, cert)
    raise CertificateMismatch(f"unknown problem {p!r}")
