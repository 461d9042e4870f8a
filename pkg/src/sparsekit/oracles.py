"""Exact exponential-time decision procedures with certificates.

Every solver is complete within its configured caps and returns an
:class:`OracleAnswer`; a ``yes`` verdict always carries a certificate that
``check_certificate`` accepts (asserted before returning).  Search orders
are fixed (most-constrained first, lowest index as tie-break, colors and
neighbors ascending) so that verdict, certificate, and explored node count
are reproducible for a fixed instance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .certificates import check_certificate
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

YES = "yes"
NO = "no"
TIMEOUT = "timeout"


class OracleRefused(RuntimeError):
    """Instance exceeds a hard cap; distinct from a timeout."""


@dataclass(frozen=True)
class Limits:
    node_budget: int = 10**8
    time_limit: Optional[float] = 60.0
    var_cap: int = 24          # sat/nae variables and 2col vertices
    budget_cap: int = 6        # dominating-set budget for subset search
    dp_vertex_cap: int = 20    # digraph size handled by the subset DP engine


DEFAULT_LIMITS = Limits()


@dataclass
class OracleStats:
    nodes: int = 0
    elapsed: float = 0.0


@dataclass
class OracleAnswer:
    verdict: str
    certificate: object = None
    stats: OracleStats = field(default_factory=OracleStats)


class _OutOfBudget(Exception):
    pass


class _Budget:
    def __init__(self, limits: Limits):
        self.nodes = 0
        self.node_budget = limits.node_budget
        self.deadline = (None if limits.time_limit is None
                         else time.monotonic() + limits.time_limit)
        self.t0 = time.monotonic()

    def step(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self.node_budget:
            raise _OutOfBudget
        if self.deadline is not None and (self.nodes & 0xFFF) == 0:
            if time.monotonic() > self.deadline:
                raise _OutOfBudget

    def stats(self) -> OracleStats:
        return OracleStats(nodes=self.nodes, elapsed=time.monotonic() - self.t0)


def _answer(budget: _Budget, verdict: str, cert=None, di: DecisionInstance | None = None):
    if verdict == YES:
        assert di is not None and check_certificate(di, cert), \
            "oracle produced an invalid certificate"
    return OracleAnswer(verdict, cert, budget.stats())


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


# --------------------------------------------------------------------------
# SAT / NAE-SAT by exhaustive assignment enumeration


def _clause_masks(f: CnfFormula) -> list[tuple[int, int]]:
    out = []
    for clause in f.clauses:
        pos = neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << (lit - 1)
            else:
                neg |= 1 << (-lit - 1)
        out.append((pos, neg))
    return out


def solve_sat(f: CnfFormula, limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    return _solve_assignments(f, limits, nae=False)


def solve_nae(f: CnfFormula, limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    return _solve_assignments(f, limits, nae=True)


def _solve_assignments(f: CnfFormula, limits: Limits, nae: bool) -> OracleAnswer:
    if f.num_vars > limits.var_cap:
        raise OracleRefused(
            f"{f.num_vars} variables exceeds the cap of {limits.var_cap}")
    budget = _Budget(limits)
    masks = _clause_masks(f)
    full = (1 << f.num_vars) - 1
    problem = "nae" if nae else "sat"
    try:
        for assign in range(1 << f.num_vars):
            budget.step()
            ok = True
            for pos, neg in masks:
                has_true = (assign & pos) or (~assign & full & neg)
                if nae:
                    has_false = (~assign & full & pos) or (assign & neg)
                    if not (has_true and has_false):
                        ok = False
                        break
                elif not has_true:
                    ok = False
                    break
            if ok:
                cert = Assignment([(assign >> i) & 1 == 1 for i in range(f.num_vars)])
                return _answer(budget, YES, cert, DecisionInstance(problem, f))
        return _answer(budget, NO)
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)


def solve_hypergraph_2col(h: Hypergraph, limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    if h.num_vertices > limits.var_cap:
        raise OracleRefused(
            f"{h.num_vertices} vertices exceeds the cap of {limits.var_cap}")
    budget = _Budget(limits)
    masks = [sum(1 << (v - 1) for v in e) for e in h.edges]
    if any(not e for e in h.edges):  # an empty edge is always monochromatic
        return _answer(budget, NO)
    try:
        for coloring in range(1 << h.num_vertices):
            budget.step()
            ok = True
            for m in masks:
                inter = coloring & m
                if inter == 0 or inter == m:
                    ok = False
                    break
            if ok:
                cert = Coloring([1 if (coloring >> i) & 1 else 2
                                 for i in range(h.num_vertices)])
                return _answer(budget, YES, cert, DecisionInstance("2col", h))
        return _answer(budget, NO)
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)


# --------------------------------------------------------------------------
# list coloring / k-coloring / 2-3-coloring by backtracking search


def _greedy_clique(n: int, adj: list[int], max_size: int) -> list[int]:
    if n == 0:
        return []
    deg = [adj[v].bit_count() for v in range(n)]
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    clique = [order[0]]
    common = adj[order[0]]
    for v in order[1:]:
        if len(clique) >= max_size:
            break
        if (common >> v) & 1:
            clique.append(v)
            common &= adj[v]
    return clique


def _search_coloring(n: int, adj: list[int], domains: list[int],
                     budget: _Budget) -> Optional[list[int]]:
    """Backtracking with singleton propagation, most-constrained ordering,
    and independent solving of disconnected unassigned regions.

    ``adj`` holds 0-based neighbor bitmasks, ``domains`` per-vertex color
    bitmasks.  Returns 0-based color indices or None.
    """
    neighbors = [list(_bits(adj[v])) for v in range(n)]
    full = (1 << n) - 1

    def propagate(dom: list[int], fixed: int, stack: list[int]) -> int:
        """Assign queued singletons transitively; -1 on a wipe-out."""
        while stack:
            u = stack.pop()
            if (fixed >> u) & 1:
                continue
            d = dom[u]
            if d & (d - 1):
                continue
            fixed |= 1 << u
            for w in neighbors[u]:
                if not (fixed >> w) & 1 and dom[w] & d:
                    dom[w] &= ~d
                    rem = dom[w]
                    if rem == 0:
                        return -1
                    if rem & (rem - 1) == 0:
                        stack.append(w)
        return fixed

    def components(active: int) -> list[int]:
        comps = []
        remaining = active
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for v in _bits(frontier):
                    grow |= adj[v]
                frontier = grow & active & ~comp
                comp |= frontier
            comps.append(comp)
            remaining &= ~comp
        return comps

    def rec(dom: list[int], fixed: int, scope: int) -> Optional[list[int]]:
        active = scope & ~fixed
        if active == 0:
            return dom
        comps = components(active)
        if len(comps) > 1:
            # no edges cross components: solve each region independently
            for comp in comps:
                sub = rec(dom[:], fixed | (active & ~comp), comp)
                if sub is None:
                    return None
                for v in _bits(comp):
                    dom[v] = sub[v]
                fixed |= comp
            return dom
        best, best_key = -1, (99, 0)
        for v in _bits(active):
            key = (dom[v].bit_count(), v)
            if key < best_key:
                best, best_key = v, key
        for c in _bits(dom[best]):
            budget.step()
            dom2 = dom[:]
            dom2[best] = 1 << c
            fixed2 = propagate(dom2, fixed, [best])
            if fixed2 >= 0:
                result = rec(dom2, fixed2, scope)
                if result is not None:
                    return result
        return None

    dom0 = domains[:]
    seeds = [v for v in range(n) if dom0[v].bit_count() == 1]
    fixed0 = propagate(dom0, 0, seeds)
    if fixed0 < 0:
        return None
    final = rec(dom0, fixed0, full)
    if final is None:
        return None
    return [d.bit_length() - 1 for d in final]


def _adj_masks(g: Graph) -> list[int]:
    adj = [0] * g.num_vertices
    for u, v in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return adj


def _run_coloring(g: Graph, domains: list[int], limits: Limits,
                  di: DecisionInstance | None, pin_clique_colors: int = 0) -> OracleAnswer:
    budget = _Budget(limits)
    adj = _adj_masks(g)
    n = g.num_vertices
    if pin_clique_colors:
        # interchangeable colors: pinning a clique is sound for plain k-coloring
        for i, v in enumerate(_greedy_clique(n, adj, pin_clique_colors)):
            domains[v] = 1 << i
    try:
        colors = _search_coloring(n, adj, domains, budget)
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)
    if colors is None:
        return _answer(budget, NO)
    cert = Coloring([c + 1 for c in colors])
    if di is None:
        # plain k-coloring with k != 4 is an internal helper; validate locally
        assert all(cert.color(u) != cert.color(v) for u, v in g.edges)
        return OracleAnswer(YES, cert, budget.stats())
    return _answer(budget, YES, cert, di)


def solve_graph_coloring(g: Graph, num_colors: int,
                         limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    domains = [(1 << num_colors) - 1] * g.num_vertices
    di = DecisionInstance("4col", g) if num_colors == 4 else None
    return _run_coloring(g, domains, limits, di, pin_clique_colors=num_colors)


def solve_list_coloring(inst: ListColoringInstance,
                        limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    domains = [sum(1 << (c - 1) for c in l) for l in inst.lists]
    return _run_coloring(inst.graph, domains, limits,
                         DecisionInstance("list4col", inst))


def solve_tsd(inst: TsdInstance, limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    x = set(inst.independent_set)
    domains = [0b011 if v in x else 0b111
               for v in range(1, inst.graph.num_vertices + 1)]
    return _run_coloring(inst.graph, domains, limits, DecisionInstance("23col", inst))


# --------------------------------------------------------------------------
# Hamiltonian cycles and paths


def _digraph_masks(d: Digraph) -> tuple[list[int], list[int]]:
    n = d.num_vertices
    out = [0] * n
    inn = [0] * n
    for u, v in d.arcs:
        out[u - 1] |= 1 << (v - 1)
        inn[v - 1] |= 1 << (u - 1)
    return out, inn


def _reach(frontier: int, allowed: int, masks: list[int]) -> int:
    reach = frontier & allowed
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~reach
        reach |= frontier
    return reach


def _hc_backtrack(n: int, out: list[int], inn: list[int],
                  budget: _Budget) -> Optional[list[int]]:
    """Directed Hamiltonian cycle through vertex 0; returns 0-based order."""
    full = (1 << n) - 1
    start_bit = 1

    def rec(endpoint: int, visited: int, path: list[int]) -> Optional[list[int]]:
        if visited == full:
            return path[:] if (out[endpoint] >> 0) & 1 else None
        unvisited = full & ~visited
        # every unvisited vertex still needs a way in and a way out
        for v in _bits(unvisited):
            if out[v] & (unvisited | start_bit) == 0:
                return None
            if inn[v] & (unvisited | (1 << endpoint)) == 0:
                return None
        # unvisited region must be reachable from the endpoint and reach start
        if _reach(out[endpoint], unvisited, out) != unvisited:
            return None
        if _reach(inn[0], unvisited, inn) != unvisited:
            return None
        succs = sorted(_bits(out[endpoint] & unvisited),
                       key=lambda s: ((out[s] & unvisited).bit_count(), s))
        for s in succs:
            budget.step()
            path.append(s)
            result = rec(s, visited | (1 << s), path)
            if result is not None:
                return result
            path.pop()
        return None

    return rec(0, 1, [0])


def _hc_subset_dp(n: int, out: list[int], inn: list[int],
                  budget: _Budget) -> Optional[list[int]]:
    """Held-Karp style reachability DP from vertex 0; returns 0-based order."""
    full = (1 << n) - 1
    dp = [0] * (1 << n)
    dp[1] = 1
    for s in range(1, 1 << n):
        ends = dp[s]
        if not ends:
            continue
        for v in _bits(ends):
            budget.step()
            for w in _bits(out[v] & ~s):
                dp[s | (1 << w)] |= 1 << w
    closers = [v for v in _bits(dp[full]) if v != 0 and (out[v] >> 0) & 1]
    if not closers:
        return None
    v = min(closers)
    order = [v]
    s = full
    while s != 1:
        prev_s = s & ~(1 << v)
        u = min(u for u in _bits(dp[prev_s]) if (out[u] >> v) & 1)
        order.append(u)
        v, s = u, prev_s
    order.reverse()
    return order


def solve_ham_cycle(g, limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    """Hamiltonian cycle for Graph or Digraph instances.

    Digraphs small enough for the subset DP are solved exactly without
    heuristics; everything else uses pruned backtracking.
    """
    budget = _Budget(limits)
    if isinstance(g, Digraph):
        out, inn = _digraph_masks(g)
        n = g.num_vertices
        if n < 2:
            return _answer(budget, NO)
        di = DecisionInstance("dhc", g)
        engine = _hc_subset_dp if n <= limits.dp_vertex_cap else _hc_backtrack
    elif isinstance(g, Graph):
        n = g.num_vertices
        if n < 3:
            return _answer(budget, NO)
        adj = _adj_masks(g)
        out = inn = adj
        di = DecisionInstance("hc", g)
        engine = _hc_backtrack
    else:
        raise TypeError("expected Graph or Digraph")
    try:
        order = engine(n, out, inn, budget)
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)
    if order is None:
        return _answer(budget, NO)
    return _answer(budget, YES, HamCycle([v + 1 for v in order]), di)


def solve_ham_path_st(inst: BipartiteHamInstance,
                      limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    budget = _Budget(limits)
    g = inst.graph
    n = g.num_vertices
    adj = _adj_masks(g)
    s, t = inst.s - 1, inst.t - 1
    full = (1 << n) - 1
    t_bit = 1 << t

    def rec(endpoint: int, visited: int, path: list[int]) -> Optional[list[int]]:
        if visited == full:
            return path[:] if endpoint == t else None
        unvisited = full & ~visited
        if endpoint == t:
            return None
        allowed = unvisited | t_bit
        if _reach(adj[endpoint], allowed, adj) & allowed != allowed:
            return None
        for v in _bits(unvisited & ~t_bit):
            if (adj[v] & (unvisited | (1 << endpoint))).bit_count() < 2:
                return None
        for nxt in _bits(adj[endpoint] & unvisited):
            budget.step()
            path.append(nxt)
            result = rec(nxt, visited | (1 << nxt), path)
            if result is not None:
                return result
            path.pop()
        return None

    try:
        order = rec(s, 1 << s, [s])
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)
    if order is None:
        return _answer(budget, NO)
    return _answer(budget, YES, HamCycle([v + 1 for v in order]),
                   DecisionInstance("hamst", inst))


# --------------------------------------------------------------------------
# dominating set and col-RBDS


def solve_dom_set(g: Graph, budget_size: int, connected: bool = False,
                  limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    if budget_size > limits.budget_cap:
        raise OracleRefused(
            f"budget {budget_size} exceeds the cap of {limits.budget_cap}")
    budget = _Budget(limits)
    n = g.num_vertices
    adj = _adj_masks(g)
    closed = [adj[v] | (1 << v) for v in range(n)]
    full = (1 << n) - 1
    problem = "cds" if connected else "ds"
    di = DecisionInstance(problem, g, budget=budget_size)

    def connected_ok(chosen_mask: int) -> bool:
        if chosen_mask == 0:
            return n == 0
        start = (chosen_mask & -chosen_mask).bit_length() - 1
        return _reach(1 << start, chosen_mask, adj) | (1 << start) == chosen_mask

    def rec(chosen: list[int], chosen_mask: int, dominated: int) -> Optional[list[int]]:
        budget.step()
        if dominated == full:
            if not connected or connected_ok(chosen_mask):
                return chosen[:]
            if len(chosen) >= budget_size:
                return None
            # dominated but disconnected: only vertices adjacent to the
            # current set can merge its components
            grow = 0
            for v in chosen:
                grow |= adj[v]
            candidates = grow & ~chosen_mask
        else:
            if len(chosen) >= budget_size:
                return None
            undominated = full & ~dominated
            u = min(_bits(undominated), key=lambda v: (closed[v].bit_count(), v))
            candidates = closed[u]
        for w in _bits(candidates):
            chosen.append(w)
            result = rec(chosen, chosen_mask | (1 << w), dominated | closed[w])
            chosen.pop()
            if result is not None:
                return result
        return None

    if n == 0:
        return _answer(budget, YES, DomSet([]), di)
    try:
        found = rec([], 0, 0)
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)
    if found is None:
        return _answer(budget, NO)
    return _answer(budget, YES, DomSet([v + 1 for v in found]), di)


def solve_col_rbds(inst: EqColRbdsInstance,
                   limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    budget = _Budget(limits)
    adj = _adj_masks(inst.graph)
    blue_mask = sum(1 << (b - 1) for b in inst.blue)
    di = DecisionInstance("colrbds", inst)

    def rec(idx: int, chosen: list[int], dominated: int) -> Optional[list[int]]:
        if idx == len(inst.red_classes):
            return chosen[:] if dominated & blue_mask == blue_mask else None
        for v in inst.red_classes[idx]:
            budget.step()
            chosen.append(v)
            result = rec(idx + 1, chosen, dominated | adj[v - 1])
            chosen.pop()
            if result is not None:
                return result
        return None

    try:
        found = rec(0, [], 0)
    except _OutOfBudget:
        return _answer(budget, TIMEOUT)
    if found is None:
        return _answer(budget, NO)
    return _answer(budget, YES, DomSet(found), di)


# --------------------------------------------------------------------------
# dispatcher


def solve_decision(di: DecisionInstance, limits: Limits = DEFAULT_LIMITS) -> OracleAnswer:
    p = di.problem
    if p == "sat":
        return solve_sat(di.instance, limits)
    if p == "nae":
        return solve_nae(di.instance, limits)
    if p == "2col":
        return solve_hypergraph_2col(di.instance, limits)
    if p == "4col":
        return solve_graph_coloring(di.instance, 4, limits)
    if p == "list4col":
        return solve_list_coloring(di.instance, limits)
    if p == "23col":
        return solve_tsd(di.instance, limits)
    if p in ("hc", "dhc"):
        return solve_ham_cycle(di.instance, limits)
    if p == "hamst":
        return solve_ham_path_st(di.instance, limits)
    if p == "ds":
        return solve_dom_set(di.instance, di.budget, connected=False, limits=limits)
    if p == "cds":
        return solve_dom_set(di.instance, di.budget, connected=True, limits=limits)
    if p == "colrbds":
        return solve_col_rbds(di.instance, limits)
    raise ValueError(f"unknown problem {p!r}")
