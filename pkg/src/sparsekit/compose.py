"""OR-compositions: embed t same-class instances into one instance whose
answer is the OR of the inputs.

All three constructions share the same batch discipline: the inputs are
padded to t = 4^i >= 4 copies (duplicating instance 0, which leaves the OR
unchanged), arranged in a q x q table with q = sqrt(t), and indexed
X[i][j] with flat position (i-1)*q + (j-1).

Alongside each construction lives a certificate builder that realizes the
constructive direction of its correctness argument: given the index of a
YES input and that input's solution, it produces a solution of the
composed instance that the polynomial-time checker accepts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .gadgets import (
    IdAssignment,
    PathGadget,
    Treegadget,
    build_treegadget,
    certify_triangular_gadget,
    id_assignment,
)
from .instances import (
    BipartiteHamInstance,
    Coloring,
    Digraph,
    DomSet,
    EqColRbdsInstance,
    Graph,
    HamCycle,
    TsdInstance,
)
from .reductions import ReductionTrace


class BatchError(ValueError):
    """Mismatched equivalence classes or an otherwise unusable batch."""


BATCH_KINDS = ("tsd", "ham", "rbds")


def batch_signature(inst, kind: str) -> tuple:
    if kind == "tsd":
        return (len(inst.independent_set), inst.num_triangles)
    if kind == "ham":
        return (len(inst.side_a), len(inst.side_b))
    if kind == "rbds":
        # instances with an isolated blue vertex form their own class
        return (inst.num_red, len(inst.blue), inst.k, inst.has_isolated_blue())
    raise BatchError(f"unknown batch kind {kind!r}")


@dataclass(frozen=True)
class PaddedBatch:
    kind: str
    instances: tuple
    original_count: int

    @property
    def padded_count(self) -> int:
        return len(self.instances)

    @property
    def q(self) -> int:
        return isqrt(self.padded_count)

    def at(self, i: int, j: int):
        """Instance X[i][j] for 1-based table coordinates."""
        return self.instances[(i - 1) * self.q + (j - 1)]


def pad_batch(instances, kind: str) -> PaddedBatch:
    """Pad to the next power of four (at least 4) by duplicating the first
    instance; the OR of the answers is unchanged."""
    instances = tuple(instances)
    if kind not in BATCH_KINDS:
        raise BatchError(f"unknown batch kind {kind!r}")
    if not instances:
        raise BatchError("need at least one instance")
    expected = {
        "tsd": TsdInstance, "ham": BipartiteHamInstance, "rbds": EqColRbdsInstance,
    }[kind]
    signatures = set()
    for inst in instances:
        if not isinstance(inst, expected):
            raise BatchError(
                f"batch kind {kind!r} expects {expected.__name__} instances")
        signatures.add(batch_signature(inst, kind))
    if len(signatures) != 1:
        raise BatchError(f"mixed equivalence classes in batch: {sorted(signatures)}")
    t = 4
    while t < len(instances):
        t *= 4
    padded = instances + (instances[0],) * (t - len(instances))
    return PaddedBatch(kind, padded, len(instances))


def _complete_coloring(num_vertices: int, edges, allowed: list[tuple[int, ...]],
                       order=None) -> list[int] | None:
    """Backtracking completion of a partial coloring on a small gadget."""
    order = list(order) if order is not None else list(range(num_vertices))
    rank = {v: i for i, v in enumerate(order)}
    earlier: list[list[int]] = [[] for _ in range(num_vertices)]
    for a, b in edges:
        if rank[a] < rank[b]:
            earlier[b].append(a)
        else:
            earlier[a].append(b)
    colors = [0] * num_vertices

    def rec(pos: int):
        if pos == num_vertices:
            return True
        v = order[pos]
        for c in allowed[v]:
            if all(colors[u] != c for u in earlier[v]):
                colors[v] = c
                if rec(pos + 1):
                    return True
        return False

    return colors if rec(0) else None


# --------------------------------------------------------------------------
# 4-coloring composition

X, Y, Z, A = 1, 2, 3, 4


@dataclass
class _FourColStruct:
    q: int
    m: int
    n: int
    num_vertices: int          # before the palette clique
    edges: set[tuple[int, int]]
    lists: dict[int, tuple[int, ...]]
    gs: Treegadget
    gs_offset: int
    gt: Treegadget
    gt_offset: int

    def s_vertex(self, i: int, ell: int) -> int:
        return (i - 1) * self.m + ell

    def gadget_base(self, j: int, g: int) -> int:
        return self.q * self.m + (((j - 1) * self.n) + (g - 1)) * 12

    def corner(self, j: int, ell: int) -> int:
        # corner vertices t[j][1..3n]; gadget g holds corners 3g-2..3g
        g, offset = divmod(ell - 1, 3)
        return self.gadget_base(j, g + 1) + offset + 1

    def inner_vertices(self, j: int, g: int) -> list[int]:
        base = self.gadget_base(j, g)
        return [base + local + 1 for local in certify_triangular_gadget().inner]

    def palette_vertex(self, color: int) -> int:
        return self.num_vertices + color


def _add_edge(edges: set, a: int, b: int) -> None:
    edges.add((a, b) if a < b else (b, a))


def _tsd_enumeration(inst: TsdInstance) -> tuple[dict[int, int], dict[int, int]]:
    """1-based positions: u-index for X vertices, v-index for triangle
    vertices (triangle g occupies positions 3g-2..3g)."""
    u_pos = {v: idx for idx, v in enumerate(inst.independent_set, start=1)}
    v_pos = {}
    for g, tri in enumerate(inst.triangles):
        for off, v in enumerate(tri):
            v_pos[v] = 3 * g + off + 1
    return u_pos, v_pos


def _build_four_col(batch: PaddedBatch) -> _FourColStruct:
    if batch.kind != "tsd":
        raise BatchError("4-coloring composition expects a tsd batch")
    q = batch.q
    m, n = batch_signature(batch.instances[0], "tsd")
    gadget = certify_triangular_gadget()
    gs = build_treegadget(q)
    gt = build_treegadget(2 * q)
    num_plain = q * m + 12 * n * q
    gs_offset = num_plain
    gt_offset = gs_offset + gs.num_vertices
    num_vertices = gt_offset + gt.num_vertices
    struct = _FourColStruct(q, m, n, num_vertices, set(), {}, gs, gs_offset, gt, gt_offset)
    edges = struct.edges

    # step 1: vertex groups S_i with lists {x,y,a}
    for i in range(1, q + 1):
        for ell in range(1, m + 1):
            struct.lists[struct.s_vertex(i, ell)] = (X, Y, A)

    # step 2: groups T_j of triangular gadgets; corners {x,y,z}, inner all 4
    for j in range(1, q + 1):
        for g in range(1, n + 1):
            base = struct.gadget_base(j, g)
            for a, b in gadget.edges:
                _add_edge(edges, base + a + 1, base + b + 1)
            for local in gadget.corners:
                struct.lists[base + local + 1] = (X, Y, Z)
            for local in gadget.inner:
                struct.lists[base + local + 1] = (X, Y, Z, A)

    # step 3: replicate instance X[i][j] between S_i and the corners of T_j
    for i in range(1, q + 1):
        for j in range(1, q + 1):
            inst = batch.at(i, j)
            u_pos, v_pos = _tsd_enumeration(inst)
            for a, b in inst.graph.edges:
                if a in v_pos and b in v_pos:
                    continue  # triangle edges are realized by the gadgets
                u, v = (a, b) if a in u_pos else (b, a)
                _add_edge(edges, struct.s_vertex(i, u_pos[u]),
                          struct.corner(j, v_pos[v]))

    # step 4: selector treegadget over the S groups; root restricted to {x,y}
    for a, b in gs.edges:
        _add_edge(edges, gs_offset + a + 1, gs_offset + b + 1)
    for v in range(gs.num_vertices):
        struct.lists[gs_offset + v + 1] = (X, Y, A)
    struct.lists[gs_offset + gs.root + 1] = (X, Y)
    for i in range(1, q + 1):
        leaf = gs_offset + gs.leaves[i - 1] + 1
        for ell in range(1, m + 1):
            _add_edge(edges, leaf, struct.s_vertex(i, ell))

    # step 5: selector treegadget over the T groups; odd leaves watch the
    # inner vertices, even leaves and the root are restricted to {y,z}
    for a, b in gt.edges:
        _add_edge(edges, gt_offset + a + 1, gt_offset + b + 1)
    for v in range(gt.num_vertices):
        struct.lists[gt_offset + v + 1] = (Y, Z, A)
    struct.lists[gt_offset + gt.root + 1] = (Y, Z)
    for idx in range(1, 2 * q + 1):
        leaf = gt_offset + gt.leaves[idx - 1] + 1
        if idx % 2 == 0:
            struct.lists[leaf] = (Y, Z)
        else:
            j = (idx + 1) // 2
            for g in range(1, n + 1):
                for inner_v in struct.inner_vertices(j, g):
                    _add_edge(edges, leaf, inner_v)
    return struct


def compose_four_coloring(batch: PaddedBatch) -> tuple[Graph, ReductionTrace]:
    """Steps 1-5 of the list-coloring construction, then a 4-clique whose
    vertices personify the palette to enforce the lists; the result is
    4-colorable iff some input is 2-3-colorable."""
    struct = _build_four_col(batch)
    edges = set(struct.edges)
    total = struct.num_vertices + 4
    for c1 in range(1, 5):
        for c2 in range(c1 + 1, 5):
            _add_edge(edges, struct.palette_vertex(c1), struct.palette_vertex(c2))
    for v, allowed in struct.lists.items():
        for color in (X, Y, Z, A):
            if color not in allowed:
                _add_edge(edges, v, struct.palette_vertex(color))
    graph = Graph(total, edges)

    trace = ReductionTrace("compose-4col")
    trace.input_size = {"instances": batch.original_count, "t": batch.padded_count,
                        "q": struct.q, "m": struct.m, "n": struct.n}
    trace.output_size = {"vertices": total, "edges": len(graph.edges)}
    for i in range(1, struct.q + 1):
        for ell in range(1, struct.m + 1):
            trace.index_map[f"s[{i}][{ell}]"] = struct.s_vertex(i, ell)
    for j in range(1, struct.q + 1):
        for ell in range(1, 3 * struct.n + 1):
            trace.index_map[f"t[{j}][{ell}]"] = struct.corner(j, ell)
    trace.index_map["GS.root"] = struct.gs_offset + struct.gs.root + 1
    for i, leaf in enumerate(struct.gs.leaves, start=1):
        trace.index_map[f"GS.leaf{i}"] = struct.gs_offset + leaf + 1
    trace.index_map["GT.root"] = struct.gt_offset + struct.gt.root + 1
    for i, leaf in enumerate(struct.gt.leaves, start=1):
        trace.index_map[f"GT.leaf{i}"] = struct.gt_offset + leaf + 1
    for color, name in ((X, "x"), (Y, "y"), (Z, "z"), (A, "a")):
        trace.index_map[f"palette.{name}"] = struct.palette_vertex(color)
    return graph, trace


def _extend_treegadget(tg: Treegadget, offset: int, leaf_colors: list[int],
                       internal_allowed: tuple[int, ...],
                       root_allowed: tuple[int, ...],
                       assign: dict[int, int]) -> None:
    """Complete a treegadget coloring from fixed leaf colors (leaf order of
    tg.leaves); writes 1-based vertex colors into ``assign``."""
    allowed: list[tuple[int, ...]] = [internal_allowed] * tg.num_vertices
    allowed[tg.root] = root_allowed
    for leaf, color in zip(tg.leaves, leaf_colors):
        allowed[leaf] = (color,)
    # leaves carry the constraints; color them first
    order = sorted(range(tg.num_vertices), key=lambda v: -v)
    colors = _complete_coloring(tg.num_vertices, tg.edges, allowed, order)
    assert colors is not None, "treegadget extension must exist"
    for v, c in enumerate(colors):
        assign[offset + v + 1] = c


def four_coloring_certificate(batch: PaddedBatch, star: int,
                              inner: Coloring) -> Coloring:
    """Composed 4-coloring built from a 2-3-coloring of input ``star``
    (flat 0-based index), following the constructive correctness argument."""
    struct = _build_four_col(batch)
    q, m, n = struct.q, struct.m, struct.n
    i_star, j_star = star // q + 1, star % q + 1
    inst = batch.at(i_star, j_star)
    u_pos, v_pos = _tsd_enumeration(inst)
    gadget = certify_triangular_gadget()
    assign: dict[int, int] = {}

    for i in range(1, q + 1):
        for ell in range(1, m + 1):
            assign[struct.s_vertex(i, ell)] = A
    for v, pos in u_pos.items():
        assign[struct.s_vertex(i_star, pos)] = inner.color(v)
    for j in range(1, q + 1):
        for ell in range(1, 3 * n + 1):
            assign[struct.corner(j, ell)] = Z
    for v, pos in v_pos.items():
        assign[struct.corner(j_star, pos)] = inner.color(v)

    # inner vertices of the triangular gadgets: rainbow corners extend
    # within {x,y,z}; all-z corners extend within {x,y,a}
    for j in range(1, q + 1):
        palette = (X, Y, Z) if j == j_star else (X, Y, A)
        for g in range(1, n + 1):
            base = struct.gadget_base(j, g)
            allowed: list[tuple[int, ...]] = [()] * 12
            for local in gadget.corners:
                allowed[local] = (assign[base + local + 1],)
            for local in gadget.inner:
                allowed[local] = palette
            colors = _complete_coloring(12, gadget.edges, allowed)
            assert colors is not None, "triangular gadget extension must exist"
            for local in gadget.inner:
                assign[base + local + 1] = colors[local]

    # selector gadgets: exactly the chosen group's leaf takes color a
    gs_leaf_colors = []
    for i in range(1, q + 1):
        gs_leaf_colors.append(A if i == i_star else (X if i % 2 == 1 else Y))
    _extend_treegadget(struct.gs, struct.gs_offset, gs_leaf_colors,
                       (X, Y, A), (X, Y), assign)
    gt_leaf_colors = []
    for idx in range(1, 2 * q + 1):
        if idx % 2 == 0:
            gt_leaf_colors.append(Y)
        else:
            gt_leaf_colors.append(A if (idx + 1) // 2 == j_star else Z)
    _extend_treegadget(struct.gt, struct.gt_offset, gt_leaf_colors,
                       (Y, Z, A), (Y, Z), assign)

    for color in (X, Y, Z, A):
        assign[struct.palette_vertex(color)] = color
    return Coloring([assign[v] for v in range(1, struct.num_vertices + 5)])


# --------------------------------------------------------------------------
# Hamiltonicity composition


@dataclass
class _HamStruct:
    q: int
    m: int
    n: int
    num_vertices: int
    start: int
    end: int
    next_v: int

    def a_base(self, i: int, k: int) -> int:
        return 3 * ((i - 1) * self.m + (k - 1))

    def b_base(self, j: int, ell: int) -> int:
        return 3 * self.m * self.q + 3 * ((j - 1) * self.n + (ell - 1))

    # path gadget terminals (1-based vertex ids)
    def a_in0(self, i, k):
        return self.a_base(i, k) + 1

    def a_mid(self, i, k):
        return self.a_base(i, k) + 2

    def a_in1(self, i, k):
        return self.a_base(i, k) + 3

    def b_in0(self, j, ell):
        return self.b_base(j, ell) + 1

    def b_mid(self, j, ell):
        return self.b_base(j, ell) + 2

    def b_in1(self, j, ell):
        return self.b_base(j, ell) + 3

    def sel_x(self, i: int) -> int:
        return 3 * (self.m + self.n) * self.q + 3 + 3 * (i - 1) + 1

    def sel_y(self, i: int) -> int:
        return self.sel_x(i) + 1

    def sel_z(self, i: int) -> int:
        return self.sel_x(i) + 2


def _build_ham(batch: PaddedBatch) -> tuple[_HamStruct, set[tuple[int, int]]]:
    if batch.kind != "ham":
        raise BatchError("Hamiltonicity composition expects a ham batch")
    q = batch.q
    m, n = batch_signature(batch.instances[0], "ham")
    r = q - 1
    base = 3 * (m + n) * q
    struct = _HamStruct(q, m, n, base + 3 + 6 * r,
                        start=base + 1, end=base + 2, next_v=base + 3)
    pg = PathGadget()
    arcs: set[tuple[int, int]] = set()

    def gadget_arcs(b: int):
        for a_local, b_local in pg.arcs:
            arcs.add((b + a_local + 1, b + b_local + 1))

    # step 1: q groups of m and of n path gadgets
    for i in range(1, q + 1):
        for k in range(1, m + 1):
            gadget_arcs(struct.a_base(i, k))
    for j in range(1, q + 1):
        for ell in range(1, n + 1):
            gadget_arcs(struct.b_base(j, ell))

    # step 2: instance edges as arcs between in0 and in1 terminals
    for i in range(1, q + 1):
        for j in range(1, q + 1):
            inst = batch.at(i, j)
            a_pos = {v: idx for idx, v in enumerate(inst.side_a, start=1)}
            b_pos = {v: idx for idx, v in enumerate(inst.b_order(), start=1)}
            for u, v in inst.graph.edges:
                av, bv = (u, v) if u in a_pos else (v, u)
                k, ell = a_pos[av], b_pos[bv]
                arcs.add((struct.a_in0(i, k), struct.b_in1(j, ell)))
                arcs.add((struct.b_in0(j, ell), struct.a_in1(i, k)))

    # step 3: chain arcs inside every group
    for i in range(1, q + 1):
        for k in range(1, m):
            arcs.add((struct.a_in1(i, k), struct.a_in0(i, k + 1)))
        for ell in range(1, n):
            arcs.add((struct.b_in1(i, ell), struct.b_in0(i, ell + 1)))

    # steps 4-5: start/end and the selector chain x_i, y_i, z_i
    arcs.add((struct.end, struct.start))
    r = q - 1
    arcs.add((struct.start, struct.sel_x(1)))
    for i in range(1, 2 * r + 1):
        arcs.add((struct.sel_y(i), struct.sel_z(i)))
        if i < 2 * r:
            arcs.add((struct.sel_z(i), struct.sel_x(i + 1)))
    arcs.add((struct.sel_z(2 * r), struct.next_v))

    # step 6: x_i feeds every A group (i <= r) or B group (i > r)
    for i in range(1, r + 1):
        for j in range(1, q + 1):
            arcs.add((struct.sel_x(i), struct.a_in0(j, 1)))
            arcs.add((struct.a_in1(j, m), struct.sel_y(i)))
    for i in range(r + 1, 2 * r + 1):
        for j in range(1, q + 1):
            arcs.add((struct.sel_x(i), struct.b_in0(j, 1)))
            arcs.add((struct.b_in1(j, n), struct.sel_y(i)))

    # steps 7-8: next enters the b_1 gadgets, the b_n gadgets exit to end
    for j in range(1, q + 1):
        arcs.add((struct.next_v, struct.b_in1(j, 1)))
        arcs.add((struct.b_in0(j, n), struct.end))
    return struct, arcs


def compose_hamiltonicity(batch: PaddedBatch) -> tuple[Digraph, ReductionTrace]:
    """Directed Hamiltonian-cycle instance acting as the OR of Hamiltonian
    s-t path inputs; 3(m+n)q + 6(q-1) + 3 vertices."""
    struct, arcs = _build_ham(batch)
    digraph = Digraph(struct.num_vertices, arcs)
    trace = ReductionTrace("compose-hamcycle")
    trace.input_size = {"instances": batch.original_count, "t": batch.padded_count,
                        "q": struct.q, "m": struct.m, "n": struct.n}
    trace.output_size = {"vertices": struct.num_vertices, "arcs": len(digraph.arcs)}
    for i in range(1, struct.q + 1):
        for k in range(1, struct.m + 1):
            trace.index_map[f"a[{i}][{k}].in0"] = struct.a_in0(i, k)
            trace.index_map[f"a[{i}][{k}].in1"] = struct.a_in1(i, k)
        for ell in range(1, struct.n + 1):
            trace.index_map[f"b[{i}][{ell}].in0"] = struct.b_in0(i, ell)
            trace.index_map[f"b[{i}][{ell}].in1"] = struct.b_in1(i, ell)
    trace.index_map["start"] = struct.start
    trace.index_map["end"] = struct.end
    trace.index_map["next"] = struct.next_v
    for i in range(1, 2 * (struct.q - 1) + 1):
        trace.index_map[f"x{i}"] = struct.sel_x(i)
        trace.index_map[f"y{i}"] = struct.sel_y(i)
        trace.index_map[f"z{i}"] = struct.sel_z(i)
    return digraph, trace


def hamiltonicity_certificate(batch: PaddedBatch, star: int,
                              st_path: HamCycle) -> HamCycle:
    """Composed Hamiltonian cycle from a Hamiltonian s-t path of input
    ``star``: the solution groups run via Path 1, every other group is
    swept via Path 0 from its selector."""
    struct, _ = _build_ham(batch)
    q, m, n = struct.q, struct.m, struct.n
    r = q - 1
    i_star, j_star = star // q + 1, star % q + 1
    inst = batch.at(i_star, j_star)
    a_pos = {v: idx for idx, v in enumerate(inst.side_a, start=1)}
    b_pos = {v: idx for idx, v in enumerate(inst.b_order(), start=1)}

    seq = [struct.start]
    for i in range(1, r + 1):
        g = i if i < i_star else i + 1
        seq.append(struct.sel_x(i))
        for k in range(1, m + 1):   # Path 0: in0, mid, in1
            seq.extend((struct.a_in0(g, k), struct.a_mid(g, k), struct.a_in1(g, k)))
        seq.extend((struct.sel_y(i), struct.sel_z(i)))
    for i in range(r + 1, 2 * r + 1):
        g = (i - r) if (i - r) < j_star else (i - r) + 1
        seq.append(struct.sel_x(i))
        for ell in range(1, n + 1):
            seq.extend((struct.b_in0(g, ell), struct.b_mid(g, ell), struct.b_in1(g, ell)))
        seq.extend((struct.sel_y(i), struct.sel_z(i)))
    seq.append(struct.next_v)
    for v in st_path.order:         # Path 1: in1, mid, in0
        if v in b_pos:
            ell = b_pos[v]
            seq.extend((struct.b_in1(j_star, ell), struct.b_mid(j_star, ell),
                        struct.b_in0(j_star, ell)))
        else:
            k = a_pos[v]
            seq.extend((struct.a_in1(i_star, k), struct.a_mid(i_star, k),
                        struct.a_in0(i_star, k)))
    seq.append(struct.end)
    return HamCycle(seq)


# --------------------------------------------------------------------------
# Dominating-set composition


@dataclass
class _DsStruct:
    q: int
    m: int
    n: int
    k: int
    per_color: int
    log_q: int
    ids: IdAssignment
    num_vertices: int
    s_prime: int
    s: int

    def r_vertex(self, i: int, p: int, w: int) -> int:
        return ((i - 1) * self.k + (p - 1)) * self.per_color + w

    def b_vertex(self, j: int, ell: int) -> int:
        return self.m * self.q + (j - 1) * self.n + ell

    def w_vertex(self, pair_idx: int, x: int) -> int:
        return self.s + pair_idx * 2 * self.ids.big_k + x

    def t_vertex(self, ell: int, which: int) -> int:
        base = self.s + self.k * (self.k - 1) * 2 * self.ids.big_k
        return base + (ell - 1) * 3 + which + 1


def _color_pairs(k: int) -> list[tuple[int, int]]:
    return [(c1, c2) for c1 in range(1, k + 1) for c2 in range(1, k + 1) if c1 != c2]


CANONICAL_NO_DS_BUDGET = 1


def canonical_no_dominating_set() -> tuple[Graph, int]:
    """Two isolated vertices at budget 1: dominating both needs both."""
    return Graph(2, []), CANONICAL_NO_DS_BUDGET


def _build_ds(batch: PaddedBatch) -> tuple[_DsStruct, set[tuple[int, int]]]:
    if batch.kind != "rbds":
        raise BatchError("dominating-set composition expects an rbds batch")
    q = batch.q
    m, n, k, _isolated = batch_signature(batch.instances[0], "rbds")
    per_color = m // k
    log_q = q.bit_length() - 1
    ids = id_assignment(q, k)
    big_k = ids.big_k
    num_vertices = m * q + n * q + 2 + k * (k - 1) * 2 * big_k + 3 * log_q
    struct = _DsStruct(q, m, n, k, per_color, log_q, ids, num_vertices,
                       s_prime=m * q + n * q + 1, s=m * q + n * q + 2)
    edges: set[tuple[int, int]] = set()

    # step 3: replicate instance X[i][j] between R_i and B_j
    for i in range(1, q + 1):
        for j in range(1, q + 1):
            inst = batch.at(i, j)
            blue_pos = {v: idx for idx, v in enumerate(inst.blue, start=1)}
            red_pos = {}
            for p, cls in enumerate(inst.red_classes, start=1):
                for w, v in enumerate(cls, start=1):
                    red_pos[v] = (p, w)
            for u, v in inst.graph.edges:
                rv, bv = (u, v) if u in red_pos else (v, u)
                p, w = red_pos[rv]
                _add_edge(edges, struct.r_vertex(i, p, w),
                          struct.b_vertex(j, blue_pos[bv]))

    # step 4: s' - s, and s adjacent to all of R
    _add_edge(edges, struct.s_prime, struct.s)
    for i in range(1, q + 1):
        for p in range(1, k + 1):
            for w in range(1, per_color + 1):
                _add_edge(edges, struct.s, struct.r_vertex(i, p, w))

    # step 5: W sets select which group holds the solution
    for pair_idx, (c1, c2) in enumerate(_color_pairs(k)):
        for x in range(1, 2 * big_k + 1):
            wv = struct.w_vertex(pair_idx, x)
            for i in range(1, q + 1):
                color = c1 if x in struct.ids.ids[i - 1] else c2
                for w in range(1, per_color + 1):
                    _add_edge(edges, wv, struct.r_vertex(i, color, w))

    # step 6: bit-indexed triangles dominate all B groups but one
    for ell in range(1, log_q + 1):
        t0, t1, t2 = (struct.t_vertex(ell, b) for b in range(3))
        _add_edge(edges, t0, t1)
        _add_edge(edges, t0, t2)
        _add_edge(edges, t1, t2)
        for j in range(1, q + 1):
            bit = (j - 1) >> (ell - 1) & 1
            tv = t1 if bit else t0
            for pos in range(1, n + 1):
                _add_edge(edges, tv, struct.b_vertex(j, pos))
        # step 7: the chosen triangle vertices stay adjacent to s
        _add_edge(edges, struct.s, t0)
        _add_edge(edges, struct.s, t1)
    return struct, edges


def compose_dominating_set(batch: PaddedBatch) -> tuple[Graph, int, ReductionTrace]:
    """Dominating-set instance at budget k + 1 + log2(q) acting as the OR
    of col-RBDS inputs; the same graph and budget answer the connected
    variant identically.

    A batch from the isolated-blue equivalence class (always NO) collapses
    to the canonical constant NO instance.
    """
    trace = ReductionTrace("compose-domset")
    trace.input_size = {"instances": batch.original_count, "t": batch.padded_count}
    if batch.kind != "rbds":
        raise BatchError("dominating-set composition expects an rbds batch")
    if batch_signature(batch.instances[0], "rbds")[3]:
        graph, budget = canonical_no_dominating_set()
        trace.notes["degenerate"] = "isolated blue vertex: canonical NO instance"
        trace.output_size = {"vertices": graph.num_vertices, "edges": 0}
        trace.notes["budget"] = budget
        return graph, budget, trace
    struct, edges = _build_ds(batch)
    graph = Graph(struct.num_vertices, edges)
    budget = struct.k + 1 + struct.log_q
    trace.input_size.update({"q": struct.q, "m": struct.m, "n": struct.n,
                             "k": struct.k})
    trace.output_size = {"vertices": struct.num_vertices,
                         "edges": len(graph.edges)}
    trace.notes["budget"] = budget
    trace.notes["K"] = struct.ids.big_k
    for i in range(1, struct.q + 1):
        for p in range(1, struct.k + 1):
            for w in range(1, struct.per_color + 1):
                trace.index_map[f"r[{i}][{p}][{w}]"] = struct.r_vertex(i, p, w)
    for j in range(1, struct.q + 1):
        for ell in range(1, struct.n + 1):
            trace.index_map[f"b[{j}][{ell}]"] = struct.b_vertex(j, ell)
    trace.index_map["s'"] = struct.s_prime
    trace.index_map["s"] = struct.s
    for ell in range(1, struct.log_q + 1):
        for which in range(3):
            trace.index_map[f"t[{ell}].{which}"] = struct.t_vertex(ell, which)
    return graph, budget, trace


def dominating_set_certificate(batch: PaddedBatch, star: int,
                               rbds_choice: DomSet) -> DomSet:
    """Composed (connected) dominating set from a col-RBDS solution of
    input ``star``: its chosen red vertices, s, and one triangle vertex per
    bit position of j*."""
    struct, _ = _build_ds(batch)
    q = struct.q
    i_star, j_star = star // q + 1, star % q + 1
    inst = batch.at(i_star, j_star)
    red_pos = {}
    for p, cls in enumerate(inst.red_classes, start=1):
        for w, v in enumerate(cls, start=1):
            red_pos[v] = (p, w)
    chosen = [struct.s]
    for v in rbds_choice.vertices:
        p, w = red_pos[v]
        chosen.append(struct.r_vertex(i_star, p, w))
    for ell in range(1, struct.log_q + 1):
        bit = (j_star - 1) >> (ell - 1) & 1
        chosen.append(struct.t_vertex(ell, 1 - bit))
    return DomSet(chosen)
