"""Building blocks for the OR-compositions: treegadgets, the 12-vertex
triangular gadget, path gadgets, and group identifier assignments.

Gadgets use local 0-based vertex ids; the compositions embed them at an
offset.  The triangular gadget's two defining properties (corners pairwise
distinct in every proper 3-coloring; every rainbow corner precoloring
extends) are certified once per process by exhaustive enumeration over its
3^12 colorings, with sound pruning of improper prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations


@dataclass(frozen=True)
class Treegadget:
    """Complete binary tree with each node blown up into a triangle.

    Node v's triangle is (r_v, x_v, y_v); r_v attaches to the parent, x_v
    and y_v to the left and right subtrees.  A gadget with q leaves (q a
    power of two, q >= 2) is built from the tree with q/2 tree-leaves, each
    contributing its x and y vertices as gadget leaves; q = 2 degenerates
    to a single triangle.
    """

    leaf_count: int
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    root: int
    leaves: tuple[int, ...]

    @property
    def height(self) -> int:
        return (self.leaf_count // 2).bit_length() - 1


def build_treegadget(q: int) -> Treegadget:
    if q < 2 or q & (q - 1):
        raise ValueError("treegadget needs a power-of-two leaf count >= 2")
    tree_leaves = q // 2
    num_nodes = 2 * tree_leaves - 1

    def r_of(node: int) -> int:   # heap-indexed nodes 1..num_nodes
        return 3 * (node - 1)

    def x_of(node: int) -> int:
        return 3 * (node - 1) + 1

    def y_of(node: int) -> int:
        return 3 * (node - 1) + 2

    edges = []
    for node in range(1, num_nodes + 1):
        edges.append((r_of(node), x_of(node)))
        edges.append((r_of(node), y_of(node)))
        edges.append((x_of(node), y_of(node)))
        left, right = 2 * node, 2 * node + 1
        if left <= num_nodes:
            edges.append((x_of(node), r_of(left)))
            edges.append((y_of(node), r_of(right)))
    leaves = []
    for node in range(tree_leaves, num_nodes + 1):
        leaves.append(x_of(node))
        leaves.append(y_of(node))
    return Treegadget(q, 3 * num_nodes, tuple(edges), 0, tuple(leaves))


@dataclass(frozen=True)
class TriangularGadget:
    """12 vertices: corners plus three identically wired inner triangles.

    Inner triangle i is (p_i, q_i, s_i) with corner u adjacent to q_i and
    s_i, v to p_i and s_i, w to p_i and q_i, which pins p_i, q_i, s_i to
    the colors of u, v, w respectively in any proper 3-coloring.
    """

    num_vertices: int
    corners: tuple[int, int, int]
    inner: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


def build_triangular_gadget() -> TriangularGadget:
    u, v, w = 0, 1, 2
    edges = []
    inner = []
    for i in range(3):
        p, q, s = 3 + 3 * i, 4 + 3 * i, 5 + 3 * i
        inner.extend([p, q, s])
        edges.extend([(p, q), (p, s), (q, s)])
        edges.extend([(u, q), (u, s), (v, p), (v, s), (w, p), (w, q)])
    return TriangularGadget(12, (u, v, w), tuple(inner), tuple(edges))


def _enumerate_proper(num_vertices: int, edges, num_colors: int,
                      prefix_fixed: dict[int, int] | None = None):
    """Yield every proper coloring, pruning improper prefixes.

    Exhausts the same space as iterating all num_colors^n assignments and
    discarding improper ones.
    """
    lower_adj: list[list[int]] = [[] for _ in range(num_vertices)]
    for a, b in edges:
        hi, lo = (a, b) if a > b else (b, a)
        lower_adj[hi].append(lo)
    colors = [0] * num_vertices
    fixed = prefix_fixed or {}

    def rec(v: int):
        if v == num_vertices:
            yield tuple(colors)
            return
        choices = (fixed[v],) if v in fixed else range(num_colors)
        for c in choices:
            if all(colors[u] != c for u in lower_adj[v]):
                colors[v] = c
                yield from rec(v + 1)

    yield from rec(0)


class GadgetCertificationError(AssertionError):
    pass


@lru_cache(maxsize=1)
def certify_triangular_gadget() -> TriangularGadget:
    """Exhaustively verify both defining properties; cached per process."""
    gadget = build_triangular_gadget()
    rainbow_seen = set()
    for coloring in _enumerate_proper(gadget.num_vertices, gadget.edges, 3):
        corner_colors = tuple(coloring[c] for c in gadget.corners)
        if len(set(corner_colors)) != 3:
            raise GadgetCertificationError(
                "a proper 3-coloring with equal corners exists")
        rainbow_seen.add(corner_colors)
    for want in permutations(range(3)):
        if want not in rainbow_seen:
            # no proper coloring realizes this rainbow precoloring
            raise GadgetCertificationError(
                f"rainbow corner precoloring {want} does not extend")
    return gadget


@dataclass(frozen=True)
class PathGadget:
    """Three vertices in0-mid-in1 with arcs in both directions; the middle
    vertex is adjacent only to the two terminals, so a Hamiltonian cycle
    must run straight through."""

    in0: int = 0
    mid: int = 1
    in1: int = 2

    @property
    def num_vertices(self) -> int:
        return 3

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return ((self.in0, self.mid), (self.mid, self.in0),
                (self.mid, self.in1), (self.in1, self.mid))


@dataclass(frozen=True)
class IdAssignment:
    """Distinct K-subsets of [2K] identifying the q red groups.

    K = 2 + k + log2(q) guarantees enough subsets since 2^K >= 4q.
    """

    big_k: int
    ids: tuple[frozenset[int], ...]


def id_assignment(q: int, k: int) -> IdAssignment:
    if q < 2 or q & (q - 1):
        raise ValueError("group count q must be a power of two >= 2")
    log_q = q.bit_length() - 1
    big_k = 2 + k + log_q
    ids = []
    for subset in combinations(range(1, 2 * big_k + 1), big_k):
        ids.append(frozenset(subset))
        if len(ids) == q:
            break
    if len(ids) < q:
        raise ValueError("not enough identifier subsets")  # unreachable: 2^K >= 4q
    return IdAssignment(big_k, tuple(ids))
