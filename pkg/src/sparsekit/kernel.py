"""Hypergraph and NAE-SAT sparsification by representative hyperedges.

For each edge size r, the kept edges are exactly those whose columns form
the greedy-leftmost basis of the size-r inclusion matrix.  Every dropped
edge is a rational linear combination of kept ones and is therefore
bichromatic under any coloring that is proper on the kept edges, so
2-colorability (and NAE-satisfiability through the literal encoding) is
preserved while the output has at most n^(r-1) edges per size and
2 * n^(d-1) edges in total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactrank import build_inclusion_matrix, column_basis
from .instances import CnfFormula, Hypergraph
from .reductions import naesat_to_hypergraph


@dataclass(frozen=True)
class KernelSizeRow:
    r: int
    input_count: int
    output_count: int
    bound: int   # n^(r-1)


@dataclass(frozen=True)
class KernelReport:
    mode: str
    num_vertices: int
    d: int
    rows: tuple[KernelSizeRow, ...]
    kept_indices: tuple[int, ...]
    dropped_indices: tuple[int, ...]
    degenerate: bool = False
    clause_input: int | None = None   # NAE runs only
    clause_output: int | None = None

    @property
    def total_input(self) -> int:
        return sum(row.input_count for row in self.rows)

    @property
    def total_output(self) -> int:
        return sum(row.output_count for row in self.rows)

    @property
    def total_bound(self) -> int:
        # 2 * n^(d-1); for d = 0 there are no edges at all
        return 2 * self.num_vertices ** (self.d - 1) if self.d >= 1 else 0

    def to_json_dict(self) -> dict:
        doc = {
            "mode": self.mode,
            "num_vertices": self.num_vertices,
            "d": self.d,
            "degenerate": self.degenerate,
            "per_size": [
                {"r": row.r, "input": row.input_count,
                 "output": row.output_count, "bound": row.bound}
                for row in self.rows
            ],
            "total_input": self.total_input,
            "total_output": self.total_output,
            "total_bound": self.total_bound,
        }
        if self.clause_input is not None:
            doc["clause_input"] = self.clause_input
            doc["clause_output"] = self.clause_output
        return doc


def sparsify_hypergraph(h: Hypergraph, mode: str = "modular",
                        seed: int = 0) -> tuple[Hypergraph, KernelReport]:
    """Keep only the representative hyperedges of each size class.

    An empty input edge short-circuits to the canonical NO instance (a
    single empty edge): an empty edge is monochromatic under any coloring.
    """
    n = h.num_vertices
    if any(len(e) == 0 for e in h.edges):
        report = KernelReport(mode=mode, num_vertices=n, d=max(1, h.max_edge_size),
                              rows=(), kept_indices=(), dropped_indices=(),
                              degenerate=True)
        return Hypergraph(n, [()]), report

    d = h.max_edge_size
    kept: set[int] = set()
    rows = []
    for r in range(1, d + 1):
        matrix = build_inclusion_matrix(h, r)
        basis = column_basis(matrix, mode=mode, seed=seed)
        kept.update(basis.kept)
        rows.append(KernelSizeRow(
            r=r,
            input_count=matrix.num_columns,
            output_count=basis.rank_value,
            bound=n ** (r - 1)))
    kept_sorted = tuple(sorted(kept))
    dropped = tuple(j for j in range(len(h.edges)) if j not in kept)
    out = Hypergraph(n, [h.edges[j] for j in kept_sorted])
    report = KernelReport(mode=mode, num_vertices=n, d=d, rows=tuple(rows),
                          kept_indices=kept_sorted, dropped_indices=dropped)
    for row in report.rows:
        assert row.output_count <= min(row.input_count, row.bound)
    assert report.total_output <= report.total_bound or d == 0
    return out, report


def sparsify_nae_sat(f: CnfFormula, mode: str = "modular",
                     seed: int = 0) -> tuple[CnfFormula, KernelReport]:
    """Sparsify a NAE-SAT formula through its hypergraph encoding.

    The n structural pair edges participate in the inclusion matrices but
    are never emitted as clauses; the kept clauses are exactly those whose
    encoded hyperedges survive the hypergraph kernel.  A size-0 clause
    short-circuits to the canonical NO formula (one empty clause).
    """
    if any(len(c) == 0 for c in f.clauses):
        report = KernelReport(mode=mode, num_vertices=2 * f.num_vars,
                              d=max(1, f.max_clause_size), rows=(),
                              kept_indices=(), dropped_indices=(),
                              degenerate=True,
                              clause_input=f.num_clauses, clause_output=1)
        return CnfFormula(f.num_vars, [()]), report
    h, _ = naesat_to_hypergraph(f)
    _, hyper_report = sparsify_hypergraph(h, mode=mode, seed=seed)
    num_clauses = f.num_clauses
    kept_clauses = [f.clauses[j] for j in hyper_report.kept_indices
                    if j < num_clauses]
    out = CnfFormula(f.num_vars, kept_clauses)
    report = KernelReport(mode=mode, num_vertices=h.num_vertices,
                          d=hyper_report.d, rows=hyper_report.rows,
                          kept_indices=hyper_report.kept_indices,
                          dropped_indices=hyper_report.dropped_indices,
                          clause_input=num_clauses,
                          clause_output=len(kept_clauses))
    return out, report
