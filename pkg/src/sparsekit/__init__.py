"""Sparsification kernel for bounded-size hypergraph 2-coloring / NAE-SAT,
gadget-based instance reductions and OR-compositions, and the exact
oracles that certify every transformation on desk-scale instances."""

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
    InvariantError,
    ListColoringInstance,
    TsdInstance,
)
from .certificates import check_certificate
from .exactrank import (
    ColumnBasis,
    DependencyCertificate,
    InclusionMatrix,
    build_inclusion_matrix,
    column_basis,
    dependency_certificate,
    bipartition_identity_holds,
)
from .kernel import KernelReport, sparsify_hypergraph, sparsify_nae_sat
from .reductions import (
    ReductionTrace,
    cnfsat_to_naesat,
    directed_hc_to_undirected,
    naesat3_to_tsd,
    naesat_to_hypergraph,
)
from .compose import (
    PaddedBatch,
    compose_dominating_set,
    compose_four_coloring,
    compose_hamiltonicity,
    pad_batch,
)
from .oracles import (
    Limits,
    OracleAnswer,
    OracleRefused,
    solve_col_rbds,
    solve_decision,
    solve_dom_set,
    solve_graph_coloring,
    solve_ham_cycle,
    solve_ham_path_st,
    solve_hypergraph_2col,
    solve_list_coloring,
    solve_nae,
    solve_sat,
    solve_tsd,
)
from .harness import HarnessConfig, HarnessReport, verify

__version__ = "0.1.0"
