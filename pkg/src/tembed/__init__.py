"""Exact minor-embedding of problem graphs into Chimera template minors.

The pipeline: build or load a problem graph, pick a template family of a
square Chimera host (two-sided, four-sided, or the clique layout), decide
embeddability with the exact 0-1 solver, expand the logical assignment to
physical qubit chains, and verify the result independently.
"""

from .bench import BenchConfig, BenchReport, BenchRow, run_bench
from .chimera import ChimeraGraph
from .formulations import (
    EmbedResult,
    EmbedStatus,
    assignment_to_physical,
    build_bte_model,
    build_qte_model,
    embed_bte,
    embed_qte,
)
from .generators import DENSITIES, FAMILIES, GenSpec, generate
from .graphs import (
    ProblemGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_from_edge_list,
    graph_from_qubo,
    independence_number,
    min_oct_bruteforce,
    min_oct_counterexample,
    star_graph,
)
from .ilp import IlpModel, SolveOutcome, SolveStatus, export_lp, parse_lp, solve
from .templates import (
    Template,
    bte_template,
    contract_qte,
    qte_template,
    triad_clique_template,
    verify_template,
)
from .verify import (
    Embedding,
    VerifyReport,
    embedding_from_chains,
    embedding_from_json,
    embedding_to_json,
    load_embedding,
    save_embedding,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchReport",
    "BenchRow",
    "ChimeraGraph",
    "DENSITIES",
    "EmbedResult",
    "EmbedStatus",
    "Embedding",
    "FAMILIES",
    "GenSpec",
    "IlpModel",
    "ProblemGraph",
    "SolveOutcome",
    "SolveStatus",
    "Template",
    "VerifyReport",
    "assignment_to_physical",
    "bte_template",
    "build_bte_model",
    "build_qte_model",
    "complete_bipartite",
    "complete_graph",
    "contract_qte",
    "cycle_graph",
    "embed_bte",
    "embed_qte",
    "embedding_from_chains",
    "embedding_from_json",
    "embedding_to_json",
    "empty_graph",
    "export_lp",
    "generate",
    "graph_from_edge_list",
    "graph_from_qubo",
    "independence_number",
    "load_embedding",
    "min_oct_bruteforce",
    "min_oct_counterexample",
    "parse_lp",
    "qte_template",
    "run_bench",
    "save_embedding",
    "solve",
    "star_graph",
    "triad_clique_template",
    "verify",
    "verify_template",
]
