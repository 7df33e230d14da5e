"""Serial multilevel hypergraph partitioner.

Coarsening clusters hyperedges in a similarity graph, extracts vertex
cores from identical cluster signatures and contracts matched vertex
pairs; the coarsest hypergraph is partitioned by a set of candidate
generators and the result is refined with FM passes while walking back
up the levels. Recursive bisection extends the bipartitioner to k parts.
"""

from .model import (BalanceWindow, Hypergraph, InfeasibleBalanceError,
                    Partition, connectivity_degree, max_imbalance,
                    partition_cost, validate)
from .io import (MatrixFormatError, PartitionFormatError, read_matrix_market,
                 read_partition, write_partition, WEIGHT_SCHEMES)
from .roughset import (CoreDecomposition, EdgePartitioning,
                       build_edge_partitions, extract_cores,
                       hyperedge_similarity, info_value, reduced_value)
from .coarsen import (LevelLink, Matching, ThresholdState, cc_edge,
                      cc_hypergraph, contract, initial_threshold,
                      match_in_cores, match_noncore, update_threshold,
                      weighted_jaccard)
from .refine import FmConfig, fm_pass, project, refine_bipartition
from .initpart import INIT_METHODS, generate_candidate, select_best
from .driver import (PHASE_KEYS, PartitionConfig, RunStats, bipartition,
                     induce_subhypergraph, partition_kway, run_many)
from .oracle import OracleResult, brute_force_bipartition

__version__ = "0.1.0"

__all__ = [
    "BalanceWindow", "Hypergraph", "InfeasibleBalanceError", "Partition",
    "connectivity_degree", "max_imbalance", "partition_cost", "validate",
    "MatrixFormatError", "PartitionFormatError", "read_matrix_market",
    "read_partition", "write_partition", "WEIGHT_SCHEMES",
    "CoreDecomposition", "EdgePartitioning", "build_edge_partitions",
    "extract_cores", "hyperedge_similarity", "info_value", "reduced_value",
    "LevelLink", "Matching", "ThresholdState", "cc_edge", "cc_hypergraph",
    "contract", "initial_threshold", "match_in_cores", "match_noncore",
    "update_threshold", "weighted_jaccard",
    "FmConfig", "fm_pass", "project", "refine_bipartition",
    "INIT_METHODS", "generate_candidate", "select_best",
    "PHASE_KEYS", "PartitionConfig", "RunStats", "bipartition",
    "induce_subhypergraph", "partition_kway", "run_many",
    "OracleResult", "brute_force_bipartition",
    "__version__",
]
