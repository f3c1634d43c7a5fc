"""Exact top-k heaviest simple paths of a fixed length in weighted graphs."""

from .algorithms import ALGORITHMS, RsaState, dfs_topk, dp_topk, rsa_topk, run_topk, saa_topk
from .community import Community, CommunityCore, aggregate_graph, grow_community, mine_cores, zoom
from .errors import BudgetExceeded, GraphFormatError, PreconditionError
from .graph import (
    WeightedGraph,
    build_cooccurrence_dice,
    build_from_itemsets,
    dumps_edge_list,
    load_edge_list,
    normalize_weights,
    transform_c_minus_w,
)
from .paths import AlgorithmStats, Budget, Path, PathBuffer, TopKResult, canonicalize, path_weight

__version__ = "0.1.0"
