"""Exhaustive depth-first enumeration; the ground truth for everything else."""

from __future__ import annotations

import math
import time

from ..graph import WeightedGraph
from ..paths import AlgorithmStats, Budget, ConstructionLog, TopK, TopKResult, check_args


def dfs_topk(
    g: WeightedGraph,
    l: int,
    k: int,
    *,
    budget: Budget | None = None,
    record: bool = False,
) -> TopKResult:
    """Top-k heaviest simple paths of ``l`` edges by enumerating all of them.

    Each undirected path is reached from both ends; only the orientation whose
    first id is smaller is kept. Works with negative weights.
    """
    check_args(l, k)
    budget = budget or Budget()
    budget.start()
    stats = AlgorithmStats()
    log = ConstructionLog() if record else None
    top = TopK(k)
    adj = g.adjacency
    t0 = time.perf_counter()

    nodes: list[int] = []
    ws: list[float] = []
    on_path: set[int] = set()

    def extend(u: int) -> None:
        if len(ws) == l:
            if nodes[0] < nodes[-1]:
                stats.paths_constructed += 1
                key = tuple(nodes)
                if log is not None:
                    log.add(key, "random", 0)
                top.offer(key, math.fsum(ws))
            return
        budget.check()
        for v, w in adj[u].items():
            stats.random_reads += 1
            if v in on_path:
                continue
            nodes.append(v)
            ws.append(w)
            on_path.add(v)
            extend(v)
            on_path.discard(v)
            ws.pop()
            nodes.pop()

    for s in range(g.n_nodes):
        nodes.append(s)
        on_path.add(s)
        extend(s)
        on_path.discard(s)
        nodes.pop()

    paths, tie = top.result()
    stats.buffer_peak = min(len(paths) + 1, stats.paths_constructed)
    stats.wall_ms = (time.perf_counter() - t0) * 1000.0
    return TopKResult(paths, stats, exhausted=len(paths) < k, boundary_tie=tie, log=log)
