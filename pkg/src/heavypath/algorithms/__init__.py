"""Exact top-k heaviest path algorithms behind one calling convention."""

from __future__ import annotations

import math

from ..errors import PreconditionError
from ..graph import WeightedGraph
from ..paths import Budget, Path, TopKResult, path_weight
from .dfs import dfs_topk
from .dp import dp_topk
from .rsa import RsaState, rsa_topk
from .saa import saa_topk

ALGORITHMS = {
    "dfs": dfs_topk,
    "dp": dp_topk,
    "saa": saa_topk,
    "rsa": rsa_topk,
}


def log_shifted(g: WeightedGraph) -> WeightedGraph:
    """Weights ``ln w - ln w_min``: non-negative, and ranks length-l paths like the product.

    Adding a constant to every edge shifts every path of a fixed length by the
    same amount, so the order of the top-k list is unchanged.
    """
    if not g.edges:
        return g
    if g.w_min <= 0:
        raise PreconditionError("log-product aggregation needs strictly positive weights")
    floor = math.log(g.w_min)
    return g.with_weights(lambda w: math.log(w) - floor)


def run_topk(
    g: WeightedGraph,
    l: int,
    k: int,
    algo: str = "rsa",
    *,
    agg: str = "sum",
    budget: Budget | None = None,
    tight_theta: bool = False,
    lazy: bool = False,
    record: bool = False,
) -> TopKResult:
    """Dispatch to one algorithm; with ``agg="logprod"`` reported weights are sums of ln w."""
    try:
        fn = ALGORITHMS[algo]
    except KeyError:
        raise PreconditionError(f"unknown algorithm {algo!r}; choose from {sorted(ALGORITHMS)}") from None
    kwargs: dict = {"budget": budget}
    if algo == "rsa":
        kwargs["theta_rule"] = "release" if tight_theta else "cascade"
        kwargs["expansion"] = "lazy" if lazy else "eager"
    if record and algo in ("dfs", "saa", "rsa"):
        kwargs["record"] = True
    if agg == "sum":
        return fn(g, l, k, **kwargs)
    if agg != "logprod":
        raise PreconditionError(f"unknown aggregation {agg!r}")
    shifted = log_shifted(g)
    result = fn(shifted, l, k, **kwargs)
    result.paths = [Path(p.nodes, path_weight(g, p.nodes, "logprod")) for p in result.paths]
    return result


__all__ = ["ALGORITHMS", "RsaState", "dfs_topk", "dp_topk", "log_shifted", "rsa_topk", "run_topk", "saa_topk"]
