"""Community cores from frequent sub-paths of the top-k heavy paths."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algorithms import run_topk
from .errors import PreconditionError
from .graph import WeightedGraph
from .paths import Path, canonicalize, enumerate_subpaths


@dataclass(frozen=True)
class CommunityCore:
    nodes: tuple[int, ...]
    support_count: int
    core_weight: float
    edge_weights: tuple[float, ...] = ()


@dataclass
class Community:
    core: CommunityCore
    periphery_edges: list[tuple[int, int, float]] = field(default_factory=list)
    members: set[int] = field(default_factory=set)


def _as_nodes(p: Path | Sequence[int]) -> tuple[int, ...]:
    return p.nodes if isinstance(p, Path) else tuple(p)


def subpath_support(paths: Iterable[Path | Sequence[int]]) -> Counter[tuple[int, ...]]:
    """How many paths contain each contiguous sub-path of at least one edge (orientation-free)."""
    counts: Counter[tuple[int, ...]] = Counter()
    for p in paths:
        counts.update({canonicalize(s) for s in enumerate_subpaths(_as_nodes(p))})
    return counts


def mine_cores(
    paths: Sequence[Path | Sequence[int]],
    support: int,
    g: WeightedGraph | None = None,
    *,
    strict: bool = False,
) -> list[CommunityCore]:
    """Maximal frequent contiguous sub-paths.

    A sub-path is frequent when at least ``support`` paths contain it (more
    than ``support`` with ``strict``). Since support can only drop as a
    sub-path grows, a frequent sub-path is maximal exactly when no frequent
    sub-path one node longer contains it.
    """
    if support < 1:
        raise PreconditionError("support must be >= 1")
    if not paths:
        return []
    lengths = {len(_as_nodes(p)) for p in paths}
    if len(lengths) != 1:
        raise PreconditionError("all paths must have the same length")

    counts = subpath_support(paths)
    frequent = {s: c for s, c in counts.items() if (c > support if strict else c >= support)}
    covered: set[tuple[int, ...]] = set()
    for s in frequent:
        if len(s) > 2:
            covered.add(canonicalize(s[:-1]))
            covered.add(canonicalize(s[1:]))

    cores = []
    for s, c in frequent.items():
        if s in covered:
            continue
        ws = tuple(g.adjacency[a][b] for a, b in zip(s, s[1:])) if g is not None else ()
        cores.append(CommunityCore(s, c, math.fsum(ws), ws))
    cores.sort(key=lambda core: (-core.support_count, -len(core.nodes), core.nodes))
    return cores


def aggregate_graph(g: WeightedGraph, paths: Iterable[Path | Sequence[int]]) -> WeightedGraph:
    """Subgraph made of every edge used by any of the paths, original weights kept."""
    pairs: dict[tuple[int, int], None] = {}
    for p in paths:
        nodes = _as_nodes(p)
        for a, b in zip(nodes, nodes[1:]):
            if not g.has_edge(a, b):
                raise PreconditionError(f"path uses missing edge ({g.labels[a]}, {g.labels[b]})")
            pairs[(a, b) if a < b else (b, a)] = None
    return WeightedGraph((g.labels[a], g.labels[b], g.adjacency[a][b]) for a, b in sorted(pairs))


def grow_community(core: CommunityCore, agg: WeightedGraph, g: WeightedGraph | None = None) -> Community:
    """Attach every aggregate-graph edge that touches the core from outside it.

    ``core`` ids refer to ``g`` when given, otherwise to ``agg``. The returned
    community uses ``agg`` ids.
    """
    if g is not None:
        try:
            local = agg.ids(g.names(core.nodes))
        except KeyError as exc:
            raise PreconditionError(f"core node {exc.args[0]!r} is not in the aggregate graph") from None
    else:
        local = core.nodes
        if any(not 0 <= u < agg.n_nodes for u in local):
            raise PreconditionError("core node is not in the aggregate graph")
    inside = set(local)
    periphery = []
    members = set(inside)
    for u in local:
        for v, w in sorted(agg.adjacency[u].items()):
            if v in inside:
                continue
            periphery.append((u, v, w))
            members.add(v)
    mapped = CommunityCore(tuple(local), core.support_count, core.core_weight, core.edge_weights)
    return Community(mapped, periphery, members)


def communities(g: WeightedGraph, paths: Sequence[Path], support: int, *, strict: bool = False) -> list[Community]:
    agg = aggregate_graph(g, paths)
    return [grow_community(c, agg, g) for c in mine_cores(paths, support, g, strict=strict)]


@dataclass
class ZoomLevel:
    k: int
    communities: list[Community]
    aggregate: WeightedGraph


def zoom(
    g: WeightedGraph,
    l: int,
    k_values: Sequence[int],
    support: int,
    *,
    algo: str = "rsa",
    strict: bool = False,
    lazy: bool = False,
) -> list[ZoomLevel]:
    """Community listings for several k from a single top-max(k) run."""
    ks = list(k_values)
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])):
        raise PreconditionError("k values must be non-empty and strictly increasing")
    top = run_topk(g, l, ks[-1], algo, lazy=lazy).paths
    out = []
    for k in ks:
        prefix = top[:k]
        out.append(ZoomLevel(k, communities(g, prefix, support, strict=strict), aggregate_graph(g, prefix)))
    return out


def community_record(c: Community, agg: WeightedGraph) -> dict:
    core = c.core
    return {
        "core": list(agg.names(core.nodes)),
        "support": core.support_count,
        "core_weight": core.core_weight,
        "core_edge_weights": list(core.edge_weights),
        "members": sorted(agg.names(c.members)),
        "periphery": [{"u": agg.labels[u], "v": agg.labels[v], "w": w} for u, v, w in c.periphery_edges],
    }


def report_json(levels: Sequence[ZoomLevel]) -> str:
    return json.dumps(
        {"levels": [{"k": z.k, "communities": [community_record(c, z.aggregate) for c in z.communities]} for z in levels]},
        indent=2,
    )


def report_text(levels: Sequence[ZoomLevel]) -> str:
    lines = []
    for z in levels:
        lines.append(f"k={z.k}: {len(z.communities)} core(s)")
        for i, c in enumerate(z.communities, 1):
            rec = community_record(c, z.aggregate)
            edges = ", ".join(repr(w) for w in rec["core_edge_weights"])
            lines.append(f"  core {i}: {' - '.join(rec['core'])}  support={rec['support']}  weight={rec['core_weight']!r}  edges=[{edges}]")
            for p in rec["periphery"]:
                lines.append(f"    + {p['u']} -- {p['v']}  {p['w']!r}")
            lines.append(f"    members: {', '.join(rec['members'])}")
    return "\n".join(lines) + "\n"
