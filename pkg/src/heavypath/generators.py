"""Deterministic graph fixtures and instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import PreconditionError
from .graph import WeightedGraph

# Six-node clique of the worked example. The published table lists (1,6) twice
# (0.76 and 0.70) and omits (2,6). (1,6) = 0.76 is the value that reproduces
# the quoted path weights 3.35 and 3.08, so the orphaned 0.70 goes to (2,6).
K6_EDGES: tuple[tuple[str, str, float], ...] = (
    ("1", "2", 0.93),
    ("2", "3", 0.93),
    ("1", "3", 0.87),
    ("2", "4", 0.77),
    ("1", "6", 0.76),
    ("2", "5", 0.73),
    ("3", "4", 0.73),
    ("1", "4", 0.73),
    ("5", "6", 0.72),
    ("3", "5", 0.70),
    ("1", "5", 0.70),
    ("2", "6", 0.70),
    ("4", "5", 0.69),
    ("3", "6", 0.66),
    ("4", "6", 0.58),
)


def k6() -> WeightedGraph:
    return WeightedGraph(K6_EDGES)


def random_graph(n: int, p: float, seed: int, low: float = 0.0, high: float = 1.0) -> WeightedGraph:
    """G(n, p) with weights uniform in ``(low, high]``; every node is kept."""
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((str(u), str(v), high - rng.random() * (high - low)))
    return WeightedGraph(edges, nodes=[str(i) for i in range(n)])


def random_sparse_graph(n: int, m: int, seed: int) -> WeightedGraph:
    """``m`` distinct random node pairs among ``n`` nodes, weights uniform in (0, 1]."""
    if m > n * (n - 1) // 2:
        raise PreconditionError(f"{m} edges do not fit in a simple graph on {n} nodes")
    rng = random.Random(seed)
    seen: set[tuple[int, int]] = set()
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        edges.append((str(key[0]), str(key[1]), 1.0 - rng.random()))
    return WeightedGraph(edges, nodes=[str(i) for i in range(n)])


@dataclass(frozen=True)
class WeightProfile:
    """Edge weights for the one-heavy-path / n-decoys family.

    Heavy path a-b-c-d uses ``heavy, heavy, light``; each decoy a'-b'-c'-d'_i
    uses ``stem, stem, fan_i`` with the fan weights spread evenly from
    ``fan_high`` down to ``fan_low``.
    """

    heavy: float = 1.0
    light: float = 0.3
    stem: float = 0.9
    fan_high: float = 0.45
    fan_low: float = 0.4

    def validate(self) -> None:
        if not 0 < self.light < self.fan_low <= self.fan_high < self.stem <= self.heavy <= 1:
            raise PreconditionError("profile must satisfy 0 < light < fan_low <= fan_high < stem <= heavy <= 1")
        if 2 * self.heavy + self.light <= 2 * self.stem + self.fan_high:
            raise PreconditionError("heavy path must outweigh every decoy path")


STEM = ("a'", "b'", "c'")
HEAVY = ("a", "b", "c", "d")


def adversarial_family(n: int, profile: WeightProfile = WeightProfile()) -> WeightedGraph:
    """One heavy path whose lightest edge is the globally lightest, plus ``n`` decoys.

    The decoys share the stem a'-b'-c' and fan out to d'_1..d'_n, so the graph
    has ``n + 7`` nodes and ``n + 5`` edges.
    """
    if n < 1:
        raise PreconditionError("need at least one decoy path")
    profile.validate()
    a, b, c, d = HEAVY
    a2, b2, c2 = STEM
    edges = [
        (a, b, profile.heavy),
        (b, c, profile.heavy),
        (c, d, profile.light),
        (a2, b2, profile.stem),
        (b2, c2, profile.stem),
    ]
    step = (profile.fan_high - profile.fan_low) / (n - 1) if n > 1 else 0.0
    for i in range(1, n + 1):
        edges.append((c2, f"d'{i}", profile.fan_high - (i - 1) * step))
    return WeightedGraph(edges)
