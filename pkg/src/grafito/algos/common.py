from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from ..csr import GraphView
from ..errors import OutOfRangeError

# Sentinel depth for unreachable vertices; serialized as the string
# "infinity" by the bench layer.
UNREACHABLE = -1


@dataclass
class AlgoResult:
    """Per-vertex values (aligned to view indices) plus run metadata."""

    values: Any
    iterations: Optional[int] = None
    converged: Optional[bool] = None
    extras: dict = field(default_factory=dict)


def check_vertex(view: GraphView, v: int) -> None:
    if not 0 <= v < view.vertex_count:
        raise OutOfRangeError(f"vertex {v} out of range [0, {view.vertex_count})")


def undirected_neighbor_sets(view: GraphView) -> list[np.ndarray]:
    """Distinct in+out neighbors per vertex, self-loops excluded, sorted."""
    n = view.vertex_count
    incoming: list[list[int]] = [[] for _ in range(n)]
    if view.in_offsets is not None:
        for v in range(n):
            incoming[v] = [int(u) for u in view.in_neighbors(v)]
    else:
        for v in range(n):
            for t in view.out_neighbors(v):
                incoming[int(t)].append(v)
    sets = []
    for v in range(n):
        merged = np.concatenate([view.out_neighbors(v), np.asarray(incoming[v], dtype=np.int64)])
        merged = np.unique(merged)
        sets.append(merged[merged != v])
    return sets


def out_neighbor_sets(view: GraphView) -> list[np.ndarray]:
    """Distinct out-neighbors per vertex, sorted (multi-edges collapsed)."""
    return [np.unique(view.out_neighbors(v)) for v in range(view.vertex_count)]
