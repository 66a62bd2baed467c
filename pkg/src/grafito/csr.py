"""Immutable CSR snapshots of the store for the analytics library.

A view is three contiguous arrays (offsets, targets, optional weights) plus
an id map back to store node ids. Construction walks the store once; the
result is immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OutOfRangeError, ReverseNotBuiltError, TypeMismatchError
from .store import GraphStore


@dataclass(frozen=True)
class GraphView:
    vertex_count: int
    out_offsets: np.ndarray        # int64, length vertex_count + 1
    out_targets: np.ndarray        # int64 view indices
    weights: Optional[np.ndarray]  # float64, parallel to out_targets
    in_offsets: Optional[np.ndarray]
    in_targets: Optional[np.ndarray]
    id_map: np.ndarray             # view index -> store node id, ascending

    @property
    def edge_count(self) -> int:
        return int(self.out_offsets[-1])

    def out_neighbors(self, v: int) -> np.ndarray:
        return self.out_targets[self.out_offsets[v]:self.out_offsets[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        if self.in_offsets is None:
            raise ReverseNotBuiltError("view was projected without build_reverse")
        return self.in_targets[self.in_offsets[v]:self.in_offsets[v + 1]]

    def out_weights(self, v: int) -> np.ndarray:
        if self.weights is None:
            return np.ones(int(self.out_offsets[v + 1] - self.out_offsets[v]))
        return self.weights[self.out_offsets[v]:self.out_offsets[v + 1]]

    def index_of(self, node_id: int) -> int:
        """Store node id -> view index (binary search on the sorted id map)."""
        pos = int(np.searchsorted(self.id_map, node_id))
        if pos >= len(self.id_map) or self.id_map[pos] != node_id:
            raise OutOfRangeError(f"node {node_id} is not part of this view")
        return pos


def project(store: GraphStore, node_label: Optional[str] = None,
            edge_type: Optional[str] = None, weight_key: Optional[str] = None,
            build_reverse: bool = False) -> GraphView:
    """Snapshot the (filtered) store into CSR form.

    Nodes are filtered by label, edges by relationship type; edge weights come
    from ``weight_key`` (missing values default to 1.0). Projection is
    deterministic: the same store state always yields byte-identical arrays.
    """
    with store.lock.read():
        if node_label is None:
            included = list(store.nodes())
        else:
            included = sorted(n for n in store.label_members(node_label) if store.has_node(n))
        id_map = np.asarray(included, dtype=np.int64)
        index = {node: i for i, node in enumerate(included)}
        n = len(included)

        offsets = np.zeros(n + 1, dtype=np.int64)
        targets: list[int] = []
        weights: list[float] = [] if weight_key is not None else None
        for i, node in enumerate(included):
            row = []
            for nbr, eid, tid in store.out_edges(node, edge_type):
                j = index.get(nbr)
                if j is None:
                    continue
                if weight_key is not None:
                    w = store.edge_property(eid, weight_key)
                    if w is None:
                        w = 1.0
                    elif isinstance(w, bool) or not isinstance(w, (int, float)):
                        raise TypeMismatchError(
                            f"edge property '{weight_key}' is not numeric: {w!r}"
                        )
                    row.append((j, eid, float(w)))
                else:
                    row.append((j, eid, 1.0))
            row.sort(key=lambda t: (t[0], t[1]))  # ascending targets; edge id stabilizes multi-edges
            offsets[i + 1] = offsets[i] + len(row)
            targets.extend(t[0] for t in row)
            if weights is not None:
                weights.extend(t[2] for t in row)

        out_targets = np.asarray(targets, dtype=np.int64)
        out_weights = None if weights is None else np.asarray(weights, dtype=np.float64)

        in_offsets = in_targets = None
        if build_reverse:
            in_offsets, in_targets = _transpose(n, offsets, out_targets)

        return GraphView(
            vertex_count=n,
            out_offsets=offsets,
            out_targets=out_targets,
            weights=out_weights,
            in_offsets=in_offsets,
            in_targets=in_targets,
            id_map=id_map,
        )


def _transpose(n: int, offsets: np.ndarray, targets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    in_deg = np.bincount(targets, minlength=n).astype(np.int64) if len(targets) else np.zeros(n, dtype=np.int64)
    in_offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(in_deg, out=in_offsets[1:])
    in_targets = np.empty(len(targets), dtype=np.int64)
    cursor = in_offsets[:-1].copy()
    sources = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
    for src, dst in zip(sources, targets):
        in_targets[cursor[dst]] = src
        cursor[dst] += 1
    # keep each slice ascending, mirroring the forward invariant
    for v in range(n):
        lo, hi = in_offsets[v], in_offsets[v + 1]
        if hi - lo > 1:
            in_targets[lo:hi] = np.sort(in_targets[lo:hi])
    return in_offsets, in_targets


def degree(view: GraphView, v: int, direction: str = "out") -> int:
    if not 0 <= v < view.vertex_count:
        raise OutOfRangeError(f"vertex {v} out of range [0, {view.vertex_count})")
    if direction == "out":
        return int(view.out_offsets[v + 1] - view.out_offsets[v])
    if direction == "in":
        if view.in_offsets is None:
            raise ReverseNotBuiltError("view was projected without build_reverse")
        return int(view.in_offsets[v + 1] - view.in_offsets[v])
    raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
