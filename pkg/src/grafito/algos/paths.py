from __future__ import annotations

import heapq
from collections import deque

import numpy as np

from ..csr import GraphView
from ..errors import NegativeWeightError, SameSourceSinkError
from .common import AlgoResult, UNREACHABLE, check_vertex

_COUNT_CAP = 2**64 - 1  # path counts saturate at the u64 maximum


def bfs(view: GraphView, source: int) -> AlgoResult:
    """Unweighted depths from source; unreachable vertices get UNREACHABLE."""
    check_vertex(view, source)
    depths = np.full(view.vertex_count, UNREACHABLE, dtype=np.int64)
    depths[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = depths[v] + 1
        for t in view.out_neighbors(v):
            t = int(t)
            if depths[t] == UNREACHABLE:
                depths[t] = d
                queue.append(t)
    return AlgoResult(values=depths)


def sssp_dijkstra(view: GraphView, source: int) -> AlgoResult:
    """Exact shortest distances; binary heap with lazy deletion.

    Weights default to 1.0 when the view carries none; negative weights are
    rejected up front. Unreachable vertices get +inf.
    """
    check_vertex(view, source)
    _validate_weights(view)
    n = view.vertex_count
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    heap = [(0.0, source)]
    done = np.zeros(n, dtype=bool)
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        weights = view.out_weights(v)
        for t, w in zip(view.out_neighbors(v), weights):
            t = int(t)
            nd = d + float(w)
            if nd < dist[t]:
                dist[t] = nd
                heapq.heappush(heap, (nd, t))
    return AlgoResult(values=dist)


def bfs_all_shortest_paths(view: GraphView, source: int) -> AlgoResult:
    """Depths plus the number of distinct shortest paths to each vertex.

    Counts saturate at 2^64-1; saturation sets extras["overflow"].
    """
    check_vertex(view, source)
    n = view.vertex_count
    depths = np.full(n, UNREACHABLE, dtype=np.int64)
    counts = [0] * n
    depths[source] = 0
    counts[source] = 1
    overflow = False
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = depths[v] + 1
        c = counts[v]
        for t in view.out_neighbors(v):
            t = int(t)
            if depths[t] == UNREACHABLE:
                depths[t] = d
                counts[t] = c
                queue.append(t)
            elif depths[t] == d:
                merged = counts[t] + c
                if merged > _COUNT_CAP:
                    merged = _COUNT_CAP
                    overflow = True
                counts[t] = merged
    result = AlgoResult(values=depths)
    result.extras["counts"] = np.asarray(counts, dtype=np.uint64)
    result.extras["overflow"] = overflow
    return result


def max_flow(view: GraphView, source: int, sink: int) -> AlgoResult:
    """Edmonds-Karp max flow; edge capacities are the view's weights.

    Parallel edges between the same pair add their capacities.
    """
    check_vertex(view, source)
    check_vertex(view, sink)
    if source == sink:
        raise SameSourceSinkError("source and sink must differ")
    _validate_weights(view)

    residual: dict[int, dict[int, float]] = {}
    for v in range(view.vertex_count):
        weights = view.out_weights(v)
        for t, w in zip(view.out_neighbors(v), weights):
            t = int(t)
            if t == v:
                continue
            residual.setdefault(v, {})[t] = residual.get(v, {}).get(t, 0.0) + float(w)
            residual.setdefault(t, {}).setdefault(v, 0.0)

    flow = 0.0
    while True:
        # BFS for the shortest augmenting path
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            v = queue.popleft()
            for t, cap in residual.get(v, {}).items():
                if cap > 0 and t not in parent:
                    parent[t] = v
                    queue.append(t)
        if sink not in parent:
            break
        bottleneck = np.inf
        v = sink
        while v != source:
            p = parent[v]
            bottleneck = min(bottleneck, residual[p][v])
            v = p
        v = sink
        while v != source:
            p = parent[v]
            residual[p][v] -= bottleneck
            residual[v][p] += bottleneck
            v = p
        flow += bottleneck
    return AlgoResult(values=flow)


def mst_prim(view: GraphView) -> AlgoResult:
    """Minimum spanning forest, Prim's algorithm per connected component.

    Edges are undirected; the weight of a pair is the minimum over stored
    directions (and parallel edges). Ties break by (weight, smaller
    endpoint, larger endpoint). Returns the edge set and total weight.
    """
    n = view.vertex_count
    pair_weight: dict[tuple[int, int], float] = {}
    for v in range(n):
        weights = view.out_weights(v)
        for t, w in zip(view.out_neighbors(v), weights):
            t = int(t)
            if t == v:
                continue
            key = (v, t) if v < t else (t, v)
            w = float(w)
            if key not in pair_weight or w < pair_weight[key]:
                pair_weight[key] = w
    adjacency: dict[int, list[tuple[int, float]]] = {}
    for (a, b), w in pair_weight.items():
        adjacency.setdefault(a, []).append((b, w))
        adjacency.setdefault(b, []).append((a, w))

    visited = np.zeros(n, dtype=bool)
    tree: list[tuple[int, int, float]] = []
    total = 0.0
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        heap = []
        for t, w in adjacency.get(root, ()):
            a, b = (root, t) if root < t else (t, root)
            heapq.heappush(heap, (w, a, b, t))
        while heap:
            w, a, b, new = heapq.heappop(heap)
            if visited[new]:
                continue
            visited[new] = True
            tree.append((a, b, w))
            total += w
            for t, tw in adjacency.get(new, ()):
                if not visited[t]:
                    x, y = (new, t) if new < t else (t, new)
                    heapq.heappush(heap, (tw, x, y, t))
    result = AlgoResult(values=tree)
    result.extras["total"] = total
    return result


def _validate_weights(view: GraphView) -> None:
    if view.weights is not None and len(view.weights) and view.weights.min() < 0:
        raise NegativeWeightError(float(view.weights.min()))
