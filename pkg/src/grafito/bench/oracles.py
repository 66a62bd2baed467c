"""Brute-force reference implementations for validation.

These are deliberately naive and share no code with the algos package: the
point is an independent second route to every answer. They are only meant
for desk-scale graphs (a TooLargeError guards the ceiling).
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..csr import GraphView
from ..errors import TooLargeError

ORACLE_VERTEX_LIMIT = 10_000

INFINITY = "infinity"  # serialized sentinel for unreachable vertices


def generate_reference(view: GraphView, algorithm: str, params: dict | None = None) -> dict[int, object]:
    """Reference output for one algorithm, keyed by external (id_map) id."""
    params = params or {}
    if view.vertex_count > ORACLE_VERTEX_LIMIT:
        raise TooLargeError(
            f"oracle limit is {ORACLE_VERTEX_LIMIT} vertices, got {view.vertex_count}"
        )
    fn = {
        "pagerank": _pagerank,
        "bfs": _bfs,
        "sssp": _sssp,
        "wcc": _wcc,
        "scc": _scc,
        "cdlp": _cdlp,
        "lcc": _lcc,
    }.get(algorithm)
    if fn is None:
        raise ValueError(f"no oracle for algorithm {algorithm!r}")
    values = fn(view, params)
    return {int(view.id_map[v]): values[v] for v in range(view.vertex_count)}


def _adjacency(view: GraphView) -> list[list[int]]:
    return [[int(t) for t in view.out_neighbors(v)] for v in range(view.vertex_count)]


def _pagerank(view: GraphView, params: dict) -> list[float]:
    """Dense transition-matrix power iteration with dangling redistribution."""
    n = view.vertex_count
    damping = params.get("damping", 0.85)
    iterations = params.get("iterations", 20)
    matrix = np.zeros((n, n))
    for v, nbrs in enumerate(_adjacency(view)):
        if nbrs:
            share = 1.0 / len(nbrs)
            for t in nbrs:
                matrix[t, v] += share
        else:
            matrix[:, v] += 1.0 / n
    ranks = np.full(n, 1.0 / n)
    for _ in range(iterations):
        ranks = (1 - damping) / n + damping * (matrix @ ranks)
    return [float(r) for r in ranks]


def _bfs(view: GraphView, params: dict) -> list[object]:
    n = view.vertex_count
    source = view.index_of(params["source"])
    depth = [None] * n
    depth[source] = 0
    queue = deque([source])
    adj = _adjacency(view)
    while queue:
        v = queue.popleft()
        for t in adj[v]:
            if depth[t] is None:
                depth[t] = depth[v] + 1
                queue.append(t)
    return [d if d is not None else INFINITY for d in depth]


def _sssp(view: GraphView, params: dict) -> list[object]:
    """Bellman-Ford with early exit."""
    n = view.vertex_count
    source = view.index_of(params["source"])
    dist = [float("inf")] * n
    dist[source] = 0.0
    edges = []
    for v in range(n):
        weights = view.out_weights(v)
        for t, w in zip(view.out_neighbors(v), weights):
            edges.append((v, int(t), float(w)))
    for _ in range(n - 1):
        changed = False
        for v, t, w in edges:
            if dist[v] + w < dist[t]:
                dist[t] = dist[v] + w
                changed = True
        if not changed:
            break
    return [d if d != float("inf") else INFINITY for d in dist]


def _wcc(view: GraphView, params: dict) -> list[int]:
    """Flood fill over the undirected closure."""
    n = view.vertex_count
    undirected: list[set[int]] = [set() for _ in range(n)]
    for v, nbrs in enumerate(_adjacency(view)):
        for t in nbrs:
            undirected[v].add(t)
            undirected[t].add(v)
    component = [None] * n
    for start in range(n):
        if component[start] is not None:
            continue
        members = []
        queue = deque([start])
        component[start] = start
        while queue:
            v = queue.popleft()
            members.append(v)
            for t in undirected[v]:
                if component[t] is None:
                    component[t] = start
                    queue.append(t)
        label = min(int(view.id_map[m]) for m in members)
        for m in members:
            component[m] = -label - 1  # mark finalized (negative namespace)
    return [-c - 1 for c in component]


def _scc(view: GraphView, params: dict) -> list[int]:
    """Mutual reachability via boolean matrix closure (Floyd-Warshall style)."""
    n = view.vertex_count
    reach = np.eye(n, dtype=bool)
    for v, nbrs in enumerate(_adjacency(view)):
        for t in nbrs:
            reach[v, t] = True
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    mutual = reach & reach.T
    labels = [0] * n
    for v in range(n):
        members = np.flatnonzero(mutual[v])
        labels[v] = min(int(view.id_map[m]) for m in members)
    return labels


def _cdlp(view: GraphView, params: dict) -> list[int]:
    """Step-by-step synchronous label propagation replay."""
    n = view.vertex_count
    iterations = params.get("iterations", 10)
    labels = [int(view.id_map[v]) for v in range(n)]
    neighbor_multisets: list[list[int]] = [[] for _ in range(n)]
    for v, nbrs in enumerate(_adjacency(view)):
        for t in nbrs:
            neighbor_multisets[v].append(t)
            neighbor_multisets[t].append(v)
    for _ in range(iterations):
        nxt = list(labels)
        for v in range(n):
            if not neighbor_multisets[v]:
                continue
            tally: dict[int, int] = {}
            for t in neighbor_multisets[v]:
                tally[labels[t]] = tally.get(labels[t], 0) + 1
            top = max(tally.values())
            nxt[v] = min(lbl for lbl, c in tally.items() if c == top)
        labels = nxt
    return labels


def _lcc(view: GraphView, params: dict) -> list[float]:
    """O(n * d^2) definition-chasing clustering coefficient."""
    n = view.vertex_count
    adj = _adjacency(view)
    out_sets = [set(nbrs) for nbrs in adj]
    neighborhoods: list[set[int]] = [set() for _ in range(n)]
    for v in range(n):
        for t in adj[v]:
            if t != v:
                neighborhoods[v].add(t)
                neighborhoods[t].add(v)
    values = [0.0] * n
    for v in range(n):
        nb = neighborhoods[v]
        k = len(nb)
        if k < 2:
            continue
        links = 0
        for u in nb:
            for w in nb:
                if u != w and w in out_sets[u]:
                    links += 1
        values[v] = links / (k * (k - 1))
    return values
