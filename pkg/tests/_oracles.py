"""Test-local oracles for algorithms not covered by the bench reference layer."""

import itertools

import numpy as np


def kruskal_total(n, undirected_edges):
    """MST forest total weight via Kruskal with union-find."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0.0
    for w, a, b in sorted((w, a, b) for a, b, w in undirected_edges):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            total += w
    return total


def min_cut_by_enumeration(n, cap_edges, source, sink):
    """Minimum s-t cut capacity over all 2^(n-2) partitions."""
    capacity = {}
    for u, v, w in cap_edges:
        if u != v:
            capacity[(u, v)] = capacity.get((u, v), 0.0) + w
    others = [v for v in range(n) if v not in (source, sink)]
    best = float("inf")
    for r in range(len(others) + 1):
        for chosen in itertools.combinations(others, r):
            s_side = set(chosen) | {source}
            cut = sum(w for (u, v), w in capacity.items() if u in s_side and v not in s_side)
            best = min(best, cut)
    return best


def count_shortest_paths(adj, source, n):
    """Exhaustive enumeration of all simple-path-free shortest path counts.

    Enumerates every path by depth-limited DFS up to each BFS depth; only
    usable for tiny graphs/DAGs.
    """
    from collections import deque

    depth = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for t in adj[v]:
            if t not in depth:
                depth[t] = depth[v] + 1
                queue.append(t)

    counts = {v: 0 for v in range(n)}
    counts[source] = 1

    def walk(v, d):
        for t in adj[v]:
            if depth.get(t) == d + 1:
                counts[t] += 1
                walk(t, d + 1)

    # count every distinct shortest path by walking only depth-increasing edges
    counts = {v: 0 for v in range(n)}
    counts[source] = 1

    def enumerate_paths(v):
        total = 0
        if v == source:
            return 1
        for u in range(n):
            if depth.get(u) == depth[v] - 1 and v in adj[u]:
                total += enumerate_paths(u)
        return total

    return {v: (enumerate_paths(v) if v in depth else 0) for v in range(n)}


def triangle_total_dense(adj_matrix):
    """trace(A^3)/6 on the undirected simple skeleton."""
    a = np.asarray(adj_matrix, dtype=np.int64)
    a = ((a + a.T) > 0).astype(np.int64)
    np.fill_diagonal(a, 0)
    cube = a @ a @ a
    return int(np.trace(cube) // 6)


def principal_subspace(data, k):
    """Exact eigendecomposition of the covariance matrix."""
    centered = data - data.mean(axis=0)
    cov = centered.T @ centered / (len(data) - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    return eigvecs[:, order[:k]], eigvals[order[:k]]


def subspace_angle(u, v):
    """Largest principal angle between two orthonormal column spaces."""
    s = np.linalg.svd(u.T @ v, compute_uv=False)
    s = np.clip(s, -1.0, 1.0)
    return float(np.arccos(s.min()))
