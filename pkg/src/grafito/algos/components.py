from __future__ import annotations

import numpy as np

from ..csr import GraphView
from .common import AlgoResult, undirected_neighbor_sets


def wcc(view: GraphView) -> AlgoResult:
    """Weakly connected components via union-find.

    Path compression plus union by rank; edges are treated as undirected.
    Component ids are canonicalized to the smallest external id (id_map
    value) in each component.
    """
    n = view.vertex_count
    parent = list(range(n))
    rank = [0] * n

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1

    for v in range(n):
        for t in view.out_neighbors(v):
            union(v, int(t))

    smallest: dict[int, int] = {}
    for v in range(n):
        root = find(v)
        ext = int(view.id_map[v])
        if root not in smallest or ext < smallest[root]:
            smallest[root] = ext
    labels = np.fromiter((smallest[find(v)] for v in range(n)), dtype=np.int64, count=n)
    return AlgoResult(values=labels)


def scc(view: GraphView) -> AlgoResult:
    """Strongly connected components, Tarjan's algorithm with an explicit stack.

    Component ids are canonicalized to the smallest member's external id.
    """
    n = view.vertex_count
    index = np.full(n, -1, dtype=np.int64)
    lowlink = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    comp = np.full(n, -1, dtype=np.int64)
    stack: list[int] = []
    counter = 0
    comp_count = 0

    for start in range(n):
        if index[start] != -1:
            continue
        # frames: (vertex, iterator position into its adjacency slice)
        work = [(start, int(view.out_offsets[start]))]
        index[start] = lowlink[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, pos = work[-1]
            if pos < view.out_offsets[v + 1]:
                work[-1] = (v, pos + 1)
                w = int(view.out_targets[pos])
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, int(view.out_offsets[w])))
                elif on_stack[w]:
                    if index[w] < lowlink[v]:
                        lowlink[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if lowlink[v] < lowlink[parent]:
                        lowlink[parent] = lowlink[v]
                if lowlink[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = comp_count
                        if w == v:
                            break
                    comp_count += 1

    smallest: dict[int, int] = {}
    for v in range(n):
        ext = int(view.id_map[v])
        c = int(comp[v])
        if c not in smallest or ext < smallest[c]:
            smallest[c] = ext
    labels = np.fromiter((smallest[int(comp[v])] for v in range(n)), dtype=np.int64, count=n)
    return AlgoResult(values=labels)


def cdlp(view: GraphView, iterations: int) -> AlgoResult:
    """Community detection by synchronous label propagation.

    Labels start as external ids. Each round every vertex adopts the most
    frequent label among its in+out neighbors (each edge contributes once
    per direction it appears in), breaking ties toward the minimum label.
    Runs exactly ``iterations`` rounds.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n = view.vertex_count
    labels = view.id_map.astype(np.int64).copy()

    incoming: list[list[int]] = [[] for _ in range(n)]
    if view.in_offsets is not None:
        for v in range(n):
            incoming[v] = [int(u) for u in view.in_neighbors(v)]
    else:
        for v in range(n):
            for t in view.out_neighbors(v):
                incoming[int(t)].append(v)
    neighbor_lists = [
        np.concatenate([view.out_neighbors(v), np.asarray(incoming[v], dtype=np.int64)])
        for v in range(n)
    ]

    for _ in range(iterations):
        nxt = labels.copy()
        for v in range(n):
            nbrs = neighbor_lists[v]
            if len(nbrs) == 0:
                continue
            votes = labels[nbrs]
            uniq, counts = np.unique(votes, return_counts=True)
            best = uniq[counts == counts.max()].min()
            nxt[v] = best
        labels = nxt
    return AlgoResult(values=labels, iterations=iterations)


def triangle_count(view: GraphView) -> AlgoResult:
    """Triangles of the undirected simple skeleton, node-iterator style.

    Neighbor lists are deduplicated and sorted; each triangle {u, v, w} is
    found once via sorted intersection and contributes to all three
    per-vertex counts. The scalar total is sum(per-vertex) / 3.
    """
    n = view.vertex_count
    adj = undirected_neighbor_sets(view)
    per_vertex = np.zeros(n, dtype=np.int64)
    total = 0
    for v in range(n):
        above_v = adj[v][adj[v] > v]
        for u in above_v:
            u = int(u)
            common = np.intersect1d(above_v, adj[u], assume_unique=True)
            for w in common[common > u]:
                per_vertex[v] += 1
                per_vertex[u] += 1
                per_vertex[int(w)] += 1
                total += 1
    result = AlgoResult(values=per_vertex)
    result.extras["total"] = total
    return result
