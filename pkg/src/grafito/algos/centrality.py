from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from ..csr import GraphView
from ..errors import EmptyGraphError
from .common import AlgoResult, undirected_neighbor_sets, out_neighbor_sets

# Fixed chunk size for the parallel contribution scatter. Chunk boundaries
# never depend on the worker count, so float summation order is stable and
# results stay bit-identical for any number of workers.
_CHUNK = 1 << 16


def page_rank(view: GraphView, damping: float = 0.85, iterations: Optional[int] = None,
              tolerance: Optional[float] = None, max_iterations: int = 100,
              workers: int = 1) -> AlgoResult:
    """Synchronous PageRank with uniform dangling-mass redistribution.

    Exactly one of ``iterations`` (fixed-iteration mode) or ``tolerance``
    (converge to L-inf delta <= tolerance, capped at ``max_iterations``)
    selects the stopping rule. The rank vector sums to 1 after every
    iteration.
    """
    n = view.vertex_count
    if n == 0:
        raise EmptyGraphError("PageRank needs at least one vertex")
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0, 1), got {damping}")
    if (iterations is None) == (tolerance is None):
        raise ValueError("choose exactly one of iterations= or tolerance=")

    out_deg = np.diff(view.out_offsets).astype(np.float64)
    dangling = out_deg == 0
    sources = np.repeat(np.arange(n, dtype=np.int64), np.diff(view.out_offsets))
    targets = view.out_targets

    ranks = np.full(n, 1.0 / n)
    limit = iterations if iterations is not None else max_iterations
    ran = 0
    converged = iterations is not None
    for _ in range(limit):
        share = np.zeros(n)
        np.divide(ranks, out_deg, out=share, where=~dangling)
        contrib = _scatter(share[sources], targets, n, workers)
        dangling_mass = ranks[dangling].sum()
        nxt = (1.0 - damping) / n + damping * (contrib + dangling_mass / n)
        ran += 1
        if tolerance is not None and np.max(np.abs(nxt - ranks)) <= tolerance:
            ranks = nxt
            converged = True
            break
        ranks = nxt
    return AlgoResult(values=ranks, iterations=ran, converged=converged)


def _scatter(weights: np.ndarray, targets: np.ndarray, n: int, workers: int) -> np.ndarray:
    """bincount-scatter over fixed chunks, combined in chunk order."""
    m = len(targets)
    if m == 0:
        return np.zeros(n)
    bounds = [(lo, min(lo + _CHUNK, m)) for lo in range(0, m, _CHUNK)]

    def one(bound):
        lo, hi = bound
        return np.bincount(targets[lo:hi], weights=weights[lo:hi], minlength=n)

    if workers <= 1 or len(bounds) == 1:
        parts = [one(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, bounds))
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    return total


def lcc(view: GraphView) -> AlgoResult:
    """Local clustering coefficient, directed-neighborhood definition.

    The neighborhood of v is its distinct in+out neighbors (excluding v);
    the coefficient is the number of ordered neighbor pairs (u, w) joined by
    a directed edge u->w, over |N|*(|N|-1). Vertices with fewer than two
    neighbors get 0.
    """
    n = view.vertex_count
    neighborhoods = undirected_neighbor_sets(view)
    out_sets = out_neighbor_sets(view)
    values = np.zeros(n)
    for v in range(n):
        nb = neighborhoods[v]
        k = len(nb)
        if k < 2:
            continue
        links = 0
        for u in nb:
            hits = np.intersect1d(out_sets[int(u)], nb, assume_unique=True)
            links += len(hits) - (1 if _contains(hits, int(u)) else 0)
        values[v] = links / (k * (k - 1))
    return AlgoResult(values=values)


def _contains(sorted_arr: np.ndarray, value: int) -> bool:
    i = np.searchsorted(sorted_arr, value)
    return i < len(sorted_arr) and sorted_arr[i] == value
