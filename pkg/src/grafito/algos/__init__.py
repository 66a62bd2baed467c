"""Graph algorithm library over immutable CSR views.

Every algorithm is deterministic: identical views produce bit-identical
results across runs and worker counts.
"""

from .common import AlgoResult, UNREACHABLE
from .centrality import page_rank, lcc
from .components import wcc, scc, cdlp, triangle_count
from .paths import bfs, bfs_all_shortest_paths, max_flow, mst_prim, sssp_dijkstra
from .pca import PcaResult, pca

__all__ = [
    "AlgoResult",
    "PcaResult",
    "UNREACHABLE",
    "bfs",
    "bfs_all_shortest_paths",
    "cdlp",
    "lcc",
    "max_flow",
    "mst_prim",
    "page_rank",
    "pca",
    "scc",
    "sssp_dijkstra",
    "triangle_count",
    "wcc",
]
