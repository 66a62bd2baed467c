"""Deterministic synthetic datasets written in the bulk-load file format.

Desk-scale stand-ins for the usual benchmark suites: two directed
Erdos-Renyi graphs, a weighted variant, and a two-community
planted-partition graph that gives community detection something to find.
External ids are deliberately non-contiguous to exercise the id mapping.
"""

from __future__ import annotations

import random
from pathlib import Path

from ..store import GraphStore


def _ext_id(i: int) -> int:
    return 3 * i + 1


def write_er_dataset(directory, name: str, n: int, avg_degree: float,
                     seed: int, weighted: bool = False) -> tuple[Path, Path]:
    """Directed uniform-random graph; returns (vertex_path, edge_path)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    m = int(n * avg_degree)
    vertex_path = directory / f"{name}.v"
    edge_path = directory / f"{name}.e"
    with open(vertex_path, "w") as fh:
        fh.write(f"# {name}: {n} vertices\n")
        for i in range(n):
            fh.write(f"{_ext_id(i)}\n")
    with open(edge_path, "w") as fh:
        fh.write(f"# {name}: {m} edges\n")
        for _ in range(m):
            s = rng.randrange(n)
            d = rng.randrange(n)
            if weighted:
                fh.write(f"{_ext_id(s)} {_ext_id(d)} {round(rng.uniform(0.1, 10.0), 4)}\n")
            else:
                fh.write(f"{_ext_id(s)} {_ext_id(d)}\n")
    return vertex_path, edge_path


def write_planted_partition_dataset(directory, name: str, n: int, seed: int,
                                    p_in: float = 0.03, p_out: float = 0.0008) -> tuple[Path, Path]:
    """Two equal communities; dense inside, sparse across."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    half = n // 2
    vertex_path = directory / f"{name}.v"
    edge_path = directory / f"{name}.e"
    with open(vertex_path, "w") as fh:
        for i in range(n):
            fh.write(f"{_ext_id(i)}\n")
    with open(edge_path, "w") as fh:
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                same = (a < half) == (b < half)
                if rng.random() < (p_in if same else p_out):
                    fh.write(f"{_ext_id(a)} {_ext_id(b)}\n")
    return vertex_path, edge_path


ABLATION_LABEL = "Item"
ABLATION_EDGE = "LINK"
ABLATION_GROUPS = 50  # distinct values of the indexed anchor property


def build_ablation_store(scale: int, degree: int, properties_per_node: int,
                         seed: int = 1234) -> GraphStore:
    """Synthetic store for the materialization experiment.

    Every node carries ``properties_per_node`` properties: an indexed int
    "group" (anchor selectivity 1/ABLATION_GROUPS) plus alternating string /
    int payload columns p0, p1, ...
    """
    rng = random.Random(seed)
    store = GraphStore()
    payload_keys = [f"p{i}" for i in range(max(0, properties_per_node - 1))]
    for i in range(scale):
        props = {"group": i % ABLATION_GROUPS}
        for j, key in enumerate(payload_keys):
            props[key] = f"s{i}_{j}" if j % 2 == 0 else i * 31 + j
        store.create_node([ABLATION_LABEL], props)
    store.create_index(ABLATION_LABEL, ["group"])
    for _ in range(scale * degree):
        store.create_edge(rng.randrange(scale), rng.randrange(scale), ABLATION_EDGE)
    return store
