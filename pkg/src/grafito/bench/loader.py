"""Graphalytics-style bulk loading of vertex/edge files."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from ..csr import GraphView, project
from ..errors import ParseError
from ..store import GraphStore

VERTEX_LABEL = "V"
EDGE_TYPE = "E"
WEIGHT_KEY = "weight"


class LoadedGraph:
    """Store plus external-id bookkeeping for reference comparison."""

    def __init__(self, store: GraphStore, view: GraphView, ext_to_internal: dict[int, int],
                 weighted: bool, directed: bool):
        self.store = store
        self.view = view
        self.ext_to_internal = ext_to_internal
        self.internal_to_ext = {v: k for k, v in ext_to_internal.items()}
        self.weighted = weighted
        self.directed = directed

    def external_id(self, internal: int) -> int:
        return self.internal_to_ext[internal]


def load_dataset(vertex_file, edge_file, directed: bool = True,
                 weighted: bool = False, store: Optional[GraphStore] = None) -> LoadedGraph:
    """Load "one id per line" vertices and "src dst [weight]" edges.

    '#'-prefixed and blank lines are skipped. External ids map onto dense
    internal ids in file order; an undirected load inserts both directions.
    """
    store = store or GraphStore()
    ext_to_internal: dict[int, int] = {}

    vertex_file = Path(vertex_file)
    with open(vertex_file) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                ext = int(line.split()[0])
            except ValueError:
                raise ParseError(vertex_file, line_no, f"bad vertex id {line!r}") from None
            if ext in ext_to_internal:
                raise ParseError(vertex_file, line_no, f"duplicate vertex id {ext}")
            ext_to_internal[ext] = store.create_node([VERTEX_LABEL], {"ext_id": ext})

    edge_file = Path(edge_file)
    with open(edge_file) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ParseError(edge_file, line_no, f"expected 'src dst [weight]', got {line!r}")
            try:
                src_ext, dst_ext = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(edge_file, line_no, f"bad endpoint in {line!r}") from None
            weight = None
            if weighted:
                if len(parts) != 3:
                    raise ParseError(edge_file, line_no, "weighted load needs a third column")
                try:
                    weight = float(parts[2])
                except ValueError:
                    raise ParseError(edge_file, line_no, f"bad weight {parts[2]!r}") from None
            src = ext_to_internal.get(src_ext)
            dst = ext_to_internal.get(dst_ext)
            if src is None or dst is None:
                missing = src_ext if src is None else dst_ext
                raise ParseError(edge_file, line_no, f"edge references unknown vertex {missing}")
            props = {WEIGHT_KEY: weight} if weight is not None else None
            store.create_edge(src, dst, EDGE_TYPE, props)
            if not directed:
                store.create_edge(dst, src, EDGE_TYPE, props)

    view = project(store, node_label=VERTEX_LABEL, edge_type=EDGE_TYPE,
                   weight_key=WEIGHT_KEY if weighted else None)
    return LoadedGraph(store, view, ext_to_internal, weighted, directed)
