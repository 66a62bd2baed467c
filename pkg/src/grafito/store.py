"""Mutable in-memory property graph with arena-style dense ids.

Node and edge ids are sequential integers that index directly into parallel
arrays, so the hot paths never hash. Per-node adjacency is kept sorted by
(relationship type, neighbor), which makes edge-existence checks binary
searches; entries are bit-packed into single ints to keep the memory
footprint flat at millions of edges. Properties live in per-(label, key)
columns aligned to each label's membership order, which is what late
materialization resolves against at projection time.

The store also maintains the planner's statistics catalog (label counts,
relationship-type counts, and (source label, type, target label) triple
stats) incrementally and exactly.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional

import numpy as np

from .errors import (
    ArityMismatchError,
    CapacityError,
    TypeMismatchError,
    UniqueViolationError,
    UnknownEdgeError,
    UnknownIndexError,
    UnknownNodeError,
)

NodeId = int
EdgeId = int

# Packed adjacency entry layout: [type:13][neighbor:25][edge:25] = 63 bits,
# keeping entries machine ints while preserving (type, neighbor) sort order.
_EDGE_BITS = 25
_NODE_BITS = 25
_TYPE_BITS = 13
_EDGE_MASK = (1 << _EDGE_BITS) - 1
_NODE_MASK = (1 << _NODE_BITS) - 1
MAX_NODES = 1 << _NODE_BITS
MAX_EDGES = 1 << _EDGE_BITS
MAX_TYPES = 1 << _TYPE_BITS

_RESERVOIR_SIZE = 1024  # matches the executor batch size


def _pack(type_id: int, neighbor: int, edge_id: int) -> int:
    return (type_id << (_NODE_BITS + _EDGE_BITS)) | (neighbor << _EDGE_BITS) | edge_id


def _unpack(entry: int) -> tuple[int, int, int]:
    return entry >> (_NODE_BITS + _EDGE_BITS), (entry >> _EDGE_BITS) & _NODE_MASK, entry & _EDGE_MASK


def value_tag(value: Any) -> Optional[str]:
    """Classify a property value; None stands for null (absent)."""
    if value is None:
        return None
    if isinstance(value, bool):  # bool first: it subclasses int
        return "bool"
    if isinstance(value, int):
        return "int"
    if isinstance(value, float):
        return "float"
    if isinstance(value, str):
        return "str"
    if isinstance(value, np.ndarray):
        return "vector"
    if isinstance(value, (list, tuple)):
        return "vector"
    raise TypeMismatchError(f"unsupported property value type: {type(value).__name__}")


def normalize_value(value: Any) -> Any:
    """Coerce vectors to float32 arrays; everything else passes through."""
    if isinstance(value, (list, tuple)):
        return np.asarray(value, dtype=np.float32)
    if isinstance(value, np.ndarray):
        return value.astype(np.float32, copy=False)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


class ReadWriteLock:
    """Many readers or one writer; the writing thread may re-enter reads."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers: dict[int, int] = {}
        self._writer: Optional[int] = None
        self._writer_depth = 0

    def acquire_read(self) -> None:
        me = threading.get_ident()
        with self._cond:
            while self._writer is not None and self._writer != me:
                self._cond.wait()
            self._readers[me] = self._readers.get(me, 0) + 1

    def release_read(self) -> None:
        me = threading.get_ident()
        with self._cond:
            depth = self._readers.get(me, 0) - 1
            if depth <= 0:
                self._readers.pop(me, None)
            else:
                self._readers[me] = depth
            self._cond.notify_all()

    def acquire_write(self) -> None:
        me = threading.get_ident()
        with self._cond:
            if self._writer == me:
                self._writer_depth += 1
                return
            while self._writer is not None or any(t != me for t in self._readers):
                self._cond.wait()
            self._writer = me
            self._writer_depth = 1

    def release_write(self) -> None:
        with self._cond:
            self._writer_depth -= 1
            if self._writer_depth == 0:
                self._writer = None
                self._cond.notify_all()

    class _Guard:
        def __init__(self, acquire, release):
            self._acquire, self._release = acquire, release

        def __enter__(self):
            self._acquire()

        def __exit__(self, *exc):
            self._release()
            return False

    def read(self) -> "ReadWriteLock._Guard":
        return self._Guard(self.acquire_read, self.release_read)

    def write(self) -> "ReadWriteLock._Guard":
        return self._Guard(self.acquire_write, self.release_write)


class _Column:
    """One (label, key) property column: dense values with None as null."""

    __slots__ = ("tag", "values", "reservoir", "seen")

    def __init__(self, tag: str, length: int):
        self.tag = tag
        self.values: list[Any] = [None] * length
        self.reservoir: list[Any] = []
        self.seen = 0  # non-null values observed, for reservoir sampling

    def sample(self, value: Any, rng: random.Random) -> None:
        self.seen += 1
        if len(self.reservoir) < _RESERVOIR_SIZE:
            self.reservoir.append(value)
        else:
            j = rng.randrange(self.seen)
            if j < _RESERVOIR_SIZE:
                self.reservoir[j] = value


@dataclass(frozen=True)
class TripleStats:
    """Exact statistics for one (source label, type, target label) pattern."""

    count: int
    distinct_sources: int
    distinct_targets: int


@dataclass(frozen=True)
class IndexInfo:
    label: str
    keys: tuple[str, ...]
    unique: bool


@dataclass(frozen=True)
class GraphCatalog:
    """Immutable statistics snapshot handed to the planner."""

    total_nodes: int
    total_edges: int
    label_counts: dict[str, int]
    type_counts: dict[str, int]
    triples: dict[tuple[str, str, str], TripleStats]
    type_stats: dict[str, TripleStats]
    distinct_samples: dict[tuple[str, str], tuple[int, int, int]]  # (distinct, sample, population)
    indexes: tuple[IndexInfo, ...]
    ddl_version: int
    mutation_count: int

    def label_count(self, label: str) -> int:
        return self.label_counts.get(label, 0)

    def type_count(self, rel_type: str) -> int:
        return self.type_counts.get(rel_type, 0)

    def triple(self, src_label: str, rel_type: str, dst_label: str) -> Optional[TripleStats]:
        return self.triples.get((src_label, rel_type, dst_label))

    def distinct_estimate(self, label: str, key: str) -> float:
        """Distinct-value estimate from the reservoir sample.

        When the sample shows heavy repetition the sample's own distinct count
        is taken as the population's; when nearly all sampled values are
        unique the count is scaled up linearly.
        """
        entry = self.distinct_samples.get((label, key))
        if entry is None:
            return 1.0
        distinct, sample, population = entry
        if sample == 0:
            return 1.0
        if population <= sample or distinct < 0.5 * sample:
            return float(max(1, distinct))
        return float(max(1, round(distinct * population / sample)))


class _CompositeIndex:
    __slots__ = ("label", "keys", "unique", "entries")

    def __init__(self, label: str, keys: tuple[str, ...], unique: bool):
        self.label = label
        self.keys = keys
        self.unique = unique
        self.entries: dict[tuple, list[int]] = {}

    def key_for(self, properties: dict[str, Any]) -> Optional[tuple]:
        parts = []
        for key in self.keys:
            value = properties.get(key)
            if value is None:
                return None  # nodes missing an indexed key are not indexed
            parts.append(value)
        return tuple(parts)

    def insert(self, key: tuple, node: int) -> None:
        bucket = self.entries.setdefault(key, [])
        bucket.append(node)

    def info(self) -> IndexInfo:
        return IndexInfo(self.label, self.keys, self.unique)


class GraphStore:
    """Arena-backed property graph.

    Concurrency: ``lock`` is a readers/writer lock owned by the store. Every
    mutation and snapshot acquires it internally; point reads (property
    resolution, adjacency probes) take no lock of their own and are safe
    under any caller-held ``lock.read()`` guard, which is how the query
    engine runs whole pipelines against a consistent state.
    """

    def __init__(self):
        self.lock = ReadWriteLock()
        self._rng = random.Random(0x5EED)

        # node arena
        self._node_labelset: list[int] = []
        self._node_alive = bytearray()
        self._labelsets: list[tuple[str, ...]] = []
        self._labelset_ids: dict[tuple[str, ...], int] = {}

        # per-label membership; member order defines column positions
        self._label_members: dict[str, list[int]] = {}
        self._label_pos: dict[str, dict[int, int]] = {}
        self._label_keys: dict[str, list[str]] = {}
        self._columns: dict[tuple[str, str], _Column] = {}

        # edge arena (struct-of-arrays)
        self._edge_src: list[int] = []
        self._edge_dst: list[int] = []
        self._edge_type: list[int] = []
        self._edge_props: list[Optional[dict[str, Any]]] = []
        self._edge_alive = bytearray()

        self._type_ids: dict[str, int] = {}
        self._type_names: list[str] = []

        # packed sorted adjacency
        self._out: list[list[int]] = []
        self._in: list[list[int]] = []

        # exact catalog internals
        self._label_counts: dict[str, int] = {}
        self._type_counts: dict[str, int] = {}
        self._triples: dict[tuple[str, int, str], list] = {}  # [count, src_set, dst_set]
        self._type_triple: dict[int, list] = {}

        self._indexes: dict[tuple[str, tuple[str, ...]], _CompositeIndex] = {}

        self.mutation_count = 0
        self.ddl_version = 0
        # instrumentation: adjacency comparisons spent in existence probes
        self.probe_comparisons = 0

    # -- id helpers ----------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._node_labelset)

    @property
    def edge_count(self) -> int:
        return len(self._edge_src)

    def has_node(self, node: int) -> bool:
        return 0 <= node < len(self._node_labelset) and self._node_alive[node]

    def has_edge(self, edge: int) -> bool:
        return 0 <= edge < len(self._edge_src) and self._edge_alive[edge]

    def _check_node(self, node: int) -> None:
        if not isinstance(node, int) or not self.has_node(node):
            raise UnknownNodeError(node)

    def node_labels(self, node: int) -> tuple[str, ...]:
        self._check_node(node)
        return self._labelsets[self._node_labelset[node]]

    def type_name(self, type_id: int) -> str:
        return self._type_names[type_id]

    def type_id(self, name: str) -> Optional[int]:
        return self._type_ids.get(name)

    def relationship_types(self) -> list[str]:
        return list(self._type_names)

    def labels(self) -> list[str]:
        return [lbl for lbl, cnt in self._label_counts.items() if cnt]

    # -- writes ----------------------------------------------------------------

    def create_node(self, labels: Iterable[str], properties: Optional[dict[str, Any]] = None) -> NodeId:
        labels = tuple(labels)
        props = {k: normalize_value(v) for k, v in (properties or {}).items()}
        props = {k: v for k, v in props.items() if v is not None}
        with self.lock.write():
            if not labels:
                raise TypeMismatchError("a node needs at least one label")
            if len(self._node_labelset) >= MAX_NODES:
                raise CapacityError(f"node arena limit reached ({MAX_NODES})")
            # validate column tags before touching any state
            for label in labels:
                for key, value in props.items():
                    col = self._columns.get((label, key))
                    tag = value_tag(value)
                    if col is not None and tag is not None and col.tag != tag:
                        raise TypeMismatchError(
                            f"column (:{label}, {key}) holds {col.tag}, got {tag}"
                        )
            # unique-constraint checks happen before any mutation
            for index in self._indexes.values():
                if not index.unique or index.label not in labels:
                    continue
                key = index.key_for(props)
                if key is not None and index.entries.get(key):
                    raise UniqueViolationError(index.label, index.keys, key)

            node = len(self._node_labelset)
            ls = self._labelset_ids.get(labels)
            if ls is None:
                ls = len(self._labelsets)
                self._labelsets.append(labels)
                self._labelset_ids[labels] = ls
            self._node_labelset.append(ls)
            self._node_alive.append(1)
            self._out.append([])
            self._in.append([])

            for label in labels:
                members = self._label_members.setdefault(label, [])
                pos = len(members)
                members.append(node)
                self._label_pos.setdefault(label, {})[node] = pos
                self._label_counts[label] = self._label_counts.get(label, 0) + 1
                # keep every existing column aligned, then fill supplied keys
                for key in self._label_keys.get(label, ()):
                    self._columns[(label, key)].values.append(None)
                for key, value in props.items():
                    col = self._columns.get((label, key))
                    if col is None:
                        col = _Column(value_tag(value), pos)
                        self._columns[(label, key)] = col
                        self._label_keys.setdefault(label, []).append(key)
                        col.values.append(None)
                    col.values[pos] = value
                    col.sample(value, self._rng)

            for index in self._indexes.values():
                if index.label in labels:
                    key = index.key_for(props)
                    if key is not None:
                        index.insert(key, node)

            self.mutation_count += 1
            return node

    def create_edge(self, src: int, dst: int, rel_type: str,
                    properties: Optional[dict[str, Any]] = None) -> EdgeId:
        props = {k: normalize_value(v) for k, v in (properties or {}).items()}
        props = {k: v for k, v in props.items() if v is not None}
        with self.lock.write():
            self._check_node(src)
            self._check_node(dst)
            if len(self._edge_src) >= MAX_EDGES:
                raise CapacityError(f"edge arena limit reached ({MAX_EDGES})")
            tid = self._type_ids.get(rel_type)
            if tid is None:
                if len(self._type_names) >= MAX_TYPES:
                    raise CapacityError(f"relationship type limit reached ({MAX_TYPES})")
                tid = len(self._type_names)
                self._type_names.append(rel_type)
                self._type_ids[rel_type] = tid

            edge = len(self._edge_src)
            self._edge_src.append(src)
            self._edge_dst.append(dst)
            self._edge_type.append(tid)
            self._edge_props.append(props or None)
            self._edge_alive.append(1)

            _insort(self._out[src], _pack(tid, dst, edge))
            _insort(self._in[dst], _pack(tid, src, edge))

            self._type_counts[rel_type] = self._type_counts.get(rel_type, 0) + 1
            tstat = self._type_triple.get(tid)
            if tstat is None:
                tstat = self._type_triple[tid] = [0, set(), set()]
            tstat[0] += 1
            tstat[1].add(src)
            tstat[2].add(dst)
            for sl in self._labelsets[self._node_labelset[src]]:
                for dl in self._labelsets[self._node_labelset[dst]]:
                    stat = self._triples.get((sl, tid, dl))
                    if stat is None:
                        stat = self._triples[(sl, tid, dl)] = [0, set(), set()]
                    stat[0] += 1
                    stat[1].add(src)
                    stat[2].add(dst)

            self.mutation_count += 1
            return edge

    # -- reads -----------------------------------------------------------------

    def edge_exists(self, src: int, dst: int, rel_type: Optional[str] = None) -> bool:
        """Binary-search probe on the sorted out-adjacency of src.

        Every adjacency comparison increments ``probe_comparisons`` so tests
        can assert the O(log d) bound. Callers inside an execution pipeline
        already hold the store's read guard; the probe itself takes no lock.
        """
        self._check_node(src)
        adj = self._out[src]
        if rel_type is not None:
            tid = self._type_ids.get(rel_type)
            if tid is None:
                return False
            return self._probe(adj, tid, dst)
        for tid in range(len(self._type_names)):
            if self._probe(adj, tid, dst):
                return True
        return False

    def _probe(self, adj: list[int], tid: int, dst: int) -> bool:
        prefix = (tid << _NODE_BITS) | dst
        target = prefix << _EDGE_BITS
        lo, hi = 0, len(adj)
        comparisons = 0
        while lo < hi:
            mid = (lo + hi) >> 1
            comparisons += 1
            if adj[mid] < target:
                lo = mid + 1
            else:
                hi = mid
        found = False
        if lo < len(adj):
            comparisons += 1
            found = (adj[lo] >> _EDGE_BITS) == prefix
        self.probe_comparisons += comparisons
        return found

    def out_edges(self, node: int, rel_type: Optional[str] = None) -> list[tuple[int, int, int]]:
        """(neighbor, edge id, type id) triples, sorted by (type, neighbor)."""
        self._check_node(node)
        return self._adj_entries(self._out[node], rel_type)

    def in_edges(self, node: int, rel_type: Optional[str] = None) -> list[tuple[int, int, int]]:
        self._check_node(node)
        return self._adj_entries(self._in[node], rel_type)

    def _adj_entries(self, adj: list[int], rel_type: Optional[str]) -> list[tuple[int, int, int]]:
        if rel_type is None:
            return [((e >> _EDGE_BITS) & _NODE_MASK, e & _EDGE_MASK, e >> (_NODE_BITS + _EDGE_BITS))
                    for e in adj]
        tid = self._type_ids.get(rel_type)
        if tid is None:
            return []
        lo = _bisect(adj, tid << (_NODE_BITS + _EDGE_BITS))
        hi = _bisect(adj, (tid + 1) << (_NODE_BITS + _EDGE_BITS))
        return [((e >> _EDGE_BITS) & _NODE_MASK, e & _EDGE_MASK, tid) for e in adj[lo:hi]]

    def out_degree(self, node: int) -> int:
        self._check_node(node)
        return len(self._out[node])

    def resolve_property(self, node: int, label: str, key: str) -> Any:
        """Column-store point read; touches nothing but the asked cell."""
        self._check_node(node)
        col = self._columns.get((label, key))
        if col is None:
            return None
        pos = self._label_pos.get(label, {}).get(node)
        if pos is None:
            return None
        return col.values[pos]

    def get_property(self, node: int, key: str) -> Any:
        """Resolve a property without a label hint (first label wins)."""
        self._check_node(node)
        for label in self._labelsets[self._node_labelset[node]]:
            col = self._columns.get((label, key))
            if col is not None:
                value = col.values[self._label_pos[label][node]]
                if value is not None:
                    return value
        return None

    def node_properties(self, node: int) -> dict[str, Any]:
        """Materialize the node's full property map (a fresh dict per call)."""
        self._check_node(node)
        out: dict[str, Any] = {}
        for label in self._labelsets[self._node_labelset[node]]:
            pos = self._label_pos[label][node]
            for key in self._label_keys.get(label, ()):
                if key in out:
                    continue
                value = self._columns[(label, key)].values[pos]
                if value is not None:
                    out[key] = value
        return out

    def column(self, label: str, key: str) -> Optional[_Column]:
        return self._columns.get((label, key))

    def label_position(self, label: str) -> dict[int, int]:
        return self._label_pos.get(label, {})

    def label_members(self, label: str) -> list[int]:
        return self._label_members.get(label, [])

    def edge_property(self, edge: int, key: str) -> Any:
        if not self.has_edge(edge):
            raise UnknownEdgeError(edge)
        props = self._edge_props[edge]
        return None if props is None else props.get(key)

    def edge_endpoints(self, edge: int) -> tuple[int, int, str]:
        if not self.has_edge(edge):
            raise UnknownEdgeError(edge)
        return self._edge_src[edge], self._edge_dst[edge], self._type_names[self._edge_type[edge]]

    def nodes(self) -> Iterator[int]:
        for node in range(len(self._node_labelset)):
            if self._node_alive[node]:
                yield node

    def edges(self) -> Iterator[tuple[int, int, int, str]]:
        """(edge id, src, dst, type name) for every live edge."""
        for edge in range(len(self._edge_src)):
            if self._edge_alive[edge]:
                yield edge, self._edge_src[edge], self._edge_dst[edge], \
                    self._type_names[self._edge_type[edge]]

    # -- indexes ----------------------------------------------------------------

    def create_index(self, label: str, keys: Iterable[str], unique: bool = False) -> None:
        keys = tuple(keys)
        with self.lock.write():
            if not keys:
                raise ArityMismatchError("an index needs at least one key")
            if (label, keys) in self._indexes:
                return
            index = _CompositeIndex(label, keys, unique)
            for node in self._label_members.get(label, ()):
                if not self._node_alive[node]:
                    continue
                pos = self._label_pos[label][node]
                parts = []
                for key in keys:
                    col = self._columns.get((label, key))
                    value = None if col is None else col.values[pos]
                    if value is None:
                        parts = None
                        break
                    if value_tag(value) == "vector":
                        raise TypeMismatchError("vector properties cannot be indexed")
                    parts.append(value)
                if parts is None:
                    continue
                key_tuple = tuple(parts)
                if unique and index.entries.get(key_tuple):
                    raise UniqueViolationError(label, keys, key_tuple)
                index.insert(key_tuple, node)
            self._indexes[(label, keys)] = index
            self.ddl_version += 1

    def drop_index(self, label: str, keys: Iterable[str]) -> None:
        keys = tuple(keys)
        with self.lock.write():
            if (label, keys) not in self._indexes:
                raise UnknownIndexError(label, keys)
            del self._indexes[(label, keys)]
            self.ddl_version += 1

    def indexes(self) -> list[IndexInfo]:
        return [ix.info() for ix in self._indexes.values()]

    def lookup_index(self, label: str, keys: Iterable[str], key_tuple: Iterable[Any]) -> list[int]:
        keys = tuple(keys)
        key_tuple = tuple(key_tuple)
        with self.lock.read():
            index = self._indexes.get((label, keys))
            if index is None:
                raise UnknownIndexError(label, keys)
            if len(key_tuple) != len(keys):
                raise ArityMismatchError(
                    f"index :{label}({', '.join(keys)}) takes {len(keys)} values, got {len(key_tuple)}"
                )
            if any(value_tag(v) == "vector" for v in key_tuple):
                raise TypeMismatchError("vector values cannot be index keys")
            return sorted(index.entries.get(key_tuple, ()))

    # -- catalog -----------------------------------------------------------------

    def catalog_snapshot(self) -> GraphCatalog:
        with self.lock.read():
            triples = {
                (sl, self._type_names[tid], dl): TripleStats(c[0], len(c[1]), len(c[2]))
                for (sl, tid, dl), c in self._triples.items()
            }
            type_stats = {
                self._type_names[tid]: TripleStats(c[0], len(c[1]), len(c[2]))
                for tid, c in self._type_triple.items()
            }
            samples = {
                (label, key): (len(set(_hashable(v) for v in col.reservoir)),
                               len(col.reservoir), col.seen)
                for (label, key), col in self._columns.items()
            }
            return GraphCatalog(
                total_nodes=len(self._node_labelset),
                total_edges=len(self._edge_src),
                label_counts=dict(self._label_counts),
                type_counts=dict(self._type_counts),
                triples=triples,
                type_stats=type_stats,
                distinct_samples=samples,
                indexes=tuple(ix.info() for ix in self._indexes.values()),
                ddl_version=self.ddl_version,
                mutation_count=self.mutation_count,
            )


def _hashable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tobytes()
    return value


def _insort(adj: list[int], entry: int) -> None:
    lo, hi = 0, len(adj)
    while lo < hi:
        mid = (lo + hi) >> 1
        if adj[mid] < entry:
            lo = mid + 1
        else:
            hi = mid
    adj.insert(lo, entry)


def _bisect(adj: list[int], target: int) -> int:
    lo, hi = 0, len(adj)
    while lo < hi:
        mid = (lo + hi) >> 1
        if adj[mid] < target:
            lo = mid + 1
        else:
            hi = mid
    return lo
