"""Weighted graphs with node feature vectors and their shortest-path metric.

Two text formats are understood.  JSON::

    {"nodes": [{"id": "v1", "features": [1.0]}, ...],
     "edges": [{"a": "v1", "b": "v2", "len": 1.0}, ...]}

and a line-oriented TSV (``#`` starts a comment)::

    N <id> <f1> <f2> ...
    E <id> <id> <len>

Edges are undirected.  Each feature column is a separate measure on the
node set.
"""

from __future__ import annotations

import heapq
import io
import json
import math
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .mmcore import RadialProfile, ValidationError, quantize


class GraphFormatError(ValidationError):
    """Malformed or inconsistent graph input; ``where`` locates the problem."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class DisconnectedGraphError(ValidationError):
    def __init__(self, origin: str, unreachable: list[str]):
        self.origin = origin
        self.unreachable = unreachable
        shown = ", ".join(unreachable[:10]) + (", ..." if len(unreachable) > 10 else "")
        super().__init__(
            f"{len(unreachable)} node(s) unreachable from {origin!r}: {shown}")


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    node_ids: tuple[str, ...]
    features: np.ndarray  # (n, k)
    edges: tuple[tuple[str, str, float], ...]
    _index: dict = field(init=False, repr=False)
    _adjacency: tuple = field(init=False, repr=False)

    def __post_init__(self):
        ids = tuple(self.node_ids)
        feats = np.array(self.features, dtype=np.float64)
        if feats.ndim == 1:
            feats = feats.reshape(-1, 1)
        if feats.ndim != 2 or feats.shape[0] != len(ids):
            raise GraphFormatError("need one feature vector per node")
        if not ids:
            raise GraphFormatError("graph has no nodes")
        if feats.shape[1] == 0:
            raise GraphFormatError("feature vectors must have at least one component")
        if not np.all(np.isfinite(feats)) or np.any(feats < 0):
            raise GraphFormatError("features must be finite and nonnegative")
        index = {}
        for i, nid in enumerate(ids):
            if nid in index:
                raise GraphFormatError(f"duplicate node id {nid!r}")
            index[nid] = i
        adjacency = [[] for _ in ids]
        seen = set()
        edges = []
        for a, b, length in self.edges:
            length = float(length)
            where = f"edge {a}-{b}"
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise GraphFormatError(f"unknown node {missing!r}", where)
            if a == b:
                raise GraphFormatError("self-loops are not allowed", where)
            if not math.isfinite(length) or length <= 0:
                raise GraphFormatError(f"edge length must be positive, got {length}", where)
            key = frozenset((a, b))
            if key in seen:
                raise GraphFormatError("duplicate edge", where)
            seen.add(key)
            ia, ib = index[a], index[b]
            adjacency[ia].append((ib, length))
            adjacency[ib].append((ia, length))
            edges.append((a, b, length))
        feats.setflags(write=False)
        object.__setattr__(self, "node_ids", ids)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adjacency", tuple(tuple(x) for x in adjacency))

    @property
    def n(self) -> int:
        return len(self.node_ids)

    @property
    def k(self) -> int:
        return self.features.shape[1]

    def index_of(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise ValidationError(f"node {node_id!r} not found") from None

    def __contains__(self, node_id):
        return node_id in self._index


def _num(text: str, where: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise GraphFormatError(f"not a number: {text!r}", where) from None
    return value


def _check_features(values: list[float], k: int | None, where: str) -> int:
    if not values:
        raise GraphFormatError("node has no features", where)
    if k is not None and len(values) != k:
        raise GraphFormatError(f"expected {k} features, got {len(values)}", where)
    for v in values:
        if not math.isfinite(v) or v < 0:
            raise GraphFormatError(f"feature must be finite and nonnegative, got {v}", where)
    return len(values)


def _build(nodes, edges) -> WeightedGraph:
    ids = [nid for nid, _, _ in nodes]
    seen = {}
    for nid, _, where in nodes:
        if nid in seen:
            raise GraphFormatError(f"duplicate node id {nid!r}", where)
        seen[nid] = where
    pairs = set()
    for a, b, length, where in edges:
        for end in (a, b):
            if end not in seen:
                raise GraphFormatError(f"unknown node {end!r}", where)
        if a == b:
            raise GraphFormatError("self-loops are not allowed", where)
        if not math.isfinite(length) or length <= 0:
            raise GraphFormatError(f"edge length must be positive, got {length}", where)
        key = frozenset((a, b))
        if key in pairs:
            raise GraphFormatError(f"duplicate edge {a}-{b}", where)
        pairs.add(key)
    feats = np.array([f for _, f, _ in nodes], dtype=np.float64)
    return WeightedGraph(tuple(ids), feats, tuple((a, b, l) for a, b, l, _ in edges))


def _parse_json(text: str) -> WeightedGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, f"line {exc.lineno} col {exc.colno}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise GraphFormatError('top level must be an object with a "nodes" list')
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphFormatError('"edges" must be a list')
    k = None
    nodes = []
    for i, node in enumerate(doc["nodes"]):
        where = f"nodes[{i}]"
        if not isinstance(node, dict) or "id" not in node:
            raise GraphFormatError('node needs an "id"', where)
        feats = node.get("features")
        if not isinstance(feats, list):
            raise GraphFormatError('node needs a "features" list', where)
        if any(isinstance(v, (bool, str)) or v is None for v in feats):
            raise GraphFormatError("features must be numbers", f"{where}.features")
        values = [_num(v, f"{where}.features") for v in feats]
        k = _check_features(values, k, where)
        nodes.append((str(node["id"]), values, where))
    edges = []
    for i, edge in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(edge, dict) or not {"a", "b", "len"} <= edge.keys():
            raise GraphFormatError('edge needs "a", "b" and "len"', where)
        edges.append((str(edge["a"]), str(edge["b"]), _num(edge["len"], f"{where}.len"), where))
    return _build(nodes, edges)


def _parse_tsv(text: str) -> WeightedGraph:
    k = None
    nodes, edges = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        parts = line.split()
        tag = parts[0]
        if tag == "N":
            if len(parts) < 3:
                raise GraphFormatError("node line needs an id and at least one feature", where)
            values = [_num(p, where) for p in parts[2:]]
            k = _check_features(values, k, where)
            nodes.append((parts[1], values, where))
        elif tag == "E":
            if len(parts) != 4:
                raise GraphFormatError("edge line needs two ids and a length", where)
            edges.append((parts[1], parts[2], _num(parts[3], where), where))
        else:
            raise GraphFormatError(f"unknown record type {tag!r}", where)
    if not nodes:
        raise GraphFormatError("graph has no nodes")
    return _build(nodes, edges)


def parse_graph(source: str | bytes | IO, fmt: str = "json") -> WeightedGraph:
    """Parse a graph from text, bytes or a file object in ``json`` or ``tsv``."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"not UTF-8 ({exc.reason})", f"byte {exc.start}") from None
    if fmt == "json":
        return _parse_json(source)
    if fmt == "tsv":
        return _parse_tsv(source)
    raise ValueError(f"unknown graph format {fmt!r}")


def load_graph(path: str, fmt: str | None = None) -> WeightedGraph:
    """Read a graph file; the format defaults from the file extension."""
    if fmt is None:
        fmt = "tsv" if path.endswith((".tsv", ".txt")) else "json"
    with open(path, "rb") as fh:
        return parse_graph(fh, fmt)


def emit_graph(g: WeightedGraph, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {
            "nodes": [{"id": nid, "features": g.features[i].tolist()}
                      for i, nid in enumerate(g.node_ids)],
            "edges": [{"a": a, "b": b, "len": length} for a, b, length in g.edges],
        }
        return json.dumps(doc, indent=1) + "\n"
    if fmt == "tsv":
        out = io.StringIO()
        for i, nid in enumerate(g.node_ids):
            out.write("\t".join(["N", nid] + [repr(v) for v in g.features[i].tolist()]) + "\n")
        for a, b, length in g.edges:
            out.write(f"E\t{a}\t{b}\t{length!r}\n")
        return out.getvalue()
    raise ValueError(f"unknown graph format {fmt!r}")


def _dijkstra(g: WeightedGraph, source: int) -> np.ndarray:
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    done = np.zeros(g.n, dtype=bool)
    heap = [(0.0, source)]
    adjacency = g._adjacency
    while heap:
        d_u, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, length in adjacency[u]:
            d_v = d_u + length
            if d_v < dist[v]:
                dist[v] = d_v
                heapq.heappush(heap, (d_v, v))
    return dist


def shortest_paths_from(g: WeightedGraph, origin: str,
                        restrict_reachable: bool = False) -> dict[str, float]:
    """Shortest-path distances from ``origin`` to every node.

    Nodes unreachable from ``origin`` raise :class:`DisconnectedGraphError`
    unless ``restrict_reachable`` is set, in which case they are left out of
    the returned mapping.
    """
    dist = _dijkstra(g, g.index_of(origin))
    unreachable = [g.node_ids[i] for i in np.flatnonzero(~np.isfinite(dist))]
    if unreachable and not restrict_reachable:
        raise DisconnectedGraphError(origin, unreachable)
    return {nid: float(dist[i]) for i, nid in enumerate(g.node_ids) if np.isfinite(dist[i])}


def rooted_profile(g: WeightedGraph, origin: str, feature_index: int = 0,
                   restrict_reachable: bool = False,
                   decimals: int | None = None) -> RadialProfile:
    """Radial profile of ``g`` rooted at ``origin`` under one feature column.

    ``decimals`` optionally rounds the shortest-path radii, which merges
    radii that differ only by accumulated rounding.
    """
    if not 0 <= feature_index < g.k:
        raise ValidationError(f"feature index {feature_index} out of range for k={g.k}")
    dist = _dijkstra(g, g.index_of(origin))
    reach = np.isfinite(dist)
    if not reach.all() and not restrict_reachable:
        raise DisconnectedGraphError(origin, [g.node_ids[i] for i in np.flatnonzero(~reach)])
    return RadialProfile(origin, quantize(dist[reach], decimals), g.features[reach, feature_index])
