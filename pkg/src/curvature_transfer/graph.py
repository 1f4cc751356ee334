"""Immutable simple undirected graphs, edge-list I/O and truncated BFS."""
from __future__ import annotations

import io
import warnings
from collections import deque
from typing import Iterable, Iterator, NamedTuple, TextIO

import numpy as np

from .errors import GraphFormatError

VERTEX_COUNT_TAG = "vertex_count:"


class EdgeKey(NamedTuple):
    """Canonically oriented edge with ``u < v``."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeKey":
        a, b = int(a), int(b)
        return cls(a, b) if a < b else cls(b, a)


class Graph:
    """Simple undirected graph stored as sorted CSR adjacency.

    ``indptr`` and ``indices`` are read-only int64 arrays; the neighbors of
    ``u`` are ``indices[indptr[u]:indptr[u+1]]`` in strictly increasing order.
    ``labels`` optionally records the original vertex ids of a loaded file.
    """

    __slots__ = ("indptr", "indices", "labels", "_sets", "_edges")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, labels=None):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.labels = labels
        self._sets = None
        self._edges = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *, dedup: bool = False,
                   labels=None) -> "Graph":
        """Build a graph on vertices ``0..n-1`` from an iterable of pairs.

        Self-loops are rejected. Duplicate edges are rejected unless
        ``dedup`` is set, in which case they are dropped.
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphFormatError(f"vertex id out of range for {n} vertices")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise GraphFormatError("graph must be simple: self-loop")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        keys = lo * n + hi
        uniq = np.unique(keys)
        if len(uniq) != len(keys) and not dedup:
            raise GraphFormatError("graph must be simple: duplicate edge")
        lo, hi = uniq // max(n, 1), uniq % max(n, 1)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst, labels)

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    n = vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def _check(self, u: int) -> None:
        if not 0 <= u < self.vertex_count:
            raise IndexError(f"vertex {u} out of range [0, {self.vertex_count})")

    def degree(self, u: int) -> int:
        self._check(u)
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted neighbor ids of ``u`` (read-only view)."""
        self._check(u)
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    @property
    def adjacency(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in self.neighbors(u)) for u in range(self.vertex_count)]

    def neighbor_sets(self) -> list[frozenset]:
        """Per-vertex neighbor sets, built once and cached on the graph."""
        if self._sets is None:
            ind, ptr = self.indices.tolist(), self.indptr.tolist()
            self._sets = [frozenset(ind[ptr[u]:ptr[u + 1]]) for u in range(self.vertex_count)]
        return self._sets

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < len(nb) and nb[k] == v)

    def edge_array(self) -> np.ndarray:
        """All edges as an ``(m, 2)`` array in canonical ``u < v`` order."""
        if self._edges is None:
            src = np.repeat(np.arange(self.vertex_count, dtype=np.int64), self.degrees)
            mask = src < self.indices
            e = np.stack([src[mask], self.indices[mask]], axis=1)
            e.setflags(write=False)
            self._edges = e
        return self._edges

    def edges(self) -> Iterator[EdgeKey]:
        for u, v in self.edge_array().tolist():
            yield EdgeKey(u, v)

    def edge_key(self, u: int, v: int) -> EdgeKey:
        """Canonical key of an existing edge; raises ``KeyError`` otherwise."""
        e = EdgeKey.of(u, v)
        if e.u == e.v or not self.has_edge(e.u, e.v):
            raise KeyError(f"({u}, {v}) is not an edge")
        return e

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"


def load_edge_list(stream: TextIO | str, *, dedup: bool = False) -> Graph:
    """Parse whitespace-separated integer pairs into a :class:`Graph`.

    Lines starting with ``#`` are comments. Arbitrary non-negative ids are
    remapped to ``0..k-1`` in increasing id order and the original ids are
    kept in ``graph.labels``. A ``# vertex_count: N`` comment, as written by
    :func:`write_edge_list`, marks the ids as already dense and restores
    trailing isolated vertices.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    pairs = []
    declared = None
    for lineno, line in enumerate(stream, 1):
        text = line.strip()
        if not text:
            continue
        if text.startswith("#"):
            body = text[1:].strip()
            if body.startswith(VERTEX_COUNT_TAG):
                try:
                    declared = int(body[len(VERTEX_COUNT_TAG):])
                except ValueError:
                    raise GraphFormatError("bad vertex_count directive", lineno) from None
            continue
        tokens = text.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected two vertex ids, got {len(tokens)} tokens", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"malformed vertex id in {text!r}", lineno) from None
        if a < 0 or b < 0:
            raise GraphFormatError("vertex ids must be non-negative", lineno)
        if a == b:
            raise GraphFormatError("graph must be simple: self-loop", lineno)
        pairs.append((a, b, lineno))

    seen = {}
    for a, b, lineno in pairs:
        key = (a, b) if a < b else (b, a)
        if key in seen:
            msg = f"graph must be simple: duplicate edge {key} (first on line {seen[key]})"
            if not dedup:
                raise GraphFormatError(msg, lineno)
            warnings.warn(f"line {lineno}: {msg}; dropped", stacklevel=2)
        else:
            seen[key] = lineno
    edges = np.array(list(seen), dtype=np.int64).reshape(-1, 2)

    if declared is not None:
        if edges.size and edges.max() >= declared:
            raise GraphFormatError(f"vertex id exceeds declared vertex_count {declared}")
        return Graph.from_edges(declared, edges)
    labels, dense = np.unique(edges, return_inverse=True)
    return Graph.from_edges(len(labels), dense.reshape(-1, 2), labels=labels)


def write_edge_list(g: Graph, stream: TextIO | None = None, header: Iterable[str] = ()) -> str | None:
    """Serialize ``g`` in the edge-list format; returns text if no stream given."""
    out = stream if stream is not None else io.StringIO()
    for line in header:
        out.write(f"# {line}\n")
    out.write(f"# {VERTEX_COUNT_TAG} {g.vertex_count}\n")
    for u, v in g.edge_array().tolist():
        out.write(f"{u} {v}\n")
    return out.getvalue() if stream is None else None


def truncated_distances(g: Graph, sources: Iterable[int], max_depth: int) -> dict[tuple[int, int], int]:
    """Breadth-first distances from each source, up to ``max_depth`` hops.

    Returns a map ``(source, vertex) -> distance`` holding every vertex within
    the horizon; absent pairs are unreachable within ``max_depth``.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    nbrs = g.neighbor_sets()
    out = {}
    for s in sources:
        g._check(s)
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            d = dist[x]
            if d == max_depth:
                continue
            for y in nbrs[x]:
                if y not in dist:
                    dist[y] = d + 1
                    queue.append(y)
        for x, d in dist.items():
            out[(s, x)] = d
    return out


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Full single-source BFS; unreachable vertices get -1."""
    g._check(source)
    dist = np.full(g.vertex_count, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    ptr, ind = g.indptr, g.indices
    while frontier.size:
        d += 1
        starts, stops = ptr[frontier], ptr[frontier + 1]
        nxt = np.concatenate([ind[a:b] for a, b in zip(starts, stops)])
        nxt = np.unique(nxt)
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = d
        frontier = nxt
    return dist
