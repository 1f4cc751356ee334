"""Compiled all-edge computation of the 2-hop statistics.

Mirrors :func:`curvature_transfer.local_stats.local_stats` but works on the
CSR arrays of the graph in one pass over the edges, with a compiled
Hopcroft-Karp for the cross-edge matching. Work per edge is the sum of the
degrees of the two neighborhoods plus one matching on the cross edges.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .graph import Graph

NO_MATCH = -1


@numba.njit(cache=True)
def _hopcroft_karp(n_left, n_right, ptr, idx):
    match_l = np.full(n_left, NO_MATCH, np.int64)
    match_r = np.full(n_right, NO_MATCH, np.int64)
    dist = np.empty(n_left, np.int64)
    queue = np.empty(n_left, np.int64)
    pos = np.empty(n_left, np.int64)
    stack = np.empty(n_left, np.int64)
    inf = n_left + 1
    size = 0
    while True:
        head = 0
        tail = 0
        for a in range(n_left):
            if match_l[a] == NO_MATCH:
                dist[a] = 0
                queue[tail] = a
                tail += 1
            else:
                dist[a] = inf
        found = False
        while head < tail:
            a = queue[head]
            head += 1
            for t in range(ptr[a], ptr[a + 1]):
                nxt = match_r[idx[t]]
                if nxt == NO_MATCH:
                    found = True
                elif dist[nxt] == inf:
                    dist[nxt] = dist[a] + 1
                    queue[tail] = nxt
                    tail += 1
        if not found:
            return size
        for a in range(n_left):
            pos[a] = ptr[a]
        for root in range(n_left):
            if match_l[root] != NO_MATCH:
                continue
            top = 0
            stack[0] = root
            while top >= 0:
                a = stack[top]
                if pos[a] == ptr[a + 1]:
                    dist[a] = inf
                    top -= 1
                    continue
                b = idx[pos[a]]
                pos[a] += 1
                nxt = match_r[b]
                if nxt == NO_MATCH:
                    for s in range(top, -1, -1):
                        x = stack[s]
                        prev = match_l[x]
                        match_l[x] = b
                        match_r[b] = x
                        b = prev
                    size += 1
                    break
                if dist[nxt] == dist[a] + 1:
                    top += 1
                    stack[top] = nxt


@numba.njit(cache=True)
def _edge_kernel(indptr, indices, eu, ev, out):
    n = indptr.shape[0] - 1
    in_i = np.zeros(n, np.int64)
    in_j = np.zeros(n, np.int64)
    local = np.zeros(n, np.int64)
    for e in range(eu.shape[0]):
        i = eu[e]
        j = ev[e]
        stamp = e + 1
        for t in range(indptr[i], indptr[i + 1]):
            in_i[indices[t]] = stamp
        for t in range(indptr[j], indptr[j + 1]):
            in_j[indices[t]] = stamp
        deg_i = indptr[i + 1] - indptr[i]
        deg_j = indptr[j + 1] - indptr[j]
        tri = 0
        for t in range(indptr[i], indptr[i + 1]):
            if in_j[indices[t]] == stamp:
                tri += 1
        n_ui = deg_i - 1 - tri
        n_uj = deg_j - 1 - tri
        # local ids of U_j for the bipartite graph
        r = 0
        for t in range(indptr[j], indptr[j + 1]):
            w = indices[t]
            if w != i and in_i[w] != stamp:
                local[w] = r
                r += 1
        pi_max = 0
        xi_i = 0
        cross = 0
        ptr = np.zeros(n_ui + 1, np.int64)
        room = 0
        for t in range(indptr[i], indptr[i + 1]):
            k = indices[t]
            if k != j and in_j[k] != stamp:
                room += indptr[k + 1] - indptr[k]
        adj = np.empty(max(min(room, n_ui * n_uj), 1), np.int64)
        a = 0
        # side i: boxes of k in N(i) - {j} against U_j; collect cross edges from U_i
        for t in range(indptr[i], indptr[i + 1]):
            k = indices[t]
            if k == j:
                continue
            unique = in_j[k] != stamp
            cnt = 0
            for s in range(indptr[k], indptr[k + 1]):
                x = indices[s]
                if in_j[x] == stamp and in_i[x] != stamp and x != i:
                    if unique:
                        adj[cross + cnt] = local[x]
                    cnt += 1
            if cnt > pi_max:
                pi_max = cnt
            if unique:
                if cnt > 0:
                    xi_i += 1
                cross += cnt
                a += 1
                ptr[a] = cross
        # side j: boxes of k in N(j) - {i} against U_i
        xi_j = 0
        for t in range(indptr[j], indptr[j + 1]):
            k = indices[t]
            if k == i:
                continue
            cnt = 0
            for s in range(indptr[k], indptr[k + 1]):
                x = indices[s]
                if in_i[x] == stamp and in_j[x] != stamp and x != j:
                    cnt += 1
            if cnt > pi_max:
                pi_max = cnt
            if cnt > 0 and in_i[k] != stamp:
                xi_j += 1
        matching = 0
        if cross > 0:
            matching = _hopcroft_karp(n_ui, n_uj, ptr, adj)
        out[e, 0] = deg_i
        out[e, 1] = deg_j
        out[e, 2] = tri
        out[e, 3] = xi_i
        out[e, 4] = xi_j
        out[e, 5] = pi_max
        out[e, 6] = cross
        out[e, 7] = matching


@dataclass(frozen=True)
class EdgeStats:
    """Column arrays of the 2-hop statistics, one entry per edge."""

    u: np.ndarray
    v: np.ndarray
    deg_i: np.ndarray
    deg_j: np.ndarray
    tri: np.ndarray
    xi_i: np.ndarray
    xi_j: np.ndarray
    Xi: np.ndarray
    pi_max: np.ndarray
    sho_max: np.ndarray
    cross_edges: np.ndarray
    matching: np.ndarray
    c4_edge: np.ndarray

    def __len__(self) -> int:
        return len(self.u)

    @property
    def unique_i(self) -> np.ndarray:
        return self.deg_i - 1 - self.tri

    @property
    def unique_j(self) -> np.ndarray:
        return self.deg_j - 1 - self.tri


def edge_stats(g: Graph, edges: np.ndarray | None = None) -> EdgeStats:
    """Statistics for every edge (canonical order) or for the given ``(m, 2)`` edges."""
    if edges is None:
        edges = g.edge_array()
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    eu, ev = np.ascontiguousarray(edges[:, 0]), np.ascontiguousarray(edges[:, 1])
    out = np.zeros((len(edges), 8), dtype=np.int64)
    if len(edges):
        _edge_kernel(g.indptr, g.indices, eu, ev, out)
    deg_i, deg_j, tri, xi_i, xi_j, pi_max, cross, matching = out.T
    Xi = xi_i + xi_j
    sho = pi_max * np.maximum(deg_i, deg_j)
    with np.errstate(divide="ignore", invalid="ignore"):
        c4 = np.where(Xi > 0, Xi / np.where(sho > 0, sho, 1), 0.0)
    return EdgeStats(eu, ev, deg_i, deg_j, tri, xi_i, xi_j, Xi, pi_max, sho, cross, matching, c4)
