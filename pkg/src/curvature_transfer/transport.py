"""Exact Wasserstein-1 between sparse measures and exact Ollivier-Ricci curvature.

The transportation problem on the support pairs is solved by the network
simplex of POT (``ot.emd``), which is exact up to floating point for these
small dense instances. Distances between support vertices come from a
breadth-first search truncated at depth 3, with a full BFS fallback.
"""
from __future__ import annotations

import os
import sys
from collections.abc import Mapping
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ConnectivityError, NormalizationError
from .graph import Graph, bfs_distances
from .local_stats import DEFAULT_PROFILE, AlphaProfile

MASS_TOL = 1e-12
MARGINAL_TOL = 1e-10
SEARCH_DEPTH = 3
UNREACHED = -1

_ot = None


def _solver():
    global _ot
    if _ot is None:
        if "ot" not in sys.modules:
            # POT probes every installed deep-learning backend on import; only numpy is used here
            for name in ("TORCH", "PYTORCH", "TENSORFLOW", "JAX", "CUPY"):
                os.environ.setdefault(f"POT_BACKEND_DISABLE_{name}", "1")
        import ot
        _ot = ot
    return _ot


@dataclass(frozen=True)
class SparseMeasure:
    """Probability measure on finitely many vertices (positive masses)."""

    vertices: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.int64)
        m = np.asarray(self.masses, dtype=np.float64)
        if v.shape != m.shape or v.ndim != 1:
            raise ValueError("vertices and masses must be 1-d arrays of equal length")
        if len(np.unique(v)) != len(v):
            raise ValueError("support vertices must be distinct")
        if np.any(m <= 0):
            raise ValueError("masses must be positive")
        if abs(m.sum() - 1.0) > MASS_TOL:
            raise NormalizationError(f"masses sum to {m.sum()!r}, not 1")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "masses", m)

    @classmethod
    def from_pairs(cls, pairs) -> "SparseMeasure":
        pairs = list(pairs)
        return cls(np.array([p[0] for p in pairs], dtype=np.int64),
                   np.array([p[1] for p in pairs], dtype=np.float64))

    @property
    def support(self) -> list[tuple[int, float]]:
        return list(zip(self.vertices.tolist(), self.masses.tolist()))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TransportPlan:
    """Optimal coupling: parallel arrays of sources, targets and masses."""

    sources: np.ndarray
    targets: np.ndarray
    masses: np.ndarray
    objective: float

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        return list(zip(self.sources.tolist(), self.targets.tolist(), self.masses.tolist()))


def lazy_measure(g: Graph, u: int, profile: AlphaProfile = DEFAULT_PROFILE) -> SparseMeasure:
    """Mass alpha_u at u and (1 - alpha_u)/deg(u) at each neighbor."""
    deg = g.degree(u)
    if deg == 0:
        raise ValueError(f"vertex {u} is isolated; its walk measure is undefined")
    alpha = float(profile.alpha(deg))
    nb = g.neighbors(u)
    if alpha == 0.0:
        return SparseMeasure(nb.copy(), np.full(deg, 1.0 / deg))
    k = int(np.searchsorted(nb, u))
    vertices = np.concatenate([nb[:k], [u], nb[k:]])
    masses = np.full(deg + 1, float(profile.weight(deg)))
    masses[k] = alpha
    return SparseMeasure(vertices, masses)


def neighbor_measure(g: Graph, u: int) -> SparseMeasure:
    """Uniform measure on the open neighborhood (the non-lazy walk)."""
    return lazy_measure(g, u, AlphaProfile(0.0))


@numba.njit(cache=True)
def _support_distances(indptr, indices, xs, ys, out):
    """Distances xs x ys up to depth 3; pairs farther away get UNREACHED."""
    n = indptr.shape[0] - 1
    near = np.zeros(n, np.int64)
    for a in range(xs.shape[0]):
        x = xs[a]
        stamp = a + 1
        for t in range(indptr[x], indptr[x + 1]):
            near[indices[t]] = stamp
        for b in range(ys.shape[0]):
            y = ys[b]
            if y == x:
                out[a, b] = 0
                continue
            if near[y] == stamp:
                out[a, b] = 1
                continue
            d = UNREACHED
            for t in range(indptr[y], indptr[y + 1]):
                if near[indices[t]] == stamp:
                    d = 2
                    break
            if d == UNREACHED:
                for t in range(indptr[y], indptr[y + 1]):
                    w = indices[t]
                    for s in range(indptr[w], indptr[w + 1]):
                        if near[indices[s]] == stamp:
                            d = 3
                            break
                    if d == 3:
                        break
            out[a, b] = d


def support_distances(g: Graph, xs, ys) -> np.ndarray:
    """Graph distances between two vertex lists as a float matrix.

    Pairs beyond depth 3 are resolved by a full BFS; a pair that is still
    unreachable raises :class:`ConnectivityError`.
    """
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    ys = np.ascontiguousarray(ys, dtype=np.int64)
    out = np.empty((len(xs), len(ys)), dtype=np.int64)
    _support_distances(g.indptr, g.indices, xs, ys, out)
    far = np.argwhere(out == UNREACHED)
    for a in np.unique(far[:, 0]):
        full = bfs_distances(g, int(xs[a]))
        out[a] = full[ys]
    if np.any(out == UNREACHED):
        a, b = np.argwhere(out == UNREACHED)[0]
        raise ConnectivityError(f"vertices {xs[a]} and {ys[b]} are not connected")
    return out.astype(np.float64)


def _cost_matrix(mu: SparseMeasure, nu: SparseMeasure, dist) -> np.ndarray:
    if isinstance(dist, np.ndarray):
        if dist.shape != (len(mu), len(nu)):
            raise ValueError(f"distance matrix has shape {dist.shape}, expected {(len(mu), len(nu))}")
        cost = np.asarray(dist, dtype=np.float64)
    else:
        lookup = (lambda x, y: dist.get((x, y))) if isinstance(dist, Mapping) else dist
        cost = np.empty((len(mu), len(nu)))
        for a, x in enumerate(mu.vertices.tolist()):
            for b, y in enumerate(nu.vertices.tolist()):
                d = lookup(x, y)
                cost[a, b] = np.inf if d is None else d
    if not np.all(np.isfinite(cost)):
        a, b = np.argwhere(~np.isfinite(cost))[0]
        raise ConnectivityError(
            f"no finite distance between {mu.vertices[a]} and {nu.vertices[b]}")
    return cost


def w1_exact(mu: SparseMeasure, nu: SparseMeasure, dist) -> TransportPlan:
    """Optimal transport plan between ``mu`` and ``nu``.

    ``dist`` is a ``(len(mu), len(nu))`` matrix aligned with the supports, a
    mapping ``(x, y) -> distance`` or a callable ``dist(x, y)``.
    """
    if abs(mu.masses.sum() - nu.masses.sum()) > MASS_TOL:
        raise NormalizationError("measures carry different total mass")
    cost = _cost_matrix(mu, nu, dist)
    plan = _solver().emd(mu.masses, nu.masses, cost)
    src, dst = np.nonzero(plan > 0)
    mass = plan[src, dst]
    if (np.abs(plan.sum(axis=1) - mu.masses).max() > MARGINAL_TOL
            or np.abs(plan.sum(axis=0) - nu.masses).max() > MARGINAL_TOL):
        raise RuntimeError("transport solver returned an infeasible plan")
    return TransportPlan(mu.vertices[src], nu.vertices[dst], mass, float(np.sum(mass * cost[src, dst])))


def _edge_w1(g: Graph, mu: SparseMeasure, nu: SparseMeasure) -> float:
    cost = support_distances(g, mu.vertices, nu.vertices)
    return w1_exact(mu, nu, cost).objective


def or_curvature(g: Graph, e, profile: AlphaProfile = DEFAULT_PROFILE) -> float:
    """Exact lazy Ollivier-Ricci curvature ``1 - W1(m_i, m_j)``."""
    i, j = g.edge_key(*e)
    return 1.0 - _edge_w1(g, lazy_measure(g, i, profile), lazy_measure(g, j, profile))


def or0_curvature(g: Graph, e) -> float:
    """Exact non-lazy curvature with neighbor-uniform measures."""
    i, j = g.edge_key(*e)
    return 1.0 - _edge_w1(g, neighbor_measure(g, i), neighbor_measure(g, j))


def exact_curvatures(g: Graph, profile: AlphaProfile = DEFAULT_PROFILE,
                     edges: np.ndarray | None = None, nonlazy: bool = True):
    """Exact lazy (and optionally non-lazy) curvature of every edge.

    Returns ``(c_or, c_or0)`` arrays in the order of ``edges`` (default: all
    edges, canonical order); ``c_or0`` is ``None`` unless ``nonlazy``.
    """
    if edges is None:
        edges = g.edge_array()
    lazy = {}
    plain = {}
    c_or = np.empty(len(edges))
    c_or0 = np.empty(len(edges)) if nonlazy else None
    for k, (i, j) in enumerate(np.asarray(edges).tolist()):
        for u in (i, j):
            if u not in lazy:
                lazy[u] = lazy_measure(g, u, profile)
                if nonlazy:
                    plain[u] = neighbor_measure(g, u)
        c_or[k] = 1.0 - _edge_w1(g, lazy[i], lazy[j])
        if nonlazy:
            c_or0[k] = 1.0 - _edge_w1(g, plain[i], plain[j])
    return c_or, c_or0
