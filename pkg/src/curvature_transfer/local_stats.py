"""Per-edge 2-hop combinatorics, lazy-walk parameters and comparison moduli.

For an edge (i, j) with neighborhoods N(i), N(j):

* ``C = N(i) & N(j)`` (common neighbors, ``tri = |C|``),
* ``U_i = N(i) - N(j) - {j}`` and ``U_j`` symmetric (unique neighbors),
* ``xi_i`` are the vertices of ``U_i`` with a neighbor in ``U_j``,
* the box count of ``k in N(u) - {v}`` is ``|N(k) & U_v|``; ``pi_max`` is its
  maximum over both orientations and ``sho_max = pi_max * max degree``,
* ``matching`` is a maximum matching of the bipartite graph of edges
  between ``U_i`` and ``U_j``.

The box count ranges over every ``k in N(u) - {v}``, common neighbors
included, not only over unique neighbors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .graph import EdgeKey, Graph
from .matching import hopcroft_karp


class NeighborhoodPartition(NamedTuple):
    common: frozenset
    unique_i: frozenset
    unique_j: frozenset


@dataclass(frozen=True)
class LocalStats:
    deg_i: int
    deg_j: int
    tri: int
    xi_i: frozenset
    xi_j: frozenset
    Xi: int
    pi_max: int
    sho_max: int
    cross_edges: int
    matching: int
    c4_edge: float

    @property
    def unique_i(self) -> int:
        return self.deg_i - 1 - self.tri

    @property
    def unique_j(self) -> int:
        return self.deg_j - 1 - self.tri


def _edge(g: Graph, e) -> EdgeKey:
    return g.edge_key(*e)


def partition(g: Graph, e) -> NeighborhoodPartition:
    """Common and unique neighbor sets of edge ``e``."""
    i, j = _edge(g, e)
    sets = g.neighbor_sets()
    ni, nj = sets[i], sets[j]
    common = ni & nj
    return NeighborhoodPartition(common, ni - nj - {j}, nj - ni - {i})


def local_stats(g: Graph, e) -> LocalStats:
    """All 2-hop statistics of edge ``e`` (reference implementation)."""
    i, j = _edge(g, e)
    sets = g.neighbor_sets()
    common, ui, uj = partition(g, (i, j))
    deg_i, deg_j = len(sets[i]), len(sets[j])

    def box_max(u, v, uv):
        return max((len(sets[k] & uv) for k in sets[u] if k != v), default=0)

    pi_max = max(box_max(i, j, uj), box_max(j, i, ui))
    sho_max = pi_max * max(deg_i, deg_j)

    left = sorted(ui)
    right = {w: r for r, w in enumerate(sorted(uj))}
    adj = [[right[w] for w in sorted(sets[k] & uj)] for k in left]
    cross = sum(len(a) for a in adj)
    xi_i = frozenset(k for k, a in zip(left, adj) if a)
    xi_j = frozenset(w for w in uj if sets[w] & ui)
    Xi = len(xi_i) + len(xi_j)
    matching = hopcroft_karp(adj, len(right)) if cross else 0
    c4 = Xi / sho_max if Xi > 0 else 0.0
    return LocalStats(deg_i, deg_j, len(common), xi_i, xi_j, Xi, pi_max, sho_max,
                      cross, matching, c4)


def c4_graph(g: Graph) -> float:
    """Largest edgewise 4-cycle coefficient over all edges."""
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    from .batch import edge_stats
    return float(edge_stats(g).c4_edge.max())


# ---------------------------------------------------------------- laziness

@dataclass(frozen=True)
class AlphaProfile:
    """Idleness of the lazy walk: ``1/(deg+1)`` by default, or a constant."""

    constant: float | None = None

    def __post_init__(self):
        if self.constant is not None:
            c = float(self.constant)
            if c == 1.0:
                raise ParameterError("alpha = 1 leaves no mass on neighbors")
            if not 0.0 <= c < 1.0:
                raise ParameterError(f"alpha must lie in [0, 1), got {c}")

    @classmethod
    def parse(cls, text: str) -> "AlphaProfile":
        if text == "default":
            return cls()
        if text.startswith("const:"):
            try:
                value = float(text[len("const:"):])
            except ValueError:
                raise ParameterError(f"bad alpha profile {text!r}") from None
            return cls(value)
        raise ParameterError(f"alpha profile must be 'default' or 'const:<x>', got {text!r}")

    def alpha(self, degree):
        """Idleness for one degree or an array of degrees."""
        if self.constant is None:
            return 1.0 / (np.asarray(degree, dtype=np.float64) + 1.0)
        return np.full(np.shape(degree), self.constant, dtype=np.float64)

    def weight(self, degree):
        """Per-neighbor mass ``(1 - alpha)/deg``; exactly ``1/(deg+1)`` by default."""
        degree = np.asarray(degree, dtype=np.float64)
        if self.constant is None:
            return 1.0 / (degree + 1.0)
        return (1.0 - self.constant) / degree

    def __str__(self) -> str:
        return "default" if self.constant is None else f"const:{self.constant!r}"


DEFAULT_PROFILE = AlphaProfile()


@dataclass(frozen=True)
class LazyParams:
    """Laziness-derived quantities of one edge (fields may also be arrays)."""

    alpha_i: float
    alpha_j: float
    w_i: float
    w_j: float
    w_meet: float
    sigma: float
    z_i: float
    z_j: float
    r_i: float
    rbar_i: float
    r_j: float
    rbar_j: float
    delta: float
    alpha_min: float
    alpha_max: float

    @property
    def residual_sum(self):
        return self.r_i + self.rbar_i + self.r_j + self.rbar_j


def lazy_params_from(deg_i, deg_j, profile: AlphaProfile = DEFAULT_PROFILE) -> LazyParams:
    """Lazy parameters from endpoint degrees (scalars or arrays)."""
    deg_i = np.asarray(deg_i, dtype=np.float64)
    deg_j = np.asarray(deg_j, dtype=np.float64)
    a_i, a_j = profile.alpha(deg_i), profile.alpha(deg_j)
    w_i, w_j = profile.weight(deg_i), profile.weight(deg_j)
    fields = dict(
        alpha_i=a_i, alpha_j=a_j, w_i=w_i, w_j=w_j,
        w_meet=np.minimum(w_i, w_j),
        sigma=1.0 / w_i + 1.0 / w_j,
        z_i=np.minimum(a_i, w_j), z_j=np.minimum(a_j, w_i),
        r_i=np.maximum(a_i - w_j, 0.0), rbar_i=np.maximum(w_j - a_i, 0.0),
        r_j=np.maximum(a_j - w_i, 0.0), rbar_j=np.maximum(w_i - a_j, 0.0),
        alpha_min=np.minimum(a_i, a_j), alpha_max=np.maximum(a_i, a_j),
    )
    fields["delta"] = fields["alpha_max"] - fields["alpha_min"]
    if deg_i.ndim == 0:
        fields = {k: float(v) for k, v in fields.items()}
    return LazyParams(**fields)


def lazy_params(g: Graph, e, profile: AlphaProfile = DEFAULT_PROFILE) -> LazyParams:
    i, j = _edge(g, e)
    return lazy_params_from(g.degree(i), g.degree(j), profile)


# ------------------------------------------------------- comparison moduli

@dataclass(frozen=True)
class ComparisonModuli:
    S: float
    T: float
    K: float
    Z_by_max: float
    Z_by_min: float
    Sq: float


def comparison_moduli_from(deg_i, deg_j, tri, matching) -> ComparisonModuli:
    """Degree shift, triangle scaling, residual factor, overlaps (scalars or arrays)."""
    deg_i = np.asarray(deg_i, dtype=np.float64)
    deg_j = np.asarray(deg_j, dtype=np.float64)
    dmax, dmin = np.maximum(deg_i, deg_j), np.minimum(deg_i, deg_j)
    fields = dict(
        S=2.0 / deg_i + 2.0 / deg_j - 2.0,
        T=2.0 / dmax + 1.0 / dmin,
        K=1.0 - 1.0 / dmin - 1.0 / dmax,
        Z_by_max=tri / dmax,
        Z_by_min=tri / dmin,
        Sq=matching / dmax,
    )
    if deg_i.ndim == 0:
        fields = {k: float(v) for k, v in fields.items()}
    return ComparisonModuli(**fields)


def comparison_moduli(g: Graph, e, ls: LocalStats) -> ComparisonModuli:
    _edge(g, e)
    return comparison_moduli_from(ls.deg_i, ls.deg_j, ls.tri, ls.matching)
