"""Balanced Forman curvature and solver-free bounds on Ollivier-Ricci curvature.

Every function here accepts per-edge statistics either as scalars
(:class:`~curvature_transfer.local_stats.LocalStats`) or as column arrays
(:class:`~curvature_transfer.batch.EdgeStats`); arithmetic is written with
numpy so both shapes share one code path. ``[x]_+`` is ``max(x, 0)`` with no
smoothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import EdgeKey, Graph
from .local_stats import ComparisonModuli, LazyParams, comparison_moduli_from


def _pos(x):
    return np.maximum(x, 0.0)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def bf_from(deg_i, deg_j, tri, c4):
    """S + T*tri + c4, and 0 on edges with a degree-1 endpoint."""
    cm = comparison_moduli_from(deg_i, deg_j, tri, 0)
    value = cm.S + cm.T * np.asarray(tri, dtype=np.float64) + c4
    return _out(np.where(np.minimum(deg_i, deg_j) == 1, 0.0, value))


def bf_curvature(g: Graph, e, ls) -> float:
    """Balanced Forman curvature of edge ``e`` from its local statistics."""
    g.edge_key(*e)
    return bf_from(ls.deg_i, ls.deg_j, ls.tri, ls.c4_edge)


@dataclass(frozen=True)
class EnvelopeTerms:
    const_alpha: float
    slope_alpha: float
    envelope_exactXi: float
    theta_at_tri: float


def theta_const_slope(lp: LazyParams, deg_i, deg_j):
    """Intercept and slope of the affine coverage envelope in the triangle count."""
    const = (-1.0 + 2.0 * (lp.z_i + lp.z_j) + lp.residual_sum
             + (np.asarray(deg_i, dtype=np.float64) + deg_j - 2.0) / lp.sigma)
    slope = lp.w_i + lp.w_j - 2.0 / lp.sigma
    return _out(const), _out(slope)


def theta(lp: LazyParams, deg_i, deg_j, tri):
    """Coverage envelope evaluated at a (possibly fractional) triangle count."""
    const, slope = theta_const_slope(lp, deg_i, deg_j)
    return _out(const + slope * np.asarray(tri, dtype=np.float64))


def envelope_upper(lp: LazyParams, ls):
    """Upper bound on the lazy curvature that uses the true cross-edge count Xi."""
    tri = np.asarray(ls.tri, dtype=np.float64)
    mass_i = ls.unique_i * lp.w_i
    mass_j = ls.unique_j * lp.w_j
    value = (-1.0 + 2.0 * (lp.z_i + lp.z_j) + lp.residual_sum + 2.0 * tri * lp.w_meet
             + np.minimum(np.minimum(mass_i, mass_j), ls.Xi / lp.sigma)
             + np.minimum(tri * np.abs(lp.w_i - lp.w_j), mass_i + mass_j))
    return _out(value)


def coverage_theta(lp: LazyParams, ls) -> EnvelopeTerms:
    """Intercept, slope and value at the edge's triangle count, plus the sharper envelope."""
    const, slope = theta_const_slope(lp, ls.deg_i, ls.deg_j)
    return EnvelopeTerms(const, slope, envelope_upper(lp, ls),
                         _out(const + slope * np.asarray(ls.tri, dtype=np.float64)))


def jl_lower_nonlazy(cm: ComparisonModuli):
    """Triangle and square lower bound on the non-lazy curvature."""
    return _out(-_pos(cm.K - cm.Z_by_max - cm.Sq) - _pos(cm.K - cm.Z_by_min - cm.Sq) + cm.Z_by_max)


def lazy_transfer_lower(x, lp: LazyParams):
    """Lower bound on the lazy curvature from a lower bound ``x`` on the non-lazy one.

    ``(1 - beta) x - Delta`` holds for every beta between the two idleness
    values; the better endpoint is taken.
    """
    x = np.asarray(x, dtype=np.float64)
    best = np.maximum((1.0 - lp.alpha_min) * x, (1.0 - lp.alpha_max) * x)
    return _out(best - lp.delta)


def jl_lower_lazy(cm: ComparisonModuli, lp: LazyParams):
    return lazy_transfer_lower(jl_lower_nonlazy(cm), lp)


@dataclass(frozen=True)
class CurvatureRecord:
    edge: EdgeKey
    c_bf: float
    c_or_exact: Optional[float]
    c_or0_exact: Optional[float]
    theta_upper: float
    envelope_upper: float
    jl_lower_nonlazy: float
    jl_lower_lazy: float
