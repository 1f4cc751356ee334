"""Transfer moduli between Balanced Forman and Ollivier-Ricci curvature.

Each modulus turns a one-sided bound on one curvature of an edge into a
one-sided bound on the other, using only the edge's local statistics:

* ``phi_bf_to_or(z)``: BF >= z implies OR >= phi
* ``psi_bf_to_or(z)``: BF <= z implies OR <= psi
* ``phi_or_to_bf(t)``: OR >= t implies BF >= phi (needs both degrees >= 2)
* ``psi_or_to_bf(t)``: OR <= t implies BF <= psi

The ``*_from`` variants take an :class:`EdgeBundle` whose fields are scalars
or equal-length arrays and return matching shapes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .batch import EdgeStats, edge_stats
from .bounds import _out, _pos, lazy_transfer_lower, theta_const_slope
from .errors import DomainError
from .graph import Graph
from .local_stats import (DEFAULT_PROFILE, AlphaProfile, ComparisonModuli, LazyParams,
                          comparison_moduli_from, lazy_params_from, local_stats)


@dataclass(frozen=True)
class EdgeBundle:
    """Local statistics, lazy parameters and comparison moduli of one or many edges."""

    ls: object
    lp: LazyParams
    cm: ComparisonModuli

    @property
    def deg_min(self):
        return np.minimum(self.ls.deg_i, self.ls.deg_j)

    @property
    def deg_max(self):
        return np.maximum(self.ls.deg_i, self.ls.deg_j)


def bundle_from_stats(ls, profile: AlphaProfile = DEFAULT_PROFILE) -> EdgeBundle:
    return EdgeBundle(ls, lazy_params_from(ls.deg_i, ls.deg_j, profile),
                      comparison_moduli_from(ls.deg_i, ls.deg_j, ls.tri, ls.matching))


def edge_bundle(g: Graph, e, profile: AlphaProfile = DEFAULT_PROFILE) -> EdgeBundle:
    """Bundle for a single edge, via the reference per-edge statistics."""
    return bundle_from_stats(local_stats(g, e), profile)


def graph_bundle(g: Graph, profile: AlphaProfile = DEFAULT_PROFILE,
                 stats: EdgeStats | None = None) -> EdgeBundle:
    """Column bundle for every edge in canonical order."""
    return bundle_from_stats(edge_stats(g) if stats is None else stats, profile)


def _f(x):
    return np.asarray(x, dtype=np.float64)


# ------------------------------------------------------------- BF -> OR

def phi_bf_to_or0_from(b: EdgeBundle, zeta):
    """Non-lazy lower modulus: triangles forced by the BF level, plus a square floor."""
    cm, c4 = b.cm, _f(b.ls.c4_edge)
    zeta = _f(zeta)
    forced = np.maximum(0.0, (zeta - cm.S - c4) / cm.T)
    z_max = forced / b.deg_max
    z_min = forced / b.deg_min
    floor = np.maximum(c4 / 2.0, 0.5 * _pos(zeta - cm.S - cm.T * (b.deg_min - 1.0)))
    return _out(-_pos(cm.K - z_max - floor) - _pos(cm.K - z_min - floor) + z_max)


def phi_bf_to_or_from(b: EdgeBundle, zeta):
    return lazy_transfer_lower(phi_bf_to_or0_from(b, zeta), b.lp)


def _psi_parts(b: EdgeBundle, zeta):
    """Quantities shared by the BF -> OR upper envelope and its knot set."""
    cm = b.cm
    deg_i, deg_j = _f(b.ls.deg_i), _f(b.ls.deg_j)
    budget = _pos(_f(zeta) - cm.S)
    tri_max = np.minimum(b.deg_min - 1.0, budget / cm.T)
    box_star = b.deg_max * (b.deg_max - 1.0)
    return deg_i, deg_j, budget, tri_max, box_star


def psi_hat_from(b: EdgeBundle, zeta, t):
    """Piecewise-affine envelope of the lazy curvature at triangle count ``t``."""
    lp, cm = b.lp, b.cm
    deg_i, deg_j, budget, _, box_star = _psi_parts(b, zeta)
    t = _f(t)
    a_i = (deg_i - 1.0 - t) * lp.w_i
    a_j = (deg_j - 1.0 - t) * lp.w_j
    boxes = box_star / lp.sigma * (budget - cm.T * t)
    spread = (deg_i + deg_j - 2.0 - 2.0 * t) / lp.sigma
    cross = np.minimum(t * np.abs(lp.w_i - lp.w_j), a_i + a_j)
    value = (-1.0 + 2.0 * (lp.z_i + lp.z_j) + lp.residual_sum + 2.0 * lp.w_meet * t
             + _pos(np.minimum(np.minimum(a_i, a_j), np.minimum(boxes, spread))) + cross)
    return _out(value)


KNOT_NAMES = ("zero", "tri_max", "swap", "i_B", "j_B", "i_D", "j_D", "B_D", "supply")


def knot_candidates(b: EdgeBundle, zeta) -> np.ndarray:
    """Candidate maximizers, shape ``(..., 9)`` in ``KNOT_NAMES`` order.

    Knots with a zero denominator or outside ``[0, tri_max]`` are NaN.
    """
    lp, cm = b.lp, b.cm
    deg_i, deg_j, budget, tri_max, box_star = _psi_parts(b, zeta)
    w_i, w_j, sigma = _f(lp.w_i), _f(lp.w_j), _f(lp.sigma)
    scale = box_star / sigma

    def ratio(num, den):
        den = np.broadcast_to(den, np.broadcast(num, den).shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(den != 0.0, num / np.where(den != 0.0, den, 1.0), np.nan)

    knots = [
        np.zeros_like(tri_max),
        tri_max,
        ratio(w_j * (deg_j - 1.0) - w_i * (deg_i - 1.0), w_j - w_i),
        ratio(scale * budget - w_i * (deg_i - 1.0), scale * cm.T - w_i),
        ratio(scale * budget - w_j * (deg_j - 1.0), scale * cm.T - w_j),
        ratio((deg_i + deg_j - 2.0) - sigma * w_i * (deg_i - 1.0), 2.0 - sigma * w_i),
        ratio((deg_i + deg_j - 2.0) - sigma * w_j * (deg_j - 1.0), 2.0 - sigma * w_j),
        ratio(deg_i + deg_j - 2.0 - box_star * budget, 2.0 - box_star * cm.T),
        ratio(w_i * (deg_i - 1.0) + w_j * (deg_j - 1.0), w_i + w_j + np.abs(w_i - w_j)),
    ]
    k = np.stack(np.broadcast_arrays(*knots), axis=-1)
    inside = (k >= 0.0) & (k <= tri_max[..., None])
    return np.where(inside, k, np.nan)


def knot_set(b: EdgeBundle, zeta) -> list[float]:
    """Sorted distinct knots of a single edge."""
    k = knot_candidates(b, zeta)
    return sorted(set(float(x) for x in k[~np.isnan(k)]))


def psi_bf_to_or_from(b: EdgeBundle, zeta):
    """Maximum of the envelope over the knot set."""
    k = knot_candidates(b, zeta)
    best = np.full(k.shape[:-1], -np.inf)
    for c in range(k.shape[-1]):
        t = k[..., c]
        value = psi_hat_from(b, zeta, np.where(np.isnan(t), 0.0, t))
        best = np.where(np.isnan(t), best, np.maximum(best, value))
    return _out(best)


def psi_bf_to_or_grid(b: EdgeBundle, zeta, points: int = 10_000) -> float:
    """Maximum of the envelope over a uniform grid of ``[0, tri_max]`` (single edge)."""
    _, _, _, tri_max, _ = _psi_parts(b, zeta)
    t = np.linspace(0.0, float(tri_max), points)
    return float(np.max(psi_hat_from(b, zeta, t)))


# ------------------------------------------------------------- OR -> BF

def phi_or_to_bf_from(b: EdgeBundle, vartheta):
    """BF lower modulus; NaN where an endpoint has degree 1."""
    const, slope = theta_const_slope(b.lp, b.ls.deg_i, b.ls.deg_j)
    t_min = np.minimum(_pos((_f(vartheta) - const) / slope), b.deg_min - 1.0)
    value = b.cm.S + b.cm.T * t_min
    return _out(np.where(b.deg_min >= 2, value, np.nan))


def or_to_bf_vacuous_from(b: EdgeBundle, vartheta):
    """True where no edge with these degrees and idleness can reach OR >= vartheta."""
    const, slope = theta_const_slope(b.lp, b.ls.deg_i, b.ls.deg_j)
    top = _f(const) + _f(slope) * (b.deg_min - 1.0)
    flag = _f(vartheta) > top
    return bool(flag) if np.ndim(flag) == 0 else flag


def nonlazy_proxy_from(b: EdgeBundle, vartheta):
    """Upper bound on the non-lazy curvature implied by OR <= vartheta."""
    lp = b.lp
    x = _f(vartheta) + lp.delta
    return _out(np.minimum(x / (1.0 - lp.alpha_min), x / (1.0 - lp.alpha_max)))


def triangle_envelope_from(b: EdgeBundle, vartheta):
    """Largest triangle count compatible with OR <= vartheta (before clamping)."""
    cm = b.cm
    s0 = _f(nonlazy_proxy_from(b, vartheta))
    k_sq = _pos(cm.K - cm.Sq)
    s_break = k_sq * (2.0 * b.deg_min / b.deg_max - 1.0)
    u = np.where(
        s0 <= -2.0 * k_sq, 0.0,
        np.where(s0 <= s_break, (s0 + 2.0 * k_sq) / cm.T,
                 np.where(s0 <= k_sq, b.deg_max / 2.0 * (s0 + k_sq), b.deg_max * s0)))
    return _out(u)


def psi_or_to_bf_from(b: EdgeBundle, vartheta):
    """BF upper modulus; the triangle envelope is clamped at ``deg_min - 1``."""
    u = np.minimum(triangle_envelope_from(b, vartheta), b.deg_min - 1.0)
    return _out(b.cm.S + b.cm.T * u + b.ls.c4_edge)


# ------------------------------------------------------ per-edge entry points

def _check(g: Graph, e, b: EdgeBundle) -> None:
    i, j = g.edge_key(*e)
    if (g.degree(i), g.degree(j)) != (int(b.ls.deg_i), int(b.ls.deg_j)):
        raise ValueError(f"statistics do not belong to edge ({i}, {j})")


def phi_bf_to_or(g: Graph, e, b: EdgeBundle, zeta: float) -> float:
    _check(g, e, b)
    return phi_bf_to_or_from(b, zeta)


def psi_bf_to_or(g: Graph, e, b: EdgeBundle, zeta: float) -> float:
    _check(g, e, b)
    return psi_bf_to_or_from(b, zeta)


def phi_or_to_bf(g: Graph, e, b: EdgeBundle, vartheta: float) -> float:
    _check(g, e, b)
    if b.deg_min < 2:
        raise DomainError("OR -> BF lower modulus needs both endpoint degrees >= 2")
    return phi_or_to_bf_from(b, vartheta)


def psi_or_to_bf(g: Graph, e, b: EdgeBundle, vartheta: float) -> float:
    _check(g, e, b)
    return psi_or_to_bf_from(b, vartheta)


@dataclass(frozen=True)
class TransferBand:
    edge: tuple
    direction: str
    input_level: float
    lower: float
    upper: float
