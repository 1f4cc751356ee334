import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvature_transfer.batch import edge_stats
from curvature_transfer.bounds import (bf_curvature, bf_from, coverage_theta, envelope_upper,
                                       jl_lower_lazy, jl_lower_nonlazy, lazy_transfer_lower,
                                       theta_const_slope)
from curvature_transfer.generators import (barabasi_albert, complete, cycle, erdos_renyi,
                                           random_geometric, torus, watts_strogatz)
from curvature_transfer.graph import Graph
from curvature_transfer.local_stats import (AlphaProfile, ComparisonModuli, LazyParams,
                                            comparison_moduli, comparison_moduli_from,
                                            lazy_params, lazy_params_from, local_stats)
from curvature_transfer.transport import exact_curvatures

from oracles import adjacency, bf_exact, edge_combinatorics


def _all(g, e, profile=AlphaProfile()):
    ls = local_stats(g, e)
    return ls, lazy_params(g, e, profile), comparison_moduli(g, e, ls)


def test_bf_examples(graph_h):
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert bf_curvature(star, (0, 1), local_stats(star, (0, 1))) == 0
    assert bf_curvature(complete(5), (0, 1), local_stats(complete(5), (0, 1))) == pytest.approx(1.25)
    for n in (3, 8, 120):
        g = complete(n)
        assert bf_curvature(g, (0, 1), local_stats(g, (0, 1))) == pytest.approx(n / (n - 1), abs=1e-12)
    assert bf_curvature(graph_h, (0, 1), local_stats(graph_h, (0, 1))) == pytest.approx(1, abs=1e-12)
    t = torus(32, 32)
    assert bf_curvature(t, (0, 1), local_stats(t, (0, 1))) == pytest.approx(0, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 16), p=st.floats(0.1, 0.9), seed=st.integers(0, 10**6))
def test_bf_against_exact_arithmetic(n, p, seed):
    g = erdos_renyi(n, p, seed)
    adj = adjacency(n, g.edge_array().tolist())
    st_ = edge_stats(g)
    bf = np.atleast_1d(bf_from(st_.deg_i, st_.deg_j, st_.tri, st_.c4_edge))
    for k, (i, j) in enumerate(g.edge_array().tolist()):
        ref = edge_combinatorics(adj, i, j)
        exact = bf_exact(len(adj[i]), len(adj[j]), ref["tri"], ref["Xi"], ref["sho_max"])
        assert bf[k] == pytest.approx(float(exact), abs=1e-12)


def test_theta_examples(graph_h):
    ls, lp, _ = _all(cycle(7), (0, 1))
    t = coverage_theta(lp, ls)
    assert (t.const_alpha, t.slope_alpha, t.theta_at_tri) == pytest.approx((2 / 3, 1 / 3, 2 / 3))
    ls, lp, _ = _all(graph_h, (0, 1))
    t = coverage_theta(lp, ls)
    assert (t.const_alpha, t.slope_alpha, t.theta_at_tri) == pytest.approx((0.5, 0.25, 0.75), abs=1e-12)
    assert t.envelope_exactXi == pytest.approx(0.75, abs=1e-12)
    ls, lp, _ = _all(complete(5), (0, 1))
    assert coverage_theta(lp, ls).theta_at_tri >= 1 - 1e-12


def test_envelope_examples():
    ls, lp, _ = _all(complete(5), (0, 1))
    assert envelope_upper(lp, ls) == pytest.approx(1, abs=1e-12)
    ls, lp, _ = _all(cycle(9), (0, 1))
    assert envelope_upper(lp, ls) == pytest.approx(1 / 3, abs=1e-12)


def test_jl_examples(graph_h):
    _, lp, cm = _all(graph_h, (0, 1))
    assert jl_lower_nonlazy(cm) == pytest.approx(1 / 3, abs=1e-12)
    assert jl_lower_lazy(cm, lp) == pytest.approx(1 / 4, abs=1e-12)
    _, lp, cm = _all(cycle(10), (0, 1))
    assert jl_lower_nonlazy(cm) == 0 and jl_lower_lazy(cm, lp) == 0
    for n in (5, 9):
        _, lp, cm = _all(complete(n), (0, 1))
        assert jl_lower_nonlazy(cm) == pytest.approx((n - 2) / (n - 1), abs=1e-12)
    _, lp, cm = _all(complete(5), (0, 1))
    assert jl_lower_lazy(cm, lp) == pytest.approx(3 / 5, abs=1e-12)


def _lp(alpha_min, alpha_max):
    return LazyParams(alpha_min, alpha_max, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                      alpha_max - alpha_min, alpha_min, alpha_max)


def test_lazy_transfer_examples():
    assert lazy_transfer_lower(1 / 3, _lp(0.25, 0.25)) == pytest.approx(0.25)
    assert lazy_transfer_lower(0.0, _lp(0.2, 0.5)) == pytest.approx(-0.3)
    assert lazy_transfer_lower(-1.0, _lp(0.2, 0.5)) == pytest.approx(-0.8)


@given(di=st.integers(1, 300), dj=st.integers(1, 300))
def test_theta_slope_positive_default_profile(di, dj):
    lp = lazy_params_from(di, dj)
    _, slope = theta_const_slope(lp, di, dj)
    assert slope > 0
    assert slope == pytest.approx((lp.w_i**2 + lp.w_j**2) / (lp.w_i + lp.w_j), rel=1e-12)


def _jl(K, zmax, zmin, sq):
    cm = ComparisonModuli(0.0, 1.0, K, zmax, zmin, sq)
    return jl_lower_nonlazy(cm)


def test_jl_monotone_on_grid():
    grid = np.linspace(0, 1, 6)
    step = 0.05
    for K in (-0.5, 0.0, 0.3, 0.8):
        for zmax, zmin, sq in itertools.product(grid, grid, grid):
            if zmax > zmin:
                continue
            base = _jl(K, zmax, zmin, sq)
            assert _jl(K, zmax, zmin + step, sq) >= base - 1e-15
            if zmax + step <= zmin:
                assert _jl(K, zmax + step, zmin, sq) >= base - 1e-15
            assert _jl(K, zmax, zmin, sq + step) >= base - 1e-15


@given(di=st.integers(1, 40), dj=st.integers(1, 40), tri=st.integers(0, 39))
def test_jl_without_squares_is_classical(di, dj, tri):
    tri = min(tri, min(di, dj) - 1)
    cm = comparison_moduli_from(di, dj, tri, 0)
    dmin, dmax = min(di, dj), max(di, dj)
    classical = (-max(0.0, 1 - 1 / di - 1 / dj - tri / dmax)
                 - max(0.0, 1 - 1 / di - 1 / dj - tri / dmin) + tri / dmax)
    assert jl_lower_nonlazy(cm) == pytest.approx(classical, abs=1e-14)


def _soundness(g, profile=AlphaProfile()):
    st_ = edge_stats(g)
    lp = lazy_params_from(st_.deg_i, st_.deg_j, profile)
    cm = comparison_moduli_from(st_.deg_i, st_.deg_j, st_.tri, st_.matching)
    c_or, c_or0 = exact_curvatures(g, profile)
    env = envelope_upper(lp, st_)
    theta = coverage_theta(lp, st_).theta_at_tri
    assert np.all(jl_lower_lazy(cm, lp) <= c_or + 1e-9)
    assert np.all(c_or <= env + 1e-9)
    assert np.all(env <= theta + 1e-12)
    assert np.all(jl_lower_nonlazy(cm) <= c_or0 + 1e-9)


@pytest.mark.parametrize("g", [
    complete(7), cycle(9), torus(5, 6), barabasi_albert(80, 3, 1), watts_strogatz(60, 6, 0.2, 2),
    random_geometric(120, 0.15, 3, torus=True),
], ids=["K7", "C9", "torus", "BA", "WS", "RGG"])
def test_soundness_default_profile(g):
    _soundness(g)


@settings(max_examples=15, deadline=None)
@given(n=st.integers(4, 30), p=st.floats(0.15, 0.7), seed=st.integers(0, 10**6),
       alpha=st.sampled_from([None, 0.0, 0.1, 0.5, 0.9]))
def test_soundness_random(n, p, seed, alpha):
    g = erdos_renyi(n, p, seed)
    keep = [(a, b) for a, b in g.edge_array().tolist()]
    comp = _largest_component(n, keep)
    sub = [(a, b) for a, b in keep if a in comp and b in comp]
    if not sub:
        return
    relabel = {v: k for k, v in enumerate(sorted(comp))}
    h = Graph.from_edges(len(comp), [(relabel[a], relabel[b]) for a, b in sub])
    _soundness(h, AlphaProfile(alpha))


def _largest_component(n, edges):
    adj = adjacency(n, edges)
    seen, best = set(), set()
    for s in range(n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        best = max(best, comp, key=len)
    return best
