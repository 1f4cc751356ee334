import io
import json

import numpy as np
import pytest

from curvature_transfer.analysis import (REPORT_FIELDS, ReportOptions, audit,
                                         compute_edge_reports, emit, pearson, read_csv,
                                         summarize, transfer_bands)
from curvature_transfer.errors import ConnectivityError
from curvature_transfer.generators import barabasi_albert, complete, cycle, grid, watts_strogatz
from curvature_transfer.graph import Graph, load_edge_list
from curvature_transfer.transport import lazy_measure, support_distances

EXACT = ReportOptions(exact_or=True)


def test_complete_rows_and_summary():
    reps = compute_edge_reports(complete(12), EXACT)
    assert len(reps) == 66
    for r in reps:
        assert r.c_or == pytest.approx(1, abs=1e-12)
        assert r.c_bf == pytest.approx(12 / 11, abs=1e-12)
    s = summarize(reps)
    assert s.pearson_r is None
    assert s.or_range == pytest.approx(0, abs=1e-12) and s.bf_range == pytest.approx(0, abs=1e-12)


def test_cycle_rows():
    reps = compute_edge_reports(cycle(20), EXACT)
    assert all(abs(r.c_or) < 1e-12 and abs(r.c_bf) < 1e-12 for r in reps)


def test_grid_row_count_without_solver():
    reps = compute_edge_reports(grid(40, 40))
    assert len(reps) == 3120
    assert reps[0].c_or is None and reps[0].or2bf_lower is None
    assert reps.header == tuple(f for f in REPORT_FIELDS if not f.startswith("or2bf"))


def test_single_edge_graph():
    reps = compute_edge_reports(Graph.from_edges(2, [(0, 1)]), EXACT)
    r = reps[0]
    # both lazy measures are uniform on {0, 1}; the non-lazy ones swap the endpoints
    assert r.c_bf == 0 and r.c_or == pytest.approx(1) and r.c_or0 == pytest.approx(0)
    assert r.or2bf_lower is None and r.or2bf_upper is not None
    s = summarize(reps)
    assert s.or_range == 0 and s.bf_range == 0 and s.pearson_r is None
    assert s.bf2or.width_max == pytest.approx(r.bf2or_upper - r.bf2or_lower)
    assert s.or2bf.width_max is None


def test_pendant_conventions_in_summary():
    # a star: every edge has a degree-1 endpoint, so the OR -> BF lower end is undefined
    star = Graph.from_edges(5, [(0, k) for k in range(1, 5)])
    s = summarize(compute_edge_reports(star, EXACT))
    assert s.or2bf.width_max is None and s.or2bf.slack_p50 is None
    assert s.bf2or.width_max is not None


def test_summary_consistency():
    g = watts_strogatz(200, 6, 0.1, 3)
    reps = compute_edge_reports(g, EXACT)
    s = summarize(reps)
    for d in (s.bf2or, s.or2bf):
        assert d.width_p95 <= d.width_max + 1e-15
        assert d.slack_p50 <= d.slack_p95 + 1e-15
    c = reps.columns
    width = c["bf2or_upper"] - c["bf2or_lower"]
    slack = np.minimum(c["c_or"] - c["bf2or_lower"], c["bf2or_upper"] - c["c_or"])
    assert width.min() <= s.bf2or.width_p95 <= width.max()
    assert slack.min() <= s.bf2or.slack_p50 <= slack.max()
    assert s.bf2or.slack_p95 == pytest.approx(np.percentile(slack, 95))
    assert s.or_range >= 0 and s.bf_range >= 0
    assert all(v == 0 for v in audit(reps).values())


def test_summarize_rejects_empty():
    with pytest.raises(ValueError):
        summarize(compute_edge_reports(Graph.from_edges(3, [])))


def test_or_to_bf_needs_exact():
    with pytest.raises(ValueError):
        compute_edge_reports(cycle(6), ReportOptions(directions=("or2bf",)))
    with pytest.raises(ValueError):
        ReportOptions(directions=("sideways",))


def test_connectivity_only_matters_with_exact():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 2)])
    compute_edge_reports(g)  # combinatorial bounds are local
    reps = compute_edge_reports(g, EXACT)  # supports lie within one component
    assert len(reps) == 5
    with pytest.raises(ConnectivityError):
        support_distances(g, lazy_measure(g, 0).vertices, [4])


def test_csv_shape_and_roundtrip():
    path3 = load_edge_list("0 1\n1 2\n")
    text = emit(compute_edge_reports(path3, EXACT), None, "csv")
    lines = text.strip().split("\n")
    assert len(lines) == 3 and lines[0].split(",") == list(REPORT_FIELDS)
    g = barabasi_albert(60, 2, 1)
    reps = compute_edge_reports(g, EXACT)
    rows = read_csv(io.StringIO(emit(reps, None, "csv")))
    assert len(rows) == len(reps)
    for k, row in enumerate(rows):
        for name in REPORT_FIELDS:
            orig = reps.columns[name][k]
            if row[name] is None:
                assert np.isnan(orig)
            else:
                assert row[name] == pytest.approx(float(orig), rel=1e-11, abs=1e-12)


def test_json_schema_and_determinism():
    g = barabasi_albert(80, 2, 2)
    a = emit(compute_edge_reports(g, EXACT), None, "json")
    b = emit(compute_edge_reports(g, EXACT), None, "json")
    assert a == b
    d = json.loads(a)
    assert set(d) == {"edge_count", "pearson_r", "or_range", "bf_range", "bf2or", "or2bf"}
    for k in ("bf2or", "or2bf"):
        assert set(d[k]) == {"width_max", "width_p95", "slack_p50", "slack_p95"}
    c1 = emit(compute_edge_reports(g, EXACT), None, "csv")
    assert c1 == emit(compute_edge_reports(g, EXACT), None, "csv")
    with pytest.raises(ValueError):
        emit(compute_edge_reports(g), None, "xml")


def test_pearson_null_on_constant():
    assert pearson([1, 1, 1], [0, 1, 2]) is None
    assert pearson([0, 1, 2], [0, 2, 4]) == pytest.approx(1)


def test_transfer_bands_fixed_and_per_edge():
    g = watts_strogatz(50, 4, 0.2, 1)
    fixed = transfer_bands(g, "bf2or", 0.5)
    assert np.all(fixed["input_level"] == 0.5)
    own = transfer_bands(g, "or2bf")
    reps = compute_edge_reports(g, EXACT)
    assert np.allclose(own["input_level"], reps.columns["c_or"])
    ok = ~np.isnan(own["lower"])
    assert np.array_equal(own["lower"][ok], reps.columns["or2bf_lower"][ok])
    with pytest.raises(ValueError):
        transfer_bands(g, "both")
