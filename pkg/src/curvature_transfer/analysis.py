"""Per-edge report tables, summary statistics and CSV/JSON output."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from . import bounds, moduli
from .batch import edge_stats
from .graph import Graph
from .local_stats import DEFAULT_PROFILE, AlphaProfile
from .transport import exact_curvatures

DIRECTIONS = ("bf2or", "or2bf")
AUDIT_TOL = 1e-9
CONSTANT_TOL = 1e-12


@dataclass(frozen=True)
class ReportOptions:
    exact_or: bool = False
    profile: AlphaProfile = DEFAULT_PROFILE
    directions: Optional[tuple] = None

    def __post_init__(self):
        if self.directions is None:
            # the OR -> BF band sits at the exact OR level, so it needs the solve
            default = DIRECTIONS if self.exact_or else ("bf2or",)
            object.__setattr__(self, "directions", default)
        bad = set(self.directions) - set(DIRECTIONS)
        if bad:
            raise ValueError(f"unknown direction(s) {sorted(bad)}")


@dataclass(frozen=True)
class EdgeReport:
    u: int
    v: int
    deg_u: int
    deg_v: int
    tri: int
    Xi: int
    pi_max: int
    sho_max: int
    matching: int
    c_bf: float
    c_or: Optional[float]
    c_or0: Optional[float]
    theta_upper: float
    envelope_upper: float
    jl_lower_nonlazy: float
    jl_lower_lazy: float
    bf2or_lower: Optional[float] = None
    bf2or_upper: Optional[float] = None
    or2bf_lower: Optional[float] = None
    or2bf_upper: Optional[float] = None
    or2bf_vacuous: Optional[bool] = None


REPORT_FIELDS = tuple(f.name for f in fields(EdgeReport))
_INT_FIELDS = {"u", "v", "deg_u", "deg_v", "tri", "Xi", "pi_max", "sho_max", "matching"}


@dataclass
class EdgeReports:
    """Column store of edge reports in canonical edge order.

    Missing optional values are NaN in float columns; indexing yields
    :class:`EdgeReport` rows with ``None`` in their place.
    """

    columns: dict
    options: ReportOptions = field(default_factory=ReportOptions)

    def __len__(self) -> int:
        return len(self.columns["u"])

    def __getitem__(self, k: int) -> EdgeReport:
        row = {}
        for name in REPORT_FIELDS:
            col = self.columns.get(name)
            if col is None:
                row[name] = None
                continue
            x = col[k]
            if name in _INT_FIELDS:
                row[name] = int(x)
            elif name == "or2bf_vacuous":
                row[name] = bool(x)
            else:
                row[name] = None if math.isnan(x) else float(x)
        return EdgeReport(**row)

    def __iter__(self):
        return (self[k] for k in range(len(self)))

    @property
    def header(self) -> tuple:
        return tuple(n for n in REPORT_FIELDS if n in self.columns)


def compute_edge_reports(g: Graph, options: ReportOptions = ReportOptions()) -> EdgeReports:
    """Curvatures, bounds and transfer bands for every edge.

    Exact curvature (the transport solve) runs only with ``options.exact_or``.
    The OR -> BF band is evaluated at the edge's exact OR and therefore needs it.
    """
    if "or2bf" in options.directions and not options.exact_or:
        raise ValueError("the OR -> BF band needs exact OR curvature (exact_or=True)")
    st = edge_stats(g)
    b = moduli.bundle_from_stats(st, options.profile)
    nan = np.full(len(st), np.nan)
    c_bf = np.asarray(bounds.bf_from(st.deg_i, st.deg_j, st.tri, st.c4_edge), dtype=float)
    cols = dict(u=st.u, v=st.v, deg_u=st.deg_i, deg_v=st.deg_j, tri=st.tri, Xi=st.Xi,
                pi_max=st.pi_max, sho_max=st.sho_max, matching=st.matching, c_bf=c_bf)
    if options.exact_or:
        c_or, c_or0 = exact_curvatures(g, options.profile, edges=np.stack([st.u, st.v], 1))
    else:
        c_or, c_or0 = nan, nan
    jl0 = bounds.jl_lower_nonlazy(b.cm)
    cols.update(
        c_or=c_or, c_or0=c_or0,
        theta_upper=bounds.theta(b.lp, st.deg_i, st.deg_j, st.tri),
        envelope_upper=bounds.envelope_upper(b.lp, st),
        jl_lower_nonlazy=jl0,
        jl_lower_lazy=bounds.lazy_transfer_lower(jl0, b.lp),
    )
    if "bf2or" in options.directions:
        cols["bf2or_lower"] = moduli.phi_bf_to_or_from(b, c_bf)
        cols["bf2or_upper"] = moduli.psi_bf_to_or_from(b, c_bf)
    if "or2bf" in options.directions:
        cols["or2bf_lower"] = moduli.phi_or_to_bf_from(b, c_or)
        cols["or2bf_upper"] = moduli.psi_or_to_bf_from(b, c_or)
        cols["or2bf_vacuous"] = moduli.or_to_bf_vacuous_from(b, c_or)
    cols = {k: np.atleast_1d(np.asarray(v)) for k, v in cols.items()}
    return EdgeReports(cols, options)


def transfer_bands(g: Graph, direction: str, level: float | None = None,
                   profile: AlphaProfile = DEFAULT_PROFILE) -> dict:
    """Band of one direction for every edge, at a fixed level or at each edge's own curvature."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    st = edge_stats(g)
    b = moduli.bundle_from_stats(st, profile)
    if level is None:
        if direction == "bf2or":
            levels = np.asarray(bounds.bf_from(st.deg_i, st.deg_j, st.tri, st.c4_edge), dtype=float)
        else:
            levels, _ = exact_curvatures(g, profile, nonlazy=False)
    else:
        levels = np.full(len(st), float(level))
    if direction == "bf2or":
        lower, upper = moduli.phi_bf_to_or_from(b, levels), moduli.psi_bf_to_or_from(b, levels)
    else:
        lower, upper = moduli.phi_or_to_bf_from(b, levels), moduli.psi_or_to_bf_from(b, levels)
    return dict(u=st.u, v=st.v, direction=np.full(len(st), direction), input_level=levels,
                lower=np.atleast_1d(lower), upper=np.atleast_1d(upper))


# ----------------------------------------------------------------- summary

@dataclass(frozen=True)
class DirectionStats:
    width_max: Optional[float]
    width_p95: Optional[float]
    slack_p50: Optional[float]
    slack_p95: Optional[float]


@dataclass(frozen=True)
class SummaryStats:
    edge_count: int
    pearson_r: Optional[float]
    or_range: Optional[float]
    bf_range: float
    bf2or: DirectionStats
    or2bf: DirectionStats

    def to_dict(self) -> dict:
        return dict(edge_count=self.edge_count, pearson_r=self.pearson_r,
                    or_range=self.or_range, bf_range=self.bf_range,
                    bf2or=self.bf2or.__dict__.copy(), or2bf=self.or2bf.__dict__.copy())


def _pct(x: np.ndarray, q: float) -> Optional[float]:
    return float(np.percentile(x, q)) if x.size else None


def _range(x: np.ndarray) -> Optional[float]:
    return float(x.max() - x.min()) if x.size else None


def pearson(x, y) -> Optional[float]:
    """Correlation of paired samples; ``None`` when either is (numerically) constant."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if len(x) < 2 or np.ptp(x) <= CONSTANT_TOL or np.ptp(y) <= CONSTANT_TOL:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def _direction_stats(lower, upper, target) -> DirectionStats:
    if lower is None:
        return DirectionStats(None, None, None, None)
    lower, upper = np.asarray(lower, float), np.asarray(upper, float)
    defined = np.isfinite(lower) & np.isfinite(upper)
    width = (upper - lower)[defined]
    slack = np.array([])
    if target is not None:
        t = np.asarray(target, float)
        ok = defined & np.isfinite(t)
        slack = np.minimum(t - lower, upper - t)[ok]
    return DirectionStats(float(width.max()) if width.size else None, _pct(width, 95),
                          _pct(slack, 50), _pct(slack, 95))


def summarize(reports: EdgeReports) -> SummaryStats:
    """Ranges, correlation, band widths and slacks over all edges.

    Per edge, the band of a direction is evaluated at the edge's own source
    curvature: width is upper minus lower and slack is the distance from the
    edge's target curvature to the nearer end of the band. Edges where a band
    end is undefined (a degree-1 endpoint for OR -> BF) are skipped.
    Percentiles interpolate linearly between order statistics.
    """
    if len(reports) == 0:
        raise ValueError("cannot summarize an empty report set")
    c = reports.columns
    c_bf = np.asarray(c["c_bf"], float)
    c_or = np.asarray(c["c_or"], float)
    has_or = bool(np.all(np.isfinite(c_or)))
    return SummaryStats(
        edge_count=len(reports),
        pearson_r=pearson(c_or, c_bf) if has_or else None,
        or_range=_range(c_or) if has_or else None,
        bf_range=_range(c_bf),
        bf2or=_direction_stats(c.get("bf2or_lower"), c.get("bf2or_upper"), c_or if has_or else None),
        or2bf=_direction_stats(c.get("or2bf_lower"), c.get("or2bf_upper"), c_bf),
    )


# ------------------------------------------------------------------ audit

def audit(reports: EdgeReports, tol: float = AUDIT_TOL) -> dict:
    """Count violations of every soundness inequality; needs exact curvatures."""
    c = reports.columns
    if not np.all(np.isfinite(c["c_or"])):
        raise ValueError("audit needs exact OR curvature")
    c_or, c_or0, c_bf = c["c_or"], c["c_or0"], c["c_bf"]
    inner = np.minimum(c["deg_u"], c["deg_v"]) >= 2
    checks = {
        "jl_lower_lazy <= c_or": c["jl_lower_lazy"] - c_or,
        "jl_lower_nonlazy <= c_or0": c["jl_lower_nonlazy"] - c_or0,
        "c_or <= envelope_upper": c_or - c["envelope_upper"],
        "envelope_upper <= theta_upper": c["envelope_upper"] - c["theta_upper"],
    }
    if "bf2or_lower" in c:
        checks["bf2or_lower <= c_or"] = np.where(inner, c["bf2or_lower"] - c_or, -np.inf)
        checks["c_or <= bf2or_upper"] = np.where(inner, c_or - c["bf2or_upper"], -np.inf)
    if "or2bf_lower" in c:
        checks["or2bf_lower <= c_bf"] = np.where(inner, c["or2bf_lower"] - c_bf, -np.inf)
        checks["c_bf <= or2bf_upper"] = np.where(inner, c_bf - c["or2bf_upper"], -np.inf)
    return {name: int(np.sum(gap > tol)) for name, gap in checks.items()}


# ------------------------------------------------------------------ output

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    return "" if math.isnan(x) else f"{x:.12g}"


def write_csv(table: dict, header, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    cols = [table[h] for h in header]
    for k in range(len(cols[0]) if cols else 0):
        w.writerow([_fmt(col[k]) if not isinstance(col[k], str) else col[k] for col in cols])


def emit(reports: EdgeReports, stats: SummaryStats | None, fmt: str, stream=None) -> str | None:
    """Write the edge table as CSV or the summary as JSON."""
    out = stream if stream is not None else io.StringIO()
    if fmt == "csv":
        write_csv(reports.columns, reports.header, out)
    elif fmt == "json":
        if stats is None:
            stats = summarize(reports)
        json.dump(stats.to_dict(), out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    return out.getvalue() if stream is None else None


def read_csv(stream) -> list[dict]:
    """Parse an edge CSV back into rows of floats (empty fields become ``None``)."""
    rows = []
    for rec in csv.DictReader(stream):
        rows.append({k: (None if v == "" else (v if k == "direction" else float(v)))
                     for k, v in rec.items()})
    return rows
