"""Seeded synthetic graph families.

Every random family draws from one :class:`~curvature_transfer.rng.SplitMix64`
stream created from the seed, so ``generate(spec, seed)`` is reproducible.
Vertices are numbered ``0..n-1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import GenerationError, ParameterError
from .graph import Graph
from .rng import SplitMix64

REGULAR_RESTARTS = 1000
_PAIR_CHUNK = 1 << 22


def _int_param(value, name, lo=None):
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise ParameterError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if lo is not None and value < lo:
        raise ParameterError(f"{name} must be >= {lo}, got {value}")
    return value


def _prob_param(value, name):
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {value}")
    return value


def _select_pairs(n: int, keep) -> np.ndarray:
    """Pairs i<j, visited in lexicographic order, for which ``keep`` holds.

    ``keep(ii, jj)`` receives consecutive blocks of index arrays and returns
    a boolean mask; blocks hold whole rows and are bounded in size.
    """
    found = []
    start = 0
    while start < n - 1:
        stop, count = start, 0
        while stop < n - 1 and (count == 0 or count + n - 1 - stop <= _PAIR_CHUNK):
            count += n - 1 - stop
            stop += 1
        ii = np.concatenate([np.full(n - 1 - r, r, dtype=np.int64) for r in range(start, stop)])
        jj = np.concatenate([np.arange(r + 1, n, dtype=np.int64) for r in range(start, stop)])
        mask = keep(ii, jj)
        found.append(np.stack([ii[mask], jj[mask]], axis=1))
        start = stop
    return np.concatenate(found) if found else np.empty((0, 2), dtype=np.int64)


def _bernoulli_pairs(rng: SplitMix64, n: int, prob_of_pair) -> np.ndarray:
    """One uniform per pair, in lexicographic order; keep if below its probability."""
    return _select_pairs(n, lambda i, j: rng.random(len(i)) < prob_of_pair(i, j))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each unordered pair is an edge independently with probability p."""
    n = _int_param(n, "n", 0)
    p = _prob_param(p, "p")
    rng = SplitMix64(seed)
    edges = _bernoulli_pairs(rng, n, lambda i, j: p)
    return Graph.from_edges(n, edges)


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment grown from the complete graph K_m.

    Each new vertex picks m distinct targets with probability proportional
    to their current degree; a repeated target is re-drawn, at most ``10 n``
    times per target.
    """
    n = _int_param(n, "n", 1)
    m = _int_param(m, "m", 1)
    if m > n:
        raise ParameterError(f"BA requires m <= n, got m={m}, n={n}")
    rng = SplitMix64(seed)
    edges = [(a, b) for a in range(m) for b in range(a + 1, m)]
    # every vertex appears once per incident edge, so a uniform entry is degree-weighted
    endpoints = [x for e in edges for x in e]
    limit = 10 * n
    for t in range(m, n):
        chosen = []
        for _ in range(m):
            for _attempt in range(limit):
                if endpoints:
                    target = endpoints[rng.integer(len(endpoints))]
                else:
                    # K_1 seed has no edges: all degrees zero, fall back to uniform
                    target = rng.integer(t)
                if target not in chosen:
                    break
            else:
                raise GenerationError(f"BA: re-draw limit {limit} reached at vertex {t}")
            chosen.append(target)
        for target in chosen:
            edges.append((target, t))
            endpoints.extend((target, t))
    return Graph.from_edges(n, edges)


def watts_strogatz(n: int, k: int, beta: float, seed: int) -> Graph:
    """Ring lattice of even degree k with each clockwise edge rewired w.p. beta.

    Edges ``(i, i+d)`` are visited for ``d = 1..k/2`` (outer) and ``i = 0..n-1``
    (inner). A rewired edge keeps ``i`` and moves its other end to a uniform
    vertex outside ``{i} | N(i)``; with no such vertex the edge is kept.
    """
    n = _int_param(n, "n", 1)
    k = _int_param(k, "k", 0)
    beta = _prob_param(beta, "beta")
    if k % 2 or k < 2 or k > n - 1:
        raise ParameterError(f"WS requires even k with 2 <= k <= n-1, got k={k}, n={n}")
    rng = SplitMix64(seed)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for d in range(1, k // 2 + 1):
            j = (i + d) % n
            adj[i].add(j)
            adj[j].add(i)
    for d in range(1, k // 2 + 1):
        for i in range(n):
            j = (i + d) % n
            if rng.random() >= beta:
                continue
            free = n - 1 - len(adj[i])
            if free == 0 or j not in adj[i]:
                continue
            # uniform draw among non-neighbors by rank
            r = rng.integer(free)
            new = _nth_outside(adj[i], i, r, n)
            adj[i].discard(j)
            adj[j].discard(i)
            adj[i].add(new)
            adj[new].add(i)
    edges = [(a, b) for a in range(n) for b in adj[a] if a < b]
    return Graph.from_edges(n, edges)


def _nth_outside(excluded: set, self_id: int, r: int, n: int) -> int:
    """The r-th (0-based) vertex in increasing order not in excluded | {self_id}."""
    blocked = sorted(excluded | {self_id})
    # count how many blocked ids lie at or below each candidate
    candidate = r
    for b in blocked:
        if b <= candidate:
            candidate += 1
        else:
            break
    return candidate


def random_geometric(n: int, r: float, seed: int, torus: bool = False) -> Graph:
    """Points uniform in the unit square; edge iff Euclidean distance <= r.

    With ``torus`` the square is given periodic boundaries.
    """
    n = _int_param(n, "n", 0)
    r = float(r)
    if r < 0:
        raise ParameterError(f"RGG radius must be non-negative, got {r}")
    rng = SplitMix64(seed)
    pts = rng.random(2 * n).reshape(n, 2)
    tree = cKDTree(pts, boxsize=1.0 if torus else None)
    pairs = tree.query_pairs(r, output_type="ndarray")
    return Graph.from_edges(n, pairs)


def random_regular(n: int, d: int, seed: int) -> Graph:
    """d-regular graph by stub matching with full restart on a dead end.

    The stub list is shuffled; the last stub is popped and paired with the
    nearest stub from the end that forms a new, loop-free edge.
    """
    n = _int_param(n, "n", 1)
    d = _int_param(d, "d", 0)
    if d >= n or (n * d) % 2:
        raise ParameterError(f"Regular requires 0 <= d < n and n*d even, got n={n}, d={d}")
    rng = SplitMix64(seed)
    for _ in range(REGULAR_RESTARTS):
        stubs = [u for u in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        adj = [set() for _ in range(n)]
        ok = True
        while stubs:
            u = stubs.pop()
            for pos in range(len(stubs) - 1, -1, -1):
                v = stubs[pos]
                if v != u and v not in adj[u]:
                    break
            else:
                ok = False
                break
            stubs.pop(pos)
            adj[u].add(v)
            adj[v].add(u)
        if ok:
            return Graph.from_edges(n, [(a, b) for a in range(n) for b in adj[a] if a < b])
    raise GenerationError(f"Regular({n},{d}): no simple matching after {REGULAR_RESTARTS} restarts")


def hyperbolic_random(n: int, R: float, alpha: float, T: float, seed: int) -> Graph:
    """Hyperbolic random graph in the native disk of radius R.

    Angles are uniform, radii have density alpha sinh(alpha r)/(cosh(alpha R)-1).
    A pair at hyperbolic distance d is joined with probability
    1/(1+exp((d-R)/(2T))), or iff d <= R when T = 0.
    Draw order: n angles, n radii, then one uniform per pair if T > 0.
    """
    n = _int_param(n, "n", 0)
    R, alpha, T = float(R), float(alpha), float(T)
    if R <= 0 or alpha <= 0 or T < 0:
        raise ParameterError("HRG requires R > 0, alpha > 0 and T >= 0")
    rng = SplitMix64(seed)
    theta = 2.0 * math.pi * rng.random(n)
    u = rng.random(n)
    radius = np.arccosh(1.0 + u * (math.cosh(alpha * R) - 1.0)) / alpha
    ch, sh = np.cosh(radius), np.sinh(radius)

    def distance(i, j):
        dtheta = np.abs(theta[i] - theta[j])
        dtheta = np.minimum(dtheta, 2.0 * math.pi - dtheta)
        arg = ch[i] * ch[j] - sh[i] * sh[j] * np.cos(dtheta)
        return np.arccosh(np.maximum(arg, 1.0))

    if T == 0:
        edges = _select_pairs(n, lambda i, j: distance(i, j) <= R)
    else:
        def prob(i, j):
            with np.errstate(over="ignore"):
                return 1.0 / (1.0 + np.exp((distance(i, j) - R) / (2.0 * T)))
        edges = _bernoulli_pairs(rng, n, prob)
    return Graph.from_edges(n, edges)


def stochastic_block(block_sizes, p_in: float, p_out: float, seed: int) -> Graph:
    """Planted partition with contiguous blocks of the given sizes."""
    sizes = [_int_param(s, "block size", 0) for s in block_sizes]
    p_in = _prob_param(p_in, "p_in")
    p_out = _prob_param(p_out, "p_out")
    n = sum(sizes)
    block = np.repeat(np.arange(len(sizes)), sizes)
    rng = SplitMix64(seed)
    edges = _bernoulli_pairs(rng, n, lambda i, j: np.where(block[i] == block[j], p_in, p_out))
    return Graph.from_edges(n, edges)


def cycle(n: int) -> Graph:
    n = _int_param(n, "n", 3)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def grid(lx: int, ly: int) -> Graph:
    """Lx-by-Ly lattice; vertex (x, y) has id x*Ly + y."""
    lx, ly = _int_param(lx, "Lx", 1), _int_param(ly, "Ly", 1)
    edges = []
    for x in range(lx):
        for y in range(ly):
            u = x * ly + y
            if x + 1 < lx:
                edges.append((u, u + ly))
            if y + 1 < ly:
                edges.append((u, u + 1))
    return Graph.from_edges(lx * ly, edges)


def torus(lx: int, ly: int) -> Graph:
    """Lattice with periodic boundaries; both sides must be at least 3."""
    lx, ly = _int_param(lx, "Lx", 3), _int_param(ly, "Ly", 3)
    edges = []
    for x in range(lx):
        for y in range(ly):
            u = x * ly + y
            edges.append((u, ((x + 1) % lx) * ly + y))
            edges.append((u, x * ly + (y + 1) % ly))
    return Graph.from_edges(lx * ly, edges)


def dary_tree(d: int, h: int) -> Graph:
    """Complete d-ary tree of height h in breadth-first numbering."""
    d, h = _int_param(d, "d", 1), _int_param(h, "h", 0)
    n = h + 1 if d == 1 else (d ** (h + 1) - 1) // (d - 1)
    return Graph.from_edges(n, [((v - 1) // d, v) for v in range(1, n)])


def complete(n: int) -> Graph:
    n = _int_param(n, "n", 1)
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


# name -> (builder, ordered parameter names, takes seed)
MODELS = {
    "ER": (erdos_renyi, ("n", "p"), True),
    "BA": (barabasi_albert, ("n", "m"), True),
    "WS": (watts_strogatz, ("n", "k", "beta"), True),
    "RGG": (random_geometric, ("n", "r"), True),
    "Regular": (random_regular, ("n", "d"), True),
    "HRG": (hyperbolic_random, ("n", "R", "alpha", "T"), True),
    "SBM": (stochastic_block, ("block_sizes", "p_in", "p_out"), True),
    "Cycle": (cycle, ("n",), False),
    "Grid": (grid, ("Lx", "Ly"), False),
    "Torus": (torus, ("Lx", "Ly"), False),
    "DaryTree": (dary_tree, ("d", "h"), False),
    "Complete": (complete, ("n",), False),
}
_OPTIONAL = {"RGG": ("torus",)}


@dataclass(frozen=True)
class ModelSpec:
    """A generator family name and its named parameters."""

    model: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"unknown model {self.model!r}; choose from {sorted(MODELS)}")
        names = MODELS[self.model][1]
        extra = set(self.params) - set(names) - set(_OPTIONAL.get(self.model, ()))
        missing = set(names) - set(self.params)
        if missing or extra:
            raise ParameterError(
                f"{self.model} takes parameters {', '.join(names)}"
                + (f"; missing {sorted(missing)}" if missing else "")
                + (f"; unknown {sorted(extra)}" if extra else ""))

    @classmethod
    def parse(cls, model: str, text: str) -> "ModelSpec":
        """Parse ``k=v,...``; block sizes are given as ``block_sizes=400;400``."""
        params = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            if "=" not in item:
                raise ParameterError(f"expected key=value, got {item!r}")
            key, raw = (s.strip() for s in item.split("=", 1))
            params[key] = _parse_value(raw)
        if model == "SBM" and "block_sizes" in params:
            v = params["block_sizes"]
            params["block_sizes"] = list(v) if isinstance(v, tuple) else [v]
        return cls(model, params)

    def describe(self) -> str:
        return ",".join(f"{k}={_format_value(v)}" for k, v in self.params.items())


def _parse_value(raw: str):
    if ";" in raw:
        return tuple(_parse_value(x) for x in raw.split(";") if x)
    low = raw.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        raise ParameterError(f"cannot parse parameter value {raw!r}") from None


def _format_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    return str(v)


def generate(spec: ModelSpec, seed: int = 0) -> Graph:
    """Build the graph described by ``spec``; deterministic families ignore the seed."""
    builder, names, seeded = MODELS[spec.model]
    args = [spec.params[name] for name in names]
    kwargs = {k: spec.params[k] for k in _OPTIONAL.get(spec.model, ()) if k in spec.params}
    if seeded:
        seed = int(seed)
        if not 0 <= seed < 1 << 64:
            raise ParameterError("seed must be an unsigned 64-bit integer")
        kwargs["seed"] = seed
    return builder(*args, **kwargs)
