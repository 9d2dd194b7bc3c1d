"""Polymer representation of homomorphism partition functions.

A polymer of G is a connected subgraph with at least one edge, identified
with its edge set.  Writing the edge symbol as J + z(A - J), expanding the
product over edges in z and regrouping by the support of the chosen edge
set turns Z^sigma_G into a hard-core partition function over polymers:

    Z^sigma_G(J + z(A - J), xi) = p^sigma(xi) * Z_Gamma(w^sigma)

where Gamma joins two polymers when their vertex sets intersect, w^sigma(H)
is z^{|F|} times the A - J homomorphism sum of H = (S, F) normalized by the
free-vertex mass, and p^sigma(xi) is the boundary-weighted vertex mass of
the whole graph.  The conditional color ratio then has a cluster expansion
in z whose order-ell coefficient only involves polymers within distance ell
of the target vertex.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cluster import _ursell_blowup
from .errors import (
    BoundaryError,
    NearZeroDenominatorError,
    SizeLimitError,
    ZeroRegionViolationError,
)
from .exact import (
    DEFAULT_MAX_SUMMANDS,
    NEAR_ZERO_REL,
    _as_matrix,
    _hom_sum,
    eval_poly,
    hom_Z_poly,
    multivariate_Z,
)
from .graphs import Graph, ball, dist_to_disagreement, from_edges
from .series import PowerSeries

DEFAULT_POLYMER_EDGES = 8
DEFAULT_POLYMER_CAP = 10**6
DEFAULT_SERIES_ORDER = 6


@dataclass(frozen=True)
class Polymer:
    """Connected subgraph with >= 1 edge, stored as sorted edge/vertex tuples."""

    edges: tuple
    vertices: tuple

    @classmethod
    def from_edge_set(cls, edges):
        es = tuple(sorted(tuple(sorted(e)) for e in edges))
        vs = tuple(sorted({v for e in es for v in e}))
        return cls(es, vs)

    @property
    def size(self):
        return len(self.edges)


@dataclass(frozen=True)
class PolymerGraph:
    """Polymers plus their intersection graph (vertex sets sharing a vertex)."""

    polymers: tuple
    graph: Graph


def enumerate_polymers(g, max_edges=DEFAULT_POLYMER_EDGES, within=None, max_count=DEFAULT_POLYMER_CAP):
    """All polymers of g with at most max_edges edges, optionally restricted
    to the vertex set `within`.  Deterministic order; SizeLimitError past
    max_count polymers."""
    edges = g.edges()
    if within is not None:
        within = set(within)
        edges = [e for e in edges if e[0] in within and e[1] in within]
    m = len(edges)
    adj = [[] for _ in range(m)]
    for a in range(m):
        ua, wa = edges[a]
        for b in range(a + 1, m):
            ub, wb = edges[b]
            if ua == ub or ua == wb or wa == ub or wa == wb:
                adj[a].append(b)
                adj[b].append(a)
    found = []
    for start in range(m):
        visited = {frozenset([start])}
        stack = [frozenset([start])]
        while stack:
            S = stack.pop()
            found.append(S)
            if len(found) > max_count:
                raise SizeLimitError(f"more than {max_count} polymers")
            if len(S) >= max_edges:
                continue
            for a in S:
                for b in adj[a]:
                    if b <= start or b in S:
                        continue
                    T = S | {b}
                    if T not in visited:
                        visited.add(T)
                        stack.append(T)
    polys = [Polymer.from_edge_set(edges[a] for a in S) for S in found]
    polys.sort(key=lambda p: (p.size, p.edges))
    return polys


def polymer_graph(polymers):
    """Intersection graph of the given polymers."""
    n = len(polymers)
    vsets = [frozenset(p.vertices) for p in polymers]
    edges = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if vsets[a] & vsets[b]
    ]
    return PolymerGraph(tuple(polymers), from_edges(n, edges))


def _local_hom_sum(polymer, C, xi, fixed_colors, q, max_summands):
    """Homomorphism sum of the polymer's subgraph (S, F) with edge symbol C,
    vertex weights xi (rows indexed by local position), pinned colors given
    by fixed_colors on local positions."""
    local = {u: k for k, u in enumerate(polymer.vertices)}
    edges = [(local[u], local[w]) for u, w in polymer.edges]
    return _hom_sum(
        len(polymer.vertices),
        edges,
        q,
        lambda e, cu, cw: C[cu, cw],
        xi,
        fixed_colors,
        max_summands,
    )


def polymer_weight(polymer, A, z, sigma=None, xi=None, max_summands=DEFAULT_MAX_SUMMANDS):
    """Weight w^sigma(H) = z^|F| Z^sigma_H(A - J, xi) / (free-vertex mass).

    The normalization divides by sum_i xi_{u,i} for unpinned u in S and by
    xi_{u,sigma(u)} for pinned u; with xi = 1 it is q^{#unpinned}.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    C = A - np.ones((q, q), dtype=complex)
    pinned = {}
    if sigma is not None:
        if sigma.q != q:
            raise BoundaryError(f"boundary has q={sigma.q}, matrix has q={q}")
        pinned = {u: sigma.assignment[u] for u in polymer.vertices if u in sigma.assignment}
    if xi is None:
        rows = None
        norm = complex(q ** (len(polymer.vertices) - len(pinned)))
    else:
        xi = np.asarray(xi, dtype=complex)
        rows = np.array([xi[u] for u in polymer.vertices])
        norm = 1.0 + 0j
        for u in polymer.vertices:
            norm *= xi[u, pinned[u]] if u in pinned else xi[u].sum()
    local = {u: k for k, u in enumerate(polymer.vertices)}
    fixed = {local[u]: c for u, c in pinned.items()}
    num = _local_hom_sum(polymer, C, rows, fixed, q, max_summands)
    if abs(norm) <= NEAR_ZERO_REL * (1.0 + abs(num)):
        raise NearZeroDenominatorError(
            "free-vertex mass vanishes", abs_denominator=abs(norm), point=z
        )
    return z ** polymer.size * num / norm


def hom_Z_via_polymers(g, A, z=1.0, sigma=None, xi=None, max_count=DEFAULT_POLYMER_CAP):
    """Z^sigma_g(J + z(A - J), xi) assembled from the polymer identity.

    Exponential in |E(g)|; a consistency route for small graphs, checked
    against the direct coloring sum.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    pinned = {}
    if sigma is not None:
        if sigma.q != q:
            raise BoundaryError(f"boundary has q={sigma.q}, matrix has q={q}")
        sigma.validate(g)
        pinned = dict(sigma.assignment)
    if xi is not None:
        xi = np.asarray(xi, dtype=complex)
    polys = enumerate_polymers(g, max_edges=g.num_edges(), max_count=max_count)
    pg = polymer_graph(polys)
    weights = [
        polymer_weight(p, A, z, sigma=sigma, xi=xi) for p in polys
    ]
    zg = multivariate_Z(pg.graph, weights, max_vertices=None)
    mass = 1.0 + 0j
    for v in range(g.n):
        if v in pinned:
            mass *= xi[v, pinned[v]] if xi is not None else 1.0
        else:
            mass *= xi[v].sum() if xi is not None else q
    return mass * zg


def hom_ratio_series(
    g,
    v,
    i,
    sigma,
    A,
    order=DEFAULT_SERIES_ORDER,
    max_count=DEFAULT_POLYMER_CAP,
    max_summands=DEFAULT_MAX_SUMMANDS,
):
    """Taylor series in z of the conditional color ratio
    Z^{sigma, v->i}(J + z(A - J)) / Z^sigma(J + z(A - J)).

    Constant term 1/q.  The order-ell coefficient sums, over multisets of
    polymers with total edge count ell whose union contains v and whose
    intersection graph is connected, the Ursell function of the multiset's
    blowup times the xi-derivative of the normalized weight product; every
    polymer involved lies within distance ell of v, so the coefficient only
    depends on that ball.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    if sigma.q != q:
        raise BoundaryError(f"boundary has q={sigma.q}, matrix has q={q}")
    sigma.validate(g)
    if v in sigma.region:
        raise BoundaryError(f"vertex {v} is pinned by the boundary")
    if not (0 <= i < q):
        raise ValueError(f"color {i} not in 0..{q - 1}")

    C = A - np.ones((q, q), dtype=complex)
    region = ball(g, v, order)
    polys = enumerate_polymers(g, max_edges=order, within=region, max_count=max_count)

    # per-polymer data at xi = 1: normalized weight and its xi_{v,i} derivative
    w_at_1 = []
    dw_at_1 = []
    vsets = []
    for p in polys:
        local = {u: k for k, u in enumerate(p.vertices)}
        pinned = {local[u]: sigma.assignment[u] for u in p.vertices if u in sigma.assignment}
        nfree = len(p.vertices) - len(pinned)
        zval = _local_hom_sum(p, C, None, pinned, q, max_summands)
        w_at_1.append(zval / q**nfree)
        if v in local:
            pinned_v = dict(pinned)
            pinned_v[local[v]] = i
            zv = _local_hom_sum(p, C, None, pinned_v, q, max_summands)
            dw_at_1.append((zv - zval / q) / q**nfree)
        else:
            dw_at_1.append(0j)
        vsets.append(frozenset(p.vertices))

    npoly = len(polys)
    inter = [
        [b for b in range(npoly) if b != a and vsets[a] & vsets[b]] for a in range(npoly)
    ]

    coeffs = [0j] * (order + 1)
    coeffs[0] = 1.0 / q

    support = []  # list of (polymer index, multiplicity)

    def support_ok():
        # union must contain v and the intersection graph must be connected
        idxs = [a for a, _ in support]
        if all(v not in vsets[a] for a in idxs):
            return False
        seen = {idxs[0]}
        frontier = [idxs[0]]
        members = set(idxs)
        while frontier:
            a = frontier.pop()
            for b in inter[a]:
                if b in members and b not in seen:
                    seen.add(b)
                    frontier.append(b)
        return len(seen) == len(members)

    def emit():
        if not support_ok():
            return
        idxs = [a for a, _ in support]
        mults = tuple(m for _, m in support)
        k = sum(mults)
        s = len(idxs)
        bits = 0
        for x in range(s):
            for y in range(x + 1, s):
                if vsets[idxs[x]] & vsets[idxs[y]]:
                    bits |= 1 << (x * s + y)
                    bits |= 1 << (y * s + x)
        phi = _ursell_blowup(k, bits, mults)
        if phi == 0:
            return
        denom = 1
        for m in mults:
            denom *= math.factorial(m)
        # d/dxi_{v,i} of prod_j w_j^{m_j} at xi = 1
        deriv = 0j
        for pos, (a, m) in enumerate(support):
            if dw_at_1[a] == 0:
                continue
            term = m * dw_at_1[a] * w_at_1[a] ** (m - 1)
            for pos2, (b, m2) in enumerate(support):
                if pos2 != pos:
                    term *= w_at_1[b] ** m2
            deriv += term
        ell = sum(m * polys[a].size for a, m in support)
        coeffs[ell] += phi * deriv / denom

    def extend(start, budget):
        for a in range(start, npoly):
            size = polys[a].size
            if size > budget:
                continue
            m = 1
            while m * size <= budget:
                support.append((a, m))
                emit()
                extend(a + 1, budget - m * size)
                support.pop()
                m += 1

    extend(0, order)
    return PowerSeries(tuple(coeffs))


@dataclass(frozen=True)
class DeltaSpec:
    """Box radius delta(Delta) = max over 0 < a < 2 pi / (3 Delta) of
    sin(a/2) cos(a Delta / 2), with the maximizing angle."""

    degree: int
    angle: float
    delta: float


def delta_Delta(degree):
    """Zero-free box radius for graphs of maximum degree `degree` (>= 3),
    by golden-section maximization to 1e-12."""
    if degree < 3:
        raise ValueError(f"need degree >= 3, got {degree}")

    def f(a):
        return math.sin(a / 2.0) * math.cos(a * degree / 2.0)

    lo, hi = 0.0, 2.0 * math.pi / (3.0 * degree)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > 1e-12:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    a = (lo + hi) / 2.0
    return DeltaSpec(degree, a, f(a))


def _box_deviation(A):
    return float(np.max(np.abs(np.asarray(A, dtype=complex) - 1.0)))


@dataclass(frozen=True)
class BarvinokReport:
    delta: float
    max_deviation: float
    hypothesis_ok: bool
    abs_Z: float
    zero_free: bool
    edge_samples: int
    min_edge_abs_Z: float


def barvinok_zero_check(g, A, sigma=None, samples=0, seed=0, max_summands=DEFAULT_MAX_SUMMANDS):
    """Evaluate Z^sigma_g(A) exactly and report whether it is nonzero, along
    with whether A sits in the zero-free box for the graph's degree.

    With samples > 0, also draws per-edge matrices uniformly in the same box
    and exercises the edge-matrix sum; the hypothesis covers that case too.
    """
    from .exact import edge_matrix_Z, hom_Z

    A = _as_matrix(A)
    deg = max(3, g.max_degree())
    delta = delta_Delta(deg).delta
    dev = _box_deviation(A)
    hypothesis_ok = dev <= delta + 1e-15
    Z = hom_Z(g, A, sigma=sigma, max_summands=max_summands)
    q = A.shape[0]
    nfree = g.n - (len(sigma.assignment) if sigma is not None else 0)
    scale = q**nfree * (1.0 + dev) ** g.num_edges()
    zero_free = bool(abs(Z) > 1e-12 * scale)

    min_edge = math.inf
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        mats = {}
        for e in g.edges():
            radii = delta * np.sqrt(rng.uniform(size=(q, q)))
            angles = rng.uniform(0.0, 2.0 * math.pi, size=(q, q))
            mats[e] = 1.0 + radii * np.exp(1j * angles)
        Ze = edge_matrix_Z(g, mats, sigma=sigma, max_summands=max_summands)
        min_edge = min(min_edge, abs(Ze))
    return BarvinokReport(
        delta=delta,
        max_deviation=dev,
        hypothesis_ok=hypothesis_ok,
        abs_Z=float(abs(Z)),
        zero_free=zero_free,
        edge_samples=samples,
        min_edge_abs_Z=min_edge if samples else math.nan,
    )


def build_edge_matrices(g, A, z, xi):
    """Per-edge matrices (J + z(A - J))_{ij} * xi_{u,i}^{1/deg u} *
    xi_{w,j}^{1/deg w} for each edge (u, w), u < w.

    Multiplying the factors of the deg(u) edges at u recovers xi_{u, c(u)}
    exactly once, so the edge-matrix sum equals the xi-weighted sum.
    Vertices on no edge never contribute; their xi rows must be all ones.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    M = np.ones((q, q), dtype=complex) + z * (A - np.ones((q, q)))
    xi = np.asarray(xi, dtype=complex)
    powed = {}
    for u in range(g.n):
        d = g.degree(u)
        if d:
            powed[u] = np.exp(np.log(xi[u]) / d)
    return {
        (u, w): M * np.outer(powed[u], powed[w]) for u, w in g.edges()
    }


@dataclass(frozen=True)
class BoundedRatioReport:
    delta: float
    box_limit: float
    max_deviation: float
    hypothesis_ok: bool
    ratio_cap: float
    max_abs_ratio: float
    violations: tuple  # (z, |ratio|) pairs past the cap, or denominator zeros
    max_identity_residual: float
    identity_points: int


def bounded_ratio_check(
    g,
    v,
    i,
    sigma,
    A,
    eta,
    eps,
    samples=64,
    identity_points=4,
    seed=0,
    max_summands=DEFAULT_MAX_SUMMANDS,
):
    """Check |ratio(z)| <= 1/eps over the disk |z| <= 1 + eta, given A inside
    the shrunken box delta / ((1 + eps)^Delta (1 + eta)).

    Also verifies the vanishing identity behind the bound: with
    xi_{v, i} = 1 - 1/ratio(z) and all other entries 1, the edge-matrix sum
    of the matrices from build_edge_matrices is zero.
    """
    from .exact import edge_matrix_Z

    if eta <= 0 or eps <= 0:
        raise ValueError("eta and eps must be positive")
    A = _as_matrix(A)
    q = A.shape[0]
    deg = max(3, g.max_degree())
    delta = delta_Delta(deg).delta
    box_limit = delta / ((1.0 + eps) ** deg * (1.0 + eta))
    dev = _box_deviation(A)
    hypothesis_ok = dev <= box_limit + 1e-15

    den_poly = hom_Z_poly(g, A, sigma=sigma, max_summands=max_summands)
    num_poly = hom_Z_poly(g, A, sigma=sigma.extended(v, i), max_summands=max_summands)

    rng = np.random.default_rng(seed)
    radius = 1.0 + eta
    points = [radius * cmath.exp(2j * math.pi * j / max(1, samples // 2)) for j in range(samples // 2)]
    while len(points) < samples:
        points.append(
            radius
            * math.sqrt(rng.uniform())
            * cmath.exp(2j * math.pi * rng.uniform())
        )

    cap = 1.0 / eps
    max_ratio = 0.0
    violations = []
    ratios = []
    for z in points:
        num = eval_poly(num_poly, z)
        den = eval_poly(den_poly, z)
        if abs(den) <= NEAR_ZERO_REL * (1.0 + abs(num)):
            violations.append((z, math.inf))
            ratios.append(None)
            continue
        ratio = num / den
        ratios.append(ratio)
        if abs(ratio) > max_ratio:
            max_ratio = abs(ratio)
        if abs(ratio) > cap * (1.0 + 1e-12):
            violations.append((z, abs(ratio)))

    if g.degree(v) == 0:
        raise ValueError(f"identity check needs deg({v}) >= 1")
    max_residual = 0.0
    checked = 0
    for z, ratio in zip(points, ratios):
        if checked >= identity_points:
            break
        if ratio is None or abs(ratio) < 1e-9:
            continue
        xi = np.ones((g.n, q), dtype=complex)
        xi[v, i] = 1.0 - 1.0 / ratio
        mats = build_edge_matrices(g, A, z, xi)
        residual = abs(edge_matrix_Z(g, mats, sigma=sigma, max_summands=max_summands))
        den = eval_poly(den_poly, z)
        rel = residual / (1.0 + abs(den))
        max_residual = max(max_residual, rel)
        checked += 1

    return BoundedRatioReport(
        delta=delta,
        box_limit=box_limit,
        max_deviation=dev,
        hypothesis_ok=hypothesis_ok,
        ratio_cap=cap,
        max_abs_ratio=max_ratio,
        violations=tuple(violations),
        max_identity_residual=max_residual,
        identity_points=checked,
    )


@dataclass(frozen=True)
class HomSSMReport:
    distance: float
    gap: float
    bound: float
    bound_M: float
    rate_r: float
    decay_C: float
    hypothesis_ok: bool
    passed: bool


def hom_ssm_experiment(g, v, i, sigma, tau, A, eta, samples=64, max_summands=DEFAULT_MAX_SUMMANDS):
    """Compare the conditional color probabilities under two boundary
    conditions against the decay bound 2M / ((r - 1) r^d) with r = 1/(1- eta),
    where d is the distance from v to the nearest disagreement and M bounds
    both ratios on |z| = r (sampled, times 1.5).

    Requires A inside the (1 - eta)-shrunken zero-free box, which keeps the
    denominators nonzero on the disk of radius r.
    """
    if not 0 < eta < 1:
        raise ValueError(f"need 0 < eta < 1, got {eta}")
    A = _as_matrix(A)
    q = A.shape[0]
    deg = max(3, g.max_degree())
    delta = delta_Delta(deg).delta
    dev = _box_deviation(A)
    hypothesis_ok = dev <= (1.0 - eta) * delta + 1e-15

    d = dist_to_disagreement(g, v, sigma, tau)
    polys = {
        "den_s": hom_Z_poly(g, A, sigma=sigma, max_summands=max_summands),
        "num_s": hom_Z_poly(g, A, sigma=sigma.extended(v, i), max_summands=max_summands),
        "den_t": hom_Z_poly(g, A, sigma=tau, max_summands=max_summands),
        "num_t": hom_Z_poly(g, A, sigma=tau.extended(v, i), max_summands=max_summands),
    }

    def ratio_at(num_key, den_key, z):
        num = eval_poly(polys[num_key], z)
        den = eval_poly(polys[den_key], z)
        if abs(den) <= NEAR_ZERO_REL * (1.0 + abs(num)):
            raise ZeroRegionViolationError(
                f"homomorphism sum vanishes at z = {z}", point=z
            )
        return num / den

    r = 1.0 / (1.0 - eta)
    best = 0.0
    for j in range(samples):
        z = r * cmath.exp(2j * math.pi * j / samples)
        best = max(best, abs(ratio_at("num_s", "den_s", z)), abs(ratio_at("num_t", "den_t", z)))
    M = 1.5 * best

    gap = abs(ratio_at("num_s", "den_s", 1.0) - ratio_at("num_t", "den_t", 1.0))
    if math.isinf(d):
        bound = 0.0
    else:
        from .interpolate import gap_bound_hom

        bound = gap_bound_hom(M, r, int(d))
    return HomSSMReport(
        distance=d,
        gap=gap,
        bound=bound,
        bound_M=M,
        rate_r=r,
        decay_C=2.0 * M / (r - 1.0),
        hypothesis_ok=hypothesis_ok,
        passed=gap <= bound + 1e-12,
    )
