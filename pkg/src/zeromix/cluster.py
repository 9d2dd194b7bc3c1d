"""Cluster-expansion series for log Z and for occupation ratios.

The expansion sums, over tuples of vertices, the Ursell function of the
tuple's interaction graph (two entries interact when equal or adjacent).
Tuples are grouped by the multiset of distinct vertices they use: a multiset
with multiplicities m_1..m_s accounts for k!/(m_1!..m_s!) tuples, all with
the same interaction graph, so each group contributes
phi(blowup) / prod m_i!  to the coefficient of order k = sum m_i.

The blowup of a connected induced subgraph S with multiplicities m places
m_u copies of each u in S; copies of one vertex form a clique and copies of
adjacent vertices are fully joined.
"""

import functools
import math

from .errors import SizeLimitError
from .graphs import ball, induced_subgraph, remove_vertices
from .exact import ind_poly
from .series import PowerSeries

DEFAULT_CLUSTER_ORDER = 8
URSELL_SCAN_EDGE_LIMIT = 20


def ursell(h):
    """Ursell function phi(h) = sum over edge subsets F with (V, F) connected
    of (-1)^|F|, by exhaustive subset scan.

    Zero whenever h is disconnected.  Limited to |E| <= 20.
    """
    edges = h.edges()
    m = len(edges)
    if m > URSELL_SCAN_EDGE_LIMIT:
        raise SizeLimitError(f"subset scan limited to {URSELL_SCAN_EDGE_LIMIT} edges, got {m}")
    if h.n == 0:
        raise ValueError("Ursell function of the empty graph is undefined")
    if h.n == 1:
        return 1
    total = 0
    for fmask in range(1 << m):
        parent = list(range(h.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        nparts = h.n
        fm = fmask
        while fm:
            b = fm & -fm
            fm ^= b
            u, w = edges[b.bit_length() - 1]
            ru, rw = find(u), find(w)
            if ru != rw:
                parent[ru] = rw
                nparts -= 1
        if nparts == 1:
            total += -1 if fmask.bit_count() & 1 else 1
    return total


def _ursell_from_masks(k, adj_masks):
    """Ursell function from adjacency bitmasks, by the component-anchored
    Mobius recursion: with g(T) = [T induces no edge],
    f(T) = g(T) - sum over proper S containing T's lowest vertex of
    f(S) g(T \\ S).  Exact integers, O(3^k)."""
    full = (1 << k) - 1
    g = [0] * (full + 1)
    for T in range(full + 1):
        t, ok = T, 1
        while t:
            b = t & -t
            t ^= b
            if adj_masks[b.bit_length() - 1] & T:
                ok = 0
                break
        g[T] = ok
    f = [0] * (full + 1)
    for T in range(1, full + 1):
        anchor = T & -T
        rest = T ^ anchor
        val = g[T]
        # proper submasks S of T containing the anchor; f[S] is ready because
        # a proper submask is numerically smaller
        sub = rest
        while True:
            S = sub | anchor
            if S != T:
                val -= f[S] * g[T ^ S]
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[T] = val
    return f[full]


@functools.lru_cache(maxsize=1 << 16)
def _ursell_blowup(k, pattern_bits, mults):
    """phi of the blowup graph; memoized on the canonical labeled form.

    pattern_bits packs the adjacency of the s distinct vertices (bit i*s+j),
    mults is the multiplicity tuple in sorted-vertex order.
    """
    s = len(mults)
    offs = [0] * s
    acc = 0
    for i, m in enumerate(mults):
        offs[i] = acc
        acc += m
    group_mask = [((1 << mults[i]) - 1) << offs[i] for i in range(s)]
    adj_masks = [0] * k
    for i in range(s):
        base = group_mask[i]
        for j in range(s):
            if i == j or (pattern_bits >> (i * s + j)) & 1:
                base_j = group_mask[j]
                for node in range(offs[i], offs[i] + mults[i]):
                    adj_masks[node] |= base_j
    for node in range(k):
        adj_masks[node] &= ~(1 << node)
    return _ursell_from_masks(k, adj_masks)


@functools.lru_cache(maxsize=None)
def _compositions(total, parts):
    """All tuples of `parts` positive ints summing to `total`."""
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def connected_subsets(g, max_size, containing=None):
    """All connected induced vertex subsets of size <= max_size, as sorted
    tuples; restricted to subsets containing `containing` when given."""
    results = []
    if containing is not None:
        seeds = [frozenset([containing])] if g.n else []
        min_rule = False
    else:
        seeds = [frozenset([s]) for s in range(g.n)]
        min_rule = True
    for seed in seeds:
        anchor = min(seed)
        visited = {seed}
        stack = [seed]
        while stack:
            S = stack.pop()
            results.append(tuple(sorted(S)))
            if len(S) >= max_size:
                continue
            for u in S:
                for w in g.adj[u]:
                    if w in S or (min_rule and w < anchor):
                        continue
                    T = S | {w}
                    if T not in visited:
                        visited.add(T)
                        stack.append(T)
    return results


def _pattern_bits(g, subset):
    """Pack the induced adjacency of `subset` (sorted tuple) into an int."""
    s = len(subset)
    bits = 0
    for i in range(s):
        nbrs = g.adj[subset[i]]
        for j in range(i + 1, s):
            if subset[j] in nbrs:
                bits |= 1 << (i * s + j)
                bits |= 1 << (j * s + i)
    return bits


def logZ_series(g, order=DEFAULT_CLUSTER_ORDER):
    """Taylor series of log Z_g at 0, to the given order."""
    coeffs = [0j] * (order + 1)
    for subset in connected_subsets(g, order):
        s = len(subset)
        bits = _pattern_bits(g, subset)
        for k in range(s, order + 1):
            for m in _compositions(k, s):
                phi = _ursell_blowup(k, bits, m)
                if phi:
                    denom = 1
                    for mi in m:
                        denom *= math.factorial(mi)
                    coeffs[k] += phi / denom
    return PowerSeries(tuple(coeffs))


def ratio_series_cluster(g, v, order=DEFAULT_CLUSTER_ORDER):
    """Taylor series at 0 of the occupation ratio of v, from the cluster
    expansion: the order-k coefficient sums phi(blowup) * m_v / prod m_i!
    over connected multisets through v of total multiplicity k."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} not in graph with n={g.n}")
    coeffs = [0j] * (order + 1)
    for subset in connected_subsets(g, order, containing=v):
        s = len(subset)
        vpos = subset.index(v)
        bits = _pattern_bits(g, subset)
        for k in range(s, order + 1):
            for m in _compositions(k, s):
                phi = _ursell_blowup(k, bits, m)
                if phi:
                    denom = 1
                    for mi in m:
                        denom *= math.factorial(mi)
                    coeffs[k] += phi * m[vpos] / denom
    return PowerSeries(tuple(coeffs))


def ratio_series_division(g, v, order=DEFAULT_CLUSTER_ORDER, ball_radius=None, max_vertices=None):
    """The same ratio series computed by polynomial division:
    lam * Z_{H - N[v]} / Z_H on the ball H around v.

    The order-k coefficient only depends on the ball of radius k - 1, so
    ball_radius defaults to `order` (one more than needed at top order).
    """
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} not in graph with n={g.n}")
    radius = order if ball_radius is None else ball_radius
    h, mapping = induced_subgraph(g, ball(g, v, radius))
    vv = mapping[v]
    den = ind_poly(h, max_vertices=max_vertices)
    hh, _ = remove_vertices(h, set(h.adj[vv]) | {vv})
    num = ind_poly(hh, max_vertices=max_vertices)
    den_s = PowerSeries.from_coeffs(den.coeffs, order)
    num_s = PowerSeries.from_coeffs((0,) + num.coeffs, order)
    return num_s.mul(den_s.reciprocal())


def shearer_radius(max_degree):
    """Radius (Delta-1)^(Delta-1) / Delta^Delta of the disk where Z of any
    graph with maximum degree Delta is zero-free."""
    if max_degree < 2:
        raise ValueError(f"need max degree >= 2, got {max_degree}")
    d = max_degree
    return (d - 1) ** (d - 1) / d**d


def weitz_lambda_c(max_degree):
    """Uniqueness threshold (Delta-1)^(Delta-1) / (Delta-2)^Delta on the
    infinite Delta-regular tree."""
    if max_degree < 3:
        raise ValueError(f"need max degree >= 3, got {max_degree}")
    d = max_degree
    return (d - 1) ** (d - 1) / (d - 2) ** d
