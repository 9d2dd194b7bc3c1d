"""Shared brute-force oracles for the test suite.

These deliberately avoid the package's own recursions: independent sets come
from itertools scans, homomorphism sums from explicit coloring products, and
connectivity from union-find.  Slow and obviously correct.
"""

import itertools

import numpy as np

from zeromix import from_edges


def random_graph(rng, n, p=0.4, max_degree=None):
    """Erdos-Renyi draw; with max_degree set, edges that would exceed the cap
    are skipped (scan order is deterministic given the rng state)."""
    deg = [0] * n
    edges = []
    for u in range(n):
        for w in range(u + 1, n):
            if rng.random() < p:
                if max_degree is not None and (deg[u] >= max_degree or deg[w] >= max_degree):
                    continue
                edges.append((u, w))
                deg[u] += 1
                deg[w] += 1
    return from_edges(n, edges)


def brute_independent_sets(g):
    """All independent sets as frozensets, by scanning every vertex subset."""
    out = []
    for k in range(g.n + 1):
        for comb in itertools.combinations(range(g.n), k):
            s = set(comb)
            if all(not g.has_edge(u, w) for u in comb for w in comb if u < w):
                out.append(frozenset(s))
    return out


def brute_ind_poly(g):
    coeffs = [0] * (g.n + 1)
    for s in brute_independent_sets(g):
        coeffs[len(s)] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def brute_Z(g, lam):
    return sum(lam ** len(s) for s in brute_independent_sets(g))


def brute_multivariate_Z(g, weights):
    total = 0.0 + 0.0j
    for s in brute_independent_sets(g):
        term = 1.0 + 0.0j
        for v in s:
            term *= weights[v]
        total += term
    return total


def brute_hom_Z(g, A, xi=None, sigma=None):
    """Direct sum over all colorings via itertools.product."""
    A = np.asarray(A, dtype=complex)
    q = A.shape[0]
    fixed = dict(sigma.assignment) if sigma is not None else {}
    free = [v for v in range(g.n) if v not in fixed]
    total = 0.0 + 0.0j
    for combo in itertools.product(range(q), repeat=len(free)):
        col = dict(fixed)
        col.update(zip(free, combo))
        term = 1.0 + 0.0j
        for u, w in g.edges():
            term *= A[col[u], col[w]]
        if xi is not None:
            for v in range(g.n):
                term *= xi[v][col[v]]
        total += term
    return total


def brute_connected(g, subset):
    """Union-find connectivity of the induced subgraph on `subset`."""
    subset = list(subset)
    if not subset:
        return False
    parent = {v: v for v in subset}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    inside = set(subset)
    for u in subset:
        for w in g.adj[u]:
            if w in inside:
                parent[find(u)] = find(w)
    return len({find(v) for v in subset}) == 1


def series_quotient(num, den, order):
    """Taylor coefficients of num(z)/den(z) through `order`, den[0] != 0."""
    num = list(num) + [0.0] * (order + 1)
    den = list(den) + [0.0] * (order + 1)
    out = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, k + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out
