"""Exact partition-function oracles.

Everything here is exact brute force: independence polynomials by the
deletion recurrence Z(G) = Z(G - v) + w_v Z(G - N[v]) with memoized
sub-states and component factorization, homomorphism sums by direct
enumeration of colorings.  Integer coefficients are exact (Python ints);
complex evaluations are plain double-precision arithmetic.

Brute-force limits are arguments with defaults, not hard constants, so
callers can pin or extend them.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryError, NearZeroDenominatorError, SizeLimitError
from .graphs import apply_hardcore_boundary

DEFAULT_MAX_VERTICES = 40
DEFAULT_MAX_SUMMANDS = 1 << 24

# |den| <= NEAR_ZERO_REL * (1 + |num|) counts as a zero denominator.
NEAR_ZERO_REL = 1e-12

ComplexValue = complex


@dataclass(frozen=True)
class IndPoly:
    """Independence polynomial: coeffs[k] counts independent sets of size k."""

    coeffs: tuple

    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative_at(self, z):
        acc = 0j
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * z + k * self.coeffs[k]
        return acc

    def roots(self):
        return np.roots([float(c) for c in reversed(self.coeffs)])


def _neighbor_masks(g):
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _components_of_mask(nbr, mask):
    comps = []
    rem = mask
    while rem:
        seed = rem & -rem
        comp = seed
        frontier = seed
        while frontier:
            grown = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                grown |= nbr[b.bit_length() - 1]
            grown &= mask & ~comp
            comp |= grown
            frontier = grown
        comps.append(comp)
        rem &= ~comp
    return comps


def _poly_add_shift(out_part, in_part):
    # out_part + lam * in_part
    n = max(len(out_part), len(in_part) + 1)
    res = [0] * n
    for i, c in enumerate(out_part):
        res[i] += c
    for i, c in enumerate(in_part):
        res[i + 1] += c
    return tuple(res)


def _poly_mul(a, b):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return tuple(res)


def _pivot(nbr, mask):
    best, best_deg = -1, -1
    m = mask
    while m:
        b = m & -m
        m ^= b
        v = b.bit_length() - 1
        d = (nbr[v] & mask).bit_count()
        if d > best_deg:
            best, best_deg = v, d
    return best


def _ind_poly_mask(nbr, root, memo):
    # explicit work stack: the deletion recurrence removes one pivot per
    # level, so plain recursion would be as deep as the vertex count
    memo[0] = (1,)
    stack = [root]
    while stack:
        mask = stack[-1]
        if mask in memo:
            stack.pop()
            continue
        comps = _components_of_mask(nbr, mask)
        if len(comps) > 1:
            deps = comps
            split = True
        else:
            v = _pivot(nbr, mask)
            bit = 1 << v
            deps = (mask & ~bit, mask & ~(nbr[v] | bit))
            split = False
        missing = [d for d in deps if d not in memo]
        if missing:
            stack.extend(missing)
            continue
        if split:
            res = (1,)
            for comp in deps:
                res = _poly_mul(res, memo[comp])
        else:
            res = _poly_add_shift(memo[deps[0]], memo[deps[1]])
        memo[mask] = res
        stack.pop()
    return memo[root]


@functools.lru_cache(maxsize=512)
def _ind_poly_cached(g):
    nbr = _neighbor_masks(g)
    return _ind_poly_mask(nbr, (1 << g.n) - 1, {})


def ind_poly(g, max_vertices=DEFAULT_MAX_VERTICES):
    """Independence polynomial of g with exact integer coefficients."""
    if max_vertices is not None and g.n > max_vertices:
        raise SizeLimitError(f"graph has {g.n} vertices, limit is {max_vertices}")
    return IndPoly(_ind_poly_cached(g))


def iter_independent_sets(g):
    """Yield every independent set of g as a vertex bitmask, by plain
    in/out branching with no caching.  Exponential; for cross-checks."""

    nbr = _neighbor_masks(g)

    def rec(v, blocked, acc):
        if v == g.n:
            yield acc
            return
        yield from rec(v + 1, blocked, acc)
        if not (blocked >> v) & 1:
            yield from rec(v + 1, blocked | nbr[v], acc | (1 << v))

    yield from rec(0, 0, 0)


def eval_Z(g, lam, max_vertices=DEFAULT_MAX_VERTICES):
    """Partition function Z_g(lam) = sum over independent sets of lam^|I|."""
    p = ind_poly(g, max_vertices=max_vertices)
    if isinstance(lam, complex):
        return p(lam)
    return complex(p(complex(lam)))


def multivariate_Z(g, weights, max_vertices=DEFAULT_MAX_VERTICES):
    """Z_g(w) = sum over independent sets of prod_{v in I} w_v.

    weights is a sequence of per-vertex complex numbers (length g.n).
    """
    if max_vertices is not None and g.n > max_vertices:
        raise SizeLimitError(f"graph has {g.n} vertices, limit is {max_vertices}")
    if len(weights) != g.n:
        raise ValueError(f"need {g.n} weights, got {len(weights)}")
    w = [complex(x) for x in weights]
    nbr = _neighbor_masks(g)
    memo = {0: 1.0 + 0j}
    root = (1 << g.n) - 1
    stack = [root]
    while stack:
        mask = stack[-1]
        if mask in memo:
            stack.pop()
            continue
        comps = _components_of_mask(nbr, mask)
        if len(comps) > 1:
            deps = comps
            pivot = None
        else:
            pivot = _pivot(nbr, mask)
            bit = 1 << pivot
            deps = (mask & ~bit, mask & ~(nbr[pivot] | bit))
        missing = [d for d in deps if d not in memo]
        if missing:
            stack.extend(missing)
            continue
        if pivot is None:
            res = 1.0 + 0j
            for comp in deps:
                res *= memo[comp]
        else:
            res = memo[deps[0]] + w[pivot] * memo[deps[1]]
        memo[mask] = res
        stack.pop()
    return memo[root]


def _checked_ratio(num, den, point):
    if abs(den) <= NEAR_ZERO_REL * (1.0 + abs(num)):
        raise NearZeroDenominatorError(
            f"denominator |Z| = {abs(den):.3e} is zero to working precision",
            abs_denominator=abs(den),
            point=point,
        )
    return num / den


def ratio_P(g, v, lam, max_vertices=DEFAULT_MAX_VERTICES):
    """Occupation ratio lam * Z_{g - N[v]}(lam) / Z_g(lam).

    For real lam > 0 this is the probability that v is occupied.
    """
    from .graphs import remove_vertices

    closed = set(g.adj[v]) | {v}
    h, _ = remove_vertices(g, closed)
    num = lam * eval_Z(h, lam, max_vertices=max_vertices)
    den = eval_Z(g, lam, max_vertices=max_vertices)
    return _checked_ratio(num, den, lam)


def ratio_R(g, v, lam, max_vertices=DEFAULT_MAX_VERTICES):
    """Odds ratio lam * Z_{g - N[v]}(lam) / Z_{g - v}(lam); P = R / (1 + R)."""
    from .graphs import remove_vertices

    closed = set(g.adj[v]) | {v}
    h, _ = remove_vertices(g, closed)
    gv, _ = remove_vertices(g, {v})
    num = lam * eval_Z(h, lam, max_vertices=max_vertices)
    den = eval_Z(gv, lam, max_vertices=max_vertices)
    return _checked_ratio(num, den, lam)


def cond_prob_hardcore(g, v, sigma, lam, method="ratio", max_vertices=DEFAULT_MAX_VERTICES):
    """Probability that v is occupied under the hard-core measure at
    activity lam, conditioned on the boundary condition sigma.

    method="ratio" reduces by the boundary and evaluates the occupation
    ratio of the reduced graph; method="enumerate" sums over all
    independent sets of g consistent with sigma.  Both are exact and agree.
    """
    if not (isinstance(lam, (int, float)) and lam > 0):
        raise ValueError(f"activity must be a positive real, got {lam!r}")
    sigma.validate(g)
    if v in sigma.region:
        raise BoundaryError(f"vertex {v} lies in the boundary region")
    ins = sigma.in_vertices()
    if any(w in ins for w in g.adj[v]):
        return 0.0

    if method == "ratio":
        h, mapping = apply_hardcore_boundary(g, sigma)
        p = ratio_P(h, mapping[v], complex(lam), max_vertices=max_vertices)
        return p.real
    if method == "enumerate":
        if g.n > 25:
            raise SizeLimitError(f"enumeration route capped at 25 vertices, got {g.n}")
        in_mask = sum(1 << u for u in ins)
        out_mask = sum(1 << u for u in sigma.region if sigma.assignment[u] == 0)
        vbit = 1 << v
        total = 0.0
        occupied = 0.0
        for mask in iter_independent_sets(g):
            if mask & in_mask != in_mask or mask & out_mask:
                continue
            weight = lam ** mask.bit_count()
            total += weight
            if mask & vbit:
                occupied += weight
        return _checked_ratio(occupied, total, lam).real
    raise ValueError(f"unknown method {method!r}")


# --- homomorphism sums ---------------------------------------------------


def _as_matrix(A):
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"symbol matrix must be square, got shape {M.shape}")
    return M


def _coloring_chunks(nfree, q, chunk=1 << 15):
    total = q**nfree
    powers = q ** np.arange(nfree - 1, -1, -1, dtype=np.int64) if nfree else None
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        if nfree:
            yield (idx[:, None] // powers) % q
        else:
            yield np.zeros((len(idx), 0), dtype=np.int64)


def _hom_sum(n, edges, q, edge_factor, xi, fixed, max_summands):
    """Sum over colorings of 0..n-1 extending `fixed` of
    prod_v xi[v, c_v] * prod_e edge_factor(e, c_u, c_w)."""
    free = [v for v in range(n) if v not in fixed]
    if q ** len(free) > max_summands:
        raise SizeLimitError(
            f"{q}^{len(free)} colorings exceed the summand limit {max_summands}"
        )
    total = 0j
    for digits in _coloring_chunks(len(free), q):
        rows = digits.shape[0]
        colors = np.empty((rows, n), dtype=np.int64)
        for v, c in fixed.items():
            colors[:, v] = c
        for j, v in enumerate(free):
            colors[:, v] = digits[:, j]
        fac = np.ones(rows, dtype=complex)
        if xi is not None:
            for v in range(n):
                fac *= xi[v, colors[:, v]]
        for e, (u, w) in enumerate(edges):
            fac *= edge_factor(e, colors[:, u], colors[:, w])
        total += fac.sum()
    return total


def hom_Z(g, A, xi=None, sigma=None, max_summands=DEFAULT_MAX_SUMMANDS):
    """Homomorphism partition function
    Z^sigma_g(A, xi) = sum_{colorings extending sigma} prod_v xi_{v,c(v)}
    prod_{(u,w) in E} A_{c(u),c(w)}.

    A is a q x q matrix; xi an optional n x q vertex-weight array (all ones
    when omitted); sigma an optional SpinBoundary pinning some colors.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    fixed = {}
    if sigma is not None:
        if sigma.q != q:
            raise BoundaryError(f"boundary has q={sigma.q}, matrix has q={q}")
        sigma.validate(g)
        fixed = dict(sigma.assignment)
    if xi is not None:
        xi = np.asarray(xi, dtype=complex)
        if xi.shape != (g.n, q):
            raise ValueError(f"xi must have shape ({g.n}, {q}), got {xi.shape}")
    edges = g.edges()
    return _hom_sum(g.n, edges, q, lambda e, cu, cw: A[cu, cw], xi, fixed, max_summands)


def edge_matrix_Z(g, matrices, xi=None, sigma=None, max_summands=DEFAULT_MAX_SUMMANDS):
    """Homomorphism sum with one matrix per edge.

    matrices maps each lexicographically oriented edge (u, w), u < w, to its
    own q x q matrix; the factor for that edge is M[c(u), c(w)].
    """
    edges = g.edges()
    mats = {}
    for e in edges:
        if e not in matrices:
            raise ValueError(f"missing matrix for edge {e}")
        mats[e] = _as_matrix(matrices[e])
    if len(matrices) != len(edges):
        extra = set(matrices) - set(edges)
        raise ValueError(f"matrices given for non-edges: {sorted(extra)}")
    qs = {m.shape[0] for m in mats.values()}
    if len(qs) > 1:
        raise ValueError(f"edge matrices disagree on q: {sorted(qs)}")
    q = qs.pop() if qs else 1
    fixed = {}
    if sigma is not None:
        if sigma.q != q:
            raise BoundaryError(f"boundary has q={sigma.q}, matrices have q={q}")
        sigma.validate(g)
        fixed = dict(sigma.assignment)
    if xi is not None:
        xi = np.asarray(xi, dtype=complex)
        if xi.shape != (g.n, q):
            raise ValueError(f"xi must have shape ({g.n}, {q}), got {xi.shape}")
    ordered = [mats[e] for e in edges]
    return _hom_sum(
        g.n, edges, q, lambda e, cu, cw: ordered[e][cu, cw], xi, fixed, max_summands
    )


def hom_ratio(g, v, i, sigma, A, z, xi=None, max_summands=DEFAULT_MAX_SUMMANDS):
    """Conditional color ratio Z^{sigma, v->i}(J + z(A - J)) / Z^sigma(J + z(A - J)).

    At z = 1 and real nonnegative data this is the probability that v gets
    color i given sigma; at z = 0 it is exactly 1/q.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    M = np.ones((q, q), dtype=complex) + z * (A - np.ones((q, q)))
    num = hom_Z(g, M, xi=xi, sigma=sigma.extended(v, i), max_summands=max_summands)
    den = hom_Z(g, M, xi=xi, sigma=sigma, max_summands=max_summands)
    return _checked_ratio(num, den, z)


def hom_Z_poly(g, A, sigma=None, max_summands=DEFAULT_MAX_SUMMANDS):
    """Coefficients (in z, constant first) of Z^sigma_g(J + z(A - J)).

    The polynomial has degree |E(g)|; extracting it once makes repeated
    evaluation over many z cheap.
    """
    A = _as_matrix(A)
    q = A.shape[0]
    fixed = {}
    if sigma is not None:
        if sigma.q != q:
            raise BoundaryError(f"boundary has q={sigma.q}, matrix has q={q}")
        sigma.validate(g)
        fixed = dict(sigma.assignment)
    edges = g.edges()
    m = len(edges)
    free = [v for v in range(g.n) if v not in fixed]
    if q ** len(free) > max_summands:
        raise SizeLimitError(
            f"{q}^{len(free)} colorings exceed the summand limit {max_summands}"
        )
    C = A - np.ones((q, q), dtype=complex)
    total = np.zeros(m + 1, dtype=complex)
    for digits in _coloring_chunks(len(free), q):
        rows = digits.shape[0]
        colors = np.empty((rows, g.n), dtype=np.int64)
        for v, c in fixed.items():
            colors[:, v] = c
        for j, v in enumerate(free):
            colors[:, v] = digits[:, j]
        P = np.zeros((rows, m + 1), dtype=complex)
        P[:, 0] = 1.0
        for e, (u, w) in enumerate(edges):
            c = C[colors[:, u], colors[:, w]]
            for j in range(e + 1, 0, -1):
                P[:, j] += c * P[:, j - 1]
        total += P.sum(axis=0)
    return total


def eval_poly(coeffs, z):
    """Horner evaluation of a coefficient sequence (constant first)."""
    acc = 0j
    for c in reversed(list(coeffs)):
        acc = acc * z + c
    return acc
