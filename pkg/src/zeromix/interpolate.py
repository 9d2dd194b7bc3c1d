"""Certified truncation via conformal maps.

If f is analytic and bounded by M on the closed disk of radius r > 1, its
Taylor coefficients satisfy |a_k| <= M / r^k, so the partial sum through
order N - 1 is within M / ((r - 1) r^N) of f(1).  We apply this to
f(z) = P(lam * g(z)) where P is an occupation ratio and g maps the disk
into a thin zero-free neighborhood of [0, 1]:

  strip map   g(z) = eps * log(1 / (1 - alpha z)),  alpha = 1 - e^(-1/eps),
              r = (1 - e^(-1 - 1/eps)) / (1 - e^(-1/eps));
              image inside the eps-neighborhood... of [0, 1] of width 2 eps.

  sector map  h(z) = delta / (1 - zeta z)^2 - delta,
              zeta = 1 - sqrt(delta / (1 + delta)), r = 1 + sqrt(delta);
              image avoids the real ray left of -3 delta / 4, so it suits
              graphs whose partition-function zeros are real and negative.

Both maps send 0 to 0 and 1 to 1 and have explicit Taylor coefficients.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import (
    BoundaryError,
    TruncationDepthError,
    ZeroRegionViolationError,
)
from .exact import NEAR_ZERO_REL, ind_poly
from .graphs import apply_hardcore_boundary, remove_vertices
from .series import PowerSeries

DEFAULT_MAX_DEPTH = 64
DEFAULT_SAMPLES = 256


@dataclass(frozen=True)
class StripSpec:
    """Strip map parameters; eps is the half-width of the target neighborhood
    of [0, 1] (the image sits in the width-2*eps neighborhood)."""

    eps: float

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")

    @property
    def alpha(self):
        return 1.0 - math.exp(-1.0 / self.eps)

    @property
    def r(self):
        return (1.0 - math.exp(-1.0 - 1.0 / self.eps)) / self.alpha


@dataclass(frozen=True)
class SectorSpec:
    """Sector map parameters; the image avoids reals <= -3*delta/4."""

    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")

    @property
    def zeta(self):
        return 1.0 - math.sqrt(self.delta / (1.0 + self.delta))

    @property
    def r(self):
        return 1.0 + math.sqrt(self.delta)


@dataclass(frozen=True)
class ApproxResult:
    """Certified approximation: |true - value| <= error_bound, where
    error_bound = bound_M / ((rate_r - 1) * rate_r**depth_used)."""

    value: float
    error_bound: float
    depth_used: int
    bound_M: float
    rate_r: float


def g_series(spec, order):
    """Taylor coefficients of the strip map: eps * alpha^k / k."""
    a = spec.alpha
    cs = [0j] + [spec.eps * a**k / k for k in range(1, order + 1)]
    return PowerSeries(tuple(cs))


def g_point(spec, z):
    # 1 - alpha*z written as (1 - z) + z*e^{-1/eps}: forming alpha first
    # cancels catastrophically near z = 1 for narrow strips
    return -spec.eps * cmath.log((1.0 - z) + z * math.exp(-1.0 / spec.eps))


def g_inverse(spec, w):
    """Inverse of the strip map where defined: z with g(z) = w."""
    return (1.0 - cmath.exp(-w / spec.eps)) / spec.alpha


def h_series(spec, order):
    """Taylor coefficients of the sector map: delta * (k + 1) * zeta^k for
    k >= 1, constant term 0."""
    z = spec.zeta
    cs = [0j] + [spec.delta * (k + 1) * z**k for k in range(1, order + 1)]
    return PowerSeries(tuple(cs))


def h_point(spec, z):
    return spec.delta / (1.0 - spec.zeta * z) ** 2 - spec.delta


def h_inverse_candidates(spec, w):
    """Both preimages of w under the sector map."""
    s = cmath.sqrt(spec.delta / (w + spec.delta))
    return ((1.0 - s) / spec.zeta, (1.0 + s) / spec.zeta)


def tail_bound(M, r, n):
    """Cauchy tail bound M / ((r - 1) r^n) for an analytic function bounded
    by M on the closed disk of radius r > 1."""
    if not r > 1:
        raise ValueError(f"need r > 1, got {r}")
    if M < 0:
        raise ValueError(f"need M >= 0, got {M}")
    return M / ((r - 1.0) * r**n)


def gap_bound_hardcore(M, r, d):
    """Bound 2 M / ((r - 1) r^(d - 1)) on the difference of two conditional
    probabilities whose boundary conditions agree within distance d."""
    if d < 1:
        raise ValueError(f"need disagreement distance >= 1, got {d}")
    return 2.0 * tail_bound(M, r, d - 1)


def gap_bound_hom(M, r, d):
    """Homomorphism analogue; series agree through order d, giving
    2 M / ((r - 1) r^d)."""
    if d < 0:
        raise ValueError(f"need disagreement distance >= 0, got {d}")
    return 2.0 * tail_bound(M, r, d)


def _map_point(spec, z):
    if isinstance(spec, StripSpec):
        return g_point(spec, z)
    if isinstance(spec, SectorSpec):
        return h_point(spec, z)
    raise TypeError(f"unsupported map spec {spec!r}")


def estimate_M(g, v, lam, spec, samples=DEFAULT_SAMPLES):
    """Empirical bound on |P_{g,v}(lam * map(z))| over |z| = r.

    Samples the circle uniformly and returns 1.5x the observed maximum.
    Raises ZeroRegionViolationError if Z vanishes to working precision at a
    sampled point.
    """
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    den_poly = ind_poly(g)
    closed = set(g.adj[v]) | {v}
    h, _ = remove_vertices(g, closed)
    num_poly = ind_poly(h)
    r = spec.r
    best = 0.0
    for j in range(samples):
        z = r * cmath.exp(2j * math.pi * j / samples)
        w = lam * _map_point(spec, z)
        num = w * num_poly(w)
        den = den_poly(w)
        if abs(den) <= NEAR_ZERO_REL * (1.0 + abs(num)):
            raise ZeroRegionViolationError(
                f"partition function vanishes at sampled activity {w}", point=w
            )
        mag = abs(num / den)
        if mag > best:
            best = mag
    return 1.5 * best


def _zeros_in_strip_disk(g, spec, lam, margin=0.0):
    """Activity-space zeros of Z_g that pull back into the closed disk of
    radius r * (1 + margin) under the strip map scaled by lam."""
    hits = []
    r = spec.r * (1.0 + margin)
    for rho in ind_poly(g).roots():
        rho = complex(rho)
        try:
            z = g_inverse(spec, rho / lam)
        except OverflowError:
            # exp(-w/eps) overflows only when the preimage is astronomically
            # far outside the disk
            continue
        if abs(z) <= r:
            # guard against branch wrap of the closed-form inverse
            if abs(lam * g_point(spec, z) - rho) <= 1e-9 * (1.0 + abs(rho)):
                hits.append(rho)
    return hits


def _depth_for(M, r, eps_target):
    if M <= 0:
        return 1
    n = math.log(M / ((r - 1.0) * eps_target)) / math.log(r)
    n = max(1, math.ceil(n))
    while tail_bound(M, r, n) > eps_target:
        n += 1
    return n


EPS_LADDER = (2.5, 2.0, 1.6, 1.25, 1.0, 0.8, 0.6, 0.45, 0.35, 0.25, 0.18, 0.12, 0.08, 0.05)


def choose_strip_spec(
    g,
    v,
    lam,
    eps_target,
    max_depth=DEFAULT_MAX_DEPTH,
    samples=DEFAULT_SAMPLES,
    ladder=EPS_LADDER,
):
    """Pick a strip width whose disk clears the zeros of Z_g with margin and
    whose certified depth fits under max_depth.  Wider strips give faster
    rates, so the ladder is walked widest-first."""
    best_required = None
    nearest = None
    for eps in ladder:
        spec = StripSpec(eps)
        hits = _zeros_in_strip_disk(g, spec, lam, margin=0.05)
        if hits:
            nearest = hits[0]
            continue
        try:
            M = estimate_M(g, v, lam, spec, samples=samples)
        except ZeroRegionViolationError as exc:
            nearest = exc.point
            continue
        n = _depth_for(M, spec.r, eps_target)
        if n <= max_depth:
            return spec
        if best_required is None or n < best_required:
            best_required = n
    if best_required is not None:
        raise TruncationDepthError(
            f"no strip width reaches the target within depth {max_depth}",
            required=best_required,
            cap=max_depth,
        )
    raise ZeroRegionViolationError(
        "every candidate strip disk contains a partition-function zero",
        point=nearest,
    )


def approx_cond_prob(
    g,
    v,
    sigma,
    lam,
    eps_target,
    spec=None,
    samples=DEFAULT_SAMPLES,
    max_depth=DEFAULT_MAX_DEPTH,
):
    """Conditional occupation probability with a certified error bound.

    Reduces by the boundary, verifies the scaled strip image is zero-free
    (exactly, by pulling the zeros of Z back through the map), bounds
    P(lam * g(z)) on |z| = r by sampling, truncates the composed Taylor
    series at the smallest depth whose tail bound meets eps_target, and
    returns the partial sum at z = 1 with that bound.
    """
    if not (isinstance(lam, (int, float)) and lam > 0):
        raise ValueError(f"activity must be a positive real, got {lam!r}")
    if not eps_target > 0:
        raise ValueError(f"error target must be positive, got {eps_target}")
    if spec is not None and not isinstance(spec, StripSpec):
        raise TypeError("approx_cond_prob runs on the strip map; pass a StripSpec")
    sigma.validate(g)
    if v in sigma.region:
        raise BoundaryError(f"vertex {v} lies in the boundary region")

    h, mapping = apply_hardcore_boundary(g, sigma)
    if v not in mapping:
        # v is adjacent to an occupied boundary vertex: exactly zero
        r = spec.r if spec is not None else 2.0
        return ApproxResult(0.0, 0.0, 0, 0.0, r)
    vv = mapping[v]

    if spec is None:
        spec = choose_strip_spec(h, vv, lam, eps_target, max_depth=max_depth, samples=samples)
    else:
        hits = _zeros_in_strip_disk(h, spec, lam)
        if hits:
            raise ZeroRegionViolationError(
                f"partition-function zero {hits[0]} lies in the scaled strip image",
                point=hits[0],
            )

    M = estimate_M(h, vv, lam, spec, samples=samples)
    r = spec.r
    n = _depth_for(M, r, eps_target)
    if n > max_depth:
        raise TruncationDepthError(
            f"certified depth {n} exceeds the cap {max_depth}", required=n, cap=max_depth
        )

    from .cluster import ratio_series_division

    p = ratio_series_division(h, vv, order=n - 1, max_vertices=None)
    scaled = PowerSeries(tuple(c * lam**k for k, c in enumerate(p.coeffs)))
    comp = scaled.compose(g_series(spec, n - 1))
    value = comp.partial_sum()
    return ApproxResult(value.real, tail_bound(M, r, n), n, M, r)
