"""Finite simple graphs and boundary conditions.

Vertices are always the dense range 0..n-1.  Operations that delete vertices
return both the new graph and the old->new index mapping, so callers can
track a distinguished vertex through the relabeling.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BoundaryError, GraphParseError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1 with sorted adjacency tuples."""

    n: int
    adj: tuple  # tuple of tuples, adj[v] sorted, symmetric, no self-loops

    def degree(self, v):
        return len(self.adj[v])

    def max_degree(self):
        return max((len(a) for a in self.adj), default=0)

    def edges(self):
        """Edges as (u, w) with u < w, in lexicographic order."""
        return [(u, w) for u in range(self.n) for w in self.adj[u] if u < w]

    def num_edges(self):
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u, w):
        return w in self.adj[u]

    def neighbors(self, v):
        return self.adj[v]


def from_edges(n, edges):
    """Build a Graph from an iterable of (u, w) pairs; duplicates collapse."""
    if n < 0:
        raise GraphParseError(f"negative vertex count {n}")
    nbrs = [set() for _ in range(n)]
    for u, w in edges:
        if not (0 <= u < n and 0 <= w < n):
            raise GraphParseError(f"edge ({u}, {w}) out of range for n={n}")
        if u == w:
            raise GraphParseError(f"self-loop at vertex {u}")
        nbrs[u].add(w)
        nbrs[w].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def parse_graph(text):
    """Parse the edge-list format: a vertex-count line, then one "u w" line per edge.

    Blank lines are skipped.  Malformed lines, self-loops, and out-of-range
    indices raise GraphParseError naming the 1-based line.
    """
    lines = text.splitlines()
    n = None
    edges = []
    for i, raw in enumerate(lines, start=1):
        parts = raw.split()
        if not parts:
            continue
        if n is None:
            if len(parts) != 1:
                raise GraphParseError(f"expected a lone vertex count, got {raw!r}", line=i)
            try:
                n = int(parts[0])
            except ValueError:
                raise GraphParseError(f"vertex count is not an integer: {parts[0]!r}", line=i)
            if n < 0:
                raise GraphParseError(f"negative vertex count {n}", line=i)
            continue
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u w', got {raw!r}", line=i)
        try:
            u, w = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer endpoint in {raw!r}", line=i)
        if u == w:
            raise GraphParseError(f"self-loop at vertex {u}", line=i)
        if not (0 <= u < n and 0 <= w < n):
            raise GraphParseError(f"vertex index out of range 0..{n - 1} in {raw!r}", line=i)
        edges.append((u, w))
    if n is None:
        raise GraphParseError("empty input, expected a vertex count line")
    return from_edges(n, edges)


def format_graph(g):
    """Inverse of parse_graph."""
    out = [str(g.n)]
    out += [f"{u} {w}" for u, w in g.edges()]
    return "\n".join(out) + "\n"


def induced_subgraph(g, keep):
    """Induced subgraph on the vertex set `keep`, relabeled to 0..k-1 in
    sorted old-index order.  Returns (subgraph, mapping old->new)."""
    kept = sorted(keep)
    mapping = {v: i for i, v in enumerate(kept)}
    edges = [
        (mapping[u], mapping[w])
        for u in kept
        for w in g.adj[u]
        if u < w and w in mapping
    ]
    return from_edges(len(kept), edges), mapping


def remove_vertices(g, drop):
    """Delete a vertex set; returns (subgraph, mapping old->new)."""
    drop = set(drop)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def bfs_distances(g, source):
    """Distances from source (list; unreachable vertices get math.inf)."""
    dist = [math.inf] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if dist[w] is math.inf:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def ball(g, v, radius):
    """Vertex set at graph distance <= radius from v."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    dist = bfs_distances(g, v)
    return {u for u in range(g.n) if dist[u] <= radius}


def connected_components(g):
    """List of vertex sets, one per connected component."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    q.append(w)
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class HardcoreBoundary:
    """Occupancy boundary condition: a map from boundary vertices to {0, 1}.

    The in-set (preimage of 1) must be independent inside the boundary; that
    is checked against a concrete graph by validate(), since the boundary
    alone does not know the adjacency.
    """

    assignment: dict = field(default_factory=dict)

    def __post_init__(self):
        for v, s in self.assignment.items():
            if s not in (0, 1):
                raise BoundaryError(f"boundary value at vertex {v} must be 0 or 1, got {s!r}")

    @property
    def region(self):
        return frozenset(self.assignment)

    def in_vertices(self):
        return {v for v, s in self.assignment.items() if s == 1}

    def validate(self, g):
        for v in self.assignment:
            if not (0 <= v < g.n):
                raise BoundaryError(f"boundary vertex {v} not in graph with n={g.n}")
        ins = self.in_vertices()
        for u in ins:
            for w in g.adj[u]:
                if w in ins and u < w:
                    raise BoundaryError(f"in-set is not independent: edge ({u}, {w})")


@dataclass(frozen=True)
class SpinBoundary:
    """Color boundary condition: a map from boundary vertices to {0..q-1}."""

    assignment: dict
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise BoundaryError(f"need q >= 1, got {self.q}")
        for v, c in self.assignment.items():
            if not (0 <= c < self.q):
                raise BoundaryError(f"color at vertex {v} must lie in 0..{self.q - 1}, got {c!r}")

    @property
    def region(self):
        return frozenset(self.assignment)

    def validate(self, g):
        for v in self.assignment:
            if not (0 <= v < g.n):
                raise BoundaryError(f"boundary vertex {v} not in graph with n={g.n}")

    def extended(self, v, c):
        """New boundary also pinning vertex v to color c."""
        if v in self.assignment:
            raise BoundaryError(f"vertex {v} is already pinned")
        new = dict(self.assignment)
        new[v] = c
        return SpinBoundary(new, self.q)


def apply_hardcore_boundary(g, sigma):
    """Reduce a graph by an occupancy boundary.

    Deletes the boundary region, then additionally deletes every remaining
    vertex adjacent (in g) to an in-vertex: those sites are blocked.  Returns
    (reduced graph, mapping old->new); blocked vertices are absent from the
    mapping.
    """
    sigma.validate(g)
    drop = set(sigma.region)
    for u in sigma.in_vertices():
        drop.update(g.adj[u])
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def dist_to_disagreement(g, v, sigma, tau):
    """Graph distance from v to the nearest boundary vertex where the two
    boundary conditions differ; math.inf if they agree everywhere."""
    if sigma.region != tau.region:
        raise BoundaryError("boundary conditions have different regions")
    diff = {u for u in sigma.assignment if sigma.assignment[u] != tau.assignment[u]}
    if not diff:
        return math.inf
    dist = bfs_distances(g, v)
    return min(dist[u] for u in diff)


def is_claw_free(g):
    """True iff no vertex has three pairwise non-adjacent neighbors.

    Returns (flag, witness); witness is (center, (a, b, c)) for some claw
    when flag is False, else None.
    """
    for v in range(g.n):
        nbrs = g.adj[v]
        if len(nbrs) < 3:
            continue
        for a, b, c in combinations(nbrs, 3):
            if b not in g.adj[a] and c not in g.adj[a] and c not in g.adj[b]:
                return False, (v, (a, b, c))
    return True, None
