"""Seeded graph family generators for the scan harness."""

import networkx as nx

from .graphs import from_edges


def _from_networkx(h):
    nodes = sorted(h.nodes())
    idx = {u: k for k, u in enumerate(nodes)}
    return from_edges(len(nodes), [(idx[u], idx[w]) for u, w in h.edges()])


def path_graph(n):
    return from_edges(n, [(k, k + 1) for k in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return from_edges(n, [(k, (k + 1) % n) for k in range(n)])


def grid_graph(rows, cols):
    def idx(i, j):
        return i * cols + j

    edges = []
    for i in range(rows):
        for j in range(cols):
            if i + 1 < rows:
                edges.append((idx(i, j), idx(i + 1, j)))
            if j + 1 < cols:
                edges.append((idx(i, j), idx(i, j + 1)))
    return from_edges(rows * cols, edges)


def random_regular_graph(degree, n, seed=0):
    return _from_networkx(nx.random_regular_graph(degree, n, seed=seed))


def line_graph_of_random_regular(degree, n, seed=0):
    base = nx.random_regular_graph(degree, n, seed=seed)
    return _from_networkx(nx.line_graph(base))


FAMILY_KINDS = ("path", "cycle", "grid", "random_regular", "line_graph_of_random_regular")


def generate_family(kind, params, seed=0):
    """Build a list of graphs of the named kind.

    params:
      path / cycle: {"n": int} or {"sizes": [int, ...]}
      grid:         {"rows": int, "cols": int}
      random_regular / line_graph_of_random_regular:
                    {"degree": int, "n": int, "count": int (default 1)}

    Randomized kinds derive instance j from (seed + j), so a fixed seed
    reproduces the family.
    """
    if kind in ("path", "cycle"):
        sizes = params["sizes"] if "sizes" in params else [params["n"]]
        builder = path_graph if kind == "path" else cycle_graph
        return [builder(n) for n in sizes]
    if kind == "grid":
        return [grid_graph(params["rows"], params["cols"])]
    if kind == "random_regular":
        count = params.get("count", 1)
        return [
            random_regular_graph(params["degree"], params["n"], seed=seed + j)
            for j in range(count)
        ]
    if kind == "line_graph_of_random_regular":
        count = params.get("count", 1)
        return [
            line_graph_of_random_regular(params["degree"], params["n"], seed=seed + j)
            for j in range(count)
        ]
    raise ValueError(f"unknown family kind {kind!r}; expected one of {FAMILY_KINDS}")
