"""Deterministic graph families for tests and benchmarks.

Vertices are labelled ``1..n``.  Families that are bipartite by construction
come with side declarations.
"""

from __future__ import annotations

import networkx as nx
import numpy as np

from .graphs import Graph

__all__ = ["FAMILIES", "generate", "path", "cycle", "grid", "halfgraph", "matching", "random_bipartite", "random_regular"]


def _graph(n: int, edges, sides=None) -> Graph:
    return Graph.from_edges(n, edges, sides=None if sides is None else np.asarray(sides, dtype=np.int8))


def path(n: int) -> Graph:
    return _graph(n, [(i, i + 1) for i in range(n - 1)], [i % 2 for i in range(n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return _graph(n, edges, [i % 2 for i in range(n)] if n % 2 == 0 else None)


def grid(w: int, h: int) -> Graph:
    at = lambda x, y: y * w + x  # noqa: E731
    edges = [(at(x, y), at(x + 1, y)) for y in range(h) for x in range(w - 1)]
    edges += [(at(x, y), at(x, y + 1)) for y in range(h - 1) for x in range(w)]
    return _graph(w * h, edges, [(x + y) % 2 for y in range(h) for x in range(w)])


def halfgraph(t: int) -> Graph:
    """``u_i`` is vertex ``i`` (left), ``v_j`` is vertex ``t+j`` (right); ``u_i ~ v_j`` iff ``i <= j``."""
    edges = [(i, t + j) for i in range(t) for j in range(i, t)]
    return _graph(2 * t, edges, [0] * t + [1] * t)


def matching(n: int) -> Graph:
    return _graph(2 * n, [(2 * i, 2 * i + 1) for i in range(n)], [0, 1] * n)


def random_bipartite(n: int, m: int, p: float, seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    hit = rng.random((n, m)) < p
    edges = [(i, n + j) for i, j in zip(*np.nonzero(hit))]
    return _graph(n + m, edges, [0] * n + [1] * m)


def random_regular(n: int, d: int, seed: int = 0) -> Graph:
    G = nx.random_regular_graph(d, n, seed=seed)
    return _graph(n, [(int(u), int(v)) for u, v in G.edges()])


FAMILIES = {
    "path": (path, (int,)),
    "cycle": (cycle, (int,)),
    "grid": (grid, (int, int)),
    "halfgraph": (halfgraph, (int,)),
    "matching": (matching, (int,)),
    "random-bipartite": (random_bipartite, (int, int, float, int)),
    "random-regular": (random_regular, (int, int, int)),
}


def generate(family: str, *params, seed: int | None = None) -> Graph:
    """Build ``family`` from string or numeric ``params``; ``seed`` overrides a trailing seed."""
    try:
        fn, types = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    params = list(params)
    if seed is not None and types[-1] is int and family.startswith("random"):
        if len(params) == len(types):
            params[-1] = seed
        else:
            params.append(seed)
    if family.startswith("random") and len(params) == len(types) - 1:
        params.append(0)
    if len(params) != len(types):
        raise ValueError(f"{family} takes {len(types)} parameters, got {len(params)}")
    return fn(*(t(x) for t, x in zip(types, params)))
