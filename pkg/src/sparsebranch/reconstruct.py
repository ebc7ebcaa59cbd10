"""Recover the graph from its sparse representation.

For ``u`` on the L side and ``v`` on the R side, take a node containing both
of them none of whose children does.  ``u`` and ``v`` are adjacent exactly
when that node sits at odd depth, i.e. its root path has an even number of
nodes.  The root contains everything, so such a node always exists.
"""

from __future__ import annotations

import numpy as np

from .graphs import Graph, ParseError
from .sparsifier import SparseRep, build_sparse_rep

__all__ = [
    "adjacent",
    "maximal_common_nodes",
    "reconstruct",
    "reconstruct_bipartite",
    "parity_conflicts",
    "verify_roundtrip",
]


def _sides(sr: SparseRep, u: int, v: int) -> tuple[int, int]:
    in_l = lambda x: bool(np.isin(x, sr.left))  # noqa: E731
    in_r = lambda x: bool(np.isin(x, sr.right))  # noqa: E731
    if in_l(u) and in_r(v):
        return u, v
    if in_r(u) and in_l(v):
        return v, u
    for x in (u, v):
        if not (in_l(x) or in_r(x)):
            raise ValueError(f"vertex {x} is not in the representation")
    raise ValueError(f"vertices {sr.label(u)} and {sr.label(v)} are on the same side")


def adjacent(sr: SparseRep, u: int, v: int) -> bool:
    """Adjacency of host vertices ``u`` and ``v`` read off the tree (first maximal node)."""
    u, v = _sides(sr, u, v)
    node = sr.root
    while True:
        nxt = next((c for c in node.children if sr.nodes[c].contains(u, v)), None)
        if nxt is None:
            return node.depth % 2 == 1
        node = sr.nodes[nxt]


def maximal_common_nodes(sr: SparseRep, u: int, v: int) -> list[int]:
    """Every node containing both ``u`` and ``v`` with no child that also does."""
    u, v = _sides(sr, u, v)
    found = []
    for node in sr.nodes:
        if node.contains(u, v) and not any(sr.nodes[c].contains(u, v) for c in node.children):
            found.append(node.id)
    return found


def _node_positions(sr: SparseRep):
    return [(np.searchsorted(sr.left, n.left), np.searchsorted(sr.right, n.right)) for n in sr.nodes]


def _within(parent: np.ndarray, child: np.ndarray, nid: int) -> np.ndarray:
    at = np.searchsorted(parent, child)
    if len(child) and ((at >= len(parent)).any() or (parent[np.minimum(at, len(parent) - 1)] != child).any()):
        raise ParseError(f"node {nid} has a vertex outside its parent")
    return at


def reconstruct_bipartite(sr: SparseRep) -> np.ndarray:
    """L x R adjacency matrix (rows follow ``sr.left``, columns ``sr.right``).

    Pairs are pushed down the tree, each to the first child containing it,
    so every pair ends at the same node :func:`adjacent` would pick.
    """
    pos = _node_positions(sr)
    out = np.zeros((len(sr.left), len(sr.right)), dtype=bool)
    stack = [(0, np.ones((len(pos[0][0]), len(pos[0][1])), dtype=bool))]
    while stack:
        nid, reach = stack.pop()
        node = sr.nodes[nid]
        li, ri = pos[nid]
        claimed = np.zeros_like(reach)
        for c in node.children:
            cl, cr = pos[c]
            a = _within(li, cl, c)
            b = _within(ri, cr, c)
            block = reach[np.ix_(a, b)] & ~claimed[np.ix_(a, b)]
            claimed[np.ix_(a, b)] |= block
            stack.append((c, block))
        if node.depth % 2:
            rest = reach & ~claimed
            if rest.any():
                out[np.ix_(li, ri)] |= rest
    return out


def parity_conflicts(sr: SparseRep) -> int:
    """Number of L x R pairs whose maximal common nodes disagree on the parity verdict."""
    pos = _node_positions(sr)
    say_adj = np.zeros((len(sr.left), len(sr.right)), dtype=bool)
    say_non = np.zeros_like(say_adj)
    for node, (li, ri) in zip(sr.nodes, pos):
        inner = np.zeros((len(li), len(ri)), dtype=bool)
        for c in node.children:
            cl, cr = pos[c]
            inner[np.ix_(np.searchsorted(li, cl), np.searchsorted(ri, cr))] = True
        maximal = ~inner
        target = say_adj if node.depth % 2 else say_non
        target[np.ix_(li, ri)] |= maximal
    return int(np.count_nonzero(say_adj & say_non))


def reconstruct(sr: SparseRep) -> Graph:
    """The graph encoded by ``sr``.

    Without a projection this is the bipartite host graph (with sides); with
    one, the original graph is read off the L and R copies: ``u ~ v`` iff
    ``(u,L)`` is adjacent to ``(v,R)``.
    """
    bip = reconstruct_bipartite(sr)
    if sr.projection is None:
        ids = np.concatenate([sr.left, sr.right])
        nl = len(sr.left)
        n = len(ids)
        adj = np.zeros((n, n), dtype=bool)
        adj[:nl, nl:] = bip
        adj[nl:, :nl] = bip.T
        sides = np.r_[np.zeros(nl, np.int8), np.ones(n - nl, np.int8)]
        return Graph(adj, [sr.labels[v] for v in ids.tolist()], sides)

    origin, role = sr.projection.origin, sr.projection.role
    n = len(sr.original_labels)
    lrows = {int(origin[v]): i for i, v in enumerate(sr.left.tolist()) if role[v] == "L"}
    rcols = {int(origin[v]): j for j, v in enumerate(sr.right.tolist()) if role[v] == "R"}
    if sorted(lrows) != list(range(n)) or sorted(rcols) != list(range(n)):
        raise ParseError("projection lacks an L or R copy of some vertex")
    rows = np.array([lrows[u] for u in range(n)], dtype=np.int64)
    cols = np.array([rcols[u] for u in range(n)], dtype=np.int64)
    adj = bip[np.ix_(rows, cols)]
    if not np.array_equal(adj, adj.T) or adj.diagonal().any():
        raise ParseError("L/R copies do not encode a simple undirected graph")
    return Graph(adj, sr.original_labels)


def verify_roundtrip(g: Graph, bipartite: bool = False) -> bool:
    """Whether reconstructing the representation of ``g`` gives back exactly ``g``."""
    return reconstruct(build_sparse_rep(g, bipartite=bipartite)).same_as(g)
