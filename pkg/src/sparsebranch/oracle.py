"""Slow reference computations for testing: ladder index, near-twin pairs, bicliques.

Everything here works on plain Python sets and int bitmasks and is written
for clarity over speed.  None of it shares code with the fast paths it is
used to check.
"""

from __future__ import annotations

from itertools import combinations

from .graphs import BipartiteGraph, Graph

__all__ = ["ladder_index", "find_ladder", "min_near_twin_pair_bruteforce", "contains_biclique"]


def _masks(adj) -> tuple[list[int], list[int]]:
    rows = [0] * adj.shape[0]
    cols = [0] * adj.shape[1]
    for i, j in zip(*adj.nonzero()):
        rows[i] |= 1 << int(j)
        cols[j] |= 1 << int(i)
    return rows, cols


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _longest_ladder(adj, cap: int) -> list[tuple[int, int]]:
    """Longest induced half-graph with the u's on the row side, up to ``cap``.

    A ladder ``(u_1,v_1),...,(u_t,v_t)`` has ``u_i ~ v_j`` iff ``i <= j``.  It is
    grown one pair at a time: the next ``v`` must be adjacent to every ``u``
    so far, the next ``u`` must avoid every ``v`` so far.
    """
    rows, cols = _masks(adj)
    best: list[tuple[int, int]] = []

    def grow(pairs, common, forbidden, used_v):
        nonlocal best
        if len(pairs) > len(best):
            best = list(pairs)
        if len(best) >= cap:
            return True
        cand = common & ~used_v
        if len(pairs) + cand.bit_count() <= len(best):
            return False
        for v in _bits(cand):
            for u in _bits(cols[v] & ~forbidden):
                pairs.append((u, v))
                if grow(pairs, common & rows[u], forbidden | cols[v], used_v | (1 << v)):
                    return True
                pairs.pop()
        return False

    for u1 in range(len(rows)):
        for v1 in _bits(rows[u1]):
            if grow([(u1, v1)], rows[u1], cols[v1], 1 << v1):
                return best
    return best


def find_ladder(bg: BipartiteGraph, cap: int = 6) -> list[tuple[int, int]]:
    """A longest induced half-graph (capped) as ``[(u_1, v_1), ...]`` vertex ids.

    Both orientations are searched; ties go to the u's-on-the-left one.
    """
    if cap <= 0:
        return []
    a = _longest_ladder(bg.adj, cap)
    b = _longest_ladder(bg.adj.T, cap) if len(a) < cap else []
    if len(b) > len(a):
        return [(int(bg.right[u]), int(bg.left[v])) for u, v in b]
    return [(int(bg.left[u]), int(bg.right[v])) for u, v in a]


def ladder_index(bg: BipartiteGraph, cap: int = 6) -> int:
    """Largest ``t <= cap`` such that ``bg`` has an induced half-graph of order ``t``."""
    return len(find_ladder(bg, cap))


def min_near_twin_pair_bruteforce(bg: BipartiteGraph, side: str = "L") -> tuple[int, int, int]:
    """Pair ``(u, v, k)``, ``u < v``, on ``side`` minimising ``|N(u) ^ N(v)|``.

    Ties go to the lexicographically smallest ``(u, v)``.
    """
    if side not in ("L", "R"):
        raise ValueError("side must be 'L' or 'R'")
    g = bg if side == "L" else bg.swap()
    ids = [int(x) for x in g.left]
    if len(ids) < 2:
        raise ValueError(f"side {side} has fewer than two vertices")
    nbrs = {v: {int(w) for w in g.neighbors(v)} for v in ids}
    best = None
    for u, v in combinations(sorted(ids), 2):
        k = len(nbrs[u] ^ nbrs[v])
        if best is None or k < best[2]:
            best = (u, v, k)
    return best


def contains_biclique(g: Graph, h: int) -> bool:
    """Whether ``g`` has ``K_{h,h}`` as a (not necessarily induced) subgraph."""
    if h <= 0:
        return True
    nbrs = [{int(w) for w in g.neighbors(v)} for v in range(g.n)]
    heavy = [v for v in range(g.n) if len(nbrs[v]) >= h]

    def extend(chosen_from: int, size: int, common: set[int]) -> bool:
        if len(common) < h:
            return False
        if size == h:
            return True
        for i in range(chosen_from, len(heavy)):
            v = heavy[i]
            if extend(i + 1, size + 1, common & nbrs[v]):
                return True
        return False

    return any(extend(i + 1, 1, nbrs[v]) for i, v in enumerate(heavy))
