"""Leader partition of the right side of a bipartite graph.

Left vertices are eliminated one per round.  In each round the right
vertices still adjacent to the surviving left set are grouped into twin
classes, a closest pair of left vertices in the resulting quotient graph is
found (fewest classes on which their adjacency differs) and one of the two is
removed.  A class whose only surviving neighbour was the removed vertex is
*frozen* as a part, led by that vertex.  The parts partition the right side,
each part lies inside its leader's neighbourhood, and on structurally sparse
inputs every left vertex touches only a few parts.

Selection is deterministic: the pair ``(u, v)``, ``u < v`` by id, with the
smallest difference and lexicographically first among ties; ``v`` is removed.

Two engines produce identical results.  ``"rebuild"`` recomputes the twin
classes and the quotient from scratch every round.  ``"incremental"`` (the
default) keeps the pairwise difference matrix up to date as classes merge,
which is what makes inputs with a few thousand vertices practical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import BipartiteGraph, Graph, degeneracy_of_adjacency, twin_classes

__all__ = [
    "PreconditionError",
    "InvariantError",
    "RoundState",
    "PartitionResult",
    "LeaderColoring",
    "compute_partition",
    "quotient_graph",
    "min_near_twin_pair",
    "part_adjacency_graph",
    "static_partition",
    "near_twin_graph",
    "leader_coloring",
    "PartitionReport",
    "verify_partition",
]

_BIG = np.iinfo(np.int64).max


class PreconditionError(ValueError):
    pass


class InvariantError(AssertionError):
    """A structural guarantee failed; always a bug."""


@dataclass
class RoundState:
    """One elimination round, as seen before the removal."""

    round: int
    removed: int
    partner: int | None
    k: int | None
    classes: list[np.ndarray]
    frozen: np.ndarray | None


@dataclass
class PartitionResult:
    parts: list[np.ndarray]
    leaders: list[int]
    freeze_time: list[int]
    elimination_order: list[int]
    partners: list[int | None]
    k_used: int
    k_star: int
    rounds: list[RoundState] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.parts)

    def part_of(self, bg: BipartiteGraph) -> np.ndarray:
        """Part index of every right vertex of ``bg``, by right position."""
        out = np.full(bg.n_right, -1, dtype=np.int64)
        for i, part in enumerate(self.parts):
            out[bg.right_pos(part)] = i
        return out


@dataclass
class LeaderColoring:
    color: list[int]
    n_colors: int
    palette_bound: int
    definable: bool


def _check_input(bg: BipartiteGraph) -> None:
    if bg.n_left == 0:
        raise PreconditionError("left side is empty")
    for side, ids, axis in (("left", bg.left, 1), ("right", bg.right, 0)):
        iso = np.flatnonzero(~bg.adj.any(axis=axis))
        if len(iso):
            v = int(ids[iso[0]])
            raise PreconditionError(f"isolated {side} vertex {bg.label(v)}")


def quotient_graph(bg: BipartiteGraph, subset, classes) -> BipartiteGraph:
    """Contact graph between ``subset`` of the left side and ``classes`` of right vertices.

    Each class becomes one right vertex, identified by its smallest member id,
    so columns follow the classes sorted by that id (not the order given).
    """
    rows = np.unique(bg.left_pos(subset))
    seen = np.zeros(bg.n_right, dtype=bool)
    cols = []
    for cls in classes:
        pos = bg.right_pos(cls)
        if len(pos) == 0:
            raise ValueError("empty class")
        if seen[pos].any():
            raise ValueError("classes overlap")
        seen[pos] = True
        cols.append(pos)
    sub = bg.adj[rows]
    adj = np.zeros((len(rows), len(cols)), dtype=bool)
    for j, pos in enumerate(cols):
        adj[:, j] = sub[:, pos].any(axis=1)
    reps = [int(bg.right[pos].min()) for pos in cols]
    return BipartiteGraph(bg.left[rows], reps, adj, bg.labels)


def _difference_matrix(adj: np.ndarray) -> np.ndarray:
    q = adj.astype(np.float32 if adj.shape[1] < 1 << 24 else np.float64)
    deg = q.sum(axis=1)
    d = deg[:, None] + deg[None, :] - 2.0 * (q @ q.T)
    return np.rint(d).astype(np.int64)


def min_near_twin_pair(q: BipartiteGraph) -> tuple[int, int, int]:
    """Closest pair of left vertices of ``q`` as ``(u, v, k)`` with ``u < v``."""
    n = q.n_left
    if n < 2:
        raise ValueError("need at least two left vertices")
    d = _difference_matrix(q.adj)
    d[np.tril_indices(n)] = _BIG
    flat = int(np.argmin(d))
    u, v = divmod(flat, n)
    return int(q.left[u]), int(q.left[v]), int(d[u, v])


def _run_rebuild(bg: BipartiteGraph, check: bool, record: bool):
    alive = list(bg.left.tolist())
    rounds = []
    frozen_at: dict[int, tuple[np.ndarray, int]] = {}
    order, partners, ks = [], [], []
    prev_labels = None
    frozen_pos: list[np.ndarray] = []
    n = bg.n_left
    for i in range(1, n + 1):
        classes = twin_classes(bg, alive)
        q = quotient_graph(bg, alive, classes)
        if len(alive) >= 2:
            u, v, k = min_near_twin_pair(q)
            removed, partner = v, u
            ks.append(k)
        else:
            removed, partner, k = alive[0], None, None
        row = q.adj[int(np.searchsorted(q.left, removed))]
        # twin classes come sorted by minimum member, which is also the column order of q
        only = np.flatnonzero(row & (q.adj.sum(axis=0) == 1))
        part = classes[only[0]] if len(only) else None
        if part is not None:
            frozen_at[i] = (part, removed)
            frozen_pos.append(bg.right_pos(part))
        alive.remove(removed)
        order.append(removed)
        partners.append(partner)
        if record:
            rounds.append(RoundState(i, removed, partner, k, classes, part))
        if check:
            class_pos = [bg.right_pos(c) for c in twin_classes(bg, alive)]
            prev_labels = _check_round(bg, alive, class_pos, frozen_pos, prev_labels, i)
    return order, partners, ks, frozen_at, rounds


def _run_incremental(bg: BipartiteGraph, check: bool, record: bool):
    n = bg.n_left
    left = bg.left
    init = twin_classes(bg)
    members: dict[int, list[int]] = {}
    pattern: dict[int, int] = {}
    by_pattern: dict[int, int] = {}
    touching: list[set[int]] = [set() for _ in range(n)]
    qcols = np.empty((n, len(init)), dtype=bool)
    for c, cls in enumerate(init):
        pos = bg.right_pos(cls)
        col = bg.adj[:, pos[0]]
        qcols[:, c] = col
        members[c] = pos.tolist()
        mask = 0
        for r in np.flatnonzero(col).tolist():
            mask |= 1 << r
            touching[r].add(c)
        pattern[c] = mask
        by_pattern[mask] = c

    dist = _difference_matrix(qcols)
    del qcols
    alive = np.ones(n, dtype=bool)
    best = np.full(n, _BIG, dtype=np.int64)
    best_v = np.full(n, -1, dtype=np.int64)
    if n >= 2:
        tmp = dist.copy()
        tmp[np.tril_indices(n)] = _BIG
        best_v[:] = np.argmin(tmp, axis=1)
        best[:] = tmp[np.arange(n), best_v]
        best[n - 1], best_v[n - 1] = _BIG, -1
        del tmp

    def refresh(u: int) -> None:
        row = np.where(alive[u + 1 :], dist[u, u + 1 :], _BIG)
        if len(row) == 0:
            best[u], best_v[u] = _BIG, -1
            return
        j = int(np.argmin(row))
        best[u] = row[j]
        best_v[u] = u + 1 + j if row[j] != _BIG else -1

    order, partners, ks, rounds = [], [], [], []
    frozen_at: dict[int, tuple[np.ndarray, int]] = {}
    prev_labels = None
    frozen_pos: list[np.ndarray] = []
    for i in range(1, n + 1):
        if record:
            snapshot = sorted((sorted(m) for m in members.values()), key=lambda m: m[0])
            snapshot = [bg.right[np.array(m)] for m in snapshot]
        live = int(alive.sum())
        if live >= 2:
            u = int(np.argmin(best))
            x, k, partner = int(best_v[u]), int(best[u]), int(left[u])
            ks.append(k)
        else:
            x, k, partner = int(np.flatnonzero(alive)[0]), None, None
        alive[x] = False
        best[x], best_v[x] = _BIG, -1
        stale = set(np.flatnonzero(best_v == x).tolist())
        bit = 1 << x
        part = None
        for c in sorted(touching[x]):
            old = pattern[c]
            new = old & ~bit
            del by_pattern[old]
            if new == 0:
                part_pos = np.sort(np.array(members.pop(c)))
                frozen_pos.append(part_pos)
                part = bg.right[part_pos]
                del pattern[c]
                continue
            other = by_pattern.get(new)
            if other is None:
                pattern[c] = new
                by_pattern[new] = c
                continue
            members[other].extend(members.pop(c))
            del pattern[c]
            s_idx = np.array([r for r in _bit_positions(new)], dtype=np.int64)
            for r in s_idx.tolist():
                touching[r].discard(c)
            in_s = np.zeros(n, dtype=bool)
            in_s[s_idx] = True
            out_idx = np.flatnonzero(alive & ~in_s)
            if len(out_idx) == 0:
                continue
            dist[np.ix_(s_idx, out_idx)] -= 1
            dist[np.ix_(out_idx, s_idx)] -= 1
            stale.update(s_idx.tolist())
            sub = dist[np.ix_(out_idx, s_idx)]
            sub = np.where(s_idx[None, :] > out_idx[:, None], sub, _BIG)
            j = np.argmin(sub, axis=1)
            cand = sub[np.arange(len(out_idx)), j]
            cand_v = s_idx[j]
            better = (cand < best[out_idx]) | ((cand == best[out_idx]) & (cand_v < best_v[out_idx]) & (cand != _BIG))
            best[out_idx[better]] = cand[better]
            best_v[out_idx[better]] = cand_v[better]
        touching[x].clear()
        for r in stale:
            if alive[r]:
                refresh(r)
        if part is not None:
            frozen_at[i] = (part, int(left[x]))
        order.append(int(left[x]))
        partners.append(partner)
        if record:
            rounds.append(RoundState(i, int(left[x]), partner, k, snapshot, part))
        if check:
            class_pos = [np.array(m) for m in members.values()]
            prev_labels = _check_round(bg, left[alive].tolist(), class_pos, frozen_pos, prev_labels, i)
            _check_distances(bg, alive, members, dist, i)
    return order, partners, ks, frozen_at, rounds


def _bit_positions(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _labels(n_right: int, class_pos, frozen_pos) -> np.ndarray:
    lab = np.full(n_right, -1, dtype=np.int64)
    for c, pos in enumerate(class_pos):
        lab[pos] = c
    for t, pos in enumerate(frozen_pos):
        lab[pos] = len(class_pos) + t
    return lab


def _check_round(bg, alive_ids, class_pos, frozen_pos, prev_labels, i):
    # classes and frozen parts are given as right positions
    # frozen parts partition exactly the vertices with no surviving neighbour
    rows = bg.left_pos(alive_ids) if len(alive_ids) else np.array([], dtype=np.int64)
    active = bg.adj[rows].any(axis=0) if len(rows) else np.zeros(bg.n_right, dtype=bool)
    frozen = np.zeros(bg.n_right, dtype=np.int64)
    for pos in frozen_pos:
        frozen[pos] += 1
    if (frozen > 1).any() or not np.array_equal(frozen == 1, ~active):
        raise InvariantError(f"round {i}: frozen parts do not partition the inactive vertices")
    labels = _labels(bg.n_right, class_pos, frozen_pos)
    if (labels < 0).any():
        raise InvariantError(f"round {i}: some right vertex is in no class")
    if prev_labels is not None:
        pairs = np.unique(np.stack([prev_labels, labels]), axis=1)
        if len(np.unique(pairs[0])) != pairs.shape[1]:
            raise InvariantError(f"round {i}: class partition is not a coarsening of round {i - 1}")
    return labels


def _check_distances(bg, alive, members, dist, i):
    idx = np.flatnonzero(alive)
    if len(idx) < 2:
        return
    reps = [m[0] for m in members.values()]
    q = bg.adj[np.ix_(idx, reps)]
    if not np.array_equal(_difference_matrix(q), dist[np.ix_(idx, idx)]):
        raise InvariantError(f"round {i}: maintained differences diverged from the quotient")


def compute_partition(
    bg: BipartiteGraph, *, check: bool = False, record: bool = False, method: str = "incremental"
) -> PartitionResult:
    """Run the elimination rounds on ``bg`` (no isolated vertices allowed).

    ``check`` asserts the per-round invariants (frozen parts partition the
    inactive vertices; each round's classes coarsen the previous round's).
    ``record`` keeps a :class:`RoundState` per round.
    """
    _check_input(bg)
    if method == "incremental":
        run = _run_incremental
    elif method == "rebuild":
        run = _run_rebuild
    else:
        raise ValueError(f"unknown method {method!r}")
    order, partners, ks, frozen_at, rounds = run(bg, check, record)
    times = sorted(frozen_at)
    parts = [frozen_at[t][0] for t in times]
    leaders = [frozen_at[t][1] for t in times]
    pr = PartitionResult(
        parts=parts,
        leaders=leaders,
        freeze_time=times,
        elimination_order=order,
        partners=partners,
        k_used=max(ks, default=0),
        k_star=0,
        rounds=rounds if record else None,
    )
    pr.k_star = int(part_adjacency_graph(bg, pr).adj.sum(axis=1).max())
    return pr


def part_adjacency_graph(bg: BipartiteGraph, pr: PartitionResult) -> BipartiteGraph:
    """Quotient of the whole left side against the parts (``G(A, F)``)."""
    return quotient_graph(bg, bg.left, pr.parts)


def static_partition(bg: BipartiteGraph, elimination_order) -> list[tuple[int, np.ndarray]]:
    """Parts read off an elimination order: each right vertex goes to its last-eliminated neighbour.

    Returns ``(leader, part)`` pairs in elimination order of the leaders.
    """
    order = np.asarray(elimination_order, dtype=np.int64)
    if len(order) != bg.n_left or not np.array_equal(np.sort(order), bg.left):
        raise ValueError("elimination order is not a permutation of the left side")
    _check_input(bg)
    rank = np.empty(bg.n_left, dtype=np.int64)
    rank[bg.left_pos(order)] = np.arange(len(order))
    last = np.where(bg.adj, rank[:, None], -1).max(axis=0)
    out = []
    for i in np.unique(last).tolist():
        out.append((int(order[i]), bg.right[last == i]))
    return out


def near_twin_graph(bg: BipartiteGraph, k: int) -> Graph:
    """Vertices of ``bg`` (left then right), joined when neighbourhoods differ in at most ``k`` vertices."""
    nl, nr = bg.n_left, bg.n_right
    a = bg.adj.astype(np.int64)
    deg_l, deg_r = a.sum(axis=1), a.sum(axis=0)
    n = nl + nr
    diff = np.empty((n, n), dtype=np.int64)
    diff[:nl, :nl] = deg_l[:, None] + deg_l[None, :] - 2 * (a @ a.T)
    diff[nl:, nl:] = deg_r[:, None] + deg_r[None, :] - 2 * (a.T @ a)
    diff[:nl, nl:] = deg_l[:, None] + deg_r[None, :]
    diff[nl:, :nl] = diff[:nl, nl:].T
    adj = diff <= k
    np.fill_diagonal(adj, False)
    labels = [bg.label(v) for v in bg.vertices().tolist()]
    return Graph(adj, labels)


def leader_coloring(bg: BipartiteGraph, pr: PartitionResult) -> LeaderColoring:
    """Proper colouring of the part-conflict graph, plus the marker-definability check.

    Parts ``i`` and ``j`` conflict when the leader of one has a neighbour in
    the other.  Colouring is greedy along a smallest-last order.
    """
    m = len(pr.parts)
    part_of = pr.part_of(bg)
    lead_pos = bg.left_pos(pr.leaders)
    # touch[i, j]: the leader of part i has a neighbour in part j
    touch = (bg.adj[lead_pos].astype(np.int64) @ np.eye(m, dtype=np.int64)[part_of]) > 0
    conflict = touch | touch.T
    np.fill_diagonal(conflict, False)
    _, order = degeneracy_of_adjacency([np.flatnonzero(r).tolist() for r in conflict])
    color = [-1] * m
    for p in reversed(order):
        used = {color[q] for q in np.flatnonzero(conflict[p]).tolist()}
        c = 0
        while c in used:
            c += 1
        color[p] = c
    n_colors = max(color, default=-1) + 1
    bound = 2 * pr.k_star + 1
    if n_colors > bound:
        raise InvariantError(f"colouring uses {n_colors} colours, more than {bound}")

    leads = np.full(bg.n_left, -1, dtype=np.int64)
    leads[lead_pos] = np.arange(m)
    col = np.asarray(color + [-1], dtype=np.int64)
    truth = (leads[:, None] >= 0) & (leads[:, None] == part_of[None, :])
    marked = (leads[:, None] >= 0) & (col[leads][:, None] == col[part_of][None, :])
    definable = bool(np.array_equal(truth, marked & bg.adj))
    return LeaderColoring(color, n_colors, bound, definable)


@dataclass
class PartitionReport:
    k_star: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_partition(bg: BipartiteGraph, pr: PartitionResult) -> PartitionReport:
    """Re-derive the guarantees of ``pr`` from scratch with plain set arithmetic.

    Checks: the parts partition the right side; each part lies in its
    leader's neighbourhood; ``k_star`` (recounted) matches; the static
    read-off of the elimination order gives the same parts; the last
    eliminated vertex touches exactly one part; and every earlier eliminated
    vertex has a later one within ``k_used`` parts of it.
    """
    errors: list[str] = []
    lab = bg.label
    nbrs = {int(u): set(bg.neighbors(u).tolist()) for u in bg.left}
    owner: dict[int, int] = {}
    for i, part in enumerate(pr.parts):
        for v in part.tolist():
            if v in owner:
                errors.append(f"vertex {lab(v)} lies in parts {owner[v]} and {i}")
            owner[v] = i
    missing = [v for v in bg.right.tolist() if v not in owner]
    if missing:
        errors.append(f"vertex {lab(missing[0])} lies in no part")
    if len(set(pr.leaders)) != len(pr.leaders):
        errors.append("leaders are not distinct")
    if any(b <= a for a, b in zip(pr.freeze_time, pr.freeze_time[1:])):
        errors.append("freeze times are not increasing")
    if sorted(pr.elimination_order) != sorted(nbrs):
        errors.append("elimination order is not a permutation of the left side")
        return PartitionReport(-1, errors)
    for i, (part, lead) in enumerate(zip(pr.parts, pr.leaders)):
        if not set(part.tolist()) <= nbrs[lead]:
            errors.append(f"part {i} is not dominated by its leader {lab(lead)}")

    touched = {u: {owner[v] for v in nbrs[u] if v in owner} for u in nbrs}
    k_star = max((len(t) for t in touched.values()), default=0)
    if k_star != pr.k_star:
        errors.append(f"k_star recounts to {k_star}, result says {pr.k_star}")

    static = static_partition(bg, pr.elimination_order)
    if [lead for lead, _ in static] != list(pr.leaders) or any(
        set(p.tolist()) != set(q.tolist()) for (_, p), q in zip(static, pr.parts)
    ):
        errors.append("static read-off of the elimination order gives different parts")

    order = pr.elimination_order
    if len(touched[order[-1]]) != 1:
        errors.append(f"last eliminated vertex touches {len(touched[order[-1]])} parts, not 1")
    for i, a in enumerate(order[:-1]):
        if not any(len(touched[a] ^ touched[b]) <= pr.k_used for b in order[i + 1 :]):
            errors.append(f"no later vertex is a {pr.k_used}-near-twin of {lab(a)} over the parts")
    return PartitionReport(k_star, errors)
