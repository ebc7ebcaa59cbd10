"""Left and right branchings built from the leader partition.

A left branching of ``G`` covers it with induced subgraphs ``G[N(P_i), P_i]``,
one per part ``P_i`` of the right side, each led by a left vertex adjacent to
the whole of ``P_i``.  A right branching is the same construction with the
sides exchanged.  Branches are stored as vertex-id pairs into the host graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import BipartiteGraph
from .partition import PartitionResult, compute_partition

__all__ = ["Branching", "BranchingReport", "left_branching", "right_branching", "verify_branching"]


@dataclass
class Branching:
    side: str  # "left": leaders on the left side dominate right parts
    branches: list[tuple[np.ndarray, np.ndarray]]  # (left ids, right ids)
    leaders: list[int]
    overlap: int
    partition: PartitionResult | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.branches)

    def membership_counts(self, bg: BipartiteGraph) -> tuple[np.ndarray, np.ndarray]:
        """Number of branches containing each left and each right vertex of ``bg``."""
        cl = np.zeros(bg.n_left, dtype=np.int64)
        cr = np.zeros(bg.n_right, dtype=np.int64)
        for xs, ys in self.branches:
            np.add.at(cl, bg.left_pos(xs), 1)
            np.add.at(cr, bg.right_pos(ys), 1)
        return cl, cr


def left_branching(bg: BipartiteGraph, *, check: bool = False) -> Branching:
    """Branch ``i`` is ``(N(P_i), P_i)`` led by the leader of ``P_i``."""
    pr = compute_partition(bg, check=check)
    branches = []
    for part in pr.parts:
        rows = bg.adj[:, bg.right_pos(part)].any(axis=1)
        branches.append((bg.left[rows], part))
    br = Branching("left", branches, list(pr.leaders), 0, pr)
    cl, cr = br.membership_counts(bg)
    br.overlap = int(max(cl.max(initial=0), cr.max(initial=0)))
    return br


def right_branching(bg: BipartiteGraph, *, check: bool = False) -> Branching:
    """Mirror image of :func:`left_branching`: leaders on the right side."""
    br = left_branching(bg.swap(), check=check)
    br.side = "right"
    br.branches = [(ys, xs) for xs, ys in br.branches]
    return br


@dataclass
class BranchingReport:
    overlap: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_branching(bg: BipartiteGraph, br: Branching) -> BranchingReport:
    """Check every defining condition of a branching of ``bg`` and recount the overlap.

    Also checks that the bipartite complement of each branch keeps an
    isolated vertex on the leaders' side, which is what makes the tree shrink.
    """
    g = bg if br.side == "left" else bg.swap()
    branches = br.branches if br.side == "left" else [(ys, xs) for xs, ys in br.branches]
    errors: list[str] = []
    if len(branches) != len(br.leaders):
        errors.append("number of leaders differs from number of branches")
    if len(set(br.leaders)) != len(br.leaders):
        errors.append("leaders are not distinct")
    covered = np.zeros_like(g.adj)
    dominated = np.zeros(g.n_right, dtype=np.int64)
    count_l = np.zeros(g.n_left, dtype=np.int64)
    for i, ((xs, ys), lead) in enumerate(zip(branches, br.leaders)):
        try:
            xi, yi = g.left_pos(xs), g.right_pos(ys)
        except ValueError as exc:
            errors.append(f"branch {i}: {exc}")
            continue
        if lead not in set(np.asarray(xs).tolist()):
            errors.append(f"branch {i}: leader {g.label(lead)} is not in the branch")
            continue
        li = g.left_pos([lead])[0]
        if not g.adj[li, yi].all():
            errors.append(f"branch {i}: leader {g.label(lead)} does not dominate the branch")
        comp = ~g.adj[np.ix_(xi, yi)]
        if len(yi) and comp.any(axis=1).all():
            errors.append(f"branch {i}: complemented branch has no isolated vertex on the leader's side")
        covered[np.ix_(xi, yi)] = True
        np.add.at(dominated, yi, 1)
        np.add.at(count_l, xi, 1)
    missing = g.adj & ~covered
    if missing.any():
        i, j = np.argwhere(missing)[0]
        errors.append(f"edge {g.label(int(g.left[i]))}-{g.label(int(g.right[j]))} lies in no branch")
    if (dominated != 1).any():
        j = int(np.flatnonzero(dominated != 1)[0])
        errors.append(
            f"dominated side is not partitioned: {g.label(int(g.right[j]))} is in {int(dominated[j])} branches"
        )
    overlap = int(max(count_l.max(initial=0), dominated.max(initial=0)))
    return BranchingReport(overlap, errors)
