"""Compact neighbourhood covers from the leader partition of the doubled graph."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, double
from .partition import PartitionResult, compute_partition

__all__ = ["NeighborhoodCover", "CoverReport", "neighborhood_cover", "verify_cover"]


@dataclass
class NeighborhoodCover:
    """Clusters ``N[Q]`` for the parts ``Q`` of a vertex partition.

    ``clusters[i]`` is a boolean mask over the vertices of the graph and
    belongs to ``parts[i]`` and ``centers[i]``; equal clusters coming from
    different parts are kept as separate entries.
    """

    parts: list[np.ndarray]
    centers: list[int]
    clusters: list[np.ndarray]
    overlap: int
    k_star: int | None = None
    partition: PartitionResult | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.clusters)


def _closed(g: Graph, part) -> np.ndarray:
    mask = g.adj[part].any(axis=0)
    mask[part] = True
    return mask


def neighborhood_cover(g: Graph) -> NeighborhoodCover:
    """Cover of ``g`` whose overlap is at most the ``k_star`` of the doubled partition."""
    if g.n == 0:
        return NeighborhoodCover([], [], [], 0, 0)
    bg, proj = double(g)
    pr = compute_partition(bg)
    parts = [np.sort(proj(p)) for p in pr.parts]
    centers = [int(proj([lead])[0]) for lead in pr.leaders]
    clusters = [_closed(g, p) for p in parts]
    overlap = int(np.sum(clusters, axis=0).max())
    return NeighborhoodCover(parts, centers, clusters, overlap, pr.k_star, pr)


@dataclass
class CoverReport:
    overlap: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_cover(g: Graph, nc: NeighborhoodCover) -> CoverReport:
    """Check that the parts partition the vertices, each inside some closed
    neighbourhood, and that every cluster equals ``N[part]``."""
    errors: list[str] = []
    lab = g.labels
    clusters = [np.asarray(c, dtype=bool) for c in nc.clusters]
    closed = g.adj | np.eye(g.n, dtype=bool)
    if clusters:
        stack = np.stack(clusters)
        # N[v] inside some cluster
        fits = ~(closed[:, None, :] & ~stack[None, :, :]).any(axis=2)
        for v in np.flatnonzero(~fits.any(axis=1)).tolist():
            errors.append(f"covering: N[{lab[v]}] lies in no cluster")
        overlap = int(stack.sum(axis=0).max())
    else:
        if g.n:
            errors.append("covering: no clusters")
        overlap = 0

    seen = np.zeros(g.n, dtype=np.int64)
    for p in nc.parts:
        np.add.at(seen, np.asarray(p, dtype=np.int64), 1)
    if (seen != 1).any():
        v = int(np.flatnonzero(seen != 1)[0])
        errors.append(f"partition: vertex {lab[v]} is in {int(seen[v])} parts")
    if len(nc.parts) != len(clusters) or len(nc.centers) != len(clusters):
        errors.append("cover lists differ in length")
    for i, (p, c) in enumerate(zip(nc.parts, nc.centers)):
        p = np.asarray(p, dtype=np.int64)
        if not closed[c, p].all():
            if not closed[p].all(axis=0).any():
                errors.append(f"compactness (i): part {i} fits in no closed neighbourhood")
            else:
                errors.append(f"compactness (i): part {i} is not inside N[{lab[c]}]")
    for i, (p, x) in enumerate(zip(nc.parts, clusters)):
        if not np.array_equal(_closed(g, np.asarray(p, dtype=np.int64)), x):
            errors.append(f"compactness (ii): cluster {i} is not N[part {i}]")
    return CoverReport(overlap, errors)
