"""Graph containers and the elementary transformations used by the pipeline.

Two containers are provided:

* :class:`Graph` -- a general simple graph on dense ids ``0..n-1`` with a
  symmetric boolean adjacency matrix and external string labels.
* :class:`BipartiteGraph` -- a graph with an explicit left/right split.  Vertex
  ids are *global* integers (shared with the host graph a subgraph was cut
  from), so derived graphs such as subgraphs or complements can be compared and mapped
  back without relabelling.

Edge-list text format (read by :func:`load_edge_list`)::

    c a comment
    p <n> <m>          optional; declares vertices "1".."n"
    v <label>          optional; declares a (possibly isolated) vertex
    s L <label>        optional; declares a vertex and its side
    <u> <v>            one edge per line
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ParseError",
    "Graph",
    "BipartiteGraph",
    "VertexProjection",
    "load_edge_list",
    "read_edge_list",
    "format_edge_list",
    "label_key",
    "bipartize",
    "double",
    "bipartite_complement",
    "induced_subgraph",
    "twin_classes",
    "remove_isolated",
    "degeneracy",
    "degeneracy_of_adjacency",
]

LEFT, RIGHT = 0, 1


class ParseError(ValueError):
    """Malformed graph or representation text."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def label_key(label: str):
    """Sort key putting integer-like labels first, in numeric order."""
    try:
        return (0, int(label), "")
    except ValueError:
        return (1, 0, label)


class Graph:
    """Simple undirected graph with dense ids and a boolean adjacency matrix.

    ``sides`` optionally records a declared bipartition (0 = L, 1 = R) per
    vertex, as read from ``s`` lines of an edge-list file.
    """

    def __init__(self, adj, labels: Sequence[str] | None = None, sides=None):
        adj = np.array(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        n = adj.shape[0]
        if labels is None:
            labels = [str(i + 1) for i in range(n)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise ValueError("labels must be distinct, one per vertex")
        if sides is not None:
            sides = np.asarray(sides, dtype=np.int8)
            if sides.shape != (n,):
                raise ValueError("sides must have one entry per vertex")
            if (adj & (sides[:, None] == sides[None, :])).any():
                raise ValueError("declared sides are not a bipartition")
        self.adj = adj
        self.labels = labels
        self.sides = sides

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None, sides=None) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj, labels, sides)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def __len__(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self.adj)) // 2

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def labeled_edges(self) -> set[frozenset[str]]:
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges()}

    def same_as(self, other: "Graph") -> bool:
        """Identical vertex labels and identical edge set on those labels."""
        return set(self.labels) == set(other.labels) and self.labeled_edges() == other.labeled_edges()

    def to_bipartite(self) -> "BipartiteGraph":
        """View a side-declared graph as a :class:`BipartiteGraph`."""
        if self.sides is None:
            raise ValueError("graph carries no side declarations")
        left = np.flatnonzero(self.sides == LEFT)
        right = np.flatnonzero(self.sides == RIGHT)
        return BipartiteGraph(left, right, self.adj[np.ix_(left, right)], self.labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


class BipartiteGraph:
    """Bipartite graph ``(left, right, adj)`` over global vertex ids.

    ``adj[i, j]`` tells whether ``left[i]`` and ``right[j]`` are adjacent.
    Both sides are kept sorted by id.  ``labels`` is indexed by global id and
    is shared (not copied) between a graph and the subgraphs cut from it.
    """

    __slots__ = ("left", "right", "adj", "labels")

    def __init__(self, left, right, adj, labels: Sequence[str] | None = None):
        left = np.asarray(left, dtype=np.int64).reshape(-1)
        right = np.asarray(right, dtype=np.int64).reshape(-1)
        adj = np.asarray(adj, dtype=bool).reshape(len(left), len(right))
        if len(np.intersect1d(left, right)):
            raise ValueError("left and right sides must be disjoint")
        lo = np.argsort(left, kind="stable")
        ro = np.argsort(right, kind="stable")
        if (np.diff(left[lo]) == 0).any() or (np.diff(right[ro]) == 0).any():
            raise ValueError("duplicate vertex id on one side")
        if not (np.all(lo == np.arange(len(left))) and np.all(ro == np.arange(len(right)))):
            left, right, adj = left[lo], right[ro], adj[np.ix_(lo, ro)]
        self.left = left
        self.right = right
        self.adj = adj
        self.labels = labels

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Left ids ``0..n_left-1``, right ids ``n_left..``; edges as (left index, right index)."""
        adj = np.zeros((n_left, n_right), dtype=bool)
        for i, j in edges:
            adj[i, j] = True
        return cls(np.arange(n_left), np.arange(n_left, n_left + n_right), adj)

    @property
    def n_left(self) -> int:
        return len(self.left)

    @property
    def n_right(self) -> int:
        return len(self.right)

    def __len__(self) -> int:
        return self.n_left + self.n_right

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self.adj))

    def vertices(self) -> np.ndarray:
        return np.concatenate([self.left, self.right])

    def label(self, v: int) -> str:
        return str(v) if self.labels is None else self.labels[v]

    def left_pos(self, ids) -> np.ndarray:
        return _positions(self.left, ids, "left")

    def right_pos(self, ids) -> np.ndarray:
        return _positions(self.right, ids, "right")

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (left id, right id) pairs."""
        i, j = np.nonzero(self.adj)
        return list(zip(self.left[i].tolist(), self.right[j].tolist()))

    def neighbors(self, v: int) -> np.ndarray:
        k = np.searchsorted(self.left, v)
        if k < len(self.left) and self.left[k] == v:
            return self.right[self.adj[k]]
        k = np.searchsorted(self.right, v)
        if k < len(self.right) and self.right[k] == v:
            return self.left[self.adj[:, k]]
        raise KeyError(v)

    def swap(self) -> "BipartiteGraph":
        """Same graph with the roles of the sides exchanged."""
        return BipartiteGraph(self.right, self.left, self.adj.T, self.labels)

    def is_edgeless(self) -> bool:
        return not self.adj.any()

    def to_graph(self) -> Graph:
        """Forget the split; vertices ordered left then right."""
        ids = self.vertices()
        n, nl = len(ids), self.n_left
        adj = np.zeros((n, n), dtype=bool)
        adj[:nl, nl:] = self.adj
        adj[nl:, :nl] = self.adj.T
        labels = [self.label(v) for v in ids.tolist()]
        sides = np.r_[np.zeros(nl, np.int8), np.ones(self.n_right, np.int8)]
        return Graph(adj, labels, sides)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            np.array_equal(self.left, other.left)
            and np.array_equal(self.right, other.right)
            and np.array_equal(self.adj, other.adj)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"BipartiteGraph(|L|={self.n_left}, |R|={self.n_right}, m={self.num_edges})"


def _positions(side: np.ndarray, ids, name: str) -> np.ndarray:
    ids = np.asarray(ids, dtype=np.int64).reshape(-1)
    pos = np.searchsorted(side, ids)
    bad = (pos >= len(side)) | (side[np.minimum(pos, len(side) - 1)] != ids) if len(side) else ids == ids
    if len(ids) and bad.any():
        raise ValueError(f"vertex {ids[bad][0]} is not on the {name} side")
    return pos


@dataclass(frozen=True)
class VertexProjection:
    """Maps derived vertex ids back to the source graph.

    ``origin[x]`` is the source vertex of derived id ``x``; ``role[x]`` names
    which copy it is (``"L"``, ``"R"``, ``"P1"``, ``"P2"`` for bipartization,
    ``"0"``/``"1"`` for doubling).
    """

    origin: np.ndarray
    role: tuple[str, ...]

    def __call__(self, ids):
        return self.origin[np.asarray(ids, dtype=np.int64)]


# ---------------------------------------------------------------------------
# text I/O


def load_edge_list(text: str) -> Graph:
    """Parse the edge-list format.  Labels are densified in order of appearance."""
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: set[tuple[int, int]] = set()
    declared_n = None
    side_of: dict[int, int] = {}

    def vertex(lab: str) -> int:
        if lab not in index:
            index[lab] = len(labels)
            labels.append(lab)
        return index[lab]

    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        head = parts[0]
        if head == "p":
            if declared_n is not None or labels:
                raise ParseError("header must come first and only once", lineno)
            if len(parts) not in (3, 4) or not parts[-2].isdigit() or not parts[-1].isdigit():
                raise ParseError("expected 'p <n> <m>'", lineno)
            declared_n = int(parts[-2])
            for i in range(1, declared_n + 1):
                vertex(str(i))
        elif head == "v":
            if len(parts) != 2:
                raise ParseError("expected 'v <label>'", lineno)
            vertex(parts[1])
        elif head == "s":
            if len(parts) != 3 or parts[1] not in ("L", "R"):
                raise ParseError("expected 's L|R <label>'", lineno)
            v = vertex(parts[2])
            s = LEFT if parts[1] == "L" else RIGHT
            if side_of.setdefault(v, s) != s:
                raise ParseError(f"vertex {parts[2]} declared on both sides", lineno)
        elif len(parts) == 2:
            if parts[0] == parts[1]:
                raise ParseError(f"self-loop at {parts[0]}", lineno)
            u, v = vertex(parts[0]), vertex(parts[1])
            edges.add((min(u, v), max(u, v)))
        else:
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)

    n = len(labels)
    if declared_n is not None and n != declared_n:
        raise ParseError(f"header declares {declared_n} vertices but {n} were found")
    sides = None
    if side_of:
        missing = [labels[v] for v in range(n) if v not in side_of]
        if missing:
            raise ParseError(f"vertex {missing[0]} has no side declaration")
        sides = np.array([side_of[v] for v in range(n)], dtype=np.int8)
    try:
        return Graph.from_edges(n, sorted(edges), labels, sides)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return load_edge_list(fh.read())


def format_edge_list(g: Graph, comments: Sequence[str] = ()) -> str:
    """Canonical text: edges sorted by (min label, max label)."""
    out = [f"c {c}" for c in comments]
    canonical = sorted(g.labels, key=label_key) == [str(i + 1) for i in range(g.n)]
    if canonical:
        out.append(f"p {g.n} {g.num_edges}")
    if g.sides is not None:
        order = sorted(range(g.n), key=lambda v: label_key(g.labels[v]))
        out += [f"s {'LR'[g.sides[v]]} {g.labels[v]}" for v in order]
    elif not canonical:
        out += [f"v {lab}" for lab in sorted(g.labels, key=label_key)]
    pairs = []
    for u, v in g.edges():
        a, b = sorted((g.labels[u], g.labels[v]), key=label_key)
        pairs.append((label_key(a), label_key(b), a, b))
    out += [f"{a} {b}" for *_, a, b in sorted(pairs)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# derived graphs

BIPARTIZE_ROLES = ("L", "R", "P1", "P2")


def bipartize(g: Graph) -> tuple[BipartiteGraph, VertexProjection]:
    """Four-copy bipartization: copy ``r`` of vertex ``u`` gets id ``r*n + u``.

    Cross edges join ``(u,L)`` with ``(v,R)`` for every edge ``uv``; each
    vertex contributes the path ``(u,L)-(u,P1)-(u,P2)-(u,R)``.  The sides are
    ``{L, P2}`` copies versus ``{R, P1}`` copies.
    """
    n = g.n
    ar = np.arange(n)
    left = np.r_[ar, 3 * n + ar]  # L, P2
    right = np.r_[n + ar, 2 * n + ar]  # R, P1
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, :n] = g.adj  # (u,L)-(v,R)
    eye = np.eye(n, dtype=bool)
    adj[:n, n:] = eye  # (u,L)-(u,P1)
    adj[n:, n:] = eye  # (u,P2)-(u,P1)
    adj[n:, :n] = eye  # (u,P2)-(u,R)
    labels = tuple(f"{lab}/{role}" for role in BIPARTIZE_ROLES for lab in g.labels)
    proj = VertexProjection(np.tile(ar, 4), tuple(r for r in BIPARTIZE_ROLES for _ in range(n)))
    return BipartiteGraph(left, right, adj, labels), proj


def double(g: Graph) -> tuple[BipartiteGraph, VertexProjection]:
    """Left copy ``(u,0)`` has id ``u``, right copy ``(u,1)`` has id ``n+u``;
    ``(u,0)(v,1)`` is an edge iff ``uv`` is an edge or ``u == v``."""
    n = g.n
    ar = np.arange(n)
    adj = g.adj | np.eye(n, dtype=bool)
    labels = tuple(f"{lab}/{c}" for c in "01" for lab in g.labels)
    proj = VertexProjection(np.tile(ar, 2), ("0",) * n + ("1",) * n)
    return BipartiteGraph(ar, n + ar, adj, labels), proj


def bipartite_complement(bg: BipartiteGraph) -> BipartiteGraph:
    return BipartiteGraph(bg.left, bg.right, ~bg.adj, bg.labels)


def induced_subgraph(bg: BipartiteGraph, xs, ys) -> BipartiteGraph:
    """``G[X, Y]`` for ``X`` a subset of the left side and ``Y`` of the right side."""
    xi = np.unique(bg.left_pos(xs))
    yi = np.unique(bg.right_pos(ys))
    return BipartiteGraph(bg.left[xi], bg.right[yi], bg.adj[np.ix_(xi, yi)], bg.labels)


def twin_classes(bg: BipartiteGraph, subset=None) -> list[np.ndarray]:
    """Group right vertices by their neighbourhood inside ``subset`` of the left side.

    Vertices with no neighbour in ``subset`` are left out.  Classes are
    returned as sorted id arrays, ordered by their minimum member.
    """
    rows = bg.adj if subset is None else bg.adj[np.unique(bg.left_pos(subset))]
    if bg.n_right == 0:
        return []
    active = rows.any(axis=0)
    cols = np.flatnonzero(active)
    if len(cols) == 0:
        return []
    packed = np.packbits(rows[:, cols].T, axis=1)
    _, first, inverse = np.unique(packed, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(first, kind="stable")
    groups = [[] for _ in order]
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    for c, cls in zip(cols.tolist(), inverse.tolist()):
        groups[rank[cls]].append(c)
    return [bg.right[np.array(gr)] for gr in groups]


def remove_isolated(bg: BipartiteGraph) -> BipartiteGraph:
    keep_l = bg.adj.any(axis=1)
    keep_r = bg.adj.any(axis=0)
    return BipartiteGraph(bg.left[keep_l], bg.right[keep_r], bg.adj[np.ix_(keep_l, keep_r)], bg.labels)


def degeneracy_of_adjacency(neighbors: Sequence[Iterable[int]]) -> tuple[int, list[int]]:
    """Smallest-last elimination on adjacency lists; returns (degeneracy, order)."""
    n = len(neighbors)
    nbrs = [set(x) for x in neighbors]
    deg = [len(x) for x in nbrs]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * n
    order, best = [], 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        best = max(best, d)
        for w in nbrs[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return best, order


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Exact degeneracy of ``g`` with a witnessing elimination order."""
    return degeneracy_of_adjacency([np.flatnonzero(row).tolist() for row in g.adj])
