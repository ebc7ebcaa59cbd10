"""Tree of alternating branchings and the sparse representation built on it.

Every tree node ``p`` carries a vertex set and a graph ``G(p)``: the host
graph induced on that set at even depth, its bipartite complement at odd
depth.  A non-edgeless node drops its isolated vertices, is branched (right
branching at even depth, left at odd depth) and gets one child per branch.
The sparse representation joins every host vertex to each node whose vertex
set contains it.

Text format, one record per line::

    c <comment>
    root <id>
    node <id> <parent-id> <depth>
    side L|R <vertex-label>
    proj <vertex-label> <original-label>     only for bipartized inputs
    member <vertex-label> <node-id>
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .branching import Branching, left_branching, right_branching
from .graphs import (
    BIPARTIZE_ROLES,
    BipartiteGraph,
    Graph,
    ParseError,
    VertexProjection,
    bipartize,
    degeneracy_of_adjacency,
    remove_isolated,
)

__all__ = [
    "TreeNode",
    "SparseRep",
    "SparseStats",
    "build_tree",
    "build_sparse_rep",
    "stats",
    "format_sparse_rep",
    "load_sparse_rep",
    "read_sparse_rep",
]


@dataclass
class TreeNode:
    id: int
    parent: int | None
    depth: int
    left: np.ndarray
    right: np.ndarray
    side_of_branching: str | None = None
    overlap: int | None = None
    children: list[int] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def vertex_set(self) -> np.ndarray:
        return np.concatenate([self.left, self.right])

    def contains(self, u: int, v: int) -> bool:
        """``u`` on the left and ``v`` on the right of this node's vertex set."""
        return _has(self.left, u) and _has(self.right, v)


def _has(arr: np.ndarray, x: int) -> bool:
    k = np.searchsorted(arr, x)
    return bool(k < len(arr) and arr[k] == x)


BranchHook = Callable[[TreeNode, BipartiteGraph, Branching], None]


def build_tree(bg: BipartiteGraph, on_branch: BranchHook | None = None) -> list[TreeNode]:
    """Grow the tree over ``bg``; node ids follow depth-first creation order.

    ``on_branch(node, graph, branching)`` is called for every internal node
    with its graph after isolated-vertex removal.
    """
    nodes: list[TreeNode] = []
    labels = bg.labels

    def grow(xs: np.ndarray, ys: np.ndarray, depth: int, parent: int | None) -> None:
        node = TreeNode(len(nodes), parent, depth, xs, ys)
        nodes.append(node)
        if parent is not None:
            nodes[parent].children.append(node.id)
        sub = bg.adj[np.ix_(bg.left_pos(xs), bg.right_pos(ys))]
        if depth % 2:
            sub = ~sub
        if not sub.any():
            return
        g = remove_isolated(BipartiteGraph(xs, ys, sub, labels))
        br = right_branching(g) if depth % 2 == 0 else left_branching(g)
        node.side_of_branching = br.side
        node.overlap = br.overlap
        if on_branch is not None:
            on_branch(node, g, br)
        for bx, by in br.branches:
            grow(bx, by, depth + 1, node.id)

    grow(bg.left, bg.right, 0, None)
    return nodes


@dataclass
class SparseRep:
    """Tree nodes plus membership of the host vertices, with side predicates.

    ``left``/``right`` are the host vertex ids carrying the L and R
    predicates; ``labels`` is indexed by host id.  When the input was
    bipartized, ``projection`` maps host ids to ``original_labels``.
    """

    nodes: list[TreeNode]
    left: np.ndarray
    right: np.ndarray
    labels: tuple[str, ...]
    projection: VertexProjection | None = None
    original_labels: tuple[str, ...] | None = None
    build_time: float = 0.0

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    @property
    def height(self) -> int:
        return max(n.depth for n in self.nodes)

    def label(self, v: int) -> str:
        return self.labels[v]

    def vertex_id(self, label: str) -> int:
        return self.labels.index(label)

    def membership_edges(self) -> list[tuple[int, int]]:
        return [(int(v), n.id) for n in self.nodes for v in n.vertex_set()]

    def host_graph_size(self) -> int:
        return len(self.left) + len(self.right)


def build_sparse_rep(g: Graph | BipartiteGraph, bipartite: bool = False) -> SparseRep:
    """Sparse representation of ``g``.

    A :class:`BipartiteGraph` is used as is; a :class:`Graph` is bipartized
    unless ``bipartite`` is set, in which case its declared sides are used.
    """
    start = time.perf_counter()
    projection = original = None
    if isinstance(g, BipartiteGraph):
        bg = g
    elif bipartite:
        bg = g.to_bipartite()
    else:
        bg, projection = bipartize(g)
        original = g.labels
    labels = bg.labels
    if labels is None:
        top = int(max(bg.left.max(initial=-1), bg.right.max(initial=-1)))
        labels = tuple(str(i) for i in range(top + 1))
        bg = BipartiteGraph(bg.left, bg.right, bg.adj, labels)
    nodes = build_tree(bg)
    elapsed = time.perf_counter() - start
    return SparseRep(nodes, bg.left, bg.right, tuple(labels), projection, original, elapsed)


@dataclass
class SparseStats:
    height: int
    n_nodes: int
    k_max: int
    membership_by_depth: list[int]
    tau: int
    degeneracy: int
    build_time: float

    @property
    def membership_ok(self) -> bool:
        return all(m <= self.k_max**d for d, m in enumerate(self.membership_by_depth))

    @property
    def degeneracy_ok(self) -> bool:
        return self.degeneracy <= self.tau

    def lines(self) -> list[str]:
        return [
            f"height {self.height}",
            f"nodes {self.n_nodes}",
            f"max_overlap {self.k_max}",
            "membership_by_depth " + " ".join(map(str, self.membership_by_depth)),
            f"tau {self.tau}",
            f"degeneracy {self.degeneracy}",
            f"membership_bound {'ok' if self.membership_ok else 'VIOLATED'}",
            f"degeneracy_bound {'ok' if self.degeneracy_ok else 'VIOLATED'}",
            f"build_time {self.build_time:.6f}",
        ]


def stats(sr: SparseRep) -> SparseStats:
    """Height and sparsity figures of ``sr``.

    ``membership_by_depth[d]`` is the largest number of depth-``d`` nodes any
    host vertex belongs to; it is bounded by ``k_max**d``.
    """
    height = sr.height
    k_max = max((n.overlap for n in sr.nodes if n.overlap is not None), default=1)
    hosts = np.concatenate([sr.left, sr.right])
    top = int(hosts.max(initial=-1)) + 1
    per_depth = np.zeros((height + 1, top), dtype=np.int64)
    for node in sr.nodes:
        per_depth[node.depth, node.vertex_set()] += 1
    membership = per_depth.max(axis=1).tolist() if top else [0] * (height + 1)

    # S(G): tree nodes first, then host vertices
    n_nodes = len(sr.nodes)
    slot = np.full(top, -1, dtype=np.int64)
    slot[hosts] = n_nodes + np.arange(len(hosts))
    adjacency: list[list[int]] = [[] for _ in range(n_nodes + len(hosts))]
    for node in sr.nodes:
        if node.parent is not None:
            adjacency[node.id].append(node.parent)
            adjacency[node.parent].append(node.id)
        for s in slot[node.vertex_set()].tolist():
            adjacency[node.id].append(s)
            adjacency[s].append(node.id)
    degen, _ = degeneracy_of_adjacency(adjacency)
    tau = sum(k_max**d for d in range(height + 1))
    return SparseStats(height, n_nodes, k_max, membership, tau, degen, sr.build_time)


# ---------------------------------------------------------------------------
# text format


def format_sparse_rep(sr: SparseRep, comments=()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"root {sr.root.id}")
    out += [f"node {n.id} {n.parent} {n.depth}" for n in sr.nodes if n.parent is not None]
    out += [f"side L {sr.labels[v]}" for v in sr.left.tolist()]
    out += [f"side R {sr.labels[v]}" for v in sr.right.tolist()]
    # left side before right side throughout, which is also the order a reload assigns ids in
    if sr.projection is not None:
        hosts = np.concatenate([sr.left, sr.right]).tolist()
        out += [f"proj {sr.labels[v]} {sr.original_labels[sr.projection.origin[v]]}" for v in hosts]
    for n in sr.nodes:
        out += [f"member {sr.labels[v]} {n.id}" for v in n.vertex_set().tolist()]
    return "\n".join(out) + "\n"


def load_sparse_rep(text: str) -> SparseRep:
    """Parse the text format; structural problems raise :class:`ParseError`."""
    root = None
    node_rows: dict[int, tuple[int, int]] = {}
    side_rows: list[tuple[str, str]] = []
    proj_rows: list[tuple[str, str]] = []
    member_rows: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        head, args = parts[0], parts[1:]
        try:
            if head == "root" and len(args) == 1:
                if root is not None:
                    raise ParseError("more than one root", lineno)
                root = int(args[0])
            elif head == "node" and len(args) == 3:
                nid, parent, depth = map(int, args)
                if nid in node_rows:
                    raise ParseError(f"node {nid} declared twice", lineno)
                node_rows[nid] = (parent, depth)
            elif head == "side" and len(args) == 2 and args[0] in ("L", "R"):
                side_rows.append((args[0], args[1]))
            elif head == "proj" and len(args) == 2:
                proj_rows.append((args[0], args[1]))
            elif head == "member" and len(args) == 2:
                member_rows.append((args[0], int(args[1]), lineno))
            else:
                raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad integer in {raw.strip()!r}", lineno) from None
    if root is None:
        raise ParseError("no root record")
    if root in node_rows:
        raise ParseError(f"root {root} also declared as a node")

    index: dict[str, int] = {}
    labels: list[str] = []
    sides: list[int] = []
    for s, lab in side_rows:
        if lab in index:
            raise ParseError(f"vertex {lab} has two side records")
        index[lab] = len(labels)
        labels.append(lab)
        sides.append(0 if s == "L" else 1)
    side_arr = np.array(sides, dtype=np.int8)
    left = np.flatnonzero(side_arr == 0)
    right = np.flatnonzero(side_arr == 1)

    # nodes: ids renumbered densely in the order they appear sorted by id
    ids = [root] + sorted(node_rows)
    dense = {nid: i for i, nid in enumerate(ids)}
    depth_of = {root: 0}
    for nid in sorted(node_rows):
        parent, depth = node_rows[nid]
        if parent not in dense or parent == nid:
            raise ParseError(f"node {nid} has unknown parent {parent}")
    # depths must be consistent with parents
    pending = dict(node_rows)
    while pending:
        progressed = False
        for nid in list(pending):
            parent, depth = pending[nid]
            if parent in depth_of:
                if depth != depth_of[parent] + 1:
                    raise ParseError(f"node {nid} has depth {depth}, parent has {depth_of[parent]}")
                depth_of[nid] = depth
                del pending[nid]
                progressed = True
        if not progressed:
            raise ParseError("node records contain a cycle")

    members: dict[int, list[int]] = {nid: [] for nid in ids}
    for lab, nid, lineno in member_rows:
        if nid not in members:
            raise ParseError(f"membership edge to unknown node {nid}", lineno)
        if lab not in index:
            raise ParseError(f"membership of undeclared vertex {lab}", lineno)
        members[nid].append(index[lab])

    nodes = []
    for nid in ids:
        parent = None if nid == root else dense[node_rows[nid][0]]
        vs = np.array(sorted(set(members[nid])), dtype=np.int64)
        is_left = side_arr[vs] == 0 if len(vs) else np.zeros(0, dtype=bool)
        nodes.append(TreeNode(dense[nid], parent, depth_of[nid], vs[is_left], vs[~is_left]))
    for node in nodes:
        if node.parent is not None:
            nodes[node.parent].children.append(node.id)
    # children in id order, as written
    for node in nodes:
        node.children.sort()

    projection = original = None
    if proj_rows:
        origin = np.full(len(labels), -1, dtype=np.int64)
        roles = [""] * len(labels)
        orig_index: dict[str, int] = {}
        for lab, orig in proj_rows:
            if lab not in index:
                raise ParseError(f"projection of undeclared vertex {lab}")
            role = lab.rsplit("/", 1)[-1] if "/" in lab else ""
            if role not in BIPARTIZE_ROLES:
                raise ParseError(f"projected vertex {lab} does not name its copy (/L, /R, /P1, /P2)")
            v = index[lab]
            origin[v] = orig_index.setdefault(orig, len(orig_index))
            roles[v] = role
        if (origin < 0).any():
            raise ParseError("projection does not cover every vertex")
        projection = VertexProjection(origin, tuple(roles))
        original = tuple(orig_index)

    return SparseRep(nodes, left, right, tuple(labels), projection, original)


def read_sparse_rep(path) -> SparseRep:
    with open(path) as fh:
        return load_sparse_rep(fh.read())
