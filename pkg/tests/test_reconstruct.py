import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from sparsebranch.generators import grid, halfgraph, random_regular
from sparsebranch.graphs import BipartiteGraph, Graph, ParseError
from sparsebranch.reconstruct import (
    adjacent,
    maximal_common_nodes,
    parity_conflicts,
    reconstruct,
    reconstruct_bipartite,
    verify_roundtrip,
)
from sparsebranch.sparsifier import build_sparse_rep, format_sparse_rep, load_sparse_rep

from strategies import bipartite_graphs, graphs


def p4():
    return BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 0), (1, 1)])


class TestAdjacent:
    def test_edgeless(self):
        sr = build_sparse_rep(BipartiteGraph.from_edges(2, 2, []))
        assert not any(adjacent(sr, u, v) for u in (0, 1) for v in (2, 3))

    def test_single_edge(self):
        sr = build_sparse_rep(BipartiteGraph.from_edges(1, 1, [(0, 0)]))
        assert adjacent(sr, 0, 1) and adjacent(sr, 1, 0)
        assert maximal_common_nodes(sr, 0, 1) == [1]

    def test_path_non_edge(self):
        sr = build_sparse_rep(p4())
        assert not adjacent(sr, 0, 3)
        assert adjacent(sr, 1, 3) and adjacent(sr, 0, 2)

    def test_same_side(self):
        with pytest.raises(ValueError, match="same side"):
            adjacent(build_sparse_rep(p4()), 0, 1)

    def test_missing_vertex(self):
        with pytest.raises(ValueError, match="not in the representation"):
            adjacent(build_sparse_rep(p4()), 0, 9)


class TestReconstruct:
    def test_edgeless(self):
        g = Graph.from_edges(3, [])
        assert reconstruct(build_sparse_rep(g)).same_as(g)

    def test_triangle(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert reconstruct(build_sparse_rep(g)).same_as(g)

    def test_grid(self):
        g = grid(5, 5)
        assert reconstruct(build_sparse_rep(g)).same_as(g)
        assert reconstruct(build_sparse_rep(g, bipartite=True)).same_as(g)

    def test_bipartite_mode_keeps_sides(self):
        g = grid(3, 2)
        back = reconstruct(build_sparse_rep(g, bipartite=True))
        assert back.same_as(g) and back.sides is not None

    def test_through_text(self):
        g = random_regular(20, 3, seed=4)
        sr = load_sparse_rep(format_sparse_rep(build_sparse_rep(g)))
        assert reconstruct(sr).same_as(g)

    def test_missing_copy_is_rejected(self):
        text = format_sparse_rep(build_sparse_rep(Graph.from_edges(2, [(0, 1)])))
        text = "\n".join(line for line in text.splitlines() if not line.startswith(("side R 1/R", "proj 1/R", "member 1/R")))
        with pytest.raises(ParseError, match="copy"):
            reconstruct(load_sparse_rep(text))

    def test_child_outside_parent_is_rejected(self):
        text = "root 0\nnode 1 0 1\nside L a\nside R b\nmember a 0\nmember a 1\nmember b 1\n"
        with pytest.raises(ParseError, match="outside its parent"):
            reconstruct(load_sparse_rep(text))

    def test_matches_pairwise_queries(self):
        bg = grid(4, 3).to_bipartite()
        sr = build_sparse_rep(bg)
        bip = reconstruct_bipartite(sr)
        for (i, u), (j, v) in itertools.product(enumerate(sr.left.tolist()), enumerate(sr.right.tolist())):
            assert bip[i, j] == adjacent(sr, u, v)


class TestVerifyRoundtrip:
    def test_edgeless(self):
        assert verify_roundtrip(Graph.from_edges(4, []))

    def test_half_graph(self):
        assert verify_roundtrip(halfgraph(4))
        assert verify_roundtrip(halfgraph(4), bipartite=True)

    def test_random_cubic(self):
        assert verify_roundtrip(random_regular(40, 3, seed=0))

    @given(graphs())
    @settings(max_examples=120, deadline=None)
    def test_general_graphs(self, g):
        assert verify_roundtrip(g)


class TestParity:
    @given(bipartite_graphs())
    @settings(max_examples=120, deadline=None)
    def test_all_maximal_nodes_agree(self, bg):
        sr = build_sparse_rep(bg)
        assert parity_conflicts(sr) == 0
        for u, v in itertools.product(sr.left.tolist(), sr.right.tolist()):
            verdicts = {sr.nodes[p].depth % 2 == 1 for p in maximal_common_nodes(sr, u, v)}
            assert verdicts == {bool(bg.adj[bg.left_pos([u])[0], bg.right_pos([v])[0]])}

    def test_root_is_the_maximal_node_for_early_isolated_pairs(self):
        # right vertex 2 is isolated, so it only ever sits in the root
        bg = BipartiteGraph(np.arange(2), np.arange(2, 4), np.array([[False, True], [False, True]]))
        sr = build_sparse_rep(bg)
        assert maximal_common_nodes(sr, 0, 2) == [0] and not adjacent(sr, 0, 2)

    def test_conflicts_are_counted(self):
        # two sibling leaves at different parities both contain the pair
        text = "root 0\nnode 1 0 1\nnode 2 1 2\nnode 3 0 1\nside L a\nside R b\n"
        text += "".join(f"member {x} {p}\n" for x in "ab" for p in (0, 1, 2, 3))
        sr = load_sparse_rep(text)
        assert parity_conflicts(sr) == 1
