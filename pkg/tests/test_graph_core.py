import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsebranch.graphs import (
    BipartiteGraph,
    Graph,
    ParseError,
    bipartite_complement,
    bipartize,
    degeneracy,
    double,
    format_edge_list,
    induced_subgraph,
    load_edge_list,
    remove_isolated,
    twin_classes,
)
from sparsebranch.generators import grid, path, random_bipartite

from strategies import bipartite_graphs, graphs


def p4():
    # a1 b1, a2 b1, a2 b2 with a1=0, a2=1, b1=2, b2=3
    return BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 0), (1, 1)])


def ids(arrays):
    return [a.tolist() for a in arrays]


class TestLoadEdgeList:
    def test_path_on_three_vertices(self):
        g = load_edge_list("1 2\n2 3")
        assert g.n == 3 and g.num_edges == 2
        assert g.labeled_edges() == {frozenset("12"), frozenset("23")}

    def test_header_gives_isolated_vertices(self):
        g = load_edge_list("p 4 0\n")
        assert g.n == 4 and g.num_edges == 0

    def test_duplicates_collapse(self):
        assert load_edge_list("1 2\n1 2\n2 1").num_edges == 1

    def test_comments_and_blank_lines(self):
        assert load_edge_list("c hello\n\n1 2\n").num_edges == 1

    def test_self_loop_rejected(self):
        with pytest.raises(ParseError, match="self-loop"):
            load_edge_list("1 2\n3 3\n")

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(ParseError) as err:
            load_edge_list("1 2\n1 2 3\n")
        assert err.value.line == 2
        assert "line 2" in str(err.value)

    def test_header_count_mismatch(self):
        with pytest.raises(ParseError):
            load_edge_list("p 2 1\n1 3\n")

    def test_side_declarations(self):
        g = load_edge_list("s L a\ns R b\na b\n")
        bg = g.to_bipartite()
        assert [g.labels[v] for v in bg.left] == ["a"]
        assert [g.labels[v] for v in bg.right] == ["b"]

    def test_same_side_edge_rejected(self):
        with pytest.raises(ParseError):
            load_edge_list("s L a\ns L b\na b\n")

    def test_missing_side_declaration(self):
        with pytest.raises(ParseError, match="no side"):
            load_edge_list("s L a\na b\n")

    def test_format_is_canonical(self):
        text = format_edge_list(load_edge_list("3 1\n2 1\n10 2\n"))
        assert text.splitlines()[-3:] == ["1 2", "1 3", "2 10"]

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_format_then_load_is_identity(self, g):
        again = load_edge_list(format_edge_list(g))
        assert again.same_as(g)
        assert format_edge_list(again) == format_edge_list(g)


class TestBipartize:
    def test_single_edge(self):
        bg, proj = bipartize(Graph.from_edges(2, [(0, 1)]))
        assert len(bg) == 8 and bg.num_edges == 8

    def test_isolated_vertex(self):
        bg, proj = bipartize(Graph.from_edges(1, []))
        assert len(bg) == 4 and bg.num_edges == 3
        assert sorted(proj.role) == ["L", "P1", "P2", "R"]

    def test_triangle(self):
        bg, _ = bipartize(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
        assert len(bg) == 12 and bg.num_edges == 6 + 9

    def test_projection_maps_copies_home(self):
        g = path(3)
        bg, proj = bipartize(g)
        for v in np.concatenate([bg.left, bg.right]).tolist():
            assert bg.labels[v].split("/")[0] == g.labels[proj(v)]

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_degree_and_bipartiteness(self, g):
        bg, _ = bipartize(g)
        as_graph = bg.to_graph()
        assert nx.is_bipartite(nx.from_numpy_array(as_graph.adj.astype(int)))
        # the inner path copies always have degree 2, so edgeless inputs reach 2
        top = int(g.degrees().max(initial=0))
        assert as_graph.degrees().max(initial=0) <= max(top + 1, 2)


class TestDouble:
    def test_edgeless_is_perfect_matching(self):
        bg, _ = double(Graph.from_edges(2, []))
        assert np.array_equal(bg.adj, np.eye(2, dtype=bool))

    def test_single_edge_is_four_cycle(self):
        bg, _ = double(Graph.from_edges(2, [(0, 1)]))
        assert bg.adj.all() and bg.num_edges == 4

    def test_triangle_degrees(self):
        bg, _ = double(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
        assert bg.adj.sum(axis=1).tolist() == [3, 3, 3]

    @given(graphs())
    @settings(max_examples=60, deadline=None)
    def test_no_isolated_vertices(self, g):
        bg, proj = double(g)
        assert bg.adj.any(axis=0).all() and bg.adj.any(axis=1).all()
        assert np.array_equal(proj(bg.left), proj(bg.right))


class TestComplementAndInduced:
    def test_complete_to_edgeless(self):
        k22 = BipartiteGraph.from_edges(2, 2, itertools.product(range(2), range(2)))
        assert bipartite_complement(k22).is_edgeless()

    def test_edgeless_to_edge(self):
        assert bipartite_complement(BipartiteGraph.from_edges(1, 1, [])).num_edges == 1

    @given(bipartite_graphs())
    @settings(max_examples=60, deadline=None)
    def test_involution_and_edge_count(self, bg):
        comp = bipartite_complement(bg)
        assert bipartite_complement(comp) == bg
        assert bg.num_edges + comp.num_edges == bg.n_left * bg.n_right

    def test_full_sides_identity(self):
        bg = p4()
        assert induced_subgraph(bg, bg.left, bg.right) == bg

    def test_empty_right(self):
        sub = induced_subgraph(p4(), [0, 1], [])
        assert sub.n_left == 2 and sub.n_right == 0 and sub.is_edgeless()

    def test_p4_star(self):
        sub = induced_subgraph(p4(), [1], [2, 3])
        assert sub.num_edges == 2

    def test_not_a_subset(self):
        with pytest.raises(ValueError):
            induced_subgraph(p4(), [2], [3])


class TestTwinClasses:
    def test_complete_bipartite_one_class(self):
        k23 = BipartiteGraph.from_edges(2, 3, itertools.product(range(2), range(3)))
        assert ids(twin_classes(k23, [0, 1])) == [[2, 3, 4]]

    def test_matching_singletons(self):
        m = BipartiteGraph.from_edges(2, 2, [(0, 0), (1, 1)])
        assert ids(twin_classes(m, [0, 1])) == [[2], [3]]

    def test_p4_restricted(self):
        assert ids(twin_classes(p4(), [1])) == [[2, 3]]

    def test_inactive_excluded(self):
        assert ids(twin_classes(p4(), [0])) == [[2]]

    @given(bipartite_graphs(), st.data())
    @settings(max_examples=80, deadline=None)
    def test_partition_of_active_and_refinement(self, bg, data):
        if bg.n_left == 0:
            return
        small = data.draw(st.sets(st.sampled_from(bg.left.tolist())))
        big = sorted(small | data.draw(st.sets(st.sampled_from(bg.left.tolist()))))
        small = sorted(small)
        for subset in (small, big):
            classes = twin_classes(bg, subset)
            covered = sorted(v for c in classes for v in c.tolist())
            rows = bg.adj[bg.left_pos(subset)] if subset else np.zeros((0, bg.n_right), bool)
            assert covered == bg.right[rows.any(axis=0)].tolist()
            for c in classes:
                cols = rows[:, bg.right_pos(c)]
                assert (cols == cols[:, :1]).all()
            assert [c[0] for c in classes] == sorted(c[0] for c in classes)
        # classes over the larger set refine the smaller set's classes on vertices active for both
        fine = twin_classes(bg, big)
        coarse_of = {v: i for i, c in enumerate(twin_classes(bg, small)) for v in c.tolist()}
        for c in fine:
            homes = {coarse_of[v] for v in c.tolist() if v in coarse_of}
            assert len(homes) <= 1


class TestRemoveIsolated:
    def test_edgeless_becomes_empty(self):
        bg = remove_isolated(BipartiteGraph.from_edges(2, 2, []))
        assert len(bg) == 0

    def test_identity_without_isolated(self):
        assert remove_isolated(p4()) == p4()

    def test_star_plus_isolated(self):
        bg = BipartiteGraph.from_edges(1, 3, [(0, 0), (0, 1)])
        assert remove_isolated(bg).right.tolist() == [1, 2]


def brute_degeneracy(g: Graph) -> int:
    best = g.n
    for order in itertools.permutations(range(g.n)):
        seen = set()
        worst = 0
        for v in reversed(order):
            worst = max(worst, sum(1 for w in g.neighbors(v).tolist() if w in seen))
            seen.add(v)
        best = min(best, worst)
    return best if g.n else 0


class TestDegeneracy:
    def test_tree(self):
        assert degeneracy(path(7))[0] == 1

    def test_k4(self):
        assert degeneracy(Graph(~np.eye(4, dtype=bool)))[0] == 3

    def test_grid(self):
        assert degeneracy(grid(4, 4))[0] == 2

    def test_matches_networkx_core_number(self):
        g = random_bipartite(12, 12, 0.4, 5)
        cores = nx.core_number(nx.from_numpy_array(g.adj.astype(int)))
        assert degeneracy(g)[0] == max(cores.values())

    @given(graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, g):
        d, order = degeneracy(g)
        assert d == brute_degeneracy(g)
        assert sorted(order) == list(range(g.n))
