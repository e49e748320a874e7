import random

import networkx as nx
import pytest

import oracles as O
from ehftw.errors import GuardExceeded, InputError
from ehftw.graph import (
    Graph, complete_bipartite, complete_graph, cycle_graph, path_graph,
)
from ehftw.treedec import (
    TreeDecomposition, adhesion, compose_with_separator, exact_treewidth,
    fatness, find_center, is_tight, torso, validate, width,
)


def path_td(n: int) -> TreeDecomposition:
    """Edge-bag path decomposition of P_n."""
    bags = {i: {i, i + 1} for i in range(n - 1)}
    return TreeDecomposition(bags, [(i, i + 1) for i in range(n - 2)])


class TestValidation:
    def test_edge_bag_path(self):
        assert validate(path_graph(5), path_td(5)).valid

    def test_missing_vertex(self):
        td = TreeDecomposition({0: {0, 1}})
        rep = validate(path_graph(3), td)
        assert not rep.valid and rep.missing_vertex == 2

    def test_missing_edge(self):
        td = TreeDecomposition({0: {0, 1}, 1: {2}}, [(0, 1)])
        rep = validate(path_graph(3), td)
        assert not rep.valid and rep.missing_edge == (1, 2)

    def test_disconnected_occurrence(self):
        td = TreeDecomposition({0: {0, 1}, 1: {1, 2}, 2: {0, 2}},
                               [(0, 1), (1, 2)])
        rep = validate(cycle_graph(3), td)
        assert not rep.valid and rep.disconnected_vertex is not None

    def test_non_tree_rejected(self):
        td = TreeDecomposition({0: {0}, 1: {0}, 2: {0}},
                               [(0, 1), (1, 2), (0, 2)])
        assert not validate(Graph(1, []), td).tree_ok


class TestMeasures:
    def test_width_adhesion(self):
        td = path_td(5)
        assert width(td) == 1 and adhesion(td) == 1

    def test_single_bag(self):
        td = TreeDecomposition({0: {0, 1, 2}})
        assert width(td) == 2 and adhesion(td) == 0

    def test_fatness_lexicographic(self):
        fat_one_bag = fatness(TreeDecomposition({0: {0, 1, 2}}), 3)
        fat_path = fatness(path_td(3), 3)
        assert fat_path < fat_one_bag
        assert fat_one_bag == (1, 0, 0, 0)

    def test_torso_completes_adhesions(self):
        g = path_graph(3)
        td = TreeDecomposition({0: {0, 2}, 1: {0, 1, 2}}, [(0, 1)])
        assert validate(g, td).valid
        t, labels = torso(g, td, 0)
        assert labels == [0, 2] and t.has_edge(0, 1)


class TestFindCenter:
    def test_path_decomposition_center(self):
        td = path_td(9)
        t0 = find_center(path_graph(9), td)
        for t1 in td.neighbors_t(t0):
            assert 2 * len(td.side_vertices(t0, t1) - td.bags[t0]) <= 9

    def test_single_bag_is_center(self):
        td = TreeDecomposition({0: {0, 1}})
        assert find_center(path_graph(2), td) == 0

    def test_least_id_tie_break(self):
        # both end bags satisfy the half bound here; the least node id wins
        g = Graph(4, [(0, 1), (0, 2), (0, 3)])
        td = TreeDecomposition({0: {0, 1}, 1: {0, 2}, 2: {0, 3}},
                               [(0, 1), (1, 2)])
        t0 = find_center(g, td)
        assert t0 == 0
        for t1 in td.neighbors_t(t0):
            assert 2 * len(td.side_vertices(t0, t1) - td.bags[t0]) <= g.n


class TestTightness:
    def test_edge_bag_path_tight(self):
        ok, e = is_tight(path_graph(4), path_td(4))
        assert ok and e is None

    def test_padded_bag_untight(self):
        # bag {0,1,3} next to {1,2,3}: adhesion {1,3} has no single
        # component of the far side covering it on both orientations
        g = path_graph(4)
        td = TreeDecomposition({0: {0, 1, 3}, 1: {1, 2, 3}}, [(0, 1)])
        assert validate(g, td).valid
        ok, e = is_tight(g, td)
        assert not ok and e is not None


class TestCompose:
    def test_star_around_separator(self):
        g = path_graph(5)
        x = frozenset({2})
        subs = [TreeDecomposition({0: {0, 1}}),
                TreeDecomposition({0: {3, 4}})]
        td = compose_with_separator(g, x, subs)
        assert validate(g, td).valid
        assert td.bags[0] == x
        assert all(x <= b for b in td.bags.values())

    def test_component_mismatch_rejected(self):
        with pytest.raises(InputError):
            compose_with_separator(path_graph(5), {2},
                                   [TreeDecomposition({0: {0, 1}})])


class TestExactTreewidth:
    KNOWN = [
        (path_graph(7), 1),
        (cycle_graph(6), 2),
        (complete_graph(5), 4),
        (complete_bipartite(3, 3), 3),
        (Graph(1, []), 0),
    ]

    def test_known_values(self):
        for g, tw in self.KNOWN:
            got, td = exact_treewidth(g)
            assert got == tw
            assert validate(g, td).valid and width(td) == tw

    def test_matches_networkx_upper_bound_never_beaten(self):
        rng = random.Random(31)
        for _ in range(30):
            n = rng.randint(1, 9)
            g = O.random_graph(n, rng.choice([0.3, 0.5, 0.7]), rng)
            tw, td = exact_treewidth(g)
            assert validate(g, td).valid and width(td) == tw
            ub, _ = nx.algorithms.approximation.treewidth_min_fill_in(
                O.to_nx(g))
            assert tw <= ub

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            exact_treewidth(Graph(15, []))
        tw, _ = exact_treewidth(Graph(15, []), max_n=15)
        assert tw == 0


class TestJsonRoundTrip:
    def test_round_trip(self):
        td = path_td(5)
        back = TreeDecomposition.from_json(td.to_json())
        assert back.bags == td.bags and back.edges == td.edges

    def test_malformed(self):
        with pytest.raises(InputError):
            TreeDecomposition.from_json("{\"nodes\": 3}")
