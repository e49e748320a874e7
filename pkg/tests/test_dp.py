import itertools
import random

import pytest

import oracles as O
from ehftw.dp import PROBLEMS, make_nice, solve
from ehftw.errors import InputError
from ehftw.graph import (
    Graph, complete_bipartite, complete_graph, cycle_graph, path_graph,
)
from ehftw.treedec import TreeDecomposition, exact_treewidth, validate, width


def brute_stable(g):
    return max(len(c) for k in range(g.n + 1)
               for c in itertools.combinations(range(g.n), k)
               if g.is_stable(c))


def brute_dominating(g):
    for k in range(g.n + 1):
        for c in itertools.combinations(range(g.n), k):
            dom = set(c)
            for v in c:
                dom |= g.neighbors(v)
            if len(dom) == g.n:
                return k
    return g.n


def brute_chromatic(g):
    if g.n == 0:
        return 0
    for r in range(1, g.n + 1):
        for assign in itertools.product(range(r), repeat=g.n):
            if all(assign[a] != assign[b] for a, b in g.edges()):
                return r
    return g.n


class TestMakeNice:
    def test_valid_and_same_width(self):
        rng = random.Random(81)
        for _ in range(15):
            n = rng.randint(1, 8)
            g = O.random_graph(n, 0.4, rng)
            _, td = exact_treewidth(g)
            nice = make_nice(td)
            assert validate(g, nice).valid
            assert width(nice) == width(td)

    def test_unit_steps(self):
        _, td = exact_treewidth(cycle_graph(6))
        nice = make_nice(td)
        root = nice.nodes()[0]
        assert nice.bags[root] == frozenset()
        for a, b in nice.edges:
            assert abs(len(nice.bags[a]) - len(nice.bags[b])) <= 1


class TestKnownValues:
    def test_c5(self):
        g = cycle_graph(5)
        _, td = exact_treewidth(g)
        assert solve(g, td, "stable-set").value == 2
        assert solve(g, td, "vertex-cover").value == 3
        assert solve(g, td, "dominating-set").value == 2
        assert solve(g, td, "coloring").value == 3
        assert solve(g, td, "r-coloring", r=2).value is None
        assert solve(g, td, "r-coloring", r=3).value == 3

    def test_petersen(self):
        g = Graph(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                       (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                       (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)])
        _, td = exact_treewidth(g)
        assert solve(g, td, "stable-set").value == 4
        assert solve(g, td, "coloring").value == 3
        assert solve(g, td, "dominating-set").value == 3

    def test_bipartite_two_colors(self):
        g = complete_bipartite(3, 4)
        _, td = exact_treewidth(g)
        assert solve(g, td, "coloring").value == 2
        assert solve(g, td, "vertex-cover").value == 3


class TestCertificates:
    def test_witnesses_check_out(self):
        rng = random.Random(82)
        for _ in range(20):
            n = rng.randint(1, 8)
            g = O.random_graph(n, rng.choice([0.3, 0.5]), rng)
            _, td = exact_treewidth(g)
            ss = solve(g, td, "stable-set")
            assert g.is_stable(ss.witness) and len(ss.witness) == ss.value
            vc = solve(g, td, "vertex-cover")
            cover = set(vc.witness)
            assert all(a in cover or b in cover for a, b in g.edges())
            ds = solve(g, td, "dominating-set")
            dom = set(ds.witness)
            for v in ds.witness:
                dom |= g.neighbors(v)
            assert len(dom) == g.n
            col = solve(g, td, "coloring")
            cmap = {int(k): v for k, v in col.witness.items()}
            assert all(cmap[a] != cmap[b] for a, b in g.edges())
            assert len(set(cmap.values())) <= col.value

    def test_matches_brute_force(self):
        rng = random.Random(83)
        for _ in range(20):
            n = rng.randint(1, 8)
            g = O.random_graph(n, rng.choice([0.3, 0.6]), rng)
            _, td = exact_treewidth(g)
            assert solve(g, td, "stable-set").value == brute_stable(g)
            assert solve(g, td, "vertex-cover").value == g.n - brute_stable(g)
            assert solve(g, td, "dominating-set").value == brute_dominating(g)
            assert solve(g, td, "coloring").value == brute_chromatic(g)

    def test_works_on_suboptimal_decompositions(self):
        g = cycle_graph(6)
        td = TreeDecomposition({0: {0, 1, 2, 3}, 1: {0, 3, 4, 5}}, [(0, 1)])
        assert validate(g, td).valid
        assert solve(g, td, "stable-set").value == 3


class TestInputs:
    def test_unknown_problem(self):
        _, td = exact_treewidth(path_graph(3))
        with pytest.raises(InputError):
            solve(path_graph(3), td, "max-cut")

    def test_invalid_td(self):
        bad = TreeDecomposition({0: {0}})
        with pytest.raises(InputError):
            solve(path_graph(3), bad, "stable-set")

    def test_r_coloring_needs_r(self):
        _, td = exact_treewidth(path_graph(3))
        with pytest.raises(InputError):
            solve(path_graph(3), td, "r-coloring")

    def test_problem_catalog(self):
        assert set(PROBLEMS) == {"stable-set", "vertex-cover",
                                 "dominating-set", "r-coloring", "coloring"}
