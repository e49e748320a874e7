import itertools
import random

import networkx as nx
import pytest

import oracles as O
from ehftw.errors import InputError
from ehftw.graph import (
    Graph, complete_graph, cycle_graph, path_graph,
)
from ehftw.pmc import (
    ChordalCompletion, clique_tree, is_chordal, is_pmc, minimal_completion,
    perfect_elimination_order, to_structured,
)
from ehftw.separators import is_minimal_separator
from ehftw.treedec import exact_treewidth, validate, width


def pmcs_by_definition(g: Graph):
    """Maximal cliques of minimal chordal completions, with completions
    enumerated exhaustively through all elimination orders."""
    fills = set()
    for order in itertools.permutations(range(g.n)):
        adj = {v: set(g.neighbors(v)) for v in g.vertices()}
        fill = set()
        for v in order:
            nb = sorted(adj[v])
            for a, b in itertools.combinations(nb, 2):
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    fill.add((a, b))
            for u in nb:
                adj[u].discard(v)
            adj[v].clear()
        fills.add(frozenset(fill))
    minimal = [f for f in fills if not any(h < f for h in fills)]
    out = set()
    for fill in minimal:
        h = O.to_nx(Graph(g.n, list(g.edges()) + sorted(fill)))
        for c in nx.find_cliques(h):
            out.add(frozenset(c))
    return out


class TestChordality:
    def test_trees_and_cliques(self):
        assert is_chordal(path_graph(6))
        assert is_chordal(complete_graph(5))

    def test_cycles(self):
        assert is_chordal(cycle_graph(3))
        assert not is_chordal(cycle_graph(4))
        assert not is_chordal(cycle_graph(6))

    def test_matches_networkx(self):
        rng = random.Random(17)
        for _ in range(80):
            n = rng.randint(1, 8)
            g = O.random_graph(n, rng.random(), rng)
            assert is_chordal(g) == nx.is_chordal(O.to_nx(g))

    def test_peo_is_perfect(self):
        rng = random.Random(18)
        for _ in range(40):
            g = O.random_graph(7, 0.5, rng)
            order = perfect_elimination_order(g)
            if order is None:
                continue
            pos = {v: i for i, v in enumerate(order)}
            for v in order:
                later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
                assert g.is_clique(later)


class TestIsPmc:
    def test_k3_whole_graph(self):
        ok, cert = is_pmc(complete_graph(3), {0, 1, 2})
        assert ok and cert["cover"] == {}

    def test_c4_pairs(self):
        g = cycle_graph(4)
        ok, cert = is_pmc(g, {0, 2})
        assert not ok  # {0,2} is a minimal separator, never a pmc:
        # both components are full
        ok, cert = is_pmc(g, {0, 1, 2})
        assert ok and cert["cover"][(0, 2)] == [3]

    def test_proper_subclique_rejected(self):
        ok, cert = is_pmc(complete_graph(3), {0, 1})
        assert not ok and "full_component" in cert

    def test_empty_rejected(self):
        assert is_pmc(path_graph(2), frozenset())[0] is False

    def test_matches_definition(self):
        rng = random.Random(19)
        for _ in range(20):
            n = rng.randint(2, 5)
            g = O.random_graph(n, rng.random(), rng)
            truth = pmcs_by_definition(g)
            for sub in O.all_subsets(n, min_size=1):
                assert is_pmc(g, sub)[0] == (frozenset(sub) in truth)


class TestMinimalCompletion:
    def test_chordal_untouched(self):
        g = path_graph(5)
        assert minimal_completion(g).fill == frozenset()

    def test_c4_single_chord(self):
        comp = minimal_completion(cycle_graph(4))
        assert len(comp.fill) == 1

    def test_result_chordal_and_minimal(self):
        rng = random.Random(20)
        for _ in range(30):
            g = O.random_graph(7, 0.4, rng)
            comp = minimal_completion(g)
            assert is_chordal(comp.completed())
            base = list(g.edges())
            for f in comp.fill:
                trial = comp.fill - {f}
                assert not is_chordal(Graph(g.n, base + sorted(trial)))

    def test_bad_order_rejected(self):
        with pytest.raises(InputError):
            minimal_completion(path_graph(3), order=[0, 1])


class TestCliqueTree:
    def test_path(self):
        td = clique_tree(ChordalCompletion(path_graph(4), frozenset()))
        assert sorted(sorted(b) for b in td.bags.values()) == \
            [[0, 1], [1, 2], [2, 3]]
        assert validate(path_graph(4), td).valid

    def test_empty_graph(self):
        td = clique_tree(ChordalCompletion(Graph(0, []), frozenset()))
        assert td.bags == {0: frozenset()}

    def test_width_is_clique_number_minus_one(self):
        rng = random.Random(21)
        for _ in range(25):
            g = O.random_graph(7, 0.5, rng)
            comp = minimal_completion(g)
            td = clique_tree(comp)
            assert validate(g, td).valid
            h = O.to_nx(comp.completed())
            best = max((len(c) for c in nx.find_cliques(h)), default=1)
            assert width(td) == best - 1

    def test_non_chordal_rejected(self):
        with pytest.raises(InputError):
            clique_tree(ChordalCompletion(cycle_graph(4), frozenset()))


class TestToStructured:
    def test_all_bags_become_pmcs(self):
        rng = random.Random(22)
        for _ in range(25):
            n = rng.randint(2, 8)
            g = O.random_graph(n, 0.4, rng)
            _, td = exact_treewidth(g)
            std = to_structured(g, td)
            assert validate(g, std).valid
            assert width(std) <= width(td)
            for bag in std.bags.values():
                assert is_pmc(g, bag)[0]
                assert any(bag <= old for old in td.bags.values())

    def test_adhesions_are_minimal_separators(self):
        rng = random.Random(23)
        for _ in range(20):
            g = O.random_graph(7, 0.45, rng)
            if not g.is_connected():
                continue
            std = to_structured(g, exact_treewidth(g)[1])
            for a, b in std.edges:
                adh = std.bags[a] & std.bags[b]
                if adh:
                    assert is_minimal_separator(g, adh)

    def test_invalid_input_rejected(self):
        g = path_graph(3)
        from ehftw.treedec import TreeDecomposition
        bad = TreeDecomposition({0: {0, 1}})
        with pytest.raises(InputError):
            to_structured(g, bad)
