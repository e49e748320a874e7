import itertools
import random

import pytest

import oracles as O
from ehftw.connectify import (
    Alignment, CATERPILLAR, Connectifier, LINE_OF_CATERPILLAR, PATH,
    SUBDIVIDED_STAR, classify_alignment, classify_shape, erdos_szekeres,
    find_connectifier, simplicial_vertices, stable_in_bounded_outdegree,
    two_sided_classify, verify_connectifier,
)
from ehftw.errors import GuardExceeded, InputError
from ehftw.graph import Graph, cycle_graph, path_graph


class TestErdosSzekeres:
    def test_increasing_prefix(self):
        assert erdos_szekeres([1, 2, 3, 4, 5], 2) == [1, 2, 3]

    def test_decreasing_sequence(self):
        got = erdos_szekeres([5, 4, 3, 2, 1], 2)
        assert got == [5, 4, 3]

    def test_length_and_monotone_always(self):
        rng = random.Random(51)
        for _ in range(60):
            n = rng.randint(1, 4)
            seq = rng.sample(range(100), n * n + 1)
            out = erdos_szekeres(seq, n)
            assert len(out) == n + 1
            inc = all(a < b for a, b in zip(out, out[1:]))
            dec = all(a > b for a, b in zip(out, out[1:]))
            assert inc or dec
            # subsequence of seq
            idx = [seq.index(v) for v in out]
            assert idx == sorted(idx)

    def test_too_short_rejected(self):
        with pytest.raises(InputError):
            erdos_szekeres([1, 2, 3], 2)
        with pytest.raises(InputError):
            erdos_szekeres([1, 1, 2, 3, 4], 2)


class TestStableInBoundedOutdegree:
    def test_directed_cycle(self):
        arcs = {i: [(i + 1) % 5] for i in range(5)}
        s = stable_in_bounded_outdegree(arcs, 1)
        assert len(s) * 3 >= 5
        assert all((b not in arcs[a]) and (a not in arcs[b])
                   for a in s for b in s if a != b)

    def test_size_guarantee_random(self):
        rng = random.Random(52)
        for _ in range(40):
            n = rng.randint(1, 12)
            k = rng.randint(1, 3)
            arcs = {v: rng.sample([w for w in range(n) if w != v],
                                  min(rng.randint(0, k), n - 1))
                    for v in range(n)}
            s = stable_in_bounded_outdegree(arcs, k)
            assert len(s) * (2 * k + 1) >= n
            for a in s:
                for b in s:
                    if a != b:
                        assert b not in arcs[a] and a not in arcs[b]

    def test_outdegree_violation(self):
        with pytest.raises(InputError):
            stable_in_bounded_outdegree({0: [1, 2], 1: [], 2: []}, 1)


def caterpillar_graph():
    # spine 0-1-2-3 with legs 4 on 1 and 5 on 2
    return Graph(6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])


def subdivided_star_graph():
    # center 0 with three length-2 rays
    return Graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


class TestClassifyShape:
    def test_path(self):
        g = path_graph(4)
        kind, spine = classify_shape(g, frozenset(range(4)))
        assert kind == PATH and list(spine) in ([0, 1, 2, 3], [3, 2, 1, 0])

    def test_caterpillar(self):
        g = caterpillar_graph()
        kind, spine = classify_shape(g, frozenset(range(6)))
        assert kind == CATERPILLAR

    def test_subdivided_star(self):
        g = subdivided_star_graph()
        kind, spine = classify_shape(g, frozenset(range(7)))
        assert kind == SUBDIVIDED_STAR

    def test_line_of_caterpillar(self):
        # line graph of the spider S(1,1,2): a triangle with a pendant path
        g = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
        kind, _ = classify_shape(g, frozenset(range(5)))
        assert kind == LINE_OF_CATERPILLAR

    def test_cycle_is_nothing(self):
        g = cycle_graph(5)
        assert classify_shape(g, frozenset(range(5))) is None

    def test_simplicial_vertices_of_caterpillar(self):
        g = caterpillar_graph()
        z = simplicial_vertices(g, frozenset(range(6)))
        assert z == frozenset({0, 3, 4, 5})


class TestFindConnectifier:
    def host_with_path(self):
        # attachment set {0,1,2} each seeing one vertex of the path 3-4-5
        return Graph(6, [(3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])

    def test_path_outcome(self):
        g = self.host_with_path()
        conn = find_connectifier(g, {0, 1, 2}, 3)
        assert conn.kind == PATH
        assert conn.attached == frozenset({0, 1, 2})

    def test_star_outcome(self):
        g = Graph(11, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6),
                       (8, 2), (9, 4), (10, 6), (7, 1)])
        # host minus {7,8,9,10} is a subdivided star; each attacher sees
        # exactly one simplicial vertex except 7, which taps the interior
        conn = find_connectifier(g, {8, 9, 10}, 3)
        assert conn is not None
        assert verify_connectifier(g, conn)

    def test_preconditions(self):
        g = self.host_with_path()
        with pytest.raises(InputError):
            find_connectifier(g, {3, 4}, 2)  # not stable
        with pytest.raises(InputError):
            find_connectifier(Graph(3, [(0, 1)]), {2}, 1)  # 2 sees nothing
        with pytest.raises(GuardExceeded):
            find_connectifier(Graph(20, []), frozenset(), 1)

    def test_verify_rejects_tampering(self):
        g = self.host_with_path()
        conn = find_connectifier(g, {0, 1, 2}, 3)
        bad = Connectifier(h=conn.h, kind=CATERPILLAR, spine=conn.spine,
                           legs=[], attached=conn.attached)
        assert not verify_connectifier(g, bad)


class TestClassifyAlignment:
    def align_host(self):
        # induced path 0-1-2-3-4 with x1 at the head, x2 spiky inside,
        # x3 at the tail
        return Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4),
                         (5, 0), (6, 2), (7, 4)])

    def test_spiky(self):
        g = self.align_host()
        al = classify_alignment(g, (0, 1, 2, 3, 4), {5, 6, 7})
        assert al is not None
        assert al.kind == "spiky" and al.x == (5, 6, 7)

    def test_triangular(self):
        g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4),
                      (5, 0), (6, 1), (6, 2), (7, 4)])
        al = classify_alignment(g, (0, 1, 2, 3, 4), {5, 6, 7})
        assert al is not None and al.kind == "triangular"

    def test_wide(self):
        g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4),
                      (5, 0), (6, 1), (6, 3), (7, 4)])
        al = classify_alignment(g, (0, 1, 2, 3, 4), {5, 6, 7})
        assert al is not None and al.kind == "wide"

    def test_rejections(self):
        g = self.align_host()
        # fewer than three attachers
        assert classify_alignment(g, (0, 1, 2, 3, 4), {5, 7}) is None
        # p not induced
        g2 = Graph(8, list(g.edges()) + [(0, 2)])
        assert classify_alignment(g2, (0, 1, 2, 3, 4), {5, 6, 7}) is None
        # overlapping windows
        g3 = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 4),
                       (5, 0), (6, 1), (7, 1), (7, 4)])
        assert classify_alignment(g3, (0, 1, 2, 3, 4), {5, 6, 7}) is None


class TestTwoSided:
    def double_gadget(self):
        # y = {0,1,2}; side one a triangle (line graph of a star), side two
        # a star center with three leaves
        return Graph(10, [(3, 4), (4, 5), (3, 5), (3, 0), (4, 1), (5, 2),
                          (6, 7), (6, 8), (6, 9), (7, 0), (8, 1), (9, 2)])

    def test_triangle_and_star(self):
        g = self.double_gadget()
        res = two_sided_classify(g, frozenset({3, 4, 5}),
                                 frozenset({6, 7, 8, 9}),
                                 frozenset({0, 1, 2}), 3)
        assert res is not None
        xset, side1, side2 = res
        assert xset == frozenset({0, 1, 2})
        kinds = {getattr(side1, "kind", None), getattr(side2, "kind", None)}
        assert LINE_OF_CATERPILLAR in kinds or \
            any(isinstance(s, Alignment) and s.kind == "triangular"
                for s in (side1, side2))

    def test_preconditions(self):
        g = self.double_gadget()
        with pytest.raises(InputError):
            two_sided_classify(g, frozenset({3, 4, 5}),
                               frozenset({6, 7, 8, 9}),
                               frozenset({0, 1, 2}), 2)
        with pytest.raises(InputError):
            two_sided_classify(g, frozenset({3, 4}),
                               frozenset({6, 7, 8, 9}),
                               frozenset({0, 1, 2}), 3)
