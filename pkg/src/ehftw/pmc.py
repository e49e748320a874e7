"""Potential maximal cliques, chordality, minimal chordal completions,
clique trees, and structured tree decompositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graph import Graph
from .errors import InputError
from .treedec import TreeDecomposition, validate


@dataclass
class ChordalCompletion:
    base: Graph
    fill: frozenset  # frozenset of sorted vertex pairs, disjoint from E(base)

    def completed(self) -> Graph:
        return Graph(self.base.n, list(self.base.edges()) + sorted(self.fill))


def perfect_elimination_order(g: Graph) -> Optional[list]:
    """A perfect elimination order found by maximum cardinality search, or
    None when g is not chordal."""
    weight = [0] * g.n
    placed = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((w for w in g.vertices() if not placed[w]),
                key=lambda w: (weight[w], -w))
        placed[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not placed[w]:
                weight[w] += 1
    order.reverse()  # eliminate in this order
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=lambda w: pos[w])
        if any(w != u and not g.has_edge(u, w) for w in later):
            return None
    return order


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_order(g) is not None


def is_pmc(g: Graph, omega) -> Tuple[bool, dict]:
    """Potential-maximal-clique test with certificate.

    True iff no component of g minus omega is full and every nonadjacent
    pair inside omega is covered by some component's neighborhood.  The
    certificate holds the covering component per pair, or the violation.
    """
    omega = g.check_vertex_set(omega)
    if not omega:
        return (False, {"reason": "empty"})
    comps = g.components(omega)
    nbrs = [g.neighbors_of_set(d) for d in comps]
    for d, nd in zip(comps, nbrs):
        if nd == omega:
            return (False, {"full_component": sorted(d)})
    cover = {}
    for x, y in itertools.combinations(sorted(omega), 2):
        if g.has_edge(x, y):
            continue
        hit = next((d for d, nd in zip(comps, nbrs)
                    if x in nd and y in nd), None)
        if hit is None:
            return (False, {"uncovered_pair": (x, y)})
        cover[(x, y)] = sorted(hit)
    return (True, {"cover": cover})


def minimal_completion(g: Graph, order: Optional[list] = None,
                       ) -> ChordalCompletion:
    """A minimal chordal completion: fill along an elimination order, then
    drop redundant fill edges until none can be removed."""
    if order is None:
        order = list(g.vertices())
    elif sorted(order) != list(g.vertices()):
        raise InputError("order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    fill = set()
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        for a, b in itertools.combinations(sorted(later), 2):
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                fill.add((a, b))

    base_edges = list(g.edges())
    removed = True
    while removed:
        removed = False
        for f in sorted(fill):
            trial = fill - {f}
            if is_chordal(Graph(g.n, base_edges + sorted(trial))):
                fill = trial
                removed = True
    return ChordalCompletion(base=g, fill=frozenset(fill))


def _maximal_cliques_chordal(h: Graph) -> List[frozenset]:
    order = perfect_elimination_order(h)
    if order is None:
        raise InputError("clique tree needs a chordal graph")
    pos = {v: i for i, v in enumerate(order)}
    cliques = []
    for v in order:
        c = frozenset([v] + [w for w in h.neighbors(v) if pos[w] > pos[v]])
        if not any(c < other or c == other for other in cliques):
            cliques = [x for x in cliques if not x < c]
            cliques.append(c)
    return sorted(cliques, key=sorted)


def clique_tree(completion: ChordalCompletion) -> TreeDecomposition:
    """Tree decomposition of the base graph whose bags are the maximal
    cliques of the completion, joined by a maximum-weight spanning tree on
    bag intersections."""
    h = completion.completed()
    if h.n == 0:
        return TreeDecomposition({0: frozenset()})
    cliques = _maximal_cliques_chordal(h)
    bags = {i: c for i, c in enumerate(cliques)}
    edges = []
    if len(cliques) > 1:
        in_tree = {0}
        while len(in_tree) < len(cliques):
            best = None
            for i in sorted(in_tree):
                for j in range(len(cliques)):
                    if j in in_tree:
                        continue
                    w = len(cliques[i] & cliques[j])
                    if best is None or w > best[0]:
                        best = (w, i, j)
            edges.append((best[1], best[2]))
            in_tree.add(best[2])
    td = TreeDecomposition(bags, edges)
    assert validate(completion.base, td).valid
    return td


def to_structured(g: Graph, td: TreeDecomposition) -> TreeDecomposition:
    """Turn a valid decomposition into one whose bags are all potential
    maximal cliques, each contained in some original bag, without
    increasing the width."""
    if not validate(g, td).valid:
        raise InputError("cannot structure an invalid tree decomposition")
    fill0 = set()
    for b in td.bags.values():
        for x, y in itertools.combinations(sorted(b), 2):
            if not g.has_edge(x, y):
                fill0.add((x, y))
    base_edges = list(g.edges())
    removed = True
    while removed:
        removed = False
        for f in sorted(fill0):
            trial = fill0 - {f}
            if is_chordal(Graph(g.n, base_edges + sorted(trial))):
                fill0 = trial
                removed = True
    out = clique_tree(ChordalCompletion(base=g, fill=frozenset(fill0)))
    for bag in out.bags.values():
        assert is_pmc(g, bag)[0] or g.n == 0
        assert any(bag <= old for old in td.bags.values())
    return out
