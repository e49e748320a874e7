"""Separator machinery: minimal separators, full components, clique and star
cutsets, balanced separators, and canonical star separations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .graph import Graph
from .errors import GuardExceeded, InputError

BALANCED_WORK_GUARD = 4_000_000


@dataclass
class Separation:
    """A triple (y, x, z) of disjoint sets covering the host with no edges
    between y and z."""

    y: frozenset
    x: frozenset
    z: frozenset

    def is_valid(self, g: Graph) -> bool:
        parts = (self.y, self.x, self.z)
        if sum(len(p) for p in parts) != g.n:
            return False
        if frozenset().union(*parts) != frozenset(g.vertices()):
            return False
        return g.is_anticomplete(self.y, self.z)


@dataclass
class StarSeparation:
    """Canonical star separation (a, c, b) for an unbalanced vertex.

    b is the unique component of host minus N[center] holding more than half
    the vertices, c = N(b) + center, a is everything else.
    """

    center: int
    a: frozenset
    c: frozenset
    b: frozenset

    def is_valid(self, g: Graph) -> bool:
        parts = (self.a, self.c, self.b)
        if sum(len(p) for p in parts) != g.n:
            return False
        if frozenset().union(*parts) != frozenset(g.vertices()):
            return False
        if self.center not in self.c or not self.c <= g.closed_neighbors(self.center):
            return False
        if not g.is_anticomplete(self.a, self.b):
            return False
        if len(self.b) * 2 <= g.n:
            return False
        big = [d for d in g.components(g.closed_neighbors(self.center))
               if len(d) * 2 > g.n]
        if big != [self.b]:
            return False
        return self.c == g.neighbors_of_set(self.b) | {self.center}

    def to_json(self) -> dict:
        return {"center": self.center, "a": sorted(self.a),
                "c": sorted(self.c), "b": sorted(self.b)}


# ---------------------------------------------------------------------------

def full_components(g: Graph, x) -> list:
    """Components D of g minus x with N(D) = x."""
    x = g.check_vertex_set(x)
    return [d for d in g.components(x) if g.neighbors_of_set(d) == x]


def is_minimal_separator(g: Graph, x) -> bool:
    x = g.check_vertex_set(x)
    return bool(x) and len(full_components(g, x)) >= 2


def minimal_separators(g: Graph) -> list:
    """All minimal separators, by close-neighborhood seed and expansion.

    Seeds are the component neighborhoods of each closed-neighborhood
    deletion; every separator then spawns neighbors by deleting N(x) for
    each of its members.  Output sorted by size then lexicographically.
    """
    found = set()
    queue = []

    def offer(s: frozenset):
        if s and s not in found and len(full_components(g, s)) >= 2:
            found.add(s)
            queue.append(s)

    for v in range(g.n):
        for comp in g.components(g.closed_neighbors(v)):
            offer(g.neighbors_of_set(comp))
    while queue:
        s = queue.pop()
        for x in s:
            for comp in g.components(s | g.neighbors(x)):
                offer(g.neighbors_of_set(comp))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def clique_cutset(g: Graph) -> Optional[frozenset]:
    """First clique cutset in scan order; empty set iff g is disconnected.

    A graph has a clique cutset iff some minimal separator is a clique, so
    scanning the minimal separators is complete.
    """
    if g.n and len(g.components()) > 1:
        return frozenset()
    for s in minimal_separators(g):
        if g.is_clique(s):
            return s
    return None


def star_cutset(g: Graph) -> Optional[tuple]:
    """First star cutset as (center, cutset); (None, empty) iff disconnected.

    For a center x and a far seed u, the minimal candidate side containing u
    is the closure of {u} under adding neighbors outside N[x]; a star cutset
    centered at x exists iff some closure leaves the rest of the graph
    nonempty.
    """
    if g.n and len(g.components()) > 1:
        return (None, frozenset())
    everything = frozenset(g.vertices())
    for x in range(g.n):
        closed = g.closed_neighbors(x)
        for u in range(g.n):
            if u == x:
                continue
            side = {u}
            frontier = [u]
            hit_center = x == u
            while frontier and not hit_center:
                v = frontier.pop()
                for w in g.neighbors(v):
                    if w not in side and w not in closed:
                        if w == x:
                            hit_center = True
                            break
                        side.add(w)
                        frontier.append(w)
            if hit_center or x in side:
                continue
            cut = g.neighbors_of_set(side) | {x}
            rest = everything - side - cut
            if rest:
                assert cut <= closed and g.is_anticomplete(side, rest)
                return (x, frozenset(cut))
    return None


def balanced_separator(g: Graph, c: float, max_size: int,
                       weights: Optional[dict] = None) -> Optional[frozenset]:
    """Smallest (then lexicographically least) X with |X| <= max_size whose
    removal leaves every component of (weighted) size at most c times the
    total.  Exhaustive; None certifies absence at this size."""
    if not 0.5 <= c < 1:
        raise InputError("balance fraction must lie in [1/2, 1)")
    if weights is None:
        weights = {v: 1 for v in g.vertices()}
    total = sum(weights.get(v, 0) for v in g.vertices())
    bound = c * total
    max_size = min(max_size, g.n)
    work = 0
    for size in range(max_size + 1):
        for xs in itertools.combinations(range(g.n), size):
            work += 1
            if work > BALANCED_WORK_GUARD:
                raise GuardExceeded(
                    "balanced separator search exceeded its work budget")
            if all(sum(weights.get(v, 0) for v in comp) <= bound
                   for comp in g.components(xs)):
                return frozenset(xs)
    return None


def canonical_star(host: Graph, v: int) -> Optional[StarSeparation]:
    """The canonical star separation for v, if v is unbalanced in host
    (some component of host minus N[v] exceeds half the vertices)."""
    if not 0 <= v < host.n:
        raise InputError(f"vertex {v} out of range")
    big = [d for d in host.components(host.closed_neighbors(v))
           if len(d) * 2 > host.n]
    if not big:
        return None
    b = big[0]
    cset = host.neighbors_of_set(b) | {v}
    a = frozenset(host.vertices()) - b - cset
    sep = StarSeparation(center=v, a=a, c=cset, b=b)
    assert sep.is_valid(host)
    return sep
