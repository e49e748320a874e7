"""Covering stable bag subsets by few component neighborhoods, and
empirical reports on how large stable sets of non-hubs get inside bags and
minimal separators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional

from .graph import Graph
from .errors import ClassViolation, InputError
from . import patterns
from .separators import minimal_separators
from .pmc import is_pmc
from .treedec import TreeDecomposition


def _max_stable_subset(g: Graph, pool: frozenset) -> frozenset:
    best = frozenset()
    pool = sorted(pool)
    for size in range(len(pool), 0, -1):
        if size <= len(best):
            break
        for combo in itertools.combinations(pool, size):
            if g.is_stable(combo):
                return frozenset(combo)
    return best


def cover_by_components(g: Graph, td: TreeDecomposition, node: int,
                        y) -> List[frozenset]:
    """At most four components of g minus bag(node) whose neighborhoods
    cover the stable set y.

    Greedy, following the maximal-intersection choices of the existence
    proof: the first component maximizes its overlap with y, each later one
    covers the least uncovered vertex while overlapping the already covered
    part as much as possible.  A failure with four components is impossible
    for class members, so it raises a class violation with a witness.
    """
    if node not in td.bags:
        raise InputError(f"unknown tree node {node}")
    y = g.check_vertex_set(y)
    bag = td.bags[node]
    if not y <= bag:
        raise InputError("y must sit inside the chosen bag")
    if not g.is_stable(y):
        raise InputError("y must be stable")
    if not is_pmc(g, bag)[0]:
        raise InputError("cover_by_components needs a structured "
                         "decomposition (each bag a potential maximal "
                         "clique)")
    if not y:
        return []
    comps = g.components(bag)
    nbrs = [g.neighbors_of_set(d) for d in comps]
    seen = frozenset().union(frozenset(), *nbrs)
    for x in y - seen:
        # a bag vertex outside every component neighborhood must be
        # complete to the rest of the bag (else the pair-covering property
        # of potential maximal cliques would place it in one); such
        # vertices are outside the covering obligation
        if not bag - {x} <= g.neighbors(x):
            raise InputError(
                f"vertex {x} is uncovered yet not complete to its bag; "
                "the decomposition is not structured")
    y = y & seen
    if not y:
        return []

    chosen: List[frozenset] = []
    covered: frozenset = frozenset()
    available = list(zip(comps, nbrs))
    first = max(available, key=lambda dn: (len(dn[1] & y), sorted(dn[0])))
    chosen.append(first[0])
    covered = first[1] & y
    while covered != y and len(chosen) < 4:
        x = min(y - covered)
        cands = [dn for dn in available
                 if x in dn[1] and dn[0] not in chosen]
        if not cands:
            break
        pick = max(cands,
                   key=lambda dn: (len(dn[1] & covered), len(dn[1] & y),
                                   sorted(dn[0])))
        chosen.append(pick[0])
        covered |= pick[1] & y
    if covered != y:
        # greedy can be unlucky; fall back to an exhaustive scan before
        # declaring the instance outside the class
        for k in range(1, 5):
            for combo in itertools.combinations(range(len(comps)), k):
                if y <= frozenset().union(frozenset(),
                                          *(nbrs[i] for i in combo)):
                    return [comps[i] for i in combo]
        wit = patterns.find_theta(g) or patterns.find_even_wheel(g)
        raise ClassViolation(
            "stable bag subset needs more than four component "
            "neighborhoods", witness=wit)
    return chosen


@dataclass
class NonHubReport:
    tau: int
    max_bag_stable: int
    bag_bound: int
    bag_ok: bool
    bag_witness: list
    max_separator_stable: int
    separator_bound: int
    separator_ok: bool
    separator_witness: list

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "bags": {"max_stable_nonhub": self.max_bag_stable,
                     "bound": self.bag_bound, "ok": self.bag_ok,
                     "witness": self.bag_witness},
            "separators": {"max_stable_nonhub": self.max_separator_stable,
                           "bound": self.separator_bound,
                           "ok": self.separator_ok,
                           "witness": self.separator_witness},
        }


def check_nonhub_bounds(g: Graph, td: TreeDecomposition,
                        tau: int) -> NonHubReport:
    """Report the largest stable set of non-hub vertices inside any bag and
    inside any minimal separator, against the configured bounds 4*tau and
    tau.  Report-only: the true constants are not computable here."""
    if tau < 1:
        raise InputError("tau must be positive")
    hub_set = patterns.hubs(g)
    best_bag: frozenset = frozenset()
    for t in td.nodes():
        pool = td.bags[t] - hub_set
        cand = _max_stable_subset(g, pool)
        if len(cand) > len(best_bag):
            best_bag = cand
    best_sep: frozenset = frozenset()
    for s in minimal_separators(g):
        pool = s - hub_set
        cand = _max_stable_subset(g, pool)
        if len(cand) > len(best_sep):
            best_sep = cand
    return NonHubReport(
        tau=tau,
        max_bag_stable=len(best_bag), bag_bound=4 * tau,
        bag_ok=len(best_bag) <= 4 * tau, bag_witness=sorted(best_bag),
        max_separator_stable=len(best_sep), separator_bound=tau,
        separator_ok=len(best_sep) <= tau,
        separator_witness=sorted(best_sep))
