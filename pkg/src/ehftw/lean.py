"""Lean tree decompositions by fatness-decreasing improvement steps.

The refiner drives a tree decomposition to one that is k-lean and tight by
repeatedly (a) splitting along a minimum cut certifying a leanness violation
(the classical exchange of Bellenbaum and Diestel) and (b) splitting an
untight edge into per-component subtrees.  Both steps strictly decrease the
lexicographic fatness vector, so the loop terminates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graph import Graph
from .errors import GuardExceeded, InputError, effective_guard
from .treedec import (
    TreeDecomposition, adhesion, fatness, find_untight_edge, validate,
)

LEAN_K_GUARD = 4
LEAN_N_GUARD = 12


@dataclass
class LeanViolation:
    """Bag subsets Z, Z' of equal size s that cannot be linked by s disjoint
    paths even though every adhesion between their nodes has size >= s."""

    t: int
    t2: int
    z: frozenset
    z2: frozenset
    cut: frozenset
    paths: list

    @property
    def size(self) -> int:
        return len(self.z)


def _check_guards(g: Graph, k: int, max_k, max_n) -> None:
    k_guard = effective_guard(LEAN_K_GUARD, max_k)
    n_guard = effective_guard(LEAN_N_GUARD, max_n)
    if k > k_guard:
        raise GuardExceeded(f"leanness checks limited to k <= {k_guard}")
    if g.n > n_guard:
        raise GuardExceeded(
            f"leanness checks limited to {n_guard} vertices (n={g.n})")


def _min_path_adhesions(td: TreeDecomposition) -> Dict[tuple, float]:
    """Minimum adhesion size along the tree path, for every node pair."""
    out = {}
    for start in td.nodes():
        out[(start, start)] = float("inf")
        stack = [start]
        while stack:
            u = stack.pop()
            for w in td.neighbors_t(u):
                if (start, w) not in out:
                    a = len(td.bags[u] & td.bags[w])
                    out[(start, w)] = min(out[(start, u)], a)
                    stack.append(w)
    return out


def _split_exists(base: Tuple[int, int], pairs: List[Tuple[int, int]],
                  s: int) -> Optional[list]:
    """Assign each (x, y) pair to side A (counting x) or B (counting y) so
    that both side totals, seeded by base, reach s.  Returns the assignment
    as a list of 'A'/'B' or None."""
    cap = lambda v: min(v, s)
    states = {(cap(base[0]), cap(base[1])): []}
    for x, y in pairs:
        nxt = {}
        for (a, b), how in states.items():
            for key, tag in (((cap(a + x), b), "A"), ((a, cap(b + y)), "B")):
                if key not in nxt:
                    nxt[key] = how + [tag]
        states = nxt
    for (a, b), how in sorted(states.items()):
        if a >= s and b >= s:
            return how
    return None


def find_violation(g: Graph, td: TreeDecomposition, k: int,
                   max_k: Optional[int] = None,
                   max_n: Optional[int] = None) -> Optional[LeanViolation]:
    """First k-leanness violation in scan order (increasing subset size,
    then node-pair id), or None if td is k-lean.

    Rather than enumerating subset pairs directly, we enumerate candidate
    cuts C of size < s: a violation of size s exists for nodes (t, t')
    exactly when the components of g minus C can be split into two groups
    with s bag vertices of t on one side and s of t' on the other (cut
    vertices count for both).
    """
    if k < 1:
        raise InputError("leanness order k must be positive")
    _check_guards(g, k, max_k, max_n)
    if adhesion(td) >= k:
        raise InputError("leanness scan requires adhesion below k")
    min_adh = _min_path_adhesions(td)
    nodes = td.nodes()
    verts = range(g.n)
    for s in range(1, k + 1):
        cuts = [c for size in range(s)
                for c in itertools.combinations(verts, size)]
        comp_cache = {c: g.components(c) for c in cuts}
        for t in nodes:
            for t2 in nodes:
                if t2 < t:
                    continue
                if len(td.bags[t]) < s or len(td.bags[t2]) < s:
                    continue
                if min_adh[(t, t2)] < s:
                    continue
                for c in cuts:
                    cset = frozenset(c)
                    comps = comp_cache[c]
                    base = (len(td.bags[t] & cset), len(td.bags[t2] & cset))
                    pairs = [(len(td.bags[t] & d), len(td.bags[t2] & d))
                             for d in comps]
                    how = _split_exists(base, pairs, s)
                    if how is None:
                        continue
                    side_a = cset | frozenset().union(
                        frozenset(),
                        *(d for d, tag in zip(comps, how) if tag == "A"))
                    side_b = cset | frozenset().union(
                        frozenset(),
                        *(d for d, tag in zip(comps, how) if tag == "B"))
                    z = frozenset(sorted(td.bags[t] & side_a)[:s])
                    z2 = frozenset(sorted(td.bags[t2] & side_b)[:s])
                    count, paths, cut = g.menger(z, z2)
                    assert count < s, "cut enumeration disagrees with flow"
                    return LeanViolation(t=t, t2=t2, z=z, z2=z2,
                                         cut=cut, paths=paths)
    return None


def _linkage(g: Graph, src: frozenset, x: frozenset,
             side: frozenset) -> Dict[int, frozenset]:
    """|x| disjoint paths from src to x inside g[side], trimmed at their
    first x vertex; returns a map from each x vertex to its path."""
    if not x:
        return {}
    h, labels = g.induced(side)
    index = {v: i for i, v in enumerate(labels)}
    count, paths, _ = h.menger({index[v] for v in src},
                               {index[v] for v in x})
    assert count == len(x), "cut minimality guarantees a full linkage"
    out = {}
    for p in paths:
        real = [labels[i] for i in p]
        stop = next(i for i, v in enumerate(real) if v in x)
        trimmed = real[:stop + 1]
        out[trimmed[-1]] = frozenset(trimmed)
    assert set(out) == set(x)
    return out


def apply_improvement(g: Graph, td: TreeDecomposition,
                      v: LeanViolation) -> TreeDecomposition:
    """The exchange step: split the decomposition along the minimum cut of
    the violation into two linked copies, one per cut side."""
    x = v.cut
    assert len(x) < len(v.z)
    everything = frozenset(g.vertices())
    reach = set(v.z - x)
    stack = list(reach)
    while stack:
        for w in g.neighbors(stack.pop()):
            if w not in reach and w not in x:
                reach.add(w)
                stack.append(w)
    side_a = frozenset(reach) | x
    side_b = everything - frozenset(reach)
    assert v.z <= side_a and v.z2 <= side_b
    paths_a = _linkage(g, v.z, x, side_a)
    paths_b = _linkage(g, v.z2, x, side_b)

    order = {t: i for i, t in enumerate(td.nodes())}
    n_nodes = len(order)
    bags = {}
    for t in td.nodes():
        bag = td.bags[t]
        bags[order[t]] = (bag & side_a) | frozenset(
            xv for xv, p in paths_b.items() if bag & p)
        bags[order[t] + n_nodes] = (bag & side_b) | frozenset(
            xv for xv, p in paths_a.items() if bag & p)
    edges = []
    for a, b in td.edges:
        edges.append((order[a], order[b]))
        edges.append((order[a] + n_nodes, order[b] + n_nodes))
    # copy A holds Z and all of the cut via the Z'-side linkage at t2;
    # copy B symmetrically holds the cut at t
    edges.append((order[v.t2], order[v.t] + n_nodes))
    return prune(TreeDecomposition(bags, edges))


def tighten(g: Graph, td: TreeDecomposition, edge: tuple) -> TreeDecomposition:
    """Split an untight directed edge (t, t2): replace the far subtree by
    one copy per component D of the far side minus bag(t), restricted to
    D plus its neighborhood."""
    t, t2 = edge
    far_nodes = td.side_nodes(t, t2)
    far_union = td.side_vertices(t, t2)
    comps = g.components(frozenset(g.vertices()) - (far_union - td.bags[t]))
    assert comps, "an untight edge always has a far-side component"
    near = sorted(set(td.nodes()) - far_nodes)
    order = {s: i for i, s in enumerate(near)}
    bags = {order[s]: td.bags[s] for s in near}
    edges = [(order[a], order[b]) for a, b in td.edges
             if a in order and b in order]
    offset = len(near)
    far_sorted = sorted(far_nodes)
    for d in comps:
        closed = d | g.neighbors_of_set(d)
        ids = {s: offset + i for i, s in enumerate(far_sorted)}
        for s in far_sorted:
            bags[ids[s]] = td.bags[s] & closed
        edges.extend((ids[a], ids[b]) for a, b in td.edges
                     if a in ids and b in ids)
        edges.append((order[t], ids[t2]))
        offset += len(far_sorted)
    return prune(TreeDecomposition(bags, edges))


def prune(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose bag is contained in the neighbor's bag,
    to a fixpoint; afterwards no bag contains another anywhere in the tree."""
    bags = dict(td.bags)
    adj = {t: set(td.neighbors_t(t)) for t in td.nodes()}
    changed = True
    while changed:
        changed = False
        for a in sorted(bags):
            target = None
            for b in sorted(adj[a]):
                if bags[a] <= bags[b]:
                    target = b
                    break
            if target is None:
                continue
            for c in adj[a]:
                if c != target:
                    adj[c].discard(a)
                    adj[c].add(target)
                    adj[target].add(c)
            adj[target].discard(a)
            del bags[a], adj[a]
            changed = True
            break
    edges = sorted({(min(a, b), max(a, b))
                    for a in adj for b in adj[a]})
    return TreeDecomposition(bags, edges).relabeled()


def refine_to_lean(g: Graph, k: int,
                   seed: Optional[TreeDecomposition] = None,
                   max_k: Optional[int] = None,
                   max_n: Optional[int] = None,
                   on_step=None) -> TreeDecomposition:
    """Produce a k-lean, tight tree decomposition of g by fatness-decreasing
    improvement steps starting from `seed` (default: one bag holding
    everything).  `on_step` is called with the decomposition after every
    improvement."""
    if k < 2:
        raise InputError("leanness order k must be at least 2")
    _check_guards(g, k, max_k, max_n)
    if seed is None:
        td = TreeDecomposition({0: frozenset(g.vertices())})
    else:
        if not validate(g, seed).valid:
            raise InputError("seed is not a valid tree decomposition")
        if adhesion(seed) >= k:
            raise InputError("seed adhesion must be below k")
        td = seed
    td = prune(td)
    while True:
        fat = fatness(td, g.n)
        v = find_violation(g, td, k, max_k=max_k, max_n=max_n)
        if v is not None:
            td = apply_improvement(g, td, v)
        else:
            edge = find_untight_edge(g, td)
            if edge is None:
                break
            td = tighten(g, td, edge)
        assert fatness(td, g.n) < fat, "improvement must shrink the fatness"
        assert validate(g, td).valid
        if on_step is not None:
            on_step(td)
    assert adhesion(td) < k
    return td
