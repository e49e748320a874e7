"""The recursive decomposition pipeline: hub partitions, connector sets, the
central bag and its star-separation core, and the assembly of the pieces back
into a tree decomposition of the whole graph."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .graph import Graph
from .errors import ClassViolation, GuardExceeded, InputError
from . import patterns
from .separators import (
    StarSeparation, balanced_separator, canonical_star, clique_cutset,
)
from .treedec import (
    TreeDecomposition, compose_with_separator, exact_treewidth, find_center,
    torso, validate, width,
)
from .lean import refine_to_lean
from .pmc import ChordalCompletion, to_structured


@dataclass(frozen=True)
class Params:
    """Configured constants of the pipeline.

    The leanness order is m = k_t + 2d; the separator budget for the central
    bag is delta - m = 2m(m-1) + c_t; psi = 4 tau bounds how many connector
    remainders a structured bag can meet.  The published constants are
    Ramsey-sized, so the defaults here are a small "desk profile" meant for
    instances a brute-force oracle can still check.
    """

    t: int = 4
    d: int = 6
    k_t: int = 2
    c_t: int = 4
    tau: int = 4

    def __post_init__(self):
        if min(self.t, self.d, self.k_t, self.c_t, self.tau) < 1:
            raise InputError("all pipeline constants must be positive")
        if self.m < 3:
            raise InputError("leanness order m = k_t + 2d must be >= 3")
        assert self.delta >= self.m

    @property
    def m(self) -> int:
        return self.k_t + 2 * self.d

    @property
    def delta(self) -> int:
        return (2 * self.m - 1) * self.m + self.c_t

    @property
    def psi(self) -> int:
        return 4 * self.tau

    def width_bound(self, n: int, hub_order: int) -> float:
        if n <= 0:
            return float(self.c_t)
        return self.c_t + self.delta * self.psi * (math.log2(n) + hub_order)


def desk_params() -> Params:
    return Params()


def small_params() -> Params:
    """The smallest legal profile (m = 3); the only one whose leanness order
    fits under the refiner guard, so the central-bag branch can actually
    run."""
    return Params(t=4, d=1, k_t=1, c_t=1, tau=1)


@dataclass
class HubPartition:
    parts: List[frozenset]

    @property
    def order(self) -> int:
        return len(self.parts)

    def is_valid(self, g: Graph, d: int) -> bool:
        hub_set = patterns.hubs(g)
        seen = set()
        for part in self.parts:
            if not g.is_stable(part) or part & seen:
                return False
            seen |= part
        if frozenset(seen) != hub_set:
            return False
        remaining = set(hub_set)
        for part in self.parts:
            for v in part:
                if len(g.neighbors(v) & remaining) > d:
                    return False
            remaining -= part
        return True


@dataclass
class CentralBagState:
    """Everything the assembly steps need about one central-bag computation."""

    host: Graph
    t0: int
    m: int
    beta: frozenset
    beta0: frozenset  # the center bag chi(t0)
    s_prime: frozenset
    s_bad: frozenset
    conn: Dict[int, frozenset]  # tree neighbor -> Conn(t')
    stars: Dict[int, StarSeparation] = field(default_factory=dict)
    core: frozenset = frozenset()
    beta_a: frozenset = frozenset()


def _find_witness(g: Graph):
    for finder in (patterns.find_c4, patterns.find_theta, patterns.find_prism):
        w = finder(g)
        if w is not None:
            return w
    return patterns.find_even_wheel(g)


def _lemma(condition: bool, g: Graph, description: str) -> None:
    """Raise a class violation carrying a pattern witness when a verified
    lemma fails; on class members these conditions are theorems."""
    if condition:
        return
    raise ClassViolation(f"verified lemma failed: {description}",
                        witness=_find_witness(g))


# -- hub partition ---------------------------------------------------------

def hub_partition(g: Graph, d: int) -> HubPartition:
    """Partition the hubs of g into stable sets S_1, ..., S_k so that every
    v in S_i has at most d neighbors among the later hubs.

    Greedy: peel the vertices of degree <= d in the remaining hub graph,
    split the peel into stable sets by greedy coloring, emit those, repeat.
    """
    if d < 1:
        raise InputError("degeneracy bound d must be positive")
    hub_set = patterns.hubs(g)
    remaining = set(hub_set)
    parts: List[frozenset] = []
    while remaining:
        peel = sorted(v for v in remaining
                      if len(g.neighbors(v) & remaining) <= d)
        if not peel:
            raise GuardExceeded(
                "hub graph has minimum degree above d on "
                f"{sorted(remaining)}; increase d")
        color: Dict[int, int] = {}
        for v in peel:
            used = {color[w] for w in g.neighbors(v) if w in color}
            c = 0
            while c in used:
                c += 1
            color[v] = c
        for c in range(max(color.values()) + 1):
            parts.append(frozenset(v for v in peel if color[v] == c))
        remaining -= set(peel)
    hp = HubPartition(parts=parts)
    assert hp.is_valid(g, d)
    return hp


# -- connectors ------------------------------------------------------------

def build_conn(g: Graph, td: TreeDecomposition, t0: int, t1: int,
               ) -> frozenset:
    """Conn(t1) = K + M for the tree edge (t0, t1): M is the adhesion and K
    an inclusion-minimal connected piece of the far side (minus the center
    bag) whose neighborhood covers M."""
    if t1 not in td.neighbors_t(t0):
        raise InputError(f"{t1} is not a tree neighbor of {t0}")
    m_set = td.bags[t0] & td.bags[t1]
    far = td.side_vertices(t0, t1)
    pool = far - td.bags[t0]
    candidates = [comp for comp in g.components(
        frozenset(g.vertices()) - pool)
        if comp <= pool and m_set <= g.neighbors_of_set(comp)]
    if not candidates:
        raise InputError(
            f"edge ({t0}, {t1}) is not tight: no far component sees the "
            "whole adhesion")
    k_set = min(candidates, key=sorted)
    shrunk = True
    while shrunk:
        shrunk = False
        for v in sorted(k_set):
            trial = k_set - {v}
            if trial and g.is_connected(trial) and \
                    m_set <= g.neighbors_of_set(trial):
                k_set = trial
                shrunk = True
                break
    conn = k_set | m_set
    # in the replacement graph (G minus the far side, plus Conn), K's
    # neighborhood is exactly the adhesion and none of K may be a hub
    keep = (frozenset(g.vertices()) - far) | conn
    sub, labels = g.induced(keep)
    back = {i: labels[i] for i in range(sub.n)}
    fwd = {v: i for i, v in enumerate(labels)}
    k_local = frozenset(fwd[v] for v in k_set)
    assert sub.neighbors_of_set(k_local) == frozenset(fwd[v] for v in m_set)
    bad = k_local & patterns.hubs(sub)
    if bad:
        v = min(bad)
        wheel = next((w for w in patterns.find_wheels(sub)
                      if w.center == v and w.subkind == "proper"), None)
        if wheel is not None:
            wheel = patterns.WheelWitness(
                hole=tuple(back[q] for q in wheel.hole),
                center=back[wheel.center], subkind=wheel.subkind)
        raise ClassViolation(
            f"connector vertex {back[v]} is a hub of the replacement graph",
            witness=wheel)
    return conn


# -- the central bag -------------------------------------------------------

def _check_s_prime(g: Graph, s_prime: frozenset, d: int) -> None:
    if not g.is_stable(s_prime):
        raise InputError("the hub set S' must be stable")
    hub_set = patterns.hubs(g)
    if not s_prime <= hub_set:
        raise InputError("S' must consist of hubs")
    for v in s_prime:
        if len(g.neighbors(v) & hub_set) > d:
            raise InputError(f"vertex {v} is not {d}-safe")


def build_beta(g: Graph, td: TreeDecomposition, t0: int, s_prime,
               params: Params) -> Tuple[frozenset, frozenset, Dict[int, frozenset]]:
    """The central bag beta(S'): the center bag plus all connector sets,
    minus the (at most one) uncooperative member of S'."""
    s_prime = g.check_vertex_set(s_prime)
    _check_s_prime(g, s_prime, params.d)
    if clique_cutset(g) is not None:
        raise InputError("central bag machinery requires no clique cutset")
    if t0 not in td.bags:
        raise InputError(f"unknown tree node {t0}")
    m = params.m
    tg, tlabels = torso(g, td, t0)
    tpos = {v: i for i, v in enumerate(tlabels)}
    s_bad = frozenset(
        v for v in s_prime & td.bags[t0]
        if tg.degree(tpos[v]) >= 2 * m * (m - 1))
    _lemma(len(s_bad) <= 1, g,
           "two nonadjacent d-safe vertices are both uncooperative")
    conn = {t1: build_conn(g, td, t0, t1)
            for t1 in sorted(td.neighbors_t(t0))}
    beta = (td.bags[t0] | frozenset().union(frozenset(), *conn.values())) \
        - s_bad
    return beta, s_bad, conn


def central_bag(g: Graph, td: TreeDecomposition, t0: int, s_prime,
                params: Params, check_balance: bool = True,
                ) -> CentralBagState:
    """Compute beta(S'), the canonical star separations of its core, and the
    shrunken central bag beta^A(S').

    With check_balance the function refuses hosts whose beta still has a
    balanced separator of size delta - m; the caller is then expected to
    take the separator branch instead.
    """
    s_prime = g.check_vertex_set(s_prime)
    beta, s_bad, conn = build_beta(g, td, t0, s_prime, params)
    m = params.m
    bg, blabels = g.induced(beta)
    bpos = {v: i for i, v in enumerate(blabels)}
    if check_balance:
        if balanced_separator(bg, 0.5, params.delta - m) is not None:
            raise InputError(
                "beta admits a small balanced separator; take the "
                "separator branch instead of the central bag")
    s_members = sorted((s_prime - s_bad) & td.bags[t0])
    stars: Dict[int, StarSeparation] = {}
    for s in s_members:
        star = canonical_star(bg, bpos[s])
        _lemma(star is not None, g,
               f"core candidate {s} is balanced in beta")
        stars[s] = StarSeparation(
            center=s,
            a=frozenset(blabels[i] for i in star.a),
            c=frozenset(blabels[i] for i in star.c),
            b=frozenset(blabels[i] for i in star.b))

    def twins(u: int, v: int) -> bool:
        return (stars[u].b == stars[v].b
                and stars[u].c - {u} == stars[v].c - {v}
                and stars[u].a | {u} == stars[v].a | {v})

    def below(x: int, y: int) -> bool:
        # the partial order <=_A, with ascending vertex id as the order O
        if x == y:
            return True
        if twins(x, y):
            return x < y
        return y in stars[x].a

    core = frozenset(v for v in s_members
                     if not any(u != v and below(u, v) for u in s_members))
    if core:
        beta_a = frozenset.intersection(
            *(stars[v].b | stars[v].c for v in core))
    else:
        beta_a = beta
    state = CentralBagState(host=g, t0=t0, m=m, beta=beta,
                            beta0=td.bags[t0], s_prime=s_prime, s_bad=s_bad,
                            conn=conn, stars=stars, core=core, beta_a=beta_a)
    for u in sorted(core):
        _lemma(stars[u].c <= beta_a, g,
               f"C({u}) escapes the shrunken central bag")
        _lemma(len(stars[u].c & state.beta0) <= 2 * m * (m - 1), g,
               f"C({u}) meets the center bag too much")
        for v in sorted(core):
            if u < v:
                _lemma(not (stars[u].a & stars[v].c)
                       and not (stars[u].c & stars[v].a), g,
                       "core star separations are not loosely laminar")
    for comp in bg.components(frozenset(bpos[v] for v in beta_a)):
        d_set = frozenset(blabels[i] for i in comp)
        owners = [v for v in sorted(core) if d_set <= stars[v].a]
        _lemma(bool(owners), g,
               "a component outside beta^A avoids every core star")
        for v in owners:
            nb = g.neighbors_of_set(d_set) & beta
            _lemma(nb <= stars[v].c, g,
                   "a component outside beta^A leaks past C(v)")
    ag, alabels = g.induced(beta_a)
    hubs_a = frozenset(alabels[i] for i in patterns.hubs(ag))
    _lemma(not (hubs_a & s_prime), g, "S' still contains a hub of beta^A")
    return state


# -- assembly --------------------------------------------------------------

def _relabel(td: TreeDecomposition, labels) -> TreeDecomposition:
    return TreeDecomposition(
        {t: frozenset(labels[v] for v in bag) for t, bag in td.bags.items()},
        list(td.edges))


def _merge_trees(pieces: List[TreeDecomposition],
                 joins: List[Tuple[int, int, int, int]],
                 ) -> Tuple[Dict[int, frozenset], list]:
    """Union of node-disjoint relabeled trees plus join edges given as
    (piece_a, node_a, piece_b, node_b)."""
    offset = []
    total = 0
    for piece in pieces:
        offset.append(total)
        total += len(piece.bags)
    ids = []
    bags: Dict[int, frozenset] = {}
    edges = []
    for pi, piece in enumerate(pieces):
        local = {t: offset[pi] + i for i, t in enumerate(piece.nodes())}
        ids.append(local)
        for t in piece.nodes():
            bags[local[t]] = piece.bags[t]
        edges.extend((local[a], local[b]) for a, b in piece.edges)
    for pa, ta, pb, tb in joins:
        edges.append((ids[pa][ta], ids[pb][tb]))
    return bags, edges


def assemble_beta(td0: TreeDecomposition,
                  component_tds: List[TreeDecomposition],
                  state: CentralBagState) -> TreeDecomposition:
    """Extend a tree decomposition of beta^A to one of beta: pad core bags
    with their C(v) sets and hang each component of beta minus beta^A below
    a bag of its anchor vertex."""
    g = state.host
    if frozenset().union(frozenset(), *td0.bags.values()) != state.beta_a:
        raise InputError("td0 must cover beta^A exactly")
    comps = sorted(g.components(frozenset(g.vertices())
                                - (state.beta - state.beta_a)),
                   key=sorted)
    comps = [c for c in comps if c <= state.beta - state.beta_a]
    if len(comps) != len(component_tds):
        raise InputError(
            f"expected {len(comps)} component decompositions, "
            f"got {len(component_tds)}")
    m = state.m
    anchors = []
    for d_set, sub in zip(comps, component_tds):
        if frozenset().union(frozenset(), *sub.bags.values()) != d_set:
            raise InputError("component decomposition does not match its "
                             "component of beta minus beta^A")
        owners = [v for v in sorted(state.core)
                  if d_set <= state.stars[v].a]
        if not owners:
            raise InputError("component has no core anchor vertex")
        r = owners[0]
        t = next((t for t in td0.nodes() if r in td0.bags[t]), None)
        if t is None:
            raise InputError(f"anchor vertex {r} appears in no bag of td0")
        anchors.append((r, t))

    grown0 = TreeDecomposition(
        {t: td0.bags[t] | frozenset().union(
            frozenset(),
            *(state.stars[v].c for v in state.core & td0.bags[t]))
         for t in td0.nodes()},
        list(td0.edges))
    pieces = [grown0]
    joins = []
    for i, ((r, t), sub) in enumerate(zip(anchors, component_tds)):
        grown = TreeDecomposition(
            {u: sub.bags[u] | state.stars[r].c for u in sub.nodes()},
            list(sub.edges))
        pieces.append(grown)
        joins.append((0, t, i + 1, sub.nodes()[0]))
    bags, edges = _merge_trees(pieces, joins)
    out = TreeDecomposition(bags, edges)
    bg, blabels = g.induced(state.beta)
    bpos = {v: i for i, v in enumerate(blabels)}
    local = TreeDecomposition(
        {t: frozenset(bpos[v] for v in bag) for t, bag in out.bags.items()},
        list(out.edges))
    _lemma(validate(bg, local).valid, g,
           "extended decomposition of beta is invalid")
    for t in td0.nodes():
        _lemma(len((grown0.bags[t]) & state.beta0)
               <= len(td0.bags[t])
               + 2 * m * (m - 1) * len(td0.bags[t] & state.core),
               g, "core bag grew past its bound")
    for (r, _), sub in zip(anchors, component_tds):
        for u in sub.nodes():
            _lemma(len((sub.bags[u] | state.stars[r].c) & state.beta0)
                   <= len(sub.bags[u]) + 2 * m * (m - 1),
                   g, "component bag grew past its bound")
    return out


def assemble_global(td_beta: TreeDecomposition,
                    component_tds: List[TreeDecomposition],
                    state: CentralBagState, td: TreeDecomposition,
                    t0: int) -> TreeDecomposition:
    """Extend a (structured) tree decomposition of beta to one of the whole
    host: every bag keeps its beta0 part plus the adhesions of the connector
    remainders it meets, and the far side of each tree neighbor hangs below
    a bag meeting its connector."""
    g = state.host
    if frozenset().union(frozenset(), *td_beta.bags.values()) != state.beta:
        raise InputError("td_beta must cover beta exactly")
    neighbors = sorted(td.neighbors_t(t0))
    if len(neighbors) != len(component_tds):
        raise InputError(
            f"expected {len(neighbors)} far-side decompositions, "
            f"got {len(component_tds)}")
    beta0 = state.beta0
    fars = []
    for t1, sub in zip(neighbors, component_tds):
        d_set = td.side_vertices(t0, t1) - beta0
        if frozenset().union(frozenset(), *sub.bags.values()) != d_set:
            raise InputError(
                f"decomposition for neighbor {t1} does not cover its far "
                "side")
        fars.append(d_set)
    remainders = {t1: state.conn[t1] - beta0 for t1 in neighbors}
    joins = []
    for i, (t1, sub) in enumerate(zip(neighbors, component_tds)):
        anchor = next((t for t in td_beta.nodes()
                       if td_beta.bags[t] & remainders[t1]), None)
        if anchor is None:
            raise InputError(
                f"no bag of td_beta meets the connector remainder of {t1}")
        joins.append((0, anchor, i + 1, sub.nodes()[0]))

    psi0 = {}
    for u in td_beta.nodes():
        bag = state.s_bad | (td_beta.bags[u] & beta0)
        for t1 in neighbors:
            if td_beta.bags[u] & remainders[t1]:
                bag |= beta0 & td.bags[t1]
        psi0[u] = bag
    piece0 = TreeDecomposition(psi0, list(td_beta.edges))
    pieces = [piece0]
    for t1, sub in zip(neighbors, component_tds):
        adh = beta0 & td.bags[t1]
        pieces.append(TreeDecomposition(
            {u: state.s_bad | sub.bags[u] | adh for u in sub.nodes()},
            list(sub.edges)))
    bags, edges = _merge_trees(pieces, joins)
    out = TreeDecomposition(bags, edges)
    if not validate(g, out).valid:
        raise InputError("global assembly produced an invalid decomposition")
    return out


# -- the recursive driver --------------------------------------------------

DECOMPOSE_DEPTH_GUARD = 64


def decompose(g: Graph, params: Optional[Params] = None,
              skip_class_check: bool = False,
              ) -> Tuple[TreeDecomposition, list]:
    """Decompose a class member along the branches of the recursive width
    proof, returning the decomposition and a trace of every branch taken."""
    if params is None:
        params = desk_params()
    trace: List[dict] = []
    if not skip_class_check:
        report = patterns.class_membership(g, params.t)
        if not report.in_c_tt:
            raise ClassViolation("input graph is outside the class",
                                witness=report.blocking_witness)
    hp = hub_partition(g, params.d)
    trace.append({"event": "start", "n": g.n, "hub_order": hp.order,
                  "width_bound": params.width_bound(g.n, hp.order)})
    td = _decompose_rec(g, params, trace, 0)
    assert validate(g, td).valid
    trace.append({"event": "done", "width": width(td)})
    return td, trace


def _decompose_rec(g: Graph, params: Params, trace: list,
                   depth: int) -> TreeDecomposition:
    if depth > DECOMPOSE_DEPTH_GUARD:
        raise GuardExceeded("decomposition recursion exceeded its depth guard")
    if g.n == 0:
        return TreeDecomposition({0: frozenset()})

    hub_set = patterns.hubs(g)
    if not hub_set:
        w, td = exact_treewidth(g)
        trace.append({"branch": "hub_free", "n": g.n, "width": w})
        return td

    x = clique_cutset(g)
    if x is not None:
        trace.append({"branch": "clique_cutset", "n": g.n,
                      "cutset": sorted(x)})
        return _glue_on_clique(g, x, params, trace, depth)

    xbal = balanced_separator(g, 0.5, params.m)
    if xbal is not None:
        trace.append({"branch": "balanced_separator", "n": g.n,
                      "separator": sorted(xbal)})
        subs = []
        for comp in g.components(xbal):
            cg, labels = g.induced(comp)
            subs.append(_relabel(
                _decompose_rec(cg, params, trace, depth + 1), labels))
        return compose_with_separator(g, xbal, subs)

    td_m = refine_to_lean(g, params.m)
    t0 = find_center(g, td_m)
    s1 = hub_partition(g, params.d).parts[0]
    beta, s_bad, conn = build_beta(g, td_m, t0, s1, params)
    bg, blabels = g.induced(beta)
    bpos = {v: i for i, v in enumerate(blabels)}
    xb = balanced_separator(bg, 0.5, params.delta - params.m)
    if xb is not None:
        trace.append({"branch": "central_bag_separator", "n": g.n,
                      "beta": len(beta), "separator": len(xb)})
        subs = []
        for comp in bg.components(xb):
            cg, clabels = bg.induced(comp)
            subs.append(_relabel(
                _decompose_rec(cg, params, trace, depth + 1), clabels))
        td_beta = _relabel(compose_with_separator(bg, xb, subs), blabels)
        state = CentralBagState(host=g, t0=t0, m=params.m, beta=beta,
                                beta0=td_m.bags[t0], s_prime=s1,
                                s_bad=s_bad, conn=conn, beta_a=beta)
    else:
        state = central_bag(g, td_m, t0, s1, params, check_balance=False)
        if state.beta_a == frozenset(g.vertices()):
            raise GuardExceeded(
                "central bag failed to shrink; desk-scale recursion stalled")
        trace.append({"branch": "central_bag", "n": g.n,
                      "beta": len(state.beta), "beta_a": len(state.beta_a),
                      "core": sorted(state.core)})
        ag, alabels = g.induced(state.beta_a)
        td0 = _relabel(to_structured(
            ag, _decompose_rec(ag, params, trace, depth + 1)), alabels)
        comp_tds = []
        for comp in sorted(bg.components(
                frozenset(bpos[v] for v in state.beta_a)), key=sorted):
            cg, clabels = bg.induced(comp)
            sub = _relabel(_decompose_rec(cg, params, trace, depth + 1),
                           clabels)
            comp_tds.append(_relabel(sub, blabels))
        td_beta = assemble_beta(td0, comp_tds, state)

    struct_local = to_structured(
        bg, TreeDecomposition(
            {t: frozenset(bpos[v] for v in bag)
             for t, bag in td_beta.bags.items()},
            list(td_beta.edges)))
    td_beta = _relabel(struct_local, blabels)

    far_tds = []
    for t1 in sorted(td_m.neighbors_t(t0)):
        d_set = td_m.side_vertices(t0, t1) - td_m.bags[t0]
        fg, flabels = g.induced(d_set)
        far_tds.append(_relabel(
            _decompose_rec(fg, params, trace, depth + 1), flabels))
    return assemble_global(td_beta, far_tds, state, td_m, t0)


def _glue_on_clique(g: Graph, x: frozenset, params: Params, trace: list,
                    depth: int) -> TreeDecomposition:
    """Decompose every side of a clique cutset (cutset included) and join
    the pieces at bags containing the cutset; every clique sits inside some
    bag, so such bags exist."""
    comps = g.components(x)
    pieces = []
    for comp in comps:
        part = comp | x
        pg, labels = g.induced(part)
        sub = _decompose_rec(pg, params, trace, depth + 1)
        pieces.append(_relabel(sub, labels))
    joins = []
    anchor0 = None
    for pi, piece in enumerate(pieces):
        t = next(t for t in piece.nodes() if x <= piece.bags[t])
        if pi == 0:
            anchor0 = t
        else:
            joins.append((0, anchor0, pi, t))
    if not pieces:
        return TreeDecomposition({0: frozenset(x)})
    bags, edges = _merge_trees(pieces, joins)
    out = TreeDecomposition(bags, edges)
    missing = frozenset(g.vertices()) - frozenset().union(
        frozenset(), *out.bags.values())
    if missing:
        raise InputError("clique glue lost vertices")
    assert validate(g, out).valid
    return out
