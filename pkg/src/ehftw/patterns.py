"""Induced-pattern detectors with certified witnesses.

Covers holes (with parity and length filters), thetas, prisms, wheels and
their subkind taxonomy, hubs, generalized k-pyramids, k-blocks, and the
membership tests for the three nested graph classes the toolkit targets:

    C    = (C4, theta, prism, even wheel)-free
    C_t  = C members with no clique of size t
    C_tt = C_t members with no generalized t-pyramid

Every detector re-verifies its witness by a pure adjacency recheck before
returning it.  Detection uses constrained backtracking over role assignments;
the naive enumerate-all-induced-subgraphs oracles live in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from .graph import Graph
from .errors import GuardExceeded, InputError, effective_guard

THETA_GUARD = 24
PRISM_GUARD = 24
PYRAMID_GUARD = 18


@dataclass
class PatternWitness:
    """Role-labeled embedding of a named pattern into a host graph.

    roles maps role names to vertices or vertex tuples, e.g. for a theta:
    ends "a", "b" and "paths" (three full vertex sequences from a to b).
    """

    kind: str
    roles: dict = field(default_factory=dict)

    def vertices(self) -> frozenset:
        out = set()

        def walk(x):
            if isinstance(x, int):
                out.add(x)
            elif isinstance(x, (list, tuple)):
                for y in x:
                    walk(y)

        for v in self.roles.values():
            walk(v)
        return frozenset(out)

    def to_json(self) -> dict:
        def conv(x):
            if isinstance(x, (list, tuple)):
                return [conv(y) for y in x]
            return x

        return {"kind": self.kind, "roles": {k: conv(v) for k, v in self.roles.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "PatternWitness":
        return cls(kind=data["kind"], roles=dict(data["roles"]))


@dataclass
class WheelWitness:
    """A hole plus an outside center with at least three neighbors on it."""

    hole: tuple
    center: int
    subkind: str  # one of "proper", "even", "twin", "universal", "short_pyramid"

    def to_json(self) -> dict:
        return {
            "kind": "wheel",
            "roles": {"hole": list(self.hole), "center": self.center,
                      "subkind": self.subkind},
        }


# ---------------------------------------------------------------------------
# hole machinery

def holes(g: Graph, min_len: int = 4, max_len: Optional[int] = None) -> Iterator[tuple]:
    """Enumerate all holes of g as canonical tuples.

    Canonical form: the tuple starts at the minimum vertex of the cycle and
    the second entry is smaller than the last, so each hole appears exactly
    once.  Enumeration order is deterministic (DFS with ascending choices).
    """
    if min_len < 4:
        raise InputError("holes have at least four vertices")
    n = g.n
    if max_len is None:
        max_len = n

    def extend(start: int, path: list, inpath: set) -> Iterator[tuple]:
        last = path[-1]
        for w in sorted(g.neighbors(last)):
            if w <= start or w in inpath:
                continue
            nbw = g.neighbors(w)
            # chord against anything before the last path vertex kills both
            # extension and closure
            if any(p in nbw for p in path[1:-1]):
                continue
            if start in nbw and len(path) >= 2:
                # w touches the start, so it can only close the cycle
                if len(path) + 1 >= min_len and path[1] < w:
                    yield tuple(path) + (w,)
                continue
            if len(path) + 1 < max_len:
                path.append(w)
                inpath.add(w)
                yield from extend(start, path, inpath)
                inpath.discard(w)
                path.pop()

    for start in range(n):
        yield from extend(start, [start], {start})


def verify_hole(g: Graph, cycle) -> bool:
    cyc = list(cycle)
    L = len(cyc)
    if L < 4 or len(set(cyc)) != L:
        return False
    for i in range(L):
        for j in range(i + 1, L):
            adjacent = j - i == 1 or (i == 0 and j == L - 1)
            if g.has_edge(cyc[i], cyc[j]) != adjacent:
                return False
    return True


def find_hole(g: Graph, parity: str = "any", min_len: int = 4) -> Optional[PatternWitness]:
    """Shortest qualifying hole (lexicographically least among shortest)."""
    if parity not in ("any", "even", "odd"):
        raise InputError(f"unknown parity {parity!r}")
    if min_len < 4:
        raise InputError("min_len must be at least 4")
    for length in range(min_len, g.n + 1):
        if parity == "even" and length % 2 != 0:
            continue
        if parity == "odd" and length % 2 != 1:
            continue
        for h in holes(g, min_len=length, max_len=length):
            assert verify_hole(g, h)
            return PatternWitness("hole", {"cycle": list(h)})
    return None


# ---------------------------------------------------------------------------
# induced path search (shared by theta / prism / pyramid detectors)

def _induced_paths(g: Graph, a: int, b: int, allowed: frozenset,
                   min_edges: int = 1) -> Iterator[tuple]:
    """Yield interiors of induced a-b paths whose interior lies in allowed.

    allowed must exclude a and b.  Interiors come out as tuples in path
    order; deterministic DFS with ascending choices.
    """

    def extend(path: list, inpath: set) -> Iterator[tuple]:
        last = path[-1]
        for w in sorted(g.neighbors(last)):
            if w in inpath or w == a:
                continue
            nbw = g.neighbors(w)
            if any(p in nbw for p in path[:-1]):
                continue
            if w == b:
                if len(path) >= min_edges:
                    yield tuple(path[1:])
                continue
            if w in allowed:
                path.append(w)
                inpath.add(w)
                yield from extend(path, inpath)
                inpath.discard(w)
                path.pop()

    yield from extend([a], {a})


# ---------------------------------------------------------------------------
# theta

def verify_theta(g: Graph, a: int, b: int, paths) -> bool:
    """paths are three full vertex sequences from a to b."""
    if a == b or g.has_edge(a, b):
        return False
    interiors = []
    for p in paths:
        p = list(p)
        if p[0] != a or p[-1] != b or len(p) < 3:
            return False
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if g.has_edge(p[i], p[j]) != (j - i == 1):
                    return False
        interiors.append(p[1:-1])
    seen = set()
    for inter in interiors:
        for v in inter:
            if v in seen or v in (a, b):
                return False
            seen.add(v)
    for i1, i2 in itertools.combinations(interiors, 2):
        if not g.is_anticomplete(i1, i2):
            return False
    return True


def find_theta(g: Graph, max_n: Optional[int] = None) -> Optional[PatternWitness]:
    limit = effective_guard(THETA_GUARD, max_n)
    if g.n > limit:
        raise GuardExceeded(f"theta search guarded at n <= {limit} (got {g.n})")
    everything = frozenset(g.vertices())
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.has_edge(a, b):
                continue
            base = everything - {a, b}
            for i1 in _induced_paths(g, a, b, base, min_edges=2):
                taboo1 = set(i1)
                for v in i1:
                    taboo1 |= g.neighbors(v)
                allow2 = base - taboo1
                for i2 in _induced_paths(g, a, b, allow2, min_edges=2):
                    taboo2 = set(i2)
                    for v in i2:
                        taboo2 |= g.neighbors(v)
                    allow3 = allow2 - taboo2
                    p3 = g.shortest_path({a}, {b}, allowed=allow3 | {a, b})
                    if p3 is None or len(p3) < 3:
                        continue
                    paths = [[a, *i1, b], [a, *i2, b], list(p3)]
                    assert verify_theta(g, a, b, paths)
                    return PatternWitness("theta", {"a": a, "b": b, "paths": paths})
    return None


# ---------------------------------------------------------------------------
# prism

def _triangles(g: Graph) -> Iterator[tuple]:
    for i in range(g.n):
        for j in g.neighbors(i):
            if j <= i:
                continue
            for k in g.neighbors(j):
                if k > j and g.has_edge(i, k):
                    yield (i, j, k)


def verify_prism(g: Graph, paths) -> bool:
    """paths are three full vertex sequences; path i runs from a_i to b_i,
    a_1a_2a_3 and b_1b_2b_3 must be triangles with no other cross edges."""
    if len(paths) != 3:
        return False
    paths = [list(p) for p in paths]
    a = [p[0] for p in paths]
    b = [p[-1] for p in paths]
    allv = [v for p in paths for v in p]
    if len(set(allv)) != len(allv):
        return False
    for p in paths:
        if len(p) < 2:
            return False
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if g.has_edge(p[i], p[j]) != (j - i == 1):
                    return False
    for i, j in itertools.combinations(range(3), 2):
        if not (g.has_edge(a[i], a[j]) and g.has_edge(b[i], b[j])):
            return False
        # no cross edges beyond the two triangles
        for u in paths[i]:
            for v in paths[j]:
                expected = ({u, v} <= set(a)) or ({u, v} <= set(b))
                if g.has_edge(u, v) != expected:
                    return False
    return True


def find_prism(g: Graph, max_n: Optional[int] = None) -> Optional[PatternWitness]:
    limit = effective_guard(PRISM_GUARD, max_n)
    if g.n > limit:
        raise GuardExceeded(f"prism search guarded at n <= {limit} (got {g.n})")
    tris = list(_triangles(g))
    everything = frozenset(g.vertices())
    for ti in range(len(tris)):
        for tj in range(ti + 1, len(tris)):
            t1, t2 = tris[ti], tris[tj]
            if set(t1) & set(t2):
                continue
            six = set(t1) | set(t2)
            for perm in itertools.permutations(t2):
                a, b = t1, perm
                if any(g.has_edge(a[i], b[j])
                       for i in range(3) for j in range(3) if i != j):
                    continue
                # interior candidates for path i: outside both triangles and
                # anticomplete to the four triangle vertices it does not end at
                wsets = []
                for i in range(3):
                    others = six - {a[i], b[i]}
                    wsets.append(frozenset(
                        v for v in everything - six
                        if not (g.neighbors(v) & others)))
                found = None
                for i1 in _induced_paths(g, a[0], b[0], wsets[0]):
                    taboo1 = set(i1)
                    for v in i1:
                        taboo1 |= g.neighbors(v)
                    for i2 in _induced_paths(g, a[1], b[1], wsets[1] - taboo1):
                        taboo2 = set(taboo1)
                        for v in i2:
                            taboo2 |= g.neighbors(v)
                        taboo2 |= set(i2)
                        allow3 = (wsets[2] - taboo2) | {a[2], b[2]}
                        p3 = g.shortest_path({a[2]}, {b[2]}, allowed=allow3)
                        if p3 is None:
                            continue
                        found = [[a[0], *i1, b[0]], [a[1], *i2, b[1]], list(p3)]
                        break
                    if found:
                        break
                if found:
                    assert verify_prism(g, found)
                    return PatternWitness("prism", {
                        "triangle_a": list(a), "triangle_b": list(b),
                        "paths": found})
    return None


# ---------------------------------------------------------------------------
# wheels and hubs

def wheel_subkinds(g: Graph, hole: tuple, center: int) -> list:
    """All subkind labels that apply to the wheel (hole, center)."""
    L = len(hole)
    pos = {v: i for i, v in enumerate(hole)}
    nbrs = [v for v in hole if g.has_edge(center, v)]
    cnt = len(nbrs)
    if cnt < 3:
        return []
    labels = []
    if cnt == L:
        labels.append("universal")
    adjacent_pairs = sum(
        1 for u, v in itertools.combinations(nbrs, 2)
        if (pos[u] - pos[v]) % L in (1, L - 1))
    twin = cnt == 3 and adjacent_pairs == 2
    short_pyr = cnt == 3 and adjacent_pairs == 1
    if twin:
        labels.append("twin")
    if short_pyr:
        labels.append("short_pyramid")
    if cnt % 2 == 0:
        labels.append("even")
    if not twin and not short_pyr:
        labels.append("proper")
    return labels


def verify_wheel(g: Graph, w: WheelWitness) -> bool:
    if not verify_hole(g, w.hole):
        return False
    if w.center in w.hole:
        return False
    return w.subkind in wheel_subkinds(g, tuple(w.hole), w.center)


def find_wheels(g: Graph) -> list:
    """One witness per (center, subkind), in deterministic scan order."""
    seen = {}
    out = []
    for h in holes(g):
        hset = set(h)
        for x in range(g.n):
            if x in hset:
                continue
            for label in wheel_subkinds(g, h, x):
                if (x, label) not in seen:
                    w = WheelWitness(hole=h, center=x, subkind=label)
                    seen[(x, label)] = w
                    out.append(w)
    return out


def hubs(g: Graph) -> frozenset:
    """Centers of at least one proper wheel."""
    out = set()
    for h in holes(g):
        hset = set(h)
        for x in range(g.n):
            if x in hset or x in out:
                continue
            if "proper" in wheel_subkinds(g, h, x):
                out.add(x)
    return frozenset(out)


def find_even_wheel(g: Graph) -> Optional[WheelWitness]:
    for h in holes(g):
        hset = set(h)
        for x in range(g.n):
            if x in hset:
                continue
            if "even" in wheel_subkinds(g, h, x):
                return WheelWitness(hole=h, center=x, subkind="even")
    return None


# ---------------------------------------------------------------------------
# generalized k-pyramid

def verify_generalized_pyramid(g: Graph, roles: dict) -> bool:
    """Check a generalized k-pyramid witness.

    Expected roles: "p", "q" (full path sequences whose union is the hole,
    ordered so that connector i attaches at positions ascending along both),
    "r" (list of k full connector sequences, each from its bottom end a_i to
    its top end b_i), "x", "y" (adjacent bottom attach pairs, interior of p),
    "z" (top attach vertices along q, coincidences allowed).
    """
    p = list(roles["p"])
    q = list(roles["q"])
    rs = [list(r) for r in roles["r"]]
    xs, ys, zs = list(roles["x"]), list(roles["y"]), list(roles["z"])
    k = len(rs)
    if k < 1 or len(xs) != k or len(ys) != k or len(zs) != k:
        return False
    everything = p + q + [v for r in rs for v in r]
    if len(set(everything)) != len(everything):
        return False
    hole = set(p) | set(q)

    def induced_path(seq):
        for i in range(len(seq)):
            for j in range(i + 1, len(seq)):
                if g.has_edge(seq[i], seq[j]) != (j - i == 1):
                    return False
        return True

    if not (induced_path(p) and induced_path(q)):
        return False
    # p and q close into a hole: exactly two cross edges, joining distinct
    # end pairs
    cross = [(u, v) for u in p for v in q if g.has_edge(u, v)]
    if len(cross) != 2:
        return False
    (u1, v1), (u2, v2) = cross
    if u1 == u2 or {u1, u2} != {p[0], p[-1]}:
        return False
    if len(q) == 1:
        if not (v1 == v2 == q[0]):
            return False
    elif v1 == v2 or {v1, v2} != {q[0], q[-1]}:
        return False
    ppos = {v: i for i, v in enumerate(p)}
    qpos = {v: i for i, v in enumerate(q)}
    # attach positions ascend along p (all distinct) and along q (weakly)
    order = []
    for xi, yi in zip(xs, ys):
        if xi not in ppos or yi not in ppos:
            return False
        if ppos[yi] != ppos[xi] + 1 or ppos[xi] == 0 or ppos[yi] == len(p) - 1:
            return False
        order.extend([ppos[xi], ppos[yi]])
    if order != sorted(order) or len(set(order)) != len(order):
        return False
    zo = [qpos.get(z) for z in zs]
    if None in zo or zo != sorted(zo):
        return False
    for i, r in enumerate(rs):
        if not induced_path(r):
            return False
        for j, v in enumerate(r):
            nb_hole = g.neighbors(v) & hole
            if len(r) == 1:
                want = {xs[i], ys[i], zs[i]}
            elif j == 0:
                want = {xs[i], ys[i]}
            elif j == len(r) - 1:
                want = {zs[i]}
            else:
                want = set()
            if nb_hole != want:
                return False
    for r1, r2 in itertools.combinations(rs, 2):
        if not g.is_anticomplete(r1, r2):
            return False
    return True


def _arc_assignments(hole: tuple, k: int) -> Iterator[tuple]:
    """Directed (p, q) splits of a hole into a bottom and a top path."""
    L = len(hole)
    for i in range(L):
        for direction in (1, -1):
            for lp in range(2 * k + 2, L):
                p = tuple(hole[(i + direction * s) % L] for s in range(lp))
                rest = tuple(hole[(i + direction * (lp + s)) % L]
                             for s in range(L - lp))
                for q in (rest, rest[::-1]):
                    yield p, q


def find_generalized_k_pyramid(g: Graph, k: int,
                               max_n: Optional[int] = None) -> Optional[PatternWitness]:
    if k < 1:
        raise InputError("k must be at least 1")
    limit = effective_guard(PYRAMID_GUARD, max_n)
    if g.n > limit:
        raise GuardExceeded(
            f"generalized pyramid search guarded at n <= {limit} (got {g.n})")
    everything = frozenset(g.vertices())
    for hole in holes(g, min_len=2 * k + 3):
        hset = frozenset(hole)
        outside = everything - hset
        for p, q in _arc_assignments(hole, k):
            pset, qset = frozenset(p), frozenset(q)
            # bottom attach pairs: k adjacent pairs strictly inside p,
            # non-touching
            interior = range(1, len(p) - 2)
            for starts in itertools.combinations(interior, k):
                if any(b - a < 2 for a, b in zip(starts, starts[1:])):
                    continue
                xs = [p[s] for s in starts]
                ys = [p[s + 1] for s in starts]
                cands = []
                ok = True
                for i in range(k):
                    ci = [v for v in outside
                          if g.neighbors(v) & pset == {xs[i], ys[i]}]
                    if not ci:
                        ok = False
                        break
                    cands.append(ci)
                if not ok:
                    continue
                for zpos in itertools.combinations_with_replacement(
                        range(len(q)), k):
                    zs = [q[s] for s in zpos]
                    rs = _grow_connectors(g, hset, pset, qset, outside,
                                          cands, zs, k)
                    if rs is not None:
                        roles = {"p": list(p), "q": list(q),
                                 "r": [list(r) for r in rs],
                                 "x": xs, "y": ys, "z": zs,
                                 "a": [r[0] for r in rs],
                                 "b": [r[-1] for r in rs]}
                        assert verify_generalized_pyramid(g, roles)
                        return PatternWitness(f"generalized_{k}_pyramid", roles)
    return None


def _grow_connectors(g, hset, pset, qset, outside, cands, zs, k):
    """Backtracking over the k connector paths; returns the paths or None."""

    def rec(i, used, blocked):
        if i == k:
            return []
        zi = zs[i]
        znb = g.neighbors(zi)
        for a in cands[i]:
            if a in used or a in blocked:
                continue
            qn = g.neighbors(a) & qset
            if qn == {zi} and a in znb:
                tail = rec(i + 1, used | {a}, blocked | g.neighbors(a))
                if tail is not None:
                    return [(a,)] + tail
            if qn:
                continue
            # grow an induced path from a whose interior avoids the hole
            # entirely and whose far end sees exactly z_i in q, nothing in p
            path = _connector_path(g, a, zi, hset, pset, qset,
                                   used, blocked)
            if path is not None:
                pv = set(path)
                nb = set()
                for v in path:
                    nb |= g.neighbors(v)
                tail = rec(i + 1, used | pv, blocked | nb)
                if tail is not None:
                    return [path] + tail
        return None

    return rec(0, frozenset(), frozenset())


def _connector_path(g, a, zi, hset, pset, qset, used, blocked):
    """Induced path a-...-b with interior anticomplete to the hole and
    b attaching exactly at z_i on the top path, nowhere on the bottom."""

    def ok_end(v):
        nb = g.neighbors(v)
        return nb & qset == {zi} and not (nb & pset)

    def extend(path, inpath):
        last = path[-1]
        for w in sorted(g.neighbors(last)):
            if w in inpath or w in hset or w in used or w in blocked:
                continue
            nbw = g.neighbors(w)
            if any(v in nbw for v in path[:-1]):
                continue
            if ok_end(w):
                return tuple(path) + (w,)
            if nbw & hset:
                continue  # would be a connector interior touching the hole
            path.append(w)
            inpath.add(w)
            got = extend(path, inpath)
            inpath.discard(w)
            path.pop()
            if got is not None:
                return got
        return None

    return extend([a], {a})


# ---------------------------------------------------------------------------
# cliques and class membership

def find_clique(g: Graph, size: int) -> Optional[tuple]:
    """Lexicographically least clique of the given size, or None."""
    if size <= 0:
        return ()

    def extend(chosen, frontier):
        if len(chosen) == size:
            return tuple(chosen)
        if len(chosen) + len(frontier) < size:
            return None
        for idx, v in enumerate(frontier):
            got = extend(chosen + [v],
                         [u for u in frontier[idx + 1:] if g.has_edge(u, v)])
            if got is not None:
                return got
        return None

    return extend([], list(g.vertices()))


def max_clique(g: Graph) -> tuple:
    best = []

    def extend(chosen, frontier):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(frontier) <= len(best):
            return
        for idx, v in enumerate(frontier):
            extend(chosen + [v],
                   [u for u in frontier[idx + 1:] if g.has_edge(u, v)])

    extend([], list(g.vertices()))
    return tuple(best)


def find_c4(g: Graph) -> Optional[PatternWitness]:
    for h in holes(g, min_len=4, max_len=4):
        return PatternWitness("hole", {"cycle": list(h)})
    return None


@dataclass
class MembershipReport:
    t: int
    in_c: bool
    in_c_t: bool
    in_c_tt: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def blocking_witness(self):
        for key in ("c4", "theta", "prism", "even_wheel", "clique", "pyramid"):
            if key in self.witnesses:
                return self.witnesses[key]
        return None

    def to_json(self) -> dict:
        return {
            "t": self.t, "in_c": self.in_c, "in_c_t": self.in_c_t,
            "in_c_tt": self.in_c_tt,
            "witnesses": {k: w.to_json() for k, w in self.witnesses.items()},
        }


def class_membership(g: Graph, t: int, max_n: Optional[int] = None) -> MembershipReport:
    wit = {}
    c4 = find_c4(g)
    if c4 is not None:
        wit["c4"] = c4
    theta = find_theta(g, max_n=max_n)
    if theta is not None:
        wit["theta"] = theta
    prism = find_prism(g, max_n=max_n)
    if prism is not None:
        wit["prism"] = prism
    ew = find_even_wheel(g)
    if ew is not None:
        wit["even_wheel"] = ew
    in_c = not wit
    in_c_t = in_c
    if in_c:
        kt = find_clique(g, t)
        if kt is not None:
            wit["clique"] = PatternWitness("clique", {"vertices": list(kt)})
            in_c_t = False
    in_c_tt = in_c_t
    if in_c_t:
        pyr = find_generalized_k_pyramid(g, t, max_n=max_n)
        if pyr is not None:
            wit["pyramid"] = pyr
            in_c_tt = False
    return MembershipReport(t=t, in_c=in_c, in_c_t=in_c_t, in_c_tt=in_c_tt,
                            witnesses=wit)


# ---------------------------------------------------------------------------
# k-blocks

def find_k_block(g: Graph, k: int) -> Optional[frozenset]:
    """A maximal k-block, or None.

    B is a k-block iff |B| >= k and every nonadjacent pair of B is joined by
    at least k internally disjoint paths, so k-blocks are exactly the cliques
    of the auxiliary "adjacent or k-linked" relation; we return a maximum one.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    linked = Graph(g.n, [
        (u, v) for u in range(g.n) for v in range(u + 1, g.n)
        if g.has_edge(u, v) or g.menger_internal(u, v)[0] >= k])
    best = max_clique(linked)
    if len(best) >= k:
        return frozenset(best)
    return None
