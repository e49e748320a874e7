"""Connectifiers and alignments: minimal connected attachment structures
(paths, caterpillars, line graphs of caterpillars, subdivided stars) and the
two-sided classification of a stable attachment set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .graph import Graph
from .errors import GuardExceeded, InputError, effective_guard

CONNECTIFY_GUARD = 14

PATH = "path"
CATERPILLAR = "caterpillar"
LINE_OF_CATERPILLAR = "line_of_caterpillar"
SUBDIVIDED_STAR = "subdivided_star"

# connectifier consistency kinds, by shape
SHAPE_KIND = {CATERPILLAR: "spiky", LINE_OF_CATERPILLAR: "triangular",
              SUBDIVIDED_STAR: "stellar"}


@dataclass
class Connectifier:
    h: frozenset
    kind: str  # path / caterpillar / line_of_caterpillar / subdivided_star
    spine: tuple
    legs: List[frozenset]
    attached: frozenset
    attachment_map: Dict[int, int] = field(default_factory=dict)

    @property
    def consistency(self) -> str:
        return SHAPE_KIND.get(self.kind, "path")

    def to_json(self) -> dict:
        return {"h": sorted(self.h), "kind": self.kind,
                "spine": list(self.spine),
                "legs": [sorted(l) for l in self.legs],
                "attached": sorted(self.attached),
                "attachment_map": {str(k): v
                                   for k, v in sorted(self.attachment_map.items())}}


@dataclass
class Alignment:
    p: tuple
    x: tuple  # the order on X given by the alignment
    kind: str  # wide / spiky / triangular

    def to_json(self) -> dict:
        return {"p": list(self.p), "x": list(self.x), "kind": self.kind}


# -- elementary tools -----------------------------------------------------

def erdos_szekeres(seq: List[float], n: int) -> list:
    """A monotone subsequence of length n + 1 from n^2 + 1 distinct reals,
    by patience sorting."""
    if len(set(seq)) != len(seq):
        raise InputError("sequence entries must be distinct")
    if len(seq) < n * n + 1:
        raise InputError(f"need at least {n * n + 1} entries, got {len(seq)}")
    best_inc = [0] * len(seq)  # longest increasing run ending here
    prev = [None] * len(seq)
    for i, v in enumerate(seq):
        best_inc[i] = 1
        for j in range(i):
            if seq[j] < v and best_inc[j] + 1 > best_inc[i]:
                best_inc[i] = best_inc[j] + 1
                prev[i] = j
    top = max(range(len(seq)), key=lambda i: best_inc[i])
    if best_inc[top] >= n + 1:
        out = []
        i = top
        while i is not None:
            out.append(seq[i])
            i = prev[i]
        return out[::-1][:n + 1]
    # by Erdos-Szekeres a decreasing run of length n + 1 must exist
    best_dec = [0] * len(seq)
    prev = [None] * len(seq)
    for i, v in enumerate(seq):
        best_dec[i] = 1
        for j in range(i):
            if seq[j] > v and best_dec[j] + 1 > best_dec[i]:
                best_dec[i] = best_dec[j] + 1
                prev[i] = j
    top = max(range(len(seq)), key=lambda i: best_dec[i])
    assert best_dec[top] >= n + 1
    out = []
    i = top
    while i is not None:
        out.append(seq[i])
        i = prev[i]
    return out[::-1][:n + 1]


def stable_in_bounded_outdegree(arcs: Dict[int, List[int]], k: int) -> frozenset:
    """A stable set of the underlying graph of a digraph with outdegree at
    most k, of size at least |V| / (2k + 1), by degeneracy-greedy coloring."""
    verts = sorted(arcs)
    for v in verts:
        if len(set(arcs[v])) > k:
            raise InputError(f"vertex {v} has outdegree above {k}")
    und = {v: set() for v in verts}
    for v in verts:
        for w in arcs[v]:
            if w not in und:
                raise InputError(f"arc target {w} is not a vertex")
            if w != v:
                und[v].add(w)
                und[w].add(v)
    # peel by minimum degree (2k-degenerate), color greedily in reverse
    degs = {v: len(und[v]) for v in verts}
    live = set(verts)
    order = []
    while live:
        v = min(live, key=lambda u: (degs[u], u))
        order.append(v)
        live.discard(v)
        for w in und[v]:
            if w in live:
                degs[w] -= 1
    color = {}
    for v in reversed(order):
        used = {color[w] for w in und[v] if w in color}
        color[v] = next(c for c in itertools.count() if c not in used)
    if not verts:
        return frozenset()
    classes = {}
    for v, c in color.items():
        classes.setdefault(c, []).append(v)
    best = max(classes.values(), key=lambda vs: (len(vs), -min(vs)))
    assert len(best) * (2 * k + 1) >= len(verts)
    return frozenset(best)


# -- shape classification -------------------------------------------------

def _is_tree(h: Graph) -> bool:
    return h.n > 0 and len(h.edges()) == h.n - 1 and h.is_connected()


def _tree_path(h: Graph, a: int, b: int) -> list:
    prev = {a: None}
    stack = [a]
    while stack:
        u = stack.pop()
        for w in sorted(h.neighbors(u)):
            if w not in prev:
                prev[w] = u
                stack.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def _maximal_cliques(h: Graph) -> List[frozenset]:
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(h.neighbors(u) & p))
        for v in sorted(p - h.neighbors(pivot)):
            expand(r | {v}, p & h.neighbors(v), x & h.neighbors(v))
            p = p - {v}
            x = x | {v}

    expand(frozenset(), frozenset(range(h.n)), frozenset())
    return out


def _caterpillar_spine(h: Graph) -> Optional[list]:
    """The deterministic maximal path through all branch vertices of a tree
    with maximum degree three, or None if the tree is not a caterpillar."""
    branch = [v for v in h.vertices() if h.degree(v) > 2]
    if not branch:
        ends = [v for v in h.vertices() if h.degree(v) <= 1]
        return _tree_path(h, ends[0], ends[-1]) if h.n > 1 else [0]
    # all branch vertices must lie on the path between the extremal pair
    best = None
    for a, b in itertools.combinations_with_replacement(branch, 2):
        p = _tree_path(h, a, b)
        if best is None or len(p) > len(best):
            best = p
    if not set(branch) <= set(best):
        return None
    spine = list(best)
    for flip in (False, True):
        if flip:
            spine.reverse()
        while True:
            end = spine[-1]
            onward = sorted(w for w in h.neighbors(end) if w not in spine)
            if not onward:
                break
            spine.append(onward[0])
    return spine


def classify_shape(g: Graph, vertices) -> Optional[Tuple[str, list]]:
    """Classify the induced subgraph on `vertices` as one of the connectifier
    shapes, returning (kind, spine in host labels) or None.

    The spine of a path is the path itself, of a subdivided star its root,
    of a caterpillar its maximal branch path, and of a line graph of a
    caterpillar the vertices matching the underlying spine edges.
    """
    vertices = g.check_vertex_set(vertices)
    if not vertices:
        return None
    h, labels = g.induced(vertices)
    if _is_tree(h):
        branch = [v for v in h.vertices() if h.degree(v) > 2]
        if not branch:
            ends = sorted(v for v in h.vertices() if h.degree(v) <= 1)
            spine = _tree_path(h, ends[0], ends[-1]) if h.n > 1 else [0]
            return (PATH, [labels[v] for v in spine])
        if len(branch) == 1 and all(h.degree(v) <= 2 or v == branch[0]
                                    for v in h.vertices()):
            return (SUBDIVIDED_STAR, [labels[branch[0]]])
        if max(h.degree(v) for v in h.vertices()) <= 3:
            spine = _caterpillar_spine(h)
            if spine is not None:
                return (CATERPILLAR, [labels[v] for v in spine])
        return None
    tree = _line_graph_preimage(h)
    if tree is None:
        return None
    c, edge_of = tree  # c: the tree; edge_of: h-vertex -> tree edge
    if max(c.degree(v) for v in c.vertices()) > 3:
        return None
    spine_c = _caterpillar_spine(c)
    if spine_c is None:
        return None
    spine_edges = {frozenset(e) for e in zip(spine_c, spine_c[1:])}
    spine = [v for v in range(h.n) if frozenset(edge_of[v]) in spine_edges]
    order = {frozenset(e): i for i, e in enumerate(zip(spine_c, spine_c[1:]))}
    spine.sort(key=lambda v: order[frozenset(edge_of[v])])
    return (LINE_OF_CATERPILLAR, [labels[v] for v in spine])


def _line_graph_preimage(h: Graph) -> Optional[tuple]:
    """Reconstruct a tree whose line graph is h, if one exists."""
    if h.n == 0 or not h.is_connected():
        return None
    cliques = sorted(_maximal_cliques(h), key=sorted)
    membership = {v: [i for i, q in enumerate(cliques) if v in q]
                  for v in range(h.n)}
    if any(len(m) > 2 for m in membership.values()):
        return None
    # tree nodes: one per maximal clique, plus a leaf for each h-vertex
    # that sits in a single clique
    node_count = len(cliques)
    edge_of = {}
    tree_edges = []
    for v in range(h.n):
        m = membership[v]
        if len(m) == 2:
            edge_of[v] = (m[0], m[1])
        else:
            edge_of[v] = (m[0], node_count)
            node_count += 1
        tree_edges.append(edge_of[v])
    c = Graph(node_count, tree_edges)
    if not _is_tree(c):
        return None
    for u, v in itertools.combinations(range(h.n), 2):
        shares = bool(set(edge_of[u]) & set(edge_of[v]))
        if shares != h.has_edge(u, v):
            return None
    return (c, edge_of)


def simplicial_vertices(g: Graph, vertices) -> frozenset:
    """Vertices of the induced subgraph whose neighborhood inside it is a
    clique."""
    vertices = g.check_vertex_set(vertices)
    out = set()
    for v in vertices:
        nb = g.neighbors(v) & vertices
        if g.is_clique(nb):
            out.add(v)
    return frozenset(out)


# -- enumeration ----------------------------------------------------------

def _connected_subsets(g: Graph, within: frozenset) -> Iterator[frozenset]:
    """All connected vertex subsets of g inside `within`, smallest first,
    each exactly once (canonical seed = minimum vertex)."""
    by_size = {}
    for v in sorted(within):
        by_size.setdefault(1, set()).add(frozenset([v]))
    size = 1
    while size in by_size:
        for s in sorted(by_size[size], key=sorted):
            yield s
        nxt = set()
        for s in by_size[size]:
            for w in sorted(g.neighbors_of_set(s) & within):
                nxt.add(s | {w})
        if nxt:
            by_size[size + 1] = nxt
        size += 1


def _induced_paths(g: Graph, within: frozenset) -> Iterator[tuple]:
    """All induced paths inside `within` (one orientation each), shortest
    first."""
    layer = [(v,) for v in sorted(within)]
    yield from layer
    while layer:
        seen = set()
        nxt = []
        for p in layer:
            for cand in (p, p[::-1]):
                block = frozenset().union(
                    *(g.neighbors(u) for u in cand[:-1])) \
                    if len(cand) > 1 else frozenset()
                for w in sorted(g.neighbors(cand[-1]) & within):
                    if w in cand or w in block:
                        continue
                    q = cand + (w,)
                    canon = q if q[0] <= q[-1] else q[::-1]
                    if canon not in seen:
                        seen.add(canon)
                        nxt.append(canon)
        layer = sorted(nxt)
        yield from layer


# -- connectifier search --------------------------------------------------

def verify_connectifier(g: Graph, c: Connectifier) -> bool:
    shape = classify_shape(g, c.h)
    if shape is None or shape[0] != c.kind:
        return False
    if c.kind == PATH:
        return all(g.neighbors(x) & c.h for x in c.attached)
    z = simplicial_vertices(g, c.h)
    hit = set()
    for x in c.attached:
        nb = g.neighbors(x) & c.h
        if len(nb) != 1:
            return False
        (w,) = nb
        if c.attachment_map.get(x) != w or w not in z:
            return False
        hit.add(w)
    return frozenset(hit) == z


def find_connectifier(g: Graph, s, h_target: int,
                      max_n: Optional[int] = None) -> Optional[Connectifier]:
    """A path in g minus s seen by at least h_target members of s, or a
    non-path connectifier with exactly h_target attachers; None when the
    desk-scale search exhausts."""
    s = g.check_vertex_set(s)
    guard = effective_guard(CONNECTIFY_GUARD, max_n)
    if g.n > guard:
        raise GuardExceeded(
            f"connectifier search limited to {guard} vertices (n={g.n})")
    if h_target < 1:
        raise InputError("h_target must be positive")
    if not g.is_stable(s):
        raise InputError("attachment set must be stable")
    rest = frozenset(g.vertices()) - s
    if rest and not g.is_connected(rest):
        raise InputError("host minus attachment set must be connected")
    if any(not (g.neighbors(x) & rest) for x in s):
        raise InputError("every attacher needs a neighbor outside the set")

    for p in _induced_paths(g, rest):
        pset = frozenset(p)
        attachers = frozenset(x for x in s if g.neighbors(x) & pset)
        if len(attachers) >= h_target:
            return Connectifier(h=pset, kind=PATH, spine=tuple(p),
                                legs=[], attached=attachers)

    for hset in _connected_subsets(g, rest):
        shape = classify_shape(g, hset)
        if shape is None or shape[0] == PATH:
            continue
        kind, spine = shape
        z = simplicial_vertices(g, hset)
        by_point = {}
        for x in sorted(s):
            nb = g.neighbors(x) & hset
            if len(nb) == 1 and next(iter(nb)) in z:
                by_point.setdefault(next(iter(nb)), []).append(x)
        if len(by_point) != len(z) or h_target < len(z):
            continue
        chosen = [xs[0] for _, xs in sorted(by_point.items())]
        extras = sorted(x for xs in by_point.values() for x in xs[1:])
        while len(chosen) < h_target and extras:
            chosen.append(extras.pop(0))
        if len(chosen) != h_target:
            continue
        attached = frozenset(chosen)
        amap = {x: next(iter(g.neighbors(x) & hset)) for x in attached}
        conn = Connectifier(h=hset, kind=kind, spine=tuple(spine),
                            legs=_legs(g, hset, spine), attached=attached,
                            attachment_map=amap)
        assert verify_connectifier(g, conn)
        return conn
    return None


def _legs(g: Graph, hset: frozenset, spine) -> List[frozenset]:
    inside = hset - frozenset(spine)
    if not inside:
        return []
    h, labels = g.induced(inside)
    return [frozenset(labels[v] for v in comp) for comp in h.components()]


# -- alignments -----------------------------------------------------------

def _interior_pattern(g: Graph, v: int, p: tuple) -> Optional[str]:
    nb = [q for q in p if g.has_edge(v, q)]
    if len(nb) == 1:
        return "spiky"
    if len(nb) == 2 and g.has_edge(nb[0], nb[1]):
        return "triangular"
    if any(not g.has_edge(a, b)
           for a, b in itertools.combinations(nb, 2)):
        return "wide"
    return None


def classify_alignment(g: Graph, p, x) -> Optional[Alignment]:
    """Order the attachment set x along the induced path p and classify the
    alignment kind, or return None if (p, x) is not a consistent alignment."""
    p = tuple(p)
    xset = g.check_vertex_set(x)
    if xset & frozenset(p) or len(xset) < 3:
        return None
    if len(set(p)) != len(p) or not p:
        return None
    for i, j in itertools.combinations(range(len(p)), 2):
        if g.has_edge(p[i], p[j]) != (j == i + 1):
            return None
    index = {q: i for i, q in enumerate(p)}
    nbrs = {v: sorted(index[q] for q in p if g.has_edge(v, q)) for v in xset}
    if any(not nb for nb in nbrs.values()):
        return None
    heads = [v for v in sorted(xset) if nbrs[v] == [0]]
    tails = [v for v in sorted(xset) if nbrs[v] == [len(p) - 1]]
    if len(heads) != 1 or len(tails) != 1 or heads[0] == tails[0]:
        return None
    x1, xk = heads[0], tails[0]
    interior = sorted(xset - {x1, xk}, key=lambda v: (nbrs[v][0], v))
    lo = 1
    for v in interior:
        if nbrs[v][0] < lo:
            return None
        lo = nbrs[v][-1] + 1
    if interior and nbrs[interior[-1]][-1] >= len(p) - 1:
        return None
    patterns = {_interior_pattern(g, v, p) for v in interior}
    if len(patterns) != 1 or None in patterns:
        return None
    return Alignment(p=p, x=tuple([x1] + interior + [xk]),
                     kind=patterns.pop())


# -- two-sided classification ---------------------------------------------

def _connectifier_order(g: Graph, conn: Connectifier) -> Optional[tuple]:
    """The order on the attachers induced by the spine, for non-stellar
    connectifiers; None for stellar ones."""
    if conn.kind == SUBDIVIDED_STAR:
        return None
    if conn.kind == PATH:
        return None
    spine = list(conn.spine)
    spos = {q: i for i, q in enumerate(spine)}
    keyed = []
    for x in sorted(conn.attached):
        w = conn.attachment_map[x]
        if w in spos:
            keyed.append((spos[w], -1 if spos[w] == 0 else len(spine), x))
            continue
        leg = next(l for l in conn.legs if w in l)
        anchor = min(spos[q] for q in spine
                     if g.neighbors(q) & leg) if any(
                         g.neighbors(q) & leg for q in spine) else 0
        keyed.append((anchor, 0, x))
    keyed.sort()
    return tuple(x for _, _, x in keyed)


def _side_structures(g: Graph, d: frozenset, xset: frozenset,
                     ) -> Iterator[tuple]:
    """Candidate (label, kind, order, object) structures on one side."""
    for p in _induced_paths(g, d):
        al = classify_alignment(g, p, xset)
        if al is not None:
            yield ("alignment", al.kind, al.x, al)
    for hset in _connected_subsets(g, d):
        shape = classify_shape(g, hset)
        if shape is None or shape[0] == PATH:
            continue
        kind, spine = shape
        z = simplicial_vertices(g, hset)
        amap = {}
        ok = True
        for x in sorted(xset):
            nb = g.neighbors(x) & hset
            if len(nb) != 1 or next(iter(nb)) not in z:
                ok = False
                break
            amap[x] = next(iter(nb))
        if not ok or frozenset(amap.values()) != z:
            continue
        conn = Connectifier(h=hset, kind=kind, spine=tuple(spine),
                            legs=_legs(g, hset, spine), attached=xset,
                            attachment_map=amap)
        yield ("connectifier", SHAPE_KIND[kind], _connectifier_order(g, conn),
               conn)


def two_sided_classify(g: Graph, d1, d2, y, x_target: int,
                       max_n: Optional[int] = None) -> Optional[tuple]:
    """Search for an attachment set X of size x_target inside y together
    with a triangular structure in one component and a spiky / stellar /
    wide counterpart in the other, with matching orders; None when the
    desk-scale search exhausts."""
    guard = effective_guard(CONNECTIFY_GUARD, max_n)
    if g.n > guard:
        raise GuardExceeded(
            f"two-sided search limited to {guard} vertices (n={g.n})")
    d1 = g.check_vertex_set(d1)
    d2 = g.check_vertex_set(d2)
    y = g.check_vertex_set(y)
    if x_target < 3:
        raise InputError("the two-sided lemma needs at least 3 attachers")
    if len(y) < x_target:
        raise InputError("attachment pool smaller than the target")
    if not g.is_stable(y):
        raise InputError("attachment set must be stable")
    comps = g.components(y)
    if d1 not in comps or d2 not in comps:
        raise InputError("sides must be components of the host minus y")
    if g.neighbors_of_set(d1) != y or g.neighbors_of_set(d2) != y:
        raise InputError("both sides must see the whole attachment set")
    from .patterns import hubs
    if y & hubs(g):
        raise InputError("attachment set must avoid hubs")

    second_ok = {("connectifier", "spiky"), ("connectifier", "stellar"),
                 ("alignment", "spiky"), ("alignment", "wide")}
    for xs in itertools.combinations(sorted(y), x_target):
        xset = frozenset(xs)
        for s1, s2 in ((d1, d2), (d2, d1)):
            tri = [c for c in _side_structures(g, s1, xset)
                   if c[1] == "triangular"]
            if not tri:
                continue
            others = list(_side_structures(g, s2, xset))
            for label1, _, order1, obj1 in tri:
                for label2, kind2, order2, obj2 in others:
                    if (label2, kind2) not in second_ok:
                        continue
                    if label1 == "alignment" and (label2, kind2) == \
                            ("alignment", "wide"):
                        continue
                    if order1 is not None and order2 is not None and \
                            order1 != order2 and order1 != order2[::-1]:
                        continue
                    return (xset, obj1, obj2)
    return None
