"""Tree decompositions: the core type, validation, width/adhesion/fatness
statistics, torsos, centers, tightness and leanness checks, separator-based
composition, and a small exact-treewidth oracle."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .graph import Graph
from .errors import GuardExceeded, InputError, effective_guard

EXACT_TW_GUARD = 14


class TreeDecomposition:
    """A tree of bags.  Nodes are integers; `bags` maps node -> vertex set of
    the host graph; `edges` lists unordered tree edges."""

    def __init__(self, bags: Dict[int, Iterable[int]], edges: Iterable[tuple] = ()):
        self.bags = {int(t): frozenset(b) for t, b in bags.items()}
        if not self.bags:
            raise InputError("a tree decomposition needs at least one node")
        self.edges = []
        seen = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a not in self.bags or b not in self.bags:
                raise InputError(f"tree edge {(a, b)} references a missing node")
            if a == b:
                raise InputError("tree edges must join distinct nodes")
            key = (min(a, b), max(a, b))
            if key in seen:
                continue
            seen.add(key)
            self.edges.append(key)
        self.edges.sort()
        self._adj = {t: [] for t in self.bags}
        for a, b in self.edges:
            self._adj[a].append(b)
            self._adj[b].append(a)
        for nbrs in self._adj.values():
            nbrs.sort()

    def nodes(self) -> list:
        return sorted(self.bags)

    def neighbors_t(self, t: int) -> list:
        return list(self._adj[t])

    def bag(self, t: int) -> frozenset:
        if t not in self.bags:
            raise InputError(f"no decomposition node {t}")
        return self.bags[t]

    def is_tree(self) -> bool:
        nodes = self.nodes()
        if len(self.edges) != len(nodes) - 1:
            return False
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for u in self._adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(nodes)

    def tree_path(self, t: int, t2: int) -> list:
        """Nodes of the unique tree path from t to t2, inclusive."""
        prev = {t: None}
        stack = [t]
        while stack:
            u = stack.pop()
            if u == t2:
                break
            for w in self._adj[u]:
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        if t2 not in prev:
            raise InputError("nodes lie in different tree components")
        path = [t2]
        while path[-1] != t:
            path.append(prev[path[-1]])
        return path[::-1]

    def side_nodes(self, t: int, t2: int) -> frozenset:
        """Nodes of the component of T - t containing the neighbor t2."""
        if t2 not in self._adj[t]:
            raise InputError(f"{t2} is not a tree neighbor of {t}")
        seen = {t, t2}
        stack = [t2]
        while stack:
            for u in self._adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return frozenset(seen - {t})

    def side_vertices(self, t: int, t2: int) -> frozenset:
        """Union of the bags on the t2 side of the edge (t, t2)."""
        out = frozenset()
        for s in self.side_nodes(t, t2):
            out |= self.bags[s]
        return out

    def relabeled(self) -> "TreeDecomposition":
        """Same decomposition with nodes renumbered 0..k-1 in sorted order."""
        order = {t: i for i, t in enumerate(self.nodes())}
        return TreeDecomposition(
            {order[t]: b for t, b in self.bags.items()},
            [(order[a], order[b]) for a, b in self.edges])

    def __repr__(self) -> str:
        return f"TreeDecomposition({len(self.bags)} nodes, width {width(self)})"

    def to_json(self) -> str:
        return json.dumps({
            "nodes": [{"id": t, "bag": sorted(self.bags[t])}
                      for t in self.nodes()],
            "edges": [list(e) for e in self.edges],
        })

    @classmethod
    def from_json(cls, text: str) -> "TreeDecomposition":
        try:
            data = json.loads(text)
            bags = {item["id"]: item["bag"] for item in data["nodes"]}
            edges = [tuple(e) for e in data["edges"]]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"malformed tree decomposition JSON: {exc}")
        return cls(bags, edges)


@dataclass
class ValidationReport:
    valid: bool
    tree_ok: bool = True
    vertices_ok: bool = True
    edges_ok: bool = True
    connectivity_ok: bool = True
    missing_vertex: Optional[int] = None
    missing_edge: Optional[tuple] = None
    disconnected_vertex: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid


def validate(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the three tree-decomposition conditions, reporting the first
    violator of each."""
    rep = ValidationReport(valid=True)
    if not td.is_tree():
        rep.tree_ok = rep.valid = False
        return rep
    covered = frozenset().union(*td.bags.values())
    for v in g.vertices():
        if v not in covered:
            rep.vertices_ok = rep.valid = False
            rep.missing_vertex = v
            break
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags.values()):
            rep.edges_ok = rep.valid = False
            rep.missing_edge = (u, v)
            break
    for v in g.vertices():
        holders = [t for t in td.nodes() if v in td.bags[t]]
        if not holders:
            continue
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            for u in td.neighbors_t(stack.pop()):
                if u not in seen and v in td.bags[u]:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(holders):
            rep.connectivity_ok = rep.valid = False
            rep.disconnected_vertex = v
            break
    return rep


def width(td: TreeDecomposition) -> int:
    return max(len(b) for b in td.bags.values()) - 1


def adhesion(td: TreeDecomposition) -> int:
    if not td.edges:
        return 0
    return max(len(td.bags[a] & td.bags[b]) for a, b in td.edges)


def fatness(td: TreeDecomposition, n: Optional[int] = None) -> tuple:
    """Bag-size histogram (a_n, ..., a_0), compared lexicographically."""
    top = max(len(b) for b in td.bags.values()) if n is None else n
    counts = [0] * (top + 1)
    for b in td.bags.values():
        counts[len(b)] += 1
    return tuple(counts[::-1])


def torso(g: Graph, td: TreeDecomposition, node: int) -> Tuple[Graph, list]:
    """The bag's induced graph with every neighboring adhesion completed
    into a clique.  Returns (graph, labels) with labels sorted."""
    bag = td.bag(node)
    h, labels = g.induced(bag)
    index = {v: i for i, v in enumerate(labels)}
    extra = set(h.edges())
    for t2 in td.neighbors_t(node):
        adh = sorted(bag & td.bags[t2])
        for u, v in itertools.combinations(adh, 2):
            extra.add((index[u], index[v]))
    return Graph(len(labels), extra), labels


def find_center(g: Graph, td: TreeDecomposition) -> int:
    """Least-id node t0 with |G_{t0->t'} minus bag(t0)| <= n/2 for every
    tree neighbor t'.

    One always exists: orienting each tree edge toward its big side cannot
    orient an edge both ways (the two drop sets are disjoint), and a sink of
    the orientation is a center.
    """
    for t in td.nodes():
        if all(2 * len(td.side_vertices(t, t2) - td.bags[t]) <= g.n
               for t2 in td.neighbors_t(t)):
            return t
    raise AssertionError("a tree decomposition always has a center")


def is_tight(g: Graph, td: TreeDecomposition) -> Tuple[bool, Optional[tuple]]:
    """Every directed tree edge (t, t2) must have a component of the far
    side minus bag(t) whose neighborhood covers the whole adhesion.  Returns
    (flag, offending directed edge or None)."""
    e = find_untight_edge(g, td)
    return (e is None, e)


def find_untight_edge(g: Graph, td: TreeDecomposition) -> Optional[tuple]:
    all_vs = frozenset(g.vertices())
    for a, b in td.edges:
        for t, t2 in ((a, b), (b, a)):
            adh = td.bags[t] & td.bags[t2]
            far = td.side_vertices(t, t2) - td.bags[t]
            comps = g.components(all_vs - far)
            if not any(adh <= g.neighbors_of_set(d) for d in comps):
                return (t, t2)
    return None


def is_k_lean(g: Graph, td: TreeDecomposition, k: int,
              max_k: Optional[int] = None,
              max_n: Optional[int] = None) -> Tuple[bool, Optional[object]]:
    """Check the k-lean property; returns (flag, violation or None).

    Adhesion >= k fails immediately with the offending tree edge.  The
    subset condition is delegated to the lean module's violation scanner.
    """
    for a, b in td.edges:
        if len(td.bags[a] & td.bags[b]) >= k:
            return (False, (a, b))
    from . import lean
    v = lean.find_violation(g, td, k, max_k=max_k, max_n=max_n)
    return (v is None, v)


def compose_with_separator(g: Graph, x: Iterable[int],
                           component_tds: List[TreeDecomposition],
                           ) -> TreeDecomposition:
    """Join decompositions of the components of g minus x under a new root
    bag x, with x folded into every bag."""
    x = g.check_vertex_set(x)
    comps = g.components(x)
    if len(comps) != len(component_tds):
        raise InputError(
            f"expected {len(comps)} component decompositions, "
            f"got {len(component_tds)}")
    bags = {0: x}
    edges = []
    offset = 1
    for comp, sub in zip(comps, component_tds):
        covered = frozenset().union(*sub.bags.values())
        if covered != comp:
            raise InputError(
                "component decomposition does not match a component of the "
                "separated graph")
        order = {t: offset + i for i, t in enumerate(sub.nodes())}
        for t in sub.nodes():
            bags[order[t]] = sub.bags[t] | x
        edges.extend((order[a], order[b]) for a, b in sub.edges)
        edges.append((0, offset))
        offset += len(sub.bags)
    return TreeDecomposition(bags, edges)


# -- exact treewidth ------------------------------------------------------

def exact_treewidth(g: Graph, max_n: Optional[int] = None,
                    ) -> Tuple[int, TreeDecomposition]:
    """Optimal width plus a witness decomposition, by dynamic programming
    over elimination orderings with memoized vertex subsets."""
    guard = effective_guard(EXACT_TW_GUARD, max_n)
    if g.n > guard:
        raise GuardExceeded(
            f"exact treewidth limited to {guard} vertices (n={g.n})")
    if g.n == 0:
        return (-1, TreeDecomposition({0: frozenset()}))

    full = (1 << g.n) - 1
    nbr_mask = [0] * g.n
    for u, v in g.edges():
        nbr_mask[u] |= 1 << v
        nbr_mask[v] |= 1 << u

    def q_cost(prefix: int, v: int) -> int:
        # vertices outside prefix+{v} adjacent to v's component in prefix+{v}
        comp = 1 << v
        frontier = comp
        inside = prefix | (1 << v)
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= nbr_mask[low.bit_length() - 1]
                f ^= low
            frontier = grow & inside & ~comp
            comp |= frontier
        out = 0
        c = comp
        while c:
            low = c & -c
            out |= nbr_mask[low.bit_length() - 1]
            c ^= low
        return bin(out & ~inside).count("1")

    best = {0: -1}
    choice = {}
    # process subsets in order of population count
    by_size = [[] for _ in range(g.n + 1)]
    for s in range(full + 1):
        by_size[bin(s).count("1")].append(s)
    for size in range(1, g.n + 1):
        for s in by_size[size]:
            val, pick = None, None
            rest = s
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                cand = max(best[s ^ low], q_cost(s ^ low, v))
                if val is None or cand < val:
                    val, pick = cand, v
            best[s] = val
            choice[s] = pick

    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()  # elimination order: order[0] eliminated first

    # build the fill graph along the elimination order and bag each vertex
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    bags = {}
    for v in order:
        later = sorted(w for w in adj[v] if pos[w] > pos[v])
        bags[v] = frozenset([v] + later)
        for a, b in itertools.combinations(later, 2):
            adj[a].add(b)
            adj[b].add(a)
    edges = []
    for v in order[:-1]:
        later = [w for w in bags[v] if pos[w] > pos[v]]
        if later:
            edges.append((v, min(later, key=lambda w: pos[w])))
        else:
            edges.append((v, order[-1]))
    td = TreeDecomposition(bags, edges).relabeled()
    assert width(td) == best[full]
    assert validate(g, td).valid
    return (best[full], td)
