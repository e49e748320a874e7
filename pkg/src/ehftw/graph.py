"""Immutable simple graphs with the connectivity queries the rest of the
toolkit builds on: induced subgraphs, components, Menger-style disjoint
paths with cut certificates, and degeneracy orderings.

Vertices are dense integers 0..n-1.  All iteration is in ascending vertex
order so that every downstream witness is reproducible.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Sequence


class GraphInputError(ValueError):
    """Raised for malformed graph data or out-of-range vertex ids."""


class Graph:
    """An immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphInputError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop at vertex {u} not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._edges = tuple(
            (u, v) for u in range(n) for v in sorted(adj[u]) if u < v
        )

    # -- basic queries -------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def neighbors_of_set(self, xs: Iterable[int]) -> frozenset[int]:
        """Open neighborhood N(X): vertices outside X with a neighbor in X."""
        xs = frozenset(xs)
        out: set[int] = set()
        for v in xs:
            out |= self._adj[v]
        return frozenset(out - xs)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def is_anticomplete(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        ys = frozenset(ys)
        return all(not (self._adj[x] & ys) for x in xs)

    def is_complete_between(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        ys = frozenset(ys)
        return all(ys <= self._adj[x] | {x} for x in xs)

    def is_clique(self, xs: Iterable[int]) -> bool:
        xs = sorted(set(xs))
        return all(
            self.has_edge(xs[i], xs[j])
            for i in range(len(xs))
            for j in range(i + 1, len(xs))
        )

    def is_stable(self, xs: Iterable[int]) -> bool:
        xs = frozenset(xs)
        return all(not (self._adj[v] & xs) for v in xs)

    def check_vertex_set(self, xs: Iterable[int]) -> frozenset[int]:
        xs = frozenset(xs)
        for v in xs:
            if not (0 <= v < self.n):
                raise GraphInputError(f"vertex {v} out of range for n={self.n}")
        return xs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"

    # -- derived graphs ------------------------------------------------

    def induced(self, xs: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``xs``.

        Returns (graph, labels) where labels[i] is the host vertex that
        became vertex i; host vertices are taken in ascending order.
        """
        labels = sorted(self.check_vertex_set(xs))
        index = {v: i for i, v in enumerate(labels)}
        edges = [
            (index[u], index[v])
            for u, v in self._edges
            if u in index and v in index
        ]
        return Graph(len(labels), edges), labels

    # -- connectivity --------------------------------------------------

    def components(self, forbidden: Iterable[int] = ()) -> list[frozenset[int]]:
        """Connected components of G minus ``forbidden``, ordered by their
        minimum vertex id."""
        forbidden = self.check_vertex_set(forbidden)
        seen: set[int] = set(forbidden)
        out: list[frozenset[int]] = []
        for start in range(self.n):
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            seen.add(start)
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            out.append(frozenset(comp))
        return out

    def component_of(self, v: int, forbidden: Iterable[int] = ()) -> frozenset[int]:
        forbidden = frozenset(forbidden)
        if v in forbidden:
            raise GraphInputError(f"vertex {v} is forbidden")
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in comp and w not in forbidden:
                    comp.add(w)
                    queue.append(w)
        return frozenset(comp)

    def is_connected(self, within: Iterable[int] | None = None) -> bool:
        if within is None:
            return len(self.components()) <= 1
        within = frozenset(within)
        if not within:
            return True
        v = min(within)
        return self.component_of(v, frozenset(range(self.n)) - within) >= within

    def shortest_path(
        self,
        src: Iterable[int],
        dst: Iterable[int],
        allowed: Iterable[int] | None = None,
    ) -> list[int] | None:
        """A shortest path from ``src`` to ``dst`` with all vertices inside
        ``allowed`` (which must contain the endpoints used).  Shortest paths
        are induced in the graph restricted to ``allowed``."""
        src, dst = frozenset(src), frozenset(dst)
        ok = frozenset(allowed) if allowed is not None else frozenset(range(self.n))
        prev: dict[int, int | None] = {}
        queue: deque[int] = deque()
        for s in sorted(src & ok):
            prev[s] = None
            queue.append(s)
        while queue:
            u = queue.popleft()
            if u in dst:
                path = [u]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return list(reversed(path))
            for w in sorted(self._adj[u]):
                if w in ok and w not in prev:
                    prev[w] = u
                    queue.append(w)
        return None

    # -- Menger --------------------------------------------------------

    def menger(
        self, src: Iterable[int], dst: Iterable[int]
    ) -> tuple[int, list[list[int]], frozenset[int]]:
        """Maximum set of pairwise vertex-disjoint paths from ``src`` to
        ``dst``, plus a minimum separating vertex set of the same size.

        A vertex in both sets counts as a length-0 path.  The cut may use
        vertices of ``src`` and ``dst``.
        """
        src = self.check_vertex_set(src)
        dst = self.check_vertex_set(dst)
        if not src or not dst:
            raise GraphInputError("menger endpoints must be nonempty")
        return _unit_vertex_flow(self, src, dst, uncapacitated=frozenset())

    def menger_internal(
        self, u: int, v: int
    ) -> tuple[int, list[list[int]], frozenset[int]]:
        """Maximum pairwise internally vertex-disjoint u-v paths with a
        minimum cut inside V minus {u, v}.  Requires u, v nonadjacent."""
        if u == v:
            raise GraphInputError("menger_internal endpoints must differ")
        if self.has_edge(u, v):
            raise GraphInputError("menger_internal endpoints must be nonadjacent")
        return _unit_vertex_flow(
            self, frozenset({u}), frozenset({v}), uncapacitated=frozenset({u, v})
        )

    # -- degeneracy ----------------------------------------------------

    def degeneracy_order(self) -> tuple[list[int], int]:
        """Repeated minimum-degree peeling; ties broken by least vertex id."""
        remaining = set(range(self.n))
        deg = {v: self.degree(v) for v in remaining}
        order: list[int] = []
        degeneracy = 0
        while remaining:
            v = min(remaining, key=lambda x: (deg[x], x))
            degeneracy = max(degeneracy, deg[v])
            order.append(v)
            remaining.discard(v)
            for w in self._adj[v]:
                if w in remaining:
                    deg[w] -= 1
        return order, degeneracy


def _unit_vertex_flow(
    g: Graph,
    src: frozenset[int],
    dst: frozenset[int],
    uncapacitated: frozenset[int],
) -> tuple[int, list[list[int]], frozenset[int]]:
    """Unit-vertex-capacity max flow by vertex splitting.

    Each vertex v becomes v_in -> v_out with capacity 1 (infinite for
    ``uncapacitated`` vertices); each edge contributes both directions with
    infinite capacity.  Paths and the min cut are read off the residual.
    """
    n = g.n
    INF = n + 1
    # node ids: 2v = v_in, 2v+1 = v_out, 2n = source, 2n+1 = sink
    SOURCE, SINK = 2 * n, 2 * n + 1
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {i: [] for i in range(2 * n + 2)}

    def add(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            cap[(a, b)] = 0
            cap[(b, a)] = cap.get((b, a), 0)
            adj[a].append(b)
            adj[b].append(a)
        cap[(a, b)] += c

    for v in range(n):
        add(2 * v, 2 * v + 1, INF if v in uncapacitated else 1)
        for w in g.neighbors(v):
            add(2 * v + 1, 2 * w, INF)
    for s in sorted(src):
        add(SOURCE, 2 * s, INF if s in uncapacitated else 1)
    for t in sorted(dst):
        add(2 * t + 1, SINK, INF if t in uncapacitated else 1)

    flow: dict[tuple[int, int], int] = {}

    def residual(a: int, b: int) -> int:
        return cap.get((a, b), 0) - flow.get((a, b), 0) + flow.get((b, a), 0)

    def augment() -> bool:
        prev: dict[int, int] = {SOURCE: SOURCE}
        queue = deque([SOURCE])
        while queue:
            a = queue.popleft()
            if a == SINK:
                break
            for b in adj[a]:
                if b not in prev and residual(a, b) > 0:
                    prev[b] = a
                    queue.append(b)
        if SINK not in prev:
            return False
        b = SINK
        while b != SOURCE:
            a = prev[b]
            back = min(flow.get((b, a), 0), 1)
            if back:
                flow[(b, a)] -= 1
            else:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            b = a
        return True

    count = 0
    while augment():
        count += 1

    # residual reachability from SOURCE gives the min cut: split edges
    # v_in -> v_out that are saturated with v_in reachable, v_out not.
    reach: set[int] = {SOURCE}
    queue = deque([SOURCE])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in reach and residual(a, b) > 0:
                reach.add(b)
                queue.append(b)
    cut_set: set[int] = set()
    for v in range(n):
        if v in uncapacitated:
            continue
        if 2 * v in reach and 2 * v + 1 not in reach:
            cut_set.add(v)
    # saturated terminal edges put the terminal vertex itself in the cut
    for s in src:
        if s not in uncapacitated and 2 * s not in reach:
            cut_set.add(s)
    for t in dst:
        if t not in uncapacitated and 2 * t + 1 in reach:
            cut_set.add(t)
    cut = frozenset(cut_set)

    # trace unit flow paths from each used source entry
    succ: dict[int, list[int]] = {}
    for (a, b), f in flow.items():
        net = f - flow.get((b, a), 0)
        if net > 0:
            succ.setdefault(a, []).extend([b] * net)
    for lst in succ.values():
        lst.sort()
    paths: list[list[int]] = []
    for s in sorted(src):
        while succ.get(SOURCE) and 2 * s in succ[SOURCE]:
            succ[SOURCE].remove(2 * s)
            node = 2 * s
            path: list[int] = []
            while node != SINK:
                if node % 2 == 0 and (not path or path[-1] != node // 2):
                    path.append(node // 2)
                nxts = succ.get(node)
                if not nxts:
                    break
                node = nxts.pop(0)
            paths.append(path)
    return count, paths, cut


# -- serialization -----------------------------------------------------


def to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]})


def from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph(int(data["n"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise GraphInputError(f"bad graph JSON: {exc}") from exc


def to_graph6(g: Graph) -> str:
    """Encode in graph6 format (n up to 258047 supported)."""
    n = g.n
    if n < 0:
        raise GraphInputError("bad n")
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        raise GraphInputError("graph too large for this graph6 encoder")
    bits: list[int] = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = [
        (bits[i] << 5 | bits[i + 1] << 4 | bits[i + 2] << 3
         | bits[i + 3] << 2 | bits[i + 4] << 1 | bits[i + 5]) + 63
        for i in range(0, len(bits), 6)
    ]
    return "".join(chr(c) for c in head + body)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    data = [ord(c) - 63 for c in s]
    if any(d < 0 or d > 63 for d in data):
        raise GraphInputError("invalid graph6 characters")
    if not data:
        raise GraphInputError("empty graph6 string")
    if data[0] == 63:
        if len(data) < 4:
            raise GraphInputError("truncated graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) < need:
        raise GraphInputError("truncated graph6 body")
    bits: list[int] = []
    for d in body[:need]:
        bits.extend(((d >> k) & 1) for k in range(5, -1, -1))
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return Graph(n, edges)


# -- small constructors used across the test suite and corpus ----------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
