"""Dynamic programming over tree decompositions: Stable Set, Vertex Cover,
Dominating Set, r-Coloring, and Coloring via the degeneracy bound."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .graph import Graph
from .errors import InputError
from .treedec import TreeDecomposition, validate, width

PROBLEMS = ("stable-set", "vertex-cover", "dominating-set", "r-coloring",
            "coloring")


@dataclass
class Solution:
    problem: str
    value: object
    witness: object

    def to_json(self) -> dict:
        return {"problem": self.problem, "value": self.value,
                "witness": self.witness}


@dataclass
class _Nice:
    kind: str  # leaf / introduce / forget / join
    bag: frozenset
    vertex: Optional[int] = None
    children: list = field(default_factory=list)


def _chain_up(top: _Nice, target: frozenset) -> _Nice:
    """Forget-then-introduce chain lifting a node's bag to `target`."""
    node = top
    for v in sorted(top.bag - target):
        node = _Nice("forget", node.bag - {v}, vertex=v, children=[node])
    for v in sorted(target - node.bag):
        node = _Nice("introduce", node.bag | {v}, vertex=v, children=[node])
    return node


def _leaf_chain(bag: frozenset) -> _Nice:
    node = _Nice("leaf", frozenset())
    for v in sorted(bag):
        node = _Nice("introduce", node.bag | {v}, vertex=v, children=[node])
    return node


def _nice_tree(td: TreeDecomposition) -> _Nice:
    """Rooted nice decomposition with an empty root bag."""
    root = td.nodes()[0]

    def build(t: int, parent: Optional[int]) -> _Nice:
        bag = td.bags[t]
        kids = [c for c in td.neighbors_t(t) if c != parent]
        if not kids:
            return _leaf_chain(bag)
        lifted = [_chain_up(build(c, t), bag) for c in kids]
        node = lifted[0]
        for other in lifted[1:]:
            node = _Nice("join", bag, children=[node, other])
        return node

    return _chain_up(build(root, None), frozenset())


def make_nice(td: TreeDecomposition) -> TreeDecomposition:
    """Equivalent nice decomposition: leaves plus unit introduce/forget
    steps and binary joins, rooted at an empty bag."""
    bags: Dict[int, frozenset] = {}
    edges = []

    def emit(node: _Nice) -> int:
        nid = len(bags)
        bags[nid] = node.bag
        for child in node.children:
            edges.append((nid, emit(child)))
        return nid

    emit(_nice_tree(td))
    return TreeDecomposition(bags, edges)


# -- stable set ------------------------------------------------------------

def _dp_stable(g: Graph, root: _Nice) -> Tuple[int, frozenset]:
    tables: Dict[int, Dict] = {}

    def solve_and_store(node: _Nice):
        if node.kind == "leaf":
            table = {frozenset(): (0, ())}
        elif node.kind == "join":
            l = solve_and_store(node.children[0])
            r = solve_and_store(node.children[1])
            table = {}
            for s, (lv, _) in l.items():
                if s in r:
                    table[s] = (lv + r[s][0] - len(s), (s, s))
        else:
            c = solve_and_store(node.children[0])
            v = node.vertex
            table = {}
            if node.kind == "introduce":
                for s, (val, _) in c.items():
                    if table.get(s, (-1,))[0] < val:
                        table[s] = (val, (s,))
                    if not (g.neighbors(v) & s):
                        s2 = s | {v}
                        if table.get(s2, (-1,))[0] < val + 1:
                            table[s2] = (val + 1, (s,))
            else:
                for s, (val, _) in c.items():
                    s2 = s - {v}
                    if table.get(s2, (-1,))[0] < val:
                        table[s2] = (val, (s,))
        tables[id(node)] = table
        return table

    solve_and_store(root)
    chosen = set()

    def walk(node: _Nice, state: frozenset):
        chosen.update(state)
        table = tables[id(node)]
        _, back = table[state]
        for child, cstate in zip(node.children, back):
            walk(child, cstate)

    walk(root, frozenset())
    return tables[id(root)][frozenset()][0], frozenset(chosen)


# -- dominating set --------------------------------------------------------

IN, DOM, NEED = 0, 1, 2


def _dp_dominating(g: Graph, root: _Nice) -> Tuple[int, frozenset]:
    """Three-state DP: each bag vertex is in the set, already dominated, or
    still waiting for a dominator."""
    tables: Dict[int, Dict] = {}

    def better(table, key, val, back):
        if key not in table or table[key][0] > val:
            table[key] = (val, back)

    def solve(node: _Nice):
        if node.kind == "leaf":
            table = {(): (0, ())}
        elif node.kind == "join":
            l = solve(node.children[0])
            r = solve(node.children[1])
            table = {}
            by_in: Dict[tuple, list] = {}
            for st, (val, _) in r.items():
                key = tuple(m == IN for m in st)
                by_in.setdefault(key, []).append((st, val))
            for st, (lv, _) in l.items():
                key = tuple(m == IN for m in st)
                for st2, rv in by_in.get(key, []):
                    merged = tuple(
                        IN if a == IN else
                        (DOM if DOM in (a, b) else NEED)
                        for a, b in zip(st, st2))
                    n_in = sum(1 for m in st if m == IN)
                    better(table, merged, lv + rv - n_in, (st, st2))
        else:
            c = solve(node.children[0])
            v = node.vertex
            order = sorted(node.bag)
            table = {}
            if node.kind == "introduce":
                child_order = sorted(node.bag - {v})
                nbrs = g.neighbors(v)
                for st, (val, _) in c.items():
                    marks = dict(zip(child_order, st))
                    # v joins the set: bag neighbors become dominated
                    m_in = dict(marks)
                    for u in nbrs:
                        if m_in.get(u) == NEED:
                            m_in[u] = DOM
                    m_in[v] = IN
                    better(table, tuple(m_in[u] for u in order),
                           val + 1, (st,))
                    # v stays out, already dominated by a bag neighbor
                    if any(marks.get(u) == IN for u in nbrs):
                        m_dom = dict(marks)
                        m_dom[v] = DOM
                        better(table, tuple(m_dom[u] for u in order),
                               val, (st,))
                    # v stays out and waits
                    m_need = dict(marks)
                    m_need[v] = NEED
                    better(table, tuple(m_need[u] for u in order),
                           val, (st,))
            else:
                child_order = sorted(node.bag | {v})
                vi = child_order.index(v)
                for st, (val, _) in c.items():
                    if st[vi] == NEED:
                        continue
                    reduced = tuple(m for i, m in enumerate(st) if i != vi)
                    better(table, reduced, val, (st,))
        tables[id(node)] = table
        return table

    solve(root)
    chosen = set()

    def walk(node: _Nice, state: tuple):
        table = tables[id(node)]
        _, back = table[state]
        if node.kind == "introduce":
            order = sorted(node.bag)
            if state[order.index(node.vertex)] == IN:
                chosen.add(node.vertex)
        for child, cstate in zip(node.children, back):
            walk(child, cstate)

    walk(root, ())
    return tables[id(root)][()][0], frozenset(chosen)


# -- coloring --------------------------------------------------------------

def _dp_coloring(g: Graph, root: _Nice, r: int,
                 ) -> Optional[Dict[int, int]]:
    """A proper r-coloring found by bag-state DP, or None."""
    tables: Dict[int, Dict] = {}

    def solve(node: _Nice):
        if node.kind == "leaf":
            table = {(): ()}
        elif node.kind == "join":
            l = solve(node.children[0])
            r_table = solve(node.children[1])
            table = {st: (st, st) for st in l if st in r_table}
        else:
            c = solve(node.children[0])
            v = node.vertex
            order = sorted(node.bag)
            table = {}
            if node.kind == "introduce":
                child_order = sorted(node.bag - {v})
                nbrs = g.neighbors(v)
                for st in c:
                    colors = dict(zip(child_order, st))
                    banned = {colors[u] for u in nbrs if u in colors}
                    for col in range(r):
                        if col in banned:
                            continue
                        colors[v] = col
                        key = tuple(colors[u] for u in order)
                        if key not in table:
                            table[key] = (st,)
                    colors.pop(v, None)
            else:
                child_order = sorted(node.bag | {v})
                vi = child_order.index(v)
                for st in c:
                    key = tuple(col for i, col in enumerate(st) if i != vi)
                    if key not in table:
                        table[key] = (st,)
        tables[id(node)] = table
        return table

    solve(root)
    if () not in tables[id(root)]:
        return None
    coloring: Dict[int, int] = {}

    def walk(node: _Nice, state: tuple):
        if node.kind == "introduce":
            order = sorted(node.bag)
            coloring[node.vertex] = state[order.index(node.vertex)]
        back = tables[id(node)][state]
        for child, cstate in zip(node.children, back):
            walk(child, cstate)

    walk(root, ())
    return coloring


# -- the entry point -------------------------------------------------------

def solve(g: Graph, td: TreeDecomposition, problem: str,
          r: Optional[int] = None) -> Solution:
    """Solve one of the supported problems optimally by DP over td.

    Vertex Cover is the complement of Stable Set; Coloring tries
    r-Coloring for r up to degeneracy + 1, which always suffices.
    """
    if problem not in PROBLEMS:
        raise InputError(f"unknown problem {problem!r}; "
                         f"choose from {', '.join(PROBLEMS)}")
    if not validate(g, td).valid:
        raise InputError("cannot run DP on an invalid tree decomposition")
    root = _nice_tree(td)
    if problem == "stable-set":
        val, wit = _dp_stable(g, root)
        assert g.is_stable(wit) and len(wit) == val
        return Solution(problem, val, sorted(wit))
    if problem == "vertex-cover":
        val, wit = _dp_stable(g, root)
        cover = frozenset(g.vertices()) - wit
        assert all(a in cover or b in cover for a, b in g.edges())
        return Solution(problem, g.n - val, sorted(cover))
    if problem == "dominating-set":
        val, wit = _dp_dominating(g, root)
        assert len(wit) == val
        assert frozenset(g.vertices()) <= frozenset().union(
            wit, *(g.closed_neighbors(v) for v in wit)) or g.n == 0
        return Solution(problem, val, sorted(wit))
    if problem == "r-coloring":
        if r is None or r < 1:
            raise InputError("r-coloring needs a positive r")
        col = _dp_coloring(g, root, r)
        if col is None:
            return Solution(problem, None, None)
        assert all(col[a] != col[b] for a, b in g.edges())
        return Solution(problem, r, {str(v): c for v, c in sorted(col.items())})
    # chromatic number: degeneracy + 1 colors always suffice
    _, degeneracy = g.degeneracy_order()
    if g.n == 0:
        return Solution(problem, 0, {})
    for rr in range(1, degeneracy + 2):
        col = _dp_coloring(g, root, rr)
        if col is not None:
            assert all(col[a] != col[b] for a, b in g.edges())
            return Solution(problem, rr,
                            {str(v): c for v, c in sorted(col.items())})
    raise AssertionError("degeneracy bound failed to color the graph")
