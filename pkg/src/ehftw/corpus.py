"""Deterministic corpus generation: families of graphs for exercising the
class-conditional machinery, each entry carrying its membership report."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .graph import Graph, to_graph6
from .errors import InputError
from .patterns import MembershipReport, class_membership

FAMILIES = ("chordal", "tree", "glued-cliques", "random-filtered")


@dataclass
class CorpusEntry:
    graph: Graph
    family: str
    report: MembershipReport

    @property
    def bucket(self) -> str:
        if self.report.in_c_tt:
            return "c_tt"
        if self.report.in_c_t:
            return "c_t"
        if self.report.in_c:
            return "c"
        return "outside"

    def to_json(self) -> dict:
        return {"graph6": to_graph6(self.graph), "family": self.family,
                "bucket": self.bucket, "report": self.report.to_json()}


def _random_chordal(n: int, rng: random.Random) -> Graph:
    """Random elimination build: each new vertex attaches to a clique among
    the earlier neighbors of a chosen anchor."""
    edges = []
    adj = {v: set() for v in range(n)}
    for v in range(1, n):
        anchor = rng.randrange(v)
        clique = {anchor}
        pool = sorted(adj[anchor] & set(range(v)))
        rng.shuffle(pool)
        for u in pool:
            if all(x in adj[u] for x in clique):
                if rng.random() < 0.6:
                    clique.add(u)
        for u in clique:
            edges.append((u, v))
            adj[u].add(v)
            adj[v].add(u)
    return Graph(n, edges)


def _random_tree(n: int, rng: random.Random) -> Graph:
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph(n, edges)


def _glued_cliques(n: int, rng: random.Random) -> Graph:
    """Cliques glued along shared cliques, one block at a time."""
    sizes = []
    total = 0
    while total < n:
        s = rng.randint(2, min(4, n - total + 1))
        sizes.append(s)
        total += s - 1 if sizes[:-1] else s
    edges = []
    used = sizes[0]
    blocks = [list(range(sizes[0]))]
    edges.extend(itertools.combinations(range(sizes[0]), 2))
    for s in sizes[1:]:
        host = rng.choice(blocks)
        share = rng.sample(host, rng.randint(1, min(len(host), s - 1)))
        fresh = list(range(used, min(used + s - len(share), n)))
        used += len(fresh)
        block = share + fresh
        edges.extend(itertools.combinations(sorted(block), 2))
        blocks.append(block)
        if used >= n:
            break
    return Graph(used, sorted(set((min(a, b), max(a, b))
                                  for a, b in edges)))


def generate_corpus(family: str, n_range: Tuple[int, int] = (5, 10),
                    count: int = 5, seed: int = 0, t: int = 4,
                    max_attempts: int = 4000) -> List[CorpusEntry]:
    """Deterministically generate `count` graphs of the family, each with
    its class-membership report.  The random-filtered family rejection
    samples and keeps only members of C (bucketed further by the report)."""
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; "
                         f"choose from {', '.join(FAMILIES)}")
    lo, hi = n_range
    if not 1 <= lo <= hi:
        raise InputError("bad vertex range")
    rng = random.Random(f"{seed}|{family}|{lo}|{hi}|{count}")
    out: List[CorpusEntry] = []
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        n = rng.randint(lo, hi)
        if family == "chordal":
            g = _random_chordal(n, rng)
        elif family == "tree":
            g = _random_tree(n, rng)
        elif family == "glued-cliques":
            g = _glued_cliques(n, rng)
        else:
            p = rng.uniform(0.15, 0.5)
            g = Graph(n, [e for e in
                          itertools.combinations(range(n), 2)
                          if rng.random() < p])
        report = class_membership(g, t)
        if family == "random-filtered" and not report.in_c:
            continue
        out.append(CorpusEntry(graph=g, family=family, report=report))
    return out
