"""Self-contained verification suite: property checks at configurable
sizes, with naive structural oracles kept independent of the search code
they judge."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

from .graph import Graph
from .errors import InputError
from . import patterns
from .pmc import is_pmc, is_chordal, to_structured
from .separators import is_minimal_separator
from .treedec import (validate, width, adhesion, is_tight, is_k_lean,
                      find_center, exact_treewidth)
from .lean import refine_to_lean
from .bounds import cover_by_components, _max_stable_subset
from .decomposer import decompose, desk_params
from .dp import solve
from .corpus import generate_corpus
from .graph import to_graph6, from_graph6

DEFAULT_CONFIG = {"n_max": 8, "samples": 40, "seed": 0, "t": 4}


# -- naive structural oracles ----------------------------------------------

def _induced(g: Graph, vs) -> Graph:
    sub, _ = g.induced(vs)
    return sub


def _is_hole(h: Graph) -> bool:
    return (h.n >= 4 and h.is_connected()
            and all(h.degree(v) == 2 for v in h.vertices()))


def _is_theta(h: Graph) -> bool:
    if h.n < 5 or not h.is_connected():
        return False
    deg3 = [v for v in h.vertices() if h.degree(v) == 3]
    if len(deg3) != 2 or h.has_edge(*deg3):
        return False
    if any(h.degree(v) != 2 for v in h.vertices() if v not in deg3):
        return False
    # three internally disjoint branch paths, each of length at least two
    comps = h.components(deg3)
    if len(comps) != 3:
        return False
    return all(h.neighbors_of_set(c) == frozenset(deg3) for c in comps)


def _is_prism(h: Graph) -> bool:
    if h.n < 6 or not h.is_connected():
        return False
    deg3 = [v for v in h.vertices() if h.degree(v) == 3]
    if len(deg3) != 6:
        return False
    if any(h.degree(v) != 2 for v in h.vertices() if v not in deg3):
        return False
    tris = [t for t in itertools.combinations(deg3, 3)
            if h.is_clique(t)]
    for t1, t2 in itertools.combinations(tris, 2):
        if set(t1) & set(t2):
            continue
        # remove triangle edges; the rest must be three disjoint paths
        edges = [e for e in h.edges()
                 if not (set(e) <= set(t1) or set(e) <= set(t2))]
        other = Graph(h.n, edges)
        if all(other.degree(v) in (1, 2) for v in h.vertices()):
            comps = other.components()
            if len(comps) == 3 and all(
                    len(c & set(t1)) == 1 and len(c & set(t2)) == 1
                    for c in comps):
                return True
    return False


def _has_pattern(g: Graph, check, min_size: int) -> bool:
    vs = list(g.vertices())
    for size in range(min_size, g.n + 1):
        for combo in itertools.combinations(vs, size):
            if check(_induced(g, frozenset(combo))):
                return True
    return False


def _has_even_wheel(g: Graph) -> bool:
    vs = list(g.vertices())
    for center in vs:
        rest = [v for v in vs if v != center]
        for size in range(4, len(rest) + 1):
            for combo in itertools.combinations(rest, size):
                h = _induced(g, frozenset(combo))
                if not _is_hole(h):
                    continue
                deg = len(g.neighbors(center) & set(combo))
                if deg >= 4 and deg % 2 == 0:
                    return True
    return False


def _brute_min_vertex_cut(g: Graph, s: int, t: int) -> int:
    if g.has_edge(s, t):
        return -1
    pool = [v for v in g.vertices() if v not in (s, t)]
    everyone = set(g.vertices())
    for k in range(len(pool) + 1):
        for cut in itertools.combinations(pool, k):
            if g.shortest_path([s], [t], allowed=everyone - set(cut)) is None:
                return k
    return len(pool)


def _brute_solutions(g: Graph, problem: str) -> int:
    vs = list(g.vertices())
    if problem == "stable-set":
        return max(len(c) for k in range(g.n + 1)
                   for c in itertools.combinations(vs, k)
                   if g.is_stable(c))
    if problem == "vertex-cover":
        return g.n - _brute_solutions(g, "stable-set")
    if problem == "dominating-set":
        for k in range(g.n + 1):
            for c in itertools.combinations(vs, k):
                dom = set(c)
                for v in c:
                    dom |= g.neighbors(v)
                if len(dom) == g.n:
                    return k
        return g.n
    # chromatic number
    for r in range(1, g.n + 1):
        for assign in itertools.product(range(r), repeat=g.n):
            if all(assign[a] != assign[b] for a, b in g.edges()):
                return r
    return g.n


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [e for e in itertools.combinations(range(n), 2)
                     if rng.random() < p])


# -- individual checks -----------------------------------------------------

def _check_graph6_roundtrip(cfg) -> dict:
    entries = []
    for fam in ("chordal", "tree", "glued-cliques", "random-filtered"):
        entries += generate_corpus(fam, (4, cfg["n_max"]), 4, cfg["seed"])
    bad = [e for e in entries
           if from_graph6(to_graph6(e.graph)) != e.graph]
    return {"name": "graph6-roundtrip", "passed": not bad,
            "detail": f"{len(entries)} graphs round-tripped"}


def _detector_case(g: Graph) -> Optional[str]:
    if (patterns.find_hole(g) is not None) != _has_pattern(g, _is_hole, 4):
        return "hole"
    if ((patterns.find_hole(g, parity="even") is not None)
            != _has_pattern(g, lambda h: _is_hole(h) and h.n % 2 == 0, 4)):
        return "even hole"
    if (patterns.find_theta(g) is not None) != _has_pattern(g, _is_theta, 5):
        return "theta"
    if (patterns.find_prism(g) is not None) != _has_pattern(g, _is_prism, 6):
        return "prism"
    if (patterns.find_even_wheel(g) is not None) != _has_even_wheel(g):
        return "even wheel"
    return None


def _check_detectors(cfg) -> dict:
    rng = random.Random(cfg["seed"])
    cases = []
    for n in range(1, 6):
        for mask in range(1 << (n * (n - 1) // 2)):
            pairs = list(itertools.combinations(range(n), 2))
            cases.append(Graph(n, [e for i, e in enumerate(pairs)
                                   if mask >> i & 1]))
    for _ in range(cfg["samples"]):
        cases.append(_random_graph(rng, rng.randint(6, 7),
                                   rng.uniform(0.2, 0.7)))
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(_detector_case, cases))
    bad = [r for r in results if r]
    return {"name": "detector-oracle", "passed": not bad,
            "detail": (f"{len(cases)} graphs checked"
                       if not bad else f"disagreement on {bad[0]}")}


def _minimal_completions(g: Graph) -> List[frozenset]:
    """Fill-in edge sets of all elimination orders, pruned to the
    inclusion-minimal ones."""
    fills = set()
    for order in itertools.permutations(g.vertices()):
        adj = {v: set(g.neighbors(v)) for v in g.vertices()}
        fill = set()
        for v in order:
            nb = sorted(adj[v])
            for a, b in itertools.combinations(nb, 2):
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    fill.add((a, b))
            for u in nb:
                adj[u].discard(v)
            adj[v].clear()
        fills.add(frozenset(fill))
    return [f for f in fills
            if not any(h < f for h in fills)]


def _check_pmc(cfg) -> dict:
    rng = random.Random(cfg["seed"] + 1)
    checked = 0
    for _ in range(cfg["samples"] // 2):
        n = rng.randint(3, 5)
        g = _random_graph(rng, n, rng.uniform(0.2, 0.8))
        pmcs = set()
        for fill in _minimal_completions(g):
            h = Graph(g.n, list(g.edges()) + sorted(fill))
            for size in range(1, n + 1):
                for c in itertools.combinations(range(n), size):
                    if h.is_clique(c) and not any(
                            h.is_clique(set(c) | {v})
                            for v in range(n) if v not in c):
                        pmcs.add(frozenset(c))
        for size in range(1, n + 1):
            for c in itertools.combinations(range(n), size):
                checked += 1
                if is_pmc(g, frozenset(c))[0] != (frozenset(c) in pmcs):
                    return {"name": "pmc-oracle", "passed": False,
                            "detail": f"disagreement on {c} in {g!r}"}
    return {"name": "pmc-oracle", "passed": True,
            "detail": f"{checked} candidate sets checked"}


def _check_separator_duality(cfg) -> dict:
    rng = random.Random(cfg["seed"] + 2)
    checked = 0
    for _ in range(cfg["samples"]):
        n = rng.randint(4, 6)
        g = _random_graph(rng, n, rng.uniform(0.3, 0.7))
        for size in range(1, n + 1):
            for c in itertools.combinations(range(n), size):
                omega = frozenset(c)
                if not is_pmc(g, omega)[0]:
                    continue
                for comp in g.components(omega):
                    s = g.neighbors_of_set(comp)
                    checked += 1
                    if s and not is_minimal_separator(g, s):
                        return {"name": "separator-duality",
                                "passed": False,
                                "detail": f"{sorted(s)} not minimal "
                                          f"in {g!r}"}
    return {"name": "separator-duality", "passed": True,
            "detail": f"{checked} neighborhoods certified"}


def _check_menger(cfg) -> dict:
    rng = random.Random(cfg["seed"] + 3)
    checked = 0
    for _ in range(cfg["samples"] * 2):
        n = rng.randint(3, 7)
        g = _random_graph(rng, n, rng.uniform(0.2, 0.8))
        s, t = rng.sample(range(n), 2)
        if g.has_edge(s, t):
            continue
        count, paths, cut = g.menger_internal(s, t)
        if count != _brute_min_vertex_cut(g, s, t):
            return {"name": "menger", "passed": False,
                    "detail": f"flow {count} vs brute cut in {g!r}"}
        checked += 1
    return {"name": "menger", "passed": True,
            "detail": f"{checked} terminal pairs checked"}


def _check_lean(cfg) -> dict:
    rng = random.Random(cfg["seed"] + 4)
    done = 0
    for _ in range(cfg["samples"] // 2):
        n = rng.randint(4, min(10, cfg["n_max"] + 2))
        g = _random_graph(rng, n, rng.uniform(0.3, 0.7))
        if not g.is_connected():
            continue
        k = rng.choice((2, 3, 4))
        td = refine_to_lean(g, k)
        if not (validate(g, td).valid and adhesion(td) < k
                and is_tight(g, td) and is_k_lean(g, td, k)):
            return {"name": "lean-refiner", "passed": False,
                    "detail": f"bad output for k={k} on {g!r}"}
        t0 = find_center(g, td)
        half = [t1 for t1 in td.neighbors_t(t0)
                if len(td.side_vertices(t0, t1) - td.bags[t0]) > g.n / 2]
        if half:
            return {"name": "lean-refiner", "passed": False,
                    "detail": f"center fails the half bound on {g!r}"}
        done += 1
    return {"name": "lean-refiner", "passed": True,
            "detail": f"{done} refinements verified"}


def _check_pipeline(cfg) -> dict:
    params = desk_params()
    entries = []
    for fam in ("chordal", "tree", "glued-cliques", "random-filtered"):
        entries += generate_corpus(fam, (4, cfg["n_max"]), 3, cfg["seed"])
    done = 0
    for e in entries:
        if not e.report.in_c_tt:
            continue
        g = e.graph
        td, trace = decompose(g, params)
        if not validate(g, td).valid:
            return {"name": "pipeline", "passed": False,
                    "detail": f"invalid decomposition for {to_graph6(g)}"}
        tw, _ = exact_treewidth(g)
        if width(td) > min(params.width_bound(g.n, g.n),
                           tw + 2 * params.m):
            return {"name": "pipeline", "passed": False,
                    "detail": f"width {width(td)} too large for "
                              f"{to_graph6(g)}"}
        done += 1
    return {"name": "pipeline", "passed": True,
            "detail": f"{done} class members decomposed"}


def _check_cover(cfg) -> dict:
    entries = generate_corpus("random-filtered", (4, cfg["n_max"]), 6,
                              cfg["seed"])
    done = 0
    for e in entries:
        g = e.graph
        if not g.is_connected() or g.n < 2:
            continue
        std = to_structured(g, exact_treewidth(g)[1])
        hub_set = patterns.hubs(g)
        for node in std.nodes():
            y = _max_stable_subset(g, std.bags[node] - hub_set)
            if not y:
                continue
            comps = cover_by_components(g, std, node, y)
            if len(comps) > 4:
                return {"name": "cover-by-components", "passed": False,
                        "detail": f"{len(comps)} components needed"}
            done += 1
    return {"name": "cover-by-components", "passed": True,
            "detail": f"{done} stable bag subsets covered"}


def _check_dp(cfg) -> dict:
    entries = generate_corpus("random-filtered", (4, min(cfg["n_max"], 8)),
                              4, cfg["seed"])
    done = 0
    for e in entries:
        g = e.graph
        _, td = exact_treewidth(g)
        for problem in ("stable-set", "vertex-cover", "dominating-set",
                        "coloring"):
            got = solve(g, td, problem)
            if got.value != _brute_solutions(g, problem):
                return {"name": "dp-oracle", "passed": False,
                        "detail": f"{problem} mismatch on {to_graph6(g)}"}
            done += 1
    return {"name": "dp-oracle", "passed": True,
            "detail": f"{done} problem instances matched"}


ORACLE_CHECKS = (_check_graph6_roundtrip, _check_detectors, _check_pmc,
                 _check_separator_duality, _check_menger)
FULL_CHECKS = ORACLE_CHECKS + (_check_lean, _check_pipeline, _check_cover,
                               _check_dp)


def run_suite(config: Optional[dict] = None) -> dict:
    """Run the verification suite and return a machine-readable report.

    A config with n_max <= 6 restricts to the exhaustive-oracle checks;
    larger n_max runs the full property suite as well.
    """
    cfg = dict(DEFAULT_CONFIG)
    if config:
        unknown = set(config) - set(DEFAULT_CONFIG)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(config)
    if cfg["n_max"] < 4 or cfg["samples"] < 1:
        raise InputError("config needs n_max >= 4 and samples >= 1")
    checks = ORACLE_CHECKS if cfg["n_max"] <= 6 else FULL_CHECKS
    results = [chk(cfg) for chk in checks]
    return {"config": cfg,
            "checks": results,
            "passed": all(r["passed"] for r in results)}
