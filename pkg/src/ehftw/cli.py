"""Command-line surface: graph6 in, JSON out.

Subcommands: detect, separators, refine, decompose, solve, verify, bounds,
connectify, corpus, suite.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from . import patterns
from .graph import Graph, from_graph6, to_graph6
from .errors import ClassViolation, GuardExceeded, InputError
from .separators import (balanced_separator, clique_cutset,
                         minimal_separators, star_cutset)
from .treedec import (TreeDecomposition, adhesion, exact_treewidth,
                      find_center, is_k_lean, is_tight, validate, width)
from .lean import refine_to_lean
from .pmc import is_pmc, to_structured
from .decomposer import decompose, desk_params, small_params
from .bounds import check_nonhub_bounds
from .dp import PROBLEMS, solve
from .connectify import find_connectifier
from .corpus import FAMILIES, generate_corpus
from .suite import run_suite


def _load_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    line = text.strip().splitlines()[0] if text.strip() else ""
    try:
        return from_graph6(line)
    except Exception as exc:
        raise click.ClickException(f"cannot parse graph6 input: {exc}")


def _load_td(path: str) -> TreeDecomposition:
    try:
        return TreeDecomposition.from_json(Path(path).read_text())
    except FileNotFoundError:
        raise click.ClickException(f"decomposition file not found: {path}")
    except Exception as exc:
        raise click.ClickException(f"cannot parse decomposition: {exc}")


def _emit(data, out: Optional[str]) -> None:
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def _wrap(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (InputError, GuardExceeded) as exc:
        raise click.ClickException(str(exc))


@click.group()
def main() -> None:
    """Structural decomposition toolkit for hole- and wheel-constrained
    graph classes."""


@main.command()
@click.argument("graph")
@click.option("--pattern", default="membership",
              type=click.Choice(["membership", "hole", "even-hole", "c4",
                                 "theta", "prism", "wheels", "even-wheel",
                                 "pyramid"]))
@click.option("--t", "t", default=4, show_default=True,
              help="Clique bound for membership and pyramid checks.")
@click.option("-o", "--out", default=None, help="Write JSON here.")
def detect(graph, pattern, t, out) -> None:
    """Search for forbidden patterns, or report class membership."""
    g = _load_graph(graph)
    if pattern == "membership":
        _emit(_wrap(patterns.class_membership, g, t).to_json(), out)
        return
    finders = {
        "hole": lambda: patterns.find_hole(g),
        "even-hole": lambda: patterns.find_hole(g, parity="even"),
        "c4": lambda: patterns.find_c4(g),
        "theta": lambda: patterns.find_theta(g),
        "prism": lambda: patterns.find_prism(g),
        "even-wheel": lambda: patterns.find_even_wheel(g),
        "pyramid": lambda: patterns.find_generalized_k_pyramid(g, t),
    }
    if pattern == "wheels":
        _emit([w.to_json() for w in _wrap(patterns.find_wheels, g)], out)
        return
    wit = _wrap(finders[pattern])
    _emit({"pattern": pattern, "found": wit is not None,
           "witness": wit.to_json() if wit is not None else None}, out)


@main.command()
@click.argument("graph")
@click.option("--kind", default="minimal",
              type=click.Choice(["minimal", "clique", "star", "balanced"]))
@click.option("--max-size", default=None, type=int,
              help="Size cap for balanced separators.")
@click.option("--balance", default=0.5, show_default=True,
              help="Component fraction for balanced separators.")
@click.option("-o", "--out", default=None)
def separators(graph, kind, max_size, balance, out) -> None:
    """Enumerate minimal separators or find a cutset of the chosen kind."""
    g = _load_graph(graph)
    if kind == "minimal":
        seps = _wrap(minimal_separators, g)
        _emit([sorted(s) for s in seps], out)
    elif kind == "clique":
        x = _wrap(clique_cutset, g)
        _emit({"found": x is not None,
               "cutset": sorted(x) if x is not None else None}, out)
    elif kind == "star":
        res = _wrap(star_cutset, g)
        _emit({"found": res is not None,
               "center": res[0] if res else None,
               "cutset": sorted(res[1]) if res else None}, out)
    else:
        if max_size is None:
            raise click.ClickException("balanced separators need --max-size")
        x = _wrap(balanced_separator, g, balance, max_size)
        _emit({"found": x is not None,
               "separator": sorted(x) if x is not None else None}, out)


@main.command()
@click.argument("graph")
@click.option("-k", default=3, show_default=True,
              help="Leanness order to refine towards.")
@click.option("-o", "--out", default=None)
def refine(graph, k, out) -> None:
    """Refine a tree decomposition of the graph until it is k-lean."""
    g = _load_graph(graph)
    td = _wrap(refine_to_lean, g, k)
    data = json.loads(td.to_json())
    data["width"] = width(td)
    data["adhesion"] = adhesion(td)
    data["center"] = find_center(g, td)
    _emit(data, out)


@main.command("decompose")
@click.argument("graph")
@click.option("--profile", default="desk", show_default=True,
              type=click.Choice(["desk", "small"]),
              help="Parameter profile for the pipeline.")
@click.option("--skip-class-check", is_flag=True, default=False)
@click.option("--trace", "trace_out", default=None,
              help="Write the branch trace JSON here.")
@click.option("-o", "--out", default=None)
def decompose_cmd(graph, profile, skip_class_check, trace_out, out) -> None:
    """Run the recursive decomposition pipeline on a class member."""
    g = _load_graph(graph)
    params = desk_params() if profile == "desk" else small_params()
    try:
        td, trace = decompose(g, params, skip_class_check=skip_class_check)
    except ClassViolation as exc:
        wit = exc.witness
        if hasattr(wit, "to_json"):
            wit = wit.to_json()
        elif wit is not None:
            wit = sorted(wit)
        _emit({"error": str(exc), "witness": wit}, out)
        sys.exit(2)
    except (InputError, GuardExceeded) as exc:
        raise click.ClickException(str(exc))
    if trace_out:
        _emit(trace, trace_out)
    data = json.loads(td.to_json())
    data["width"] = width(td)
    _emit(data, out)


@main.command("solve")
@click.argument("graph")
@click.option("--td", "td_path", required=True,
              help="Tree decomposition JSON.")
@click.option("--problem", required=True, type=click.Choice(PROBLEMS))
@click.option("--r", "r", default=None, type=int,
              help="Number of colors for r-coloring.")
@click.option("-o", "--out", default=None)
def solve_cmd(graph, td_path, problem, r, out) -> None:
    """Solve an optimization problem by DP over a tree decomposition."""
    g = _load_graph(graph)
    td = _load_td(td_path)
    _emit(_wrap(solve, g, td, problem, r).to_json(), out)


@main.command()
@click.argument("graph")
@click.option("--td", "td_path", required=True)
@click.option("--lean", "lean_k", default=None, type=int,
              help="Additionally check k-leanness at this order.")
@click.option("-o", "--out", default=None)
def verify(graph, td_path, lean_k, out) -> None:
    """Validate a tree decomposition against a graph; exit 1 if invalid."""
    g = _load_graph(graph)
    td = _load_td(td_path)
    report = validate(g, td)
    problems = [name for name, ok in
                (("tree", report.tree_ok), ("vertices", report.vertices_ok),
                 ("edges", report.edges_ok),
                 ("connectivity", report.connectivity_ok)) if not ok]
    data = {"valid": report.valid, "problems": problems,
            "width": width(td), "adhesion": adhesion(td)}
    if report.valid:
        tight, untight = is_tight(g, td)
        data["tight"] = tight
        if lean_k is not None:
            lean, viol = is_k_lean(g, td, lean_k)
            data["lean"] = lean
    _emit(data, out)
    if not report.valid:
        sys.exit(1)


@main.command()
@click.argument("graph")
@click.option("--td", "td_path", required=True)
@click.option("--tau", default=4, show_default=True)
@click.option("-o", "--out", default=None)
def bounds(graph, td_path, tau, out) -> None:
    """Report stable non-hub set sizes in bags and minimal separators."""
    g = _load_graph(graph)
    td = _load_td(td_path)
    _emit(_wrap(check_nonhub_bounds, g, td, tau).to_json(), out)


@main.command()
@click.argument("graph")
@click.option("--attachers", required=True,
              help="Comma-separated stable set of attachment vertices.")
@click.option("--target", default=3, show_default=True,
              help="Required number of attached vertices.")
@click.option("-o", "--out", default=None)
def connectify(graph, attachers, target, out) -> None:
    """Find a connectifier for a stable attachment set."""
    g = _load_graph(graph)
    try:
        s = frozenset(int(x) for x in attachers.split(",") if x.strip())
    except ValueError:
        raise click.ClickException("attachers must be comma-separated ints")
    conn = _wrap(find_connectifier, g, s, target)
    _emit({"found": conn is not None,
           "connectifier": conn.to_json() if conn else None}, out)


@main.command()
@click.option("--family", required=True, type=click.Choice(FAMILIES))
@click.option("--n-min", default=5, show_default=True)
@click.option("--n-max", default=10, show_default=True)
@click.option("--count", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--t", "t", default=4, show_default=True)
@click.option("-o", "--out-dir", default=None,
              help="Write one .g6 file per graph plus a manifest here.")
def corpus(family, n_min, n_max, count, seed, t, out_dir) -> None:
    """Generate a deterministic graph corpus with membership reports."""
    entries = _wrap(generate_corpus, family, (n_min, n_max), count, seed, t)
    if out_dir:
        root = Path(out_dir)
        root.mkdir(parents=True, exist_ok=True)
        manifest = []
        for i, e in enumerate(entries):
            name = f"{family}-{seed}-{i:03d}.g6"
            (root / name).write_text(to_graph6(e.graph) + "\n")
            rec = e.to_json()
            rec["file"] = name
            manifest.append(rec)
        (root / "manifest.json").write_text(
            json.dumps(manifest, indent=2) + "\n")
        click.echo(f"wrote {len(entries)} graphs to {root}")
    else:
        _emit([e.to_json() for e in entries], None)


@main.command()
@click.option("--config", "config_path", default=None,
              help="JSON config file (n_max, samples, seed, t).")
@click.option("-o", "--out", default=None, help="Write the JSON report here.")
def suite(config_path, out) -> None:
    """Run the verification suite; nonzero exit on any failed check."""
    config = None
    if config_path:
        try:
            config = json.loads(Path(config_path).read_text())
        except FileNotFoundError:
            raise click.ClickException(f"config file not found: {config_path}")
        except json.JSONDecodeError as exc:
            raise click.ClickException(f"cannot parse config: {exc}")
    report = _wrap(run_suite, config)
    if out:
        _emit(report, out)
    for chk in report["checks"]:
        mark = "ok " if chk["passed"] else "FAIL"
        click.echo(f"[{mark}] {chk['name']}: {chk['detail']}")
    click.echo("suite passed" if report["passed"] else "suite FAILED")
    if not report["passed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
