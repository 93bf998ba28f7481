"""ghlab command line.

Exit codes: 0 success, 1 invalid input metric (or an input the operation
rejects), 2 I/O or parse failure, 3 search exhausted without a witness.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .configspace import classify, orbit, stabilizer, to_rho
from .edges import (
    count_edge_pairs,
    inducing_vertex_perm,
    is_adjacency_preserving,
    line_graph_automorphisms,
    normalizer_probe,
    star_to_triangle_alpha,
    search_non_induced,
)
from .errors import GHLabError, MetricError, ParseError, TooLarge
from .io import load_space
from .metric import diameter, simplex
from .simplex import SimplexSpec, gh_to_simplex_closed, gh_to_simplex_enum
from .solver import GAP_THRESHOLD, bijection_gap_search, gh_bijective, gh_exact

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_NOT_FOUND = 0, 1, 2, 3
AGREE_TOL = 1e-9


class Report:
    def __init__(self, argv):
        self.command = list(argv)
        self.inputs: dict[str, str] = {}
        self.results: dict = {}
        self.started = time.perf_counter()

    def add_input(self, path):
        self.inputs[str(path)] = hashlib.sha256(Path(path).read_bytes()).hexdigest()

    def digest(self) -> str:
        body = json.dumps({"command": self.command, "inputs": self.inputs, "results": self.results},
                          sort_keys=True, allow_nan=False)
        return hashlib.sha256(body.encode()).hexdigest()

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "digest": self.digest(),
            "timing_s": round(time.perf_counter() - self.started, 6),
            "version": __version__,
        }

    def emit(self, as_json: bool, out=None):
        out = out or sys.stdout
        d = self.to_dict()
        if as_json:
            out.write(json.dumps(d, indent=2, allow_nan=False) + "\n")
            return
        for key, value in d["results"].items():
            out.write(f"{key}: {_text(value)}\n")
        out.write(f"digest: {d['digest']}\n")


def _text(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return str(value)


def _threads() -> int:
    raw = os.environ.get("GHLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def _load(report: Report, path):
    report.add_input(path)
    return load_space(path)


def cmd_validate(args, report: Report) -> int:
    report.add_input(args.path)
    try:
        X = load_space(args.path)
    except MetricError as exc:
        report.results.update(valid=False, error=type(exc).__name__, message=str(exc))
        if hasattr(exc, "triple"):
            report.results["triple"] = list(exc.triple)
        return EXIT_INVALID
    report.results.update(valid=True, n=X.n, diam=diameter(X))
    return EXIT_OK


def cmd_dist(args, report: Report) -> int:
    X = _load(report, args.a)
    Y = _load(report, args.b)
    r = report.results
    if args.method in ("exact", "both"):
        value, bc = gh_exact(X, Y, return_witness=True)
        r["exact"] = value
        r["correspondence"] = [list(p) for p in bc.pairs()]
    if args.method in ("bijection", "both"):
        value, perm = gh_bijective(X, Y, return_perm=True)
        r["bijective"] = value
        r["bijection"] = list(perm)
    if args.method == "both":
        r["gap"] = r["bijective"] - r["exact"]
        r["gap_flag"] = r["gap"] > GAP_THRESHOLD
    return EXIT_OK


def cmd_simplex(args, report: Report) -> int:
    X = _load(report, args.path)
    spec = SimplexSpec(args.n, args.t)
    r = report.results
    r["n"], r["t"], r["m"] = spec.n, spec.t, X.n
    methods = ["closed", "enum", "solver"] if args.method == "all" else [args.method]
    values = {}
    for m in methods:
        if m == "closed":
            values["closed"], r["case"] = gh_to_simplex_closed(spec, X, return_case=True)
        elif m == "enum":
            if args.method == "all" and spec.n > X.n:
                r["enum"] = None
                continue
            values["enum"] = gh_to_simplex_enum(spec, X)
        else:
            values["solver"] = gh_exact(simplex(spec.n, spec.t), X)
    r.update(values)
    if args.method == "all":
        vals = list(values.values())
        r["agree"] = max(vals) - min(vals) <= AGREE_TOL
        if not r["agree"]:
            return EXIT_INVALID
    return EXIT_OK


def cmd_classify(args, report: Report) -> int:
    X = _load(report, args.path)
    if X.n > 8:
        raise TooLarge("classification needs the stabilizer; limited to n <= 8")
    c = classify(to_rho(X))
    report.results.update(
        n=X.n, regular=c.regular, degenerate=c.degenerate, generic=c.generic,
        stabilizer=[list(s) for s in c.stabilizer],
        degenerate_triples=[list(t) for t in c.degenerate_triples],
    )
    return EXIT_OK


def cmd_orbit(args, report: Report) -> int:
    X = _load(report, args.path)
    rho = to_rho(X)
    orb = orbit(rho)
    stab = stabilizer(rho)
    report.results.update(
        n=X.n, orbit_size=len(orb), stabilizer_size=len(stab),
        group_order=math.factorial(X.n),
        representatives=[list(o.coords) for o in orb[: args.limit]],
    )
    return EXIT_OK


def _edge_table(alpha):
    return [[list(e), list(img)] for e, img in alpha.table()]


def cmd_graph(args, report: Report) -> int:
    n, check = args.n, args.check
    r = report.results
    r["n"], r["check"] = n, check
    if check == "lemma84":
        if not 2 <= n <= 12:
            raise TooLarge("lemma84 check runs for 2 <= n <= 12")
        c = count_edge_pairs(n)
        r.update(f0=c.f0, f1=c.f1, f0_formula=n * (n - 1) * (n - 2) * (n - 3) // 8,
                 f1_formula=n * (n - 1) * (n - 2) // 2, f0_gt_f1=c.f0 > c.f1)
    elif check == "lemma81":
        stats: dict = {}
        found = search_non_induced(n, stats)
        r.update(automorphisms=stats["automorphisms"], non_induced=len(found),
                 nodes=stats["nodes"], tables=[_edge_table(a) for a in found])
    elif check == "remark82":
        if n != 4:
            raise TooLarge("remark82 concerns K_4; use --n 4")
        alpha = star_to_triangle_alpha()
        r.update(table=_edge_table(alpha), adjacency_preserving=is_adjacency_preserving(alpha),
                 induced=inducing_vertex_perm(alpha) is not None,
                 found_by_search=alpha in search_non_induced(4))
    elif check == "normalizer":
        if not 3 <= n <= 6:
            raise TooLarge("normalizer probe runs for 3 <= n <= 6")
        probes = []
        for alpha in line_graph_automorphisms(n):
            p = normalizer_probe(alpha)
            if not p.in_G:
                probes.append({"table": _edge_table(alpha), "normalizes": p.normalizes,
                               "violating_g": list(p.violating_g) if p.violating_g else None})
        r.update(non_induced=len(probes), normalizing=sum(p["normalizes"] for p in probes),
                 probes=probes)
    return EXIT_OK


def cmd_search(args, report: Report) -> int:
    r = report.results
    r.update(points=args.points, trials=args.trials, seed=args.seed, low=args.low, high=args.high)
    w = bijection_gap_search(args.points, args.trials, args.seed, (args.low, args.high),
                             workers=_threads())
    if w is None:
        r["found"] = False
        return EXIT_NOT_FOUND
    r.update(found=True, witness=w.to_json())
    if args.out:
        Path(args.out).write_text(json.dumps(w.to_json(), indent=2) + "\n")
        r["out"] = str(args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="ghlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ghlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a distance matrix")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("dist", parents=[common], help="Gromov-Hausdorff distance of two spaces")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--method", choices=["exact", "bijection", "both"], default="exact")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("simplex", parents=[common], help="distance from a space to tΔn")
    s.add_argument("path")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--method", choices=["closed", "enum", "solver", "all"], default="closed")
    s.set_defaults(func=cmd_simplex)

    s = sub.add_parser("classify", parents=[common], help="regular / degenerate / generic")
    s.add_argument("path")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("orbit", parents=[common], help="orbit of the distance vector under S_n")
    s.add_argument("path")
    s.add_argument("--limit", type=int, default=24, help="representatives to print")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("graph", parents=[common], help="edge permutations of K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--check", choices=["lemma81", "lemma84", "remark82", "normalizer"], required=True)
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("search", parents=[common], help="hunt for a bijection gap")
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--low", type=float, default=0.0)
    s.add_argument("--high", type=float, default=1.0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    report = Report(argv)
    try:
        code = args.func(args, report)
    except (OSError, ParseError) as exc:
        report.results.update(error=type(exc).__name__, message=str(exc))
        code = EXIT_IO
    except GHLabError as exc:
        report.results.update(error=type(exc).__name__, message=str(exc))
        code = EXIT_INVALID
    report.emit(args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
