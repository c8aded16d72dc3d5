"""Command-line entry point: ``bridge-spectra {gen,eig,bound,loewner,sweep}``.

Exit codes: 0 success, 1 a requested Loewner check failed, 2 bad input or
parameters, 3 eigensolver failure, 4 a hard sweep assertion failed.
Data goes to stdout (or ``--out``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds
from .eigensolver import ConvergenceError, eig_symmetric
from .families import FAMILIES, FamilyError, FamilySpec, from_json, random_connected, to_json
from .graph_core import Graph, GraphError, build_laplacian, from_edgelist, to_dot, to_edgelist
from .loewner import (CertificationError, domination_lower_bound, family_scale, loewner_geq,
                      path_inequality_check)
from .vectors import family_vector

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_SOLVER, EXIT_HARD = 0, 1, 2, 3, 4
DEFAULT_SEED = 42
ENV_TOL = "BRIDGE_SPECTRA_TOL"


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def default_tol() -> float:
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return bounds.SLACK
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{ENV_TOL}={raw!r} is not a number") from None


def read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return from_json(text) if text.lstrip().startswith("{") else from_edgelist(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _family_name(raw: str) -> str:
    name = raw.replace("-", "_")
    if name not in FAMILIES:
        raise UsageError(f"unknown family {raw!r}; choose from {', '.join(f.replace('_', '-') for f in FAMILIES)}")
    return name


def spec_from_args(args, rng: np.random.Generator | None = None) -> FamilySpec:
    family = _family_name(args.family)
    base = None
    if family in ("bridge_chain", "general_bridge2k"):
        if args.base:
            base = read_graph(args.base)
        else:
            rng = rng or np.random.default_rng(args.seed)
            base = random_connected(int(rng.integers(2, 11)), rng)
    attachments = None
    if args.attach1 is not None or args.attach2 is not None:
        n, m = args.n, args.m
        if n is None or m is None:
            raise UsageError("--attach1/--attach2 need --n and --m")
        a1 = 1 if args.attach1 is None else args.attach1
        a2 = n + m - 1 if args.attach2 is None else args.attach2
        attachments = (a1, a2)
    required = {
        "complete": ("n",), "star": ("n",), "full_binary_tree": ("n",), "path": ("m",),
        "dumbbell": ("n", "m"), "star_bridge": ("n", "m"), "tree_bridge": ("n", "m"),
        "dumbbell_multi": ("n", "k"), "tree_multi": ("n", "k"), "tree_chain": ("n", "l"),
        "bridge_chain": ("l",), "general_bridge2k": ("k",),
    }[family]
    missing = [f"--{r}" for r in required if getattr(args, r) is None]
    if missing:
        raise UsageError(f"family {args.family} needs {' '.join(missing)}")
    return FamilySpec(family, n=args.n, m=args.m, k=args.k, l=args.l,
                      attachments=attachments, base=base)


def _graph_input(args) -> tuple[Graph, FamilySpec | None]:
    if getattr(args, "input", None):
        return read_graph(args.input), None
    if not args.family:
        raise UsageError("give an input file or --family")
    spec = spec_from_args(args)
    try:
        return spec.build(), spec
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------------


def cmd_gen(args) -> int:
    g, spec = _graph_input(args)
    fmt = args.format or "edgelist"
    if fmt == "edgelist":
        text = to_edgelist(g)
    elif fmt == "dot":
        text = to_dot(g, name=(spec.family if spec else "G"))
    elif fmt == "json":
        text = to_json(g, spec)
    else:
        raise UsageError(f"gen cannot write format {fmt!r}")
    _emit(text, args.out)
    return EXIT_OK


def cmd_eig(args) -> int:
    g, _ = _graph_input(args)
    L = build_laplacian(g)
    spectrum = eig_symmetric(L)
    zero = 1e-12 * max(1.0, L.norm())
    vals = [0.0 if abs(v) <= zero else float(v) for v in spectrum.eigenvalues]
    if args.lambda2:
        vals = [vals[1] if len(vals) > 1 else 0.0]
    _emit("".join(_fmt(v) + "\n" for v in vals), args.out)
    return EXIT_OK


def cmd_bound(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    if args.base_random:
        family = _family_name(args.family or "")
        if family not in ("bridge_chain", "general_bridge2k"):
            raise UsageError("--base-random applies to bridge-chain and general-bridge2k")
        rng = np.random.default_rng(args.seed)
        specs = []
        for _ in range(args.base_random):
            base = random_connected(int(rng.integers(2, 11)), rng)
            if family == "bridge_chain":
                l = args.l if args.l is not None else int(rng.integers(2, 6))
                specs.append(FamilySpec(family, l=l, base=base))
            else:
                k = args.k if args.k is not None else int(rng.integers(1, base.num_vertices + 1))
                specs.append(FamilySpec(family, k=min(k, base.num_vertices), base=base))
    else:
        if not args.family:
            raise UsageError("bound needs --family")
        specs = [spec_from_args(args)]
    reports = bounds.verify(specs, slack=tol, jobs=args.jobs)
    for rep in reports:
        if rep.error:
            print(f"error: {rep.spec.family} {rep.params}: {rep.error}", file=sys.stderr)
    if any(r.error and r.error.startswith("construction failed") for r in reports):
        return EXIT_INPUT
    if any(r.error for r in reports):
        return EXIT_SOLVER
    if args.show_vector:
        for rep in reports:
            x, _ = family_vector(rep.spec)
            sys.stdout.write("".join(f"{i}:{_fmt(v)}\n" for i, v in enumerate(x.values, start=1)))
    _emit(bounds.reports_csv(reports), args.out)
    return EXIT_OK if all(r.hard_ok(tol) for r in reports) else EXIT_HARD


def cmd_loewner(args) -> int:
    check = args.check
    if check == "path":
        if args.len is None:
            raise UsageError("--check path needs --len")
        cert = path_inequality_check(args.len)
        print(cert.summary())
        return EXIT_OK if cert.holds else EXIT_CHECK_FAILED
    if check == "pair":
        if len(args.graphs) != 2:
            raise UsageError("--check pair needs two graph files (lhs rhs)")
        g1, g2 = (read_graph(p) for p in args.graphs)
        n = max(g1.num_vertices, g2.num_vertices)
        cert = loewner_geq(g1.padded(n), g2.padded(n), args.c if args.c is not None else 1.0,
                           lhs_desc=args.graphs[0], rhs_desc=args.graphs[1])
        print(cert.summary())
        print(f"lhs={cert.lhs_desc} rhs={cert.rhs_desc} norm={_fmt(cert.diff_norm)}")
        return EXIT_OK if cert.holds else EXIT_CHECK_FAILED
    # domination
    if args.graphs:
        g, spec = read_graph(args.graphs[0]), None
    else:
        g, spec = _graph_input(args)
    c = args.c
    if c is None:
        if spec is None:
            raise UsageError("--check domination on a file needs --c")
        c = family_scale(spec.family, spec.n, spec.m, spec.l)
    try:
        lb = domination_lower_bound(g, c)
    except CertificationError as exc:
        print(f"fails c={_fmt(c)} min_eig={_fmt(exc.min_eig)}")
        return EXIT_CHECK_FAILED
    print(f"holds c={_fmt(c)} lower_bound={_fmt(lb)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    specs = bounds.full_grid(args.seed)
    reports = bounds.verify(specs, slack=tol, jobs=args.jobs)
    errata = bounds.errata_report(reports)
    out = Path(args.out or "sweep_out")
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.csv").write_text(bounds.reports_csv(reports), encoding="utf-8", newline="\n")
    (out / "errata.csv").write_text(bounds.errata_csv(errata), encoding="utf-8", newline="\n")
    sys.stdout.write(bounds.format_errata(errata))
    summary = bounds.summarize(reports, tol)
    print(f"instances={summary.instances} dominance_failures={summary.dominance_failures} "
          f"positivity_failures={summary.positivity_failures} "
          f"loewner_failures={summary.loewner_failures} uncertified={summary.uncertified} "
          f"errors={summary.errors} -> {out}", file=sys.stderr)
    return EXIT_OK if summary.ok else EXIT_HARD


# -- parser -------------------------------------------------------------------------


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family")
    for name in ("n", "m", "k", "l", "attach1", "attach2"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--base", help="edge-list or JSON file with the block graph")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bridge-spectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a graph")
    _add_family_args(gen)
    gen.add_argument("--format", choices=("edgelist", "dot", "json"), default="edgelist")
    gen.add_argument("--out")

    eig = sub.add_parser("eig", help="Laplacian eigenvalues")
    eig.add_argument("input", nargs="?", help="graph file (edge list or JSON); '-' for stdin")
    _add_family_args(eig)
    eig.add_argument("--lambda2", action="store_true")
    eig.add_argument("--out")

    bnd = sub.add_parser("bound", help="certified and claimed bounds as CSV")
    _add_family_args(bnd)
    bnd.add_argument("--base-random", type=int, metavar="COUNT")
    bnd.add_argument("--show-vector", action="store_true")
    bnd.add_argument("--format", choices=("csv",), default="csv")
    bnd.add_argument("--out")
    bnd.add_argument("--tol", type=float)
    bnd.add_argument("--jobs", type=int, default=1)

    lw = sub.add_parser("loewner", help="Loewner-order certificates")
    lw.add_argument("--check", choices=("pair", "path", "domination"), required=True)
    lw.add_argument("graphs", nargs="*", help="graph files")
    _add_family_args(lw)
    lw.add_argument("--len", type=int)
    lw.add_argument("--c", type=float)

    sw = sub.add_parser("sweep", help="full default grid, report and errata")
    sw.add_argument("--out", help="output directory (default sweep_out)")
    sw.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sw.add_argument("--tol", type=float)
    sw.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {"gen": cmd_gen, "eig": cmd_eig, "bound": cmd_bound, "loewner": cmd_loewner,
            "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FamilyError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
