"""Command-line front end.

Subcommands: analyze-motif, analyze-graphon, sample, count, decompose,
run-experiment.  Human-readable text goes to stdout; machine output only
through --format/--output.  Exit codes: 0 success, 1 runtime error,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .motif import (
    Motif,
    automorphism_count,
    density_exponents,
    named_motif,
)
from .graphon import (
    StepGraphon,
    critical_edge_variance_share,
    hom_density,
    degree_function,
    named_graphon,
    projection_variance,
    regularity_report,
)
from .sampler import SampledGraph, sample
from .counting import count, decompose
from .experiments import (
    ExperimentConfig,
    replicate_rows,
    run_experiment,
    write_result,
)


class UsageError(Exception):
    """Invalid inputs; mapped to exit code 2."""


def _load_motif(source: str) -> Motif:
    try:
        return named_motif(source)
    except ValueError:
        pass
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such motif name or file: {source}")
    try:
        return Motif.from_json_dict(json.loads(path.read_text()))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed motif file {source}: {exc}") from exc


def _load_graphon(source: str) -> StepGraphon:
    try:
        return named_graphon(source)
    except ValueError:
        pass
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such graphon name or file: {source}")
    try:
        return StepGraphon.from_json_dict(json.loads(path.read_text()))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed graphon file {source}: {exc}") from exc


def _emit(text_report: str, machine: dict, args):
    if args.format == "json":
        payload = json.dumps(machine, indent=2, sort_keys=True) + "\n"
        if args.output:
            Path(args.output).write_text(payload)
        else:
            sys.stdout.write(payload)
    else:
        sys.stdout.write(text_report)
        if args.output:
            Path(args.output).write_text(text_report)


def _fraction_str(f: Fraction) -> str:
    return f"{f} ({float(f):g})"


def cmd_analyze_motif(args) -> int:
    m = _load_motif(args.motif)
    prof = density_exponents(m)
    aut = automorphism_count(m)
    lines = [
        f"motif: {m.vertex_count} vertices, {m.edge_count} edges",
        f"edges: {list(m.sorted_edges())}",
        f"automorphisms: {aut}",
        f"m  = {_fraction_str(prof.m)}",
        f"m1 = {_fraction_str(prof.m1)}",
        f"balanced: {prof.balanced}",
        f"strictly balanced: {prof.strictly_balanced}",
        f"strongly balanced: {prof.strongly_balanced}",
        f"strictly strongly balanced: {prof.strictly_strongly_balanced}",
        "m1 maximizer classes:",
    ]
    for s in prof.m1_maximizers:
        lines.append(f"  {s.vertex_count} vertices, edges {list(s.sorted_edges())}")
    machine = {
        "vertices": m.vertex_count,
        "edges": [list(e) for e in m.sorted_edges()],
        "automorphisms": aut,
        "m": [prof.m.numerator, prof.m.denominator],
        "m1": [prof.m1.numerator, prof.m1.denominator],
        "balanced": prof.balanced,
        "strictly_balanced": prof.strictly_balanced,
        "strongly_balanced": prof.strongly_balanced,
        "strictly_strongly_balanced": prof.strictly_strongly_balanced,
        "m1_maximizers": [s.to_json_dict() for s in prof.m1_maximizers],
    }
    _emit("\n".join(lines) + "\n", machine, args)
    return 0


def cmd_analyze_graphon(args) -> int:
    w = _load_graphon(args.graphon)
    m = _load_motif(args.motif)
    t = hom_density(m, w)
    rep = regularity_report(m, w)
    xi = projection_variance(m, w)
    lines = [
        f"graphon: {w.block_count} blocks, pi = {list(w.pi)}",
        f"motif: {m.vertex_count} vertices, {m.edge_count} edges",
        f"density t = {t!r}",
        f"degree function per block: {[float(d) for d in degree_function(w)]}",
        f"regular for this motif: {rep.is_regular} "
        f"(max deviation {rep.max_deviation:.3g})",
        f"projection variance = {xi!r}",
    ]
    shares = {}
    if rep.is_regular:
        lines.append("critical share: undefined (regular case)")
    else:
        for c in (0.5, 1.0, 2.0):
            val = critical_edge_variance_share(m, w, c)
            shares[repr(c)] = val
            lines.append(f"critical share at c={c:g}: {val!r}")
    machine = {
        "t": t,
        "degree_function": [float(d) for d in degree_function(w)],
        "is_regular": rep.is_regular,
        "max_deviation": rep.max_deviation,
        "projection_variance": xi,
        "critical_share": shares if shares else None,
    }
    _emit("\n".join(lines) + "\n", machine, args)
    return 0


def cmd_sample(args) -> int:
    w = _load_graphon(args.graphon)
    if not (0.0 < args.rho <= 1.0):
        raise UsageError("rho must lie in (0, 1]")
    if args.n < 1:
        raise UsageError("n must be at least 1")
    g = sample(w, args.n, args.rho, args.seed)
    dump = g.to_dump()
    if args.out:
        Path(args.out).write_text(dump)
        sys.stdout.write(f"wrote {g.edge_count} edges to {args.out}\n")
    else:
        sys.stdout.write(dump)
    return 0


def cmd_count(args) -> int:
    m = _load_motif(args.motif)
    path = Path(args.graph)
    if not path.exists():
        raise UsageError(f"no such graph file: {args.graph}")
    try:
        g = SampledGraph.from_dump(path.read_text())
    except (ValueError, IndexError) as exc:
        raise UsageError(f"malformed graph dump {args.graph}: {exc}") from exc
    sys.stdout.write(f"{count(g, m)}\n")
    return 0


def cmd_decompose(args) -> int:
    w = _load_graphon(args.graphon)
    m = _load_motif(args.motif)
    if not (0.0 < args.rho <= 1.0):
        raise UsageError("rho must lie in (0, 1]")
    if args.n < 1:
        raise UsageError("n must be at least 1")
    g = sample(w, args.n, args.rho, args.seed)
    d = decompose(g, m, w)
    lines = [
        f"n = {g.n}, rho = {g.rho!r}, seed = {g.seed}",
        f"x = {d.x}",
        f"expected = {d.expected!r}",
        f"conditional expected = {d.conditional_expected!r}",
        f"delta  = {d.delta!r}",
        f"delta1 = {d.delta1!r}",
        f"delta2 = {d.delta2!r}",
    ]
    machine = {"n": g.n, "rho": g.rho, "seed": g.seed, "x": d.x,
               "expected": d.expected,
               "cond_expected": d.conditional_expected,
               "delta": d.delta, "delta1": d.delta1, "delta2": d.delta2}
    _emit("\n".join(lines) + "\n", machine, args)
    return 0


def cmd_run_experiment(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise UsageError(f"no such config file: {args.config}")
    try:
        cfg = ExperimentConfig.from_json_dict(json.loads(path.read_text()))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid experiment config: {exc}") from exc
    t0 = time.perf_counter()
    result = run_experiment(cfg, threads=args.threads)
    table = None
    if args.with_replicates:
        table = replicate_rows(cfg, threads=args.threads)
    write_result(result, args.out_dir, replicate_table=table)
    elapsed = time.perf_counter() - t0
    print(f"experiment {cfg.experiment_kind}: {len(result.records)} cells "
          f"-> {args.out_dir}", file=sys.stderr)
    print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphon-motifs",
        description="Motif statistics for sparse step-graphon random graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-motif", help="density exponents of a motif")
    p.add_argument("motif", help="built-in name or JSON file")
    _format_flags(p)
    p.set_defaults(func=cmd_analyze_motif)

    p = sub.add_parser("analyze-graphon",
                       help="density analytics of a graphon for a motif")
    p.add_argument("--graphon", required=True)
    p.add_argument("--motif", required=True)
    _format_flags(p)
    p.set_defaults(func=cmd_analyze_graphon)

    p = sub.add_parser("sample", help="draw one random graph")
    p.add_argument("--graphon", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("count", help="count motif copies in a graph dump")
    p.add_argument("--graph", required=True)
    p.add_argument("--motif", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("decompose",
                       help="sample one graph and decompose its count")
    p.add_argument("--graphon", required=True)
    p.add_argument("--motif", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    _format_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("run-experiment", help="run a configured campaign")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--with-replicates", action="store_true",
                   help="also write one CSV row per replicate")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="kept for interface symmetry; both files are written")
    p.set_defaults(func=cmd_run_experiment)
    return parser


def _format_flags(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - unexpected runtime failure
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
