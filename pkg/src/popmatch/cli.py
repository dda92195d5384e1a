"""Command-line front end.

Every command echoes its effective parameters (seed included) on stderr as a
single ``#`` line; rerunning with those flags reproduces stdout exactly.

Exit codes: 0 success, 1 usage error, 2 unreadable profile, 3 the fast and
brute-force verdicts disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import analysis, random_graphs
from .graph import component_census, component_stats
from .instance import (
    ProfileParseError,
    generate_complete,
    generate_incomplete,
    generate_mixed,
    read_profile,
    write_profile,
)
from .matching import DEFAULT_CAP, EnumerationCapExceeded, exists_popular_bruteforce
from .parallel import default_threads
from .topchoice import build_top_choice_graph, exists_a_perfect_matching

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (stop included within half a step), ``a,b,c`` or ``a``."""
    if ":" in text:
        try:
            start, stop, step = (float(t) for t in text.split(":"))
        except ValueError:
            raise UsageError(f"bad grid {text!r}; expected start:stop:step") from None
        if step <= 0 or stop < start:
            raise UsageError(f"bad grid {text!r}; need step > 0 and stop >= start")
        count = int((stop - start) / step + 0.5) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad value list {text!r}") from None


def parse_int_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None


def parse_lengths(text: str) -> dict[int, int]:
    """``len:count,len:count`` as used by ``gen --lengths``."""
    out: dict[int, int] = {}
    try:
        for part in text.split(","):
            k, c = part.split(":")
            out[int(k)] = out.get(int(k), 0) + int(c)
    except ValueError:
        raise UsageError(f"bad --lengths value {text!r}; expected len:count,...") from None
    return out


def _echo(cmd: str, args: argparse.Namespace, keys: Sequence[str]) -> None:
    parts = [f"{k}={getattr(args, k)}" for k in keys if getattr(args, k, None) is not None]
    print(f"# popmatch {cmd} " + " ".join(parts), file=sys.stderr)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    _echo("gen", args, ["n", "m", "k", "complete", "lengths", "seed"])
    try:
        if args.lengths:
            profile = generate_mixed(parse_lengths(args.lengths), args.m, args.seed)
        elif args.n is None:
            raise UsageError("--n is required unless --lengths is given")
        elif args.complete:
            profile = generate_complete(args.n, args.m, args.seed)
        else:
            if args.k is None:
                raise UsageError("one of --k, --complete or --lengths is required")
            profile = generate_incomplete(args.n, args.m, args.k, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    buf = io.StringIO()
    write_profile(profile, buf)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def check_report(profile, brute: bool = False, cap: int = DEFAULT_CAP, witness: bool = False):
    """Lines of the ``check`` report plus whether fast and brute verdicts agree."""
    tcg = build_top_choice_graph(profile)
    d = tcg.decomposition
    comps = component_stats(tcg.graph)
    census = component_census(tcg.graph)
    complex_comps = [c for c in comps if c.kind == "complex"]
    exists = not complex_comps
    lines = [
        f"profile: n={profile.n} m={profile.m} alpha={profile.alpha:.6g}",
        f"decomposition: |F|={d.size_F} |S|={d.size_S} |A1|={d.A1.size} |A2|={d.A2.size}"
        f" a2_ratio={d.A2.size / profile.n:.6g}",
        f"edges: normal={tcg.n_normal} last_resort={tcg.n_last_resort}",
        "components: " + " ".join(f"{k}={v}" for k, v in census.items()),
    ]
    if exists:
        lines.append("verdict: popular matching exists")
    else:
        c = complex_comps[0]
        lines.append(
            f"verdict: no popular matching (complex component: {c.vertices} vertices, {c.edges} edges)"
        )
    if witness and exists:
        _, w = exists_a_perfect_matching(profile)
        lines.append("witness: " + w.describe(profile.m))
    agree = True
    if brute:
        found, _ = exists_popular_bruteforce(profile, cap=cap)
        agree = found == exists
        lines.append(
            "brute-force: " + ("popular matching exists" if found else "no popular matching")
            + ("" if agree else "  <-- DISAGREES with fast verdict")
        )
    return lines, agree


def cmd_check(args) -> int:
    _echo("check", args, ["profile", "brute", "cap"])
    try:
        with open(args.profile) as fh:
            profile = read_profile(fh)
    except (OSError, ProfileParseError) as exc:
        print(f"popmatch check: cannot read profile: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        lines, agree = check_report(profile, args.brute, args.cap, args.witness)
    except EnumerationCapExceeded as exc:
        raise UsageError(f"{exc}; rerun with --cap {exc.required}") from None
    _emit("\n".join(lines) + "\n", args.output)
    if not agree:
        print("popmatch check: fast and brute-force verdicts disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_sweep(args) -> int:
    _echo("sweep", args, ["n", "k", "alpha", "trials", "seed", "format", "a2_only", "timing"])
    alphas = parse_grid(args.alpha)
    runner = analysis.sweep_a2 if args.a2_only else analysis.sweep_existence
    try:
        report = runner(args.n, args.k, alphas, args.trials, args.seed, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        text = report.to_csv(timing=args.timing)
    elif args.format == "json":
        text = report.to_json(timing=args.timing)
    else:
        from .plotting import sweep_svg

        text = sweep_svg(report, analysis.alpha_k(args.k))
    _emit(text, args.output)
    return EXIT_OK


def cmd_alpha(args) -> int:
    _echo("alpha", args, ["k", "format"])
    ks = parse_int_range(args.k)
    if not ks or min(ks) < 1:
        raise UsageError("k values must be >= 1")
    star = analysis.alpha_star()
    rows = [(k, analysis.alpha_k(k)) for k in ks]
    if args.format == "svg":
        from .plotting import transition_curve_svg

        curve = analysis.TransitionCurve(tuple(rows))
        _emit(transition_curve_svg(curve, star), args.output)
        return EXIT_OK
    if args.format == "json":
        text = json.dumps(
            {"alpha_k": [{"k": k, "alpha_k": a} for k, a in rows], "alpha_star": star}, indent=2
        ) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "alpha_k"])
        for k, a in rows:
            w.writerow([k, "no-root" if a is None else repr(a)])
        text = buf.getvalue()
    else:
        lines = [f"{'k':>4}  alpha_k"]
        for k, a in rows:
            lines.append(f"{k:>4}  " + ("no-root" if a is None else f"{a:.12f}"))
        lines.append(f"alpha_star = {star:.12f}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_graphsim(args) -> int:
    _echo("graphsim", args, ["x", "y", "z", "z2", "trials", "seed"])
    try:
        res = random_graphs.graph_trials(
            args.x, args.y, args.z, args.z2, args.trials, args.seed, threads=args.threads
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["model", "x", "y", "z1", "z2", "trials", "complex_freq", "complex_se", "giant_mean"])
    w.writerow([
        "G" if args.z2 is None else "Gprime", args.x, args.y, args.z,
        "" if args.z2 is None else args.z2, args.trials,
        repr(res.complex_frequency), repr(round(res.complex_se, 12)), repr(round(res.giant_mean, 12)),
    ])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_branch(args) -> int:
    _echo("branch", args, ["c1", "c2", "trials", "cap", "edges", "seed"])
    try:
        out = random_graphs.branching_simulate(
            args.c1, args.c2, args.trials, cap=args.cap, seed=args.seed,
            edges=args.edges, threads=args.threads,
        )
        y = random_graphs.solve_survival_fixed_point(args.c1, args.c2)
        regime = random_graphs.offspring_criticality(args.c1, args.c2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["c1", "c2", "trials", "cap", "criticality", "survival_freq", "survival_se",
                "fixed_point", "abs_diff"])
    w.writerow([
        args.c1, args.c2, args.trials, args.cap, regime, repr(out.survival_frequency),
        repr(round(out.survival_se, 12)), repr(y), repr(round(abs(out.survival_frequency - y), 12)),
    ])
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="popmatch", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seeded=True, threaded=False):
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        if seeded:
            sp.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
        if threaded:
            sp.add_argument("--threads", type=int, default=default_threads(),
                            help="worker processes; results do not depend on it")

    g = sub.add_parser("gen", help="write a random profile")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--complete", action="store_true")
    g.add_argument("--lengths", help="mixed lengths as len:count,len:count")
    common(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="decide popular-matching existence for a profile file")
    c.add_argument("profile")
    c.add_argument("--brute", action="store_true", help="also run the exhaustive oracle")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--witness", action="store_true", help="print an A-perfect matching")
    common(c, seeded=False)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("sweep", help="Monte Carlo existence frequency over an alpha grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--alpha", required=True, help="start:stop:step or comma list")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    s.add_argument("--a2-only", action="store_true", help="skip the existence test")
    s.add_argument("--timing", action="store_true", help="fill elapsed_ms (breaks byte-stability)")
    common(s, threaded=True)
    s.set_defaults(func=cmd_sweep)

    a = sub.add_parser("alpha", help="tabulate transition points")
    a.add_argument("--k", default="1:20", help="lo:hi or comma list")
    a.add_argument("--format", choices=["text", "csv", "json", "svg"], default="text")
    common(a, seeded=False)
    a.set_defaults(func=cmd_alpha)

    gs = sub.add_parser("graphsim", help="complex-component frequency in G or G'")
    gs.add_argument("--x", type=int, required=True)
    gs.add_argument("--y", type=int, required=True)
    gs.add_argument("--z", type=int, required=True, help="edges (z1 for G')")
    gs.add_argument("--z2", type=int, help="last-resort edges; selects G'")
    gs.add_argument("--trials", type=int, default=200)
    common(gs, threaded=True)
    gs.set_defaults(func=cmd_graphsim)

    b = sub.add_parser("branch", help="branching-process survival vs the fixed point")
    b.add_argument("--c1", type=float, required=True)
    b.add_argument("--c2", type=float, required=True)
    b.add_argument("--trials", type=int, default=10_000)
    b.add_argument("--cap", type=int, default=10_000)
    b.add_argument("--edges", type=int, help="binomial offspring with this many edges")
    common(b, threaded=True)
    b.set_defaults(func=cmd_branch)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print(f"popmatch {args.command}: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"popmatch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
