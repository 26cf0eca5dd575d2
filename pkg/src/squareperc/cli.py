"""``squareperc`` command line.

Exit status: 0 on success, 1 when a verification or check fails (or a run
aborts on a size cap or I/O error), 2 for usage and input-format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import analysis, constructions, experiments, oracles
from .errors import (
    BracketInvalidError,
    CapExceededError,
    CompleteGraphError,
    InvalidParamsError,
    InvalidProbabilityError,
    ParseError,
)
from .graph import format_edge_list, read_edge_list, write_edge_list
from .sampler import derive_trial_seed, sample_gnp
from .squares import BRUTEFORCE_MAX_N

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability {p} not in [0, 1]")
    return p


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if k < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {k}")
    return k


def _nonneg(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {k}")
    return k


def _seed(text: str) -> int:
    try:
        k = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= k < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return k


# -- subcommands -------------------------------------------------------------


def cmd_sample(args) -> int:
    g = sample_gnp(args.n, args.p, derive_trial_seed(args.seed, args.trial))
    if args.out == "-":
        sys.stdout.write(format_edge_list(g))
    else:
        write_edge_list(g, args.out)
        print(f"n={g.n} m={g.m}")
    return EXIT_OK


def _text_report(rep: dict) -> str:
    lines = [
        f"graph: n={rep['n']} m={rep['m']}",
        f"induced squares: {rep['numSquares']}",
        f"T1 components: {rep['numComponents']} ({rep['numNontrivial']} non-trivial, "
        f"{rep['isolatedCount']} isolated)",
        f"largest / second largest: {rep['largest']} / {rep['secondLargest']}",
        f"full-support components: {rep['fullSupportComponentIds'] or 'none'}",
        f"T1 connected: {rep['t1Connected']}   S connected: {rep['sConnected']}",
        f"all squares bonded: {rep['allBonded']} ({rep['nonBondedCount']} non-bonded)",
        f"extremal bound violations: {rep['extremalViolations'] or 'none'}",
    ]
    if "t1DiameterAtMostTwo" in rep:
        lines.append(f"T1 diameter <= 2: {rep['t1DiameterAtMostTwo']}")
    if rep["markers"]:
        lines.append(f"markers: {', '.join(rep['markers'])}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    g = read_edge_list(args.input)
    rep = analysis.analysis_report(g)
    if args.diameter2:
        try:
            rep["t1DiameterAtMostTwo"] = analysis.t1_diameter_at_most_two(g, args.vertex_cap)
        except CompleteGraphError:
            rep["t1DiameterAtMostTwo"] = True
    if args.report == "json":
        print(json.dumps(rep, indent=1))
    else:
        print(_text_report(rep))
    return EXIT_OK


def _print_certificate(v: constructions.Verification, n: int) -> None:
    d = v.decomposition
    print(f"certificate for {v.family}:")
    if not v.certificate:
        print("  no non-trivial components")
    for cid, members in v.certificate.items():
        sup = d.supports[cid] if d is not None else []
        tag = "full support" if len(sup) == n else f"support {len(sup)}"
        print(f"  component {cid} ({len(members)} diagonals, {tag}):")
        print("    " + " ".join(f"{a}-{b}" for a, b in members))


def cmd_verify_construction(args) -> int:
    fam = args.family
    if fam != "ladder" and (args.m is not None or args.shift is not None):
        raise UsageError("--m and --shift apply only to --family ladder")
    if fam == "g-prime":
        v = constructions.verify_g_prime()
    elif fam == "g":
        v = constructions.verify_g()
    elif fam == "ladder":
        params = constructions.LadderParams(
            m=22 if args.m is None else args.m, s=12 if args.shift is None else args.shift)
        v = constructions.verify_ladder(params)
    else:
        v = constructions.verify_bipartite_demo()
    n = v.decomposition.n if v.decomposition is not None else 0
    _print_certificate(v, n)
    for c in v.checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
    if v.passed:
        print(f"{v.family}: all {len(v.checks)} checks passed")
        return EXIT_OK
    bad = v.first_failure
    print(f"{v.family}: FAILED check '{bad.name}' ({bad.detail})", file=sys.stderr)
    return EXIT_FAIL


def _sweep_config(args) -> experiments.ExperimentConfig:
    if args.preset:
        clash = [f for f in ("n", "p_list", "c_min", "c_max", "c_step", "trials", "metrics")
                 if getattr(args, f) is not None]
        if clash:
            raise UsageError(f"--preset cannot be combined with {', '.join('--' + c.replace('_', '-') for c in clash)}")
        table = experiments.presets(args.seed)
        if args.preset not in table:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {', '.join(table)}")
        return table[args.preset].config
    if args.n is None or args.trials is None:
        raise UsageError("--n and --trials are required without --preset")
    c_flags = (args.c_min, args.c_max, args.c_step)
    if args.p_list is not None:
        if any(x is not None for x in c_flags):
            raise UsageError("--p-list cannot be combined with --c-min/--c-max/--c-step")
        grid = {"p_values": tuple(args.p_list)}
    elif all(x is not None for x in c_flags):
        if args.c_step <= 0 or args.c_max < args.c_min:
            raise UsageError("need --c-step > 0 and --c-max >= --c-min")
        grid = {"c_values": experiments._c_grid(args.c_min, args.c_max, args.c_step)}
    else:
        raise UsageError("give either --p-list or all of --c-min, --c-max, --c-step")
    metrics = tuple(args.metrics or ("sConnected", "t1Connected"))
    return experiments.ExperimentConfig(n=args.n, trials=args.trials, master_seed=args.seed,
                                        metrics=metrics, **grid)


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    table = experiments.sweep(cfg, workers=args.workers, keep_raw=bool(args.raw_out or args.json_out))
    experiments.write_sweep(table, args.out, args.raw_out, args.json_out)
    print(f"{len(table.aggregate)} grid points x {cfg.trials} trials written to {args.out}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    if not 4 <= args.n_min <= args.n_max:
        raise UsageError("need 4 <= --n-min <= --n-max")
    for t in range(args.trials):
        n, p, g = oracles.oracle_instance(args.seed, t, args.n_min, args.n_max)
        problems = oracles.check_graph(g)
        if problems:
            print(f"discrepancy in trial {t} (n={n}, p={p}, seed={args.seed}):", file=sys.stderr)
            for msg in problems:
                print(f"  {msg}", file=sys.stderr)
            write_edge_list(g, args.dump)
            print(f"instance written to {args.dump}:", file=sys.stderr)
            sys.stdout.write(format_edge_list(g))
            return EXIT_FAIL
    print(f"oracle check passed: {args.trials} graphs, n in [{args.n_min}, {args.n_max}]")
    return EXIT_OK


def cmd_expected(args) -> int:
    if args.formula == "isolated-t1":
        if args.n < 2:
            raise UsageError("isolated-t1 needs --n >= 2")
        value = experiments.expected_isolated_t1(args.n, args.p)
    else:
        if args.n < 4:
            raise UsageError("non-bonded needs --n >= 4")
        value = experiments.expected_nonbonded_squares(args.n, args.p)
    print(f"{value:.6g}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _metric_list(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in names if s not in experiments.METRICS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown metrics {bad}; choose from {', '.join(experiments.METRICS)}")
    return names


def _p_list(text: str) -> list[float]:
    return [_probability(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="squareperc", description="Square graphs of G(n, p) and explicit graphs.",
                                 allow_abbrev=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, description=help_text, allow_abbrev=False)

    p = add("sample", "sample G(n, p) and write an edge-list file")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--p", type=_probability, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--trial", type=_nonneg, default=0, help="trial index mixed into the seed")
    p.add_argument("--out", required=True, help="output path, '-' for standard output")
    p.set_defaults(func=cmd_sample)

    p = add("analyze", "square components, connectivity and bonded squares of a graph file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--report", choices=("json", "text"), default="json")
    p.add_argument("--diameter2", action="store_true", help="also test whether T1 has diameter at most 2")
    p.add_argument("--vertex-cap", type=_positive, default=analysis.DIAMETER2_VERTEX_CAP,
                   help="largest T1 accepted by --diameter2")
    p.set_defaults(func=cmd_analyze)

    p = add("verify-construction", "rebuild an explicit graph family and check its component claims")
    p.add_argument("--family", choices=("g-prime", "g", "ladder", "bipartite-demo"), required=True)
    p.add_argument("--m", type=int, help="ladder layer size (default 22)")
    p.add_argument("--shift", type=int, help="ladder cross-edge shift (default 12)")
    p.set_defaults(func=cmd_verify_construction)

    p = add("sweep", "Monte Carlo sweep over a p or c grid, written as CSV")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True, help="aggregate CSV path")
    p.add_argument("--n", type=_positive)
    p.add_argument("--p-list", type=_p_list, help="comma-separated edge probabilities")
    p.add_argument("--c-min", type=float)
    p.add_argument("--c-max", type=float)
    p.add_argument("--c-step", type=float)
    p.add_argument("--trials", type=_positive)
    p.add_argument("--metrics", type=_metric_list, help=f"comma-separated, from {', '.join(experiments.METRICS)}")
    p.add_argument("--raw-out", help="per-trial CSV path")
    p.add_argument("--json-out", help="JSON mirror of the aggregate (and raw) tables")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--preset", help="named sweep from the experiments presets")
    p.set_defaults(func=cmd_sweep)

    p = add("oracle-check", "compare fast routines against brute force on random small graphs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--dump", default="oracle_failure.txt", help="where a failing instance is written")
    p.set_defaults(func=cmd_oracle_check)

    p = add("expected", "closed-form expectations")
    p.add_argument("--formula", choices=("isolated-t1", "non-bonded"), required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--p", type=_probability, required=True)
    p.set_defaults(func=cmd_expected)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "oracle-check" and args.n_max > BRUTEFORCE_MAX_N:
        ap.error(f"--n-max is limited to {BRUTEFORCE_MAX_N}")
    try:
        return args.func(args)
    except (UsageError, InvalidParamsError, InvalidProbabilityError) as exc:
        print(f"squareperc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"squareperc {args.command}: {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceededError, BracketInvalidError, OSError) as exc:
        print(f"squareperc {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
