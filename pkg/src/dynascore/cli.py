"""``dynascore`` command line: generate, score, predict, sweep.

Exit codes: 0 success, 2 usage or validation error, 1 runtime or I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
import time
from typing import Sequence, TextIO

from . import oracles
from .formats import (
    format_value,
    parse_snapshots,
    write_score_csv,
    write_snapshots,
    write_sweep_csv,
)
from .generators import (
    BaParams,
    EmggParams,
    ParameterError,
    g0_preset,
    generate_ba,
    generate_emgg,
)
from .graph import GraphError
from .harness import SweepConfig, default_grid, run_sweep
from .rng import default_seed
from .score import score_sequence

EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _probability(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return x


def _grid(text: str) -> tuple[float, ...]:
    """``a,b,c`` or ``start:stop:step`` (stop inclusive)."""
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                raise ValueError
            count = int(round((stop - start) / step)) + 1
            values = tuple(round(start + i * step, 10) for i in range(count))
        else:
            values = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    for x in values:
        if not 0.0 <= x <= 1.0:
            raise argparse.ArgumentTypeError(f"grid value {x} outside [0, 1]")
    return values


def _seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else default_seed()


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


# ------------------------------------------------------------------ commands

def cmd_generate(args: argparse.Namespace) -> int:
    seed = _seed(args)
    started = time.perf_counter()
    if args.model == "ba":
        seq = generate_ba(BaParams(args.n0, args.m0, args.m, args.steps, seed))
    else:
        g0 = g0_preset(args.g0, args.n, args.g0_prob, seed)
        seq = generate_emgg(EmggParams(args.n, args.p, args.q, args.steps, seed, g0))
    elapsed = time.perf_counter() - started
    with _output(args.out) as fh:
        write_snapshots(seq, fh)
    summary = sys.stderr if args.out in (None, "-") else sys.stdout
    orders = [s.order for s in seq]
    sizes = [s.size for s in seq]
    print(
        f"{args.model}: {len(seq)} snapshots, order {orders[0]}..{orders[-1]}, "
        f"size {sizes[0]}..{sizes[-1]} (min {min(sizes)}, max {max(sizes)}), {elapsed:.3f}s",
        file=summary,
    )
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    if args.input == "-":
        seq = parse_snapshots(sys.stdin)
    else:
        with open(args.input, encoding="ascii") as fh:
            seq = parse_snapshots(fh)
    which = {"v": "vertex", "e": "edge", "both": "both"}[args.mode]
    series = score_sequence(seq, which)
    with _output(args.out) as fh:
        write_score_csv(series, fh)
    return 0


def cmd_predict(args: argparse.Namespace, out: TextIO) -> int:
    if args.model == "ba":
        theory = oracles.BaTheory(args.n0, args.m0, args.m)
        # rows are transitions t -> t+1, directly comparable with `dynascore score`
        out.write("t,v_score,e_score\n")
        for t in range(args.t_max + 1):
            v = oracles.ba_v_score(theory, t)
            e = oracles.ba_e_score(theory, t + 1)
            out.write(f"{t},{format_value(v)},{format_value(e)}\n")
        return 0
    theory = oracles.emgg_theory(args.p, args.q)
    if theory.degenerate:
        out.write(f"degenerate: {theory.regime}\n")
        return 0
    out.write(f"m* = {format_value(theory.m_star)}\n")
    out.write(f"presence probability = {format_value(theory.pi_star)}\n")
    out.write(f"D^E(m*) = {format_value(theory.score_at_fixed_point)}\n")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    config = SweepConfig(
        n=args.n,
        p_values=args.p_grid,
        q_values=args.q_grid,
        steps=args.steps,
        burn_in=args.burn_in,
        runs=args.runs,
        seed=_seed(args),
        g0_kind=args.g0,
        g0_prob=args.g0_prob,
    )
    started = time.perf_counter()
    result = run_sweep(config, workers=args.workers)
    elapsed = time.perf_counter() - started
    with _output(args.out) as fh:
        write_sweep_csv(result, fh, extended=args.extended)
    summary = sys.stderr if args.out in (None, "-") else sys.stdout
    print(
        f"{len(result.cells)} cells, max |observed - predicted| = "
        f"{result.max_abs_error():.6f}, {elapsed:.1f}s",
        file=summary,
    )
    return 0


# -------------------------------------------------------------------- parser

def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $DYNASCORE_SEED or 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynascore", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a snapshot sequence")
    gen_models = gen.add_subparsers(dest="model", required=True)
    ba = gen_models.add_parser("ba", help="Barabási–Albert growth")
    ba.add_argument("--n0", type=int, required=True)
    ba.add_argument("--m0", type=int, default=0)
    ba.add_argument("--m", type=int, required=True)
    emgg = gen_models.add_parser("emgg", help="Edge-Markovian graphs")
    emgg.add_argument("--n", type=int, required=True)
    emgg.add_argument("--p", type=_probability, required=True)
    emgg.add_argument("--q", type=_probability, required=True)
    emgg.add_argument("--g0", choices=("empty", "complete", "gnp"), default="empty")
    emgg.add_argument("--g0-prob", type=_probability, default=0.5)
    for p in (ba, emgg):
        p.add_argument("--steps", type=int, required=True)
        _add_seed(p)
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    score = sub.add_parser("score", help="score a snapshot file")
    score.add_argument("--input", required=True, help="snapshot file, or - for stdin")
    score.add_argument("--mode", choices=("v", "e", "both"), default="both")
    score.add_argument("--out", default=None)

    pred = sub.add_parser("predict", help="print closed-form predictions")
    pred_models = pred.add_subparsers(dest="model", required=True)
    pba = pred_models.add_parser("ba")
    pba.add_argument("--n0", type=int, required=True)
    pba.add_argument("--m0", type=int, default=0)
    pba.add_argument("--m", type=int, required=True)
    pba.add_argument("--t-max", type=int, default=10)
    pemgg = pred_models.add_parser("emgg")
    pemgg.add_argument("--p", type=_probability, required=True)
    pemgg.add_argument("--q", type=_probability, required=True)

    sw = sub.add_parser("sweep", help="Monte Carlo (p, q) sweep of the mean E-DynamicScore")
    sw.add_argument("--n", type=int, default=150)
    sw.add_argument("--p-grid", type=_grid, default=default_grid())
    sw.add_argument("--q-grid", type=_grid, default=default_grid())
    sw.add_argument("--steps", type=int, default=700)
    sw.add_argument("--burn-in", type=int, default=200)
    sw.add_argument("--runs", type=int, default=1)
    sw.add_argument("--g0", choices=("empty", "complete", "gnp"), default="empty")
    sw.add_argument("--g0-prob", type=_probability, default=0.5)
    _add_seed(sw)
    sw.add_argument("--out", default=None)
    sw.add_argument("--extended", action="store_true", help="add stddev, meanDensity, predicted")
    sw.add_argument("--workers", type=int, default=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "score":
            return cmd_score(args)
        if args.command == "predict":
            buf = io.StringIO()
            code = cmd_predict(args, buf)
            sys.stdout.write(buf.getvalue())
            return code
        return cmd_sweep(args)
    except ParameterError as exc:
        print(f"dynascore {args.command}: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, OSError, UnicodeDecodeError) as exc:
        print(f"dynascore {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
