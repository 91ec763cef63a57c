"""Command-line surface: enumeration runs, thresholds, oracles, experiments.

Every invocation echoes its resolved configuration (including the seed) to
standard error, and its outputs are a pure function of the argument vector
and the input stream.  Exit status: 0 on success, 1 for usage or parameter
errors, 2 for runtime and stream errors.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .drivers import (
    StopReason,
    StreamFormatError,
    UniformSampler,
    enumerate_baseline,
    enumerate_improved,
    enumerate_stream,
    iter_tokens,
)
from .exact import expected_draws, failure_probability, tail_probability
from .policy import CheckpointSchedule, DomainError, draw_threshold

USAGE_ERROR = 1
RUNTIME_ERROR = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _checkpoints_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"checkpoints must be comma-separated integers, got {text!r}")


def _sizes_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}")


def _seed_arg(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be a u64, got {text}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="randenum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="run an enumeration and print the outcome")
    p.add_argument("--n", type=int, help="true set size of the simulated sampler")
    p.add_argument("--seed", type=_seed_arg, help="simulator seed (u64)")
    p.add_argument("--checkpoints", type=_checkpoints_arg,
                   default=experiments.DEFAULT_CHECKPOINTS, metavar="M1,M2,...")
    p.add_argument("--epsilon", type=float, default=experiments.DEFAULT_EPSILON)
    p.add_argument("--baseline", action="store_true", help="use the counter-reset variant")
    p.add_argument("--stdin", action="store_true",
                   help="read newline-delimited tokens from standard input instead of simulating")

    p = sub.add_parser("bound", help="print a draw threshold")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--M", type=int, default=None,
                   help="number of checkpoints sharing the budget (threshold uses epsilon/M)")

    p = sub.add_parser("tail", help="print the exact tail probability P(T_m > tau)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("expect", help="print the exact expected draws to collect m of n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("failure", help="print the exact stop-early probability of a schedule")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--checkpoints", type=_checkpoints_arg, required=True, metavar="M1,M2,...")
    p.add_argument("--epsilon", type=float, required=True)

    for name, default_out in (("fig1", "fig1.csv"), ("compare", "compare.csv")):
        p = sub.add_parser(name, help=f"run the {name} experiment and write {default_out}")
        p.add_argument("--runs", type=int, default=10_000)
        p.add_argument("--seed", type=_seed_arg, default=experiments.DEFAULT_SEED)
        p.add_argument("--out", default=default_out)
        p.add_argument("--sizes", type=_sizes_arg,
                       default=experiments.DEFAULT_SET_SIZES if name == "fig1" else (50, 1000),
                       metavar="N1,N2,...")

    p = sub.add_parser("fig2", help="tightness sweep; write fig2.csv")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=experiments.DEFAULT_EPSILON)
    p.add_argument("--out", default="fig2.csv")

    return parser


def _echo_config(args, **extra):
    parts = [f"command={args.command}"]
    for key, value in extra.items():
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        parts.append(f"{key}={value}")
    print("config:", " ".join(parts), file=sys.stderr)


def _print_probability(value: float):
    print(f"{value:.12g}")


def _cmd_enumerate(args) -> int:
    schedule = CheckpointSchedule(args.checkpoints, args.epsilon)
    if args.stdin:
        if args.baseline:
            raise _UsageError("--baseline cannot be combined with --stdin")
        _echo_config(args, source="stdin", checkpoints=schedule.checkpoints,
                     epsilon=schedule.epsilon)
        tokens = iter_tokens(sys.stdin.buffer)
        outcome = enumerate_stream(tokens, schedule)
    else:
        if args.n is None or args.seed is None:
            raise _UsageError("--n and --seed are required without --stdin")
        algorithm = "baseline" if args.baseline else "improved"
        _echo_config(args, n=args.n, seed=args.seed, checkpoints=schedule.checkpoints,
                     epsilon=schedule.epsilon, algorithm=algorithm)
        sampler = UniformSampler(args.n, args.seed)
        run = enumerate_baseline if args.baseline else enumerate_improved
        outcome = run(sampler, schedule)
    print(f"collected={len(outcome.collected)} total_samples={outcome.total_samples} "
          f"stop_checkpoint={outcome.stop_label()}")
    return RUNTIME_ERROR if outcome.reason is StopReason.STREAM_ENDED else 0


def _cmd_bound(args) -> int:
    if args.M is None:
        _echo_config(args, m=args.m, epsilon=args.epsilon)
        print(draw_threshold(args.m, args.epsilon))
    else:
        if args.M < 1:
            raise DomainError(f"M must be >= 1, got {args.M}")
        _echo_config(args, m=args.m, epsilon=args.epsilon, M=args.M)
        print(draw_threshold(args.m, args.epsilon / args.M))
    return 0


def _cmd_tail(args) -> int:
    _echo_config(args, m=args.m, tau=args.tau, n=args.n)
    _print_probability(tail_probability(args.m, args.tau, args.n))
    return 0


def _cmd_expect(args) -> int:
    _echo_config(args, m=args.m, n=args.n)
    _print_probability(expected_draws(args.m, args.n))
    return 0


def _cmd_failure(args) -> int:
    schedule = CheckpointSchedule(args.checkpoints, args.epsilon)
    _echo_config(args, n=args.n, checkpoints=schedule.checkpoints, epsilon=schedule.epsilon)
    _print_probability(failure_probability(args.n, schedule))
    return 0


def _cmd_fig1(args) -> int:
    _echo_config(args, runs=args.runs, seed=args.seed, sizes=args.sizes, out=args.out)
    config = experiments.ExperimentConfig(experiments.default_schedule(), args.sizes,
                                          args.runs, args.seed, "improved")
    report = experiments.run_fig1(config)
    experiments.write_fig1_csv(report, args.out)
    print(f"wrote {args.out} ({len(report.cases)} cases)")
    return 0


def _cmd_fig2(args) -> int:
    _echo_config(args, n=args.n, epsilon=args.epsilon, out=args.out)
    points = experiments.run_fig2(args.n, args.epsilon)
    experiments.write_fig2_csv(points, args.out)
    print(f"wrote {args.out} ({len(points)} points)")
    return 0


def _cmd_compare(args) -> int:
    _echo_config(args, runs=args.runs, seed=args.seed, sizes=args.sizes, out=args.out)
    config = experiments.ExperimentConfig(experiments.default_schedule(), args.sizes,
                                          args.runs, args.seed, "both")
    report = experiments.run_comparison(config)
    experiments.write_compare_csv(report, args.out)
    print(f"wrote {args.out} ({len(report.cases)} cases)")
    return 0


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "bound": _cmd_bound,
    "tail": _cmd_tail,
    "expect": _cmd_expect,
    "failure": _cmd_failure,
    "fig1": _cmd_fig1,
    "fig2": _cmd_fig2,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as err:  # --help
        return 0 if err.code in (0, None) else int(err.code)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except StreamFormatError as err:
        print(f"stream error: {err}", file=sys.stderr)
        return RUNTIME_ERROR
    except DomainError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return RUNTIME_ERROR


def entry():
    raise SystemExit(main())
