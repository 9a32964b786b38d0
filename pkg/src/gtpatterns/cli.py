"""Command line interface.

Subcommands mirror the library surface: exact kernel evaluation, identity
checks, simulation, and the theorem-level experiments.  Exit code 0 means
all requested checks passed, 1 means a check failed, 2 means bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from gtpatterns import dynamics, experiments, kernels, patterns
from gtpatterns.stats import fraction_or_float


def _parse_row(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok != "")


def _parse_q(text: str) -> Fraction:
    value = fraction_or_float(text)
    return value if isinstance(value, Fraction) else Fraction(value).limit_denominator(10**9)


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, default=str)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _cmd_count(args) -> int:
    value = patterns.count_patterns(args.k, _parse_row(args.lam))
    print(value)
    return 0


def _cmd_pieri(args) -> int:
    mult = kernels.pieri_decompose(args.d, _parse_row(args.lam), args.m)
    _emit(args, {",".join(map(str, beta)): c for beta, c in sorted(mult.items())})
    return 0


def _cmd_kernel(args) -> int:
    q = _parse_q(args.q)
    x, y = _parse_row(args.x), _parse_row(args.y)
    if args.kernel == "r":
        value = kernels.r_pmf(q, x[0], y[0])
    elif args.kernel == "pd":
        value = kernels.p_d_closed(q, args.d, x, y)
    elif args.kernel == "rk":
        value = kernels.r_k_pmf(q, args.k, x, y)
    elif args.kernel == "nu":
        value = kernels.nu_pmf(q, args.d, y[0])
    else:
        raise AssertionError(args.kernel)
    print(f"{value} ({float(value):.12g})")
    return 0


def _cmd_intertwine(args) -> int:
    report = kernels.check_intertwining(_parse_q(args.q), args.k, args.bound)
    print(
        f"checked {report.checked} transitions, "
        f"max discrepancy {report.max_discrepancy}"
    )
    return 0 if report.ok else 1


def _cmd_desintegration(args) -> int:
    report = kernels.check_desintegration(_parse_q(args.q), args.bound)
    print(f"checked {report.checked} identities, violations {len(report.violations)}")
    return 0 if report.ok else 1


def _cmd_simulate(args) -> int:
    sim = dynamics.DiscreteSimulation(
        float(_parse_q(args.q)), args.k, args.paths, args.seed
    )
    sim.run(args.horizon)
    rows = sim.row(args.k)
    hist: dict = {}
    for row in rows:
        key = ",".join(str(int(v)) for v in row)
        hist[key] = hist.get(key, 0) + 1
    _emit(args, {"experiment": "simulate", "k": args.k, "histogram": hist})
    return 0


def _cmd_ctmc(args) -> int:
    res = dynamics.ctmc_simulate(args.k, args.t_max, args.paths, args.seed)
    hist: dict = {}
    for pat in res.patterns:
        key = ";".join(",".join(map(str, row)) for row in pat)
        hist[key] = hist.get(key, 0) + 1
    _emit(args, {"experiment": "ctmc", "k": args.k, "histogram": hist})
    return 0


def _cmd_experiment(args) -> int:
    q = _parse_q(args.q) if args.q else None
    if args.which == "markov-marginal":
        report = experiments.experiment_markov_marginal(
            k=args.k,
            horizon=args.horizon,
            q=q or Fraction(1, 2),
            n_paths=args.paths,
            seed=args.seed,
            radius=args.radius,
            threshold=args.tolerance,
        )
    elif args.which == "small-q":
        report = experiments.experiment_small_q(
            k=args.k,
            big_n=args.big_n,
            t_max=args.t_max,
            n_paths_discrete=args.paths,
            n_paths_ctmc=args.paths,
            seed=args.seed,
            threshold=args.tolerance,
        )
    elif args.which == "large-q":
        report = experiments.experiment_large_q(
            k=args.k,
            big_n=args.big_n,
            n_steps=args.horizon,
            n_samples=args.paths,
            seed=args.seed,
            threshold=args.tolerance,
        )
    else:
        raise AssertionError(args.which)
    print(report.summary())
    _emit(args, report.to_dict())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtpatterns",
        description="Particle dynamics on orthogonal Gelfand-Tsetlin patterns",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of patterns with a given top row")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="comma separated row")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("pieri", help="tensor-product multiplicities")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_pieri)

    p = sub.add_parser("kernel", help="evaluate a kernel entry exactly")
    p.add_argument("kernel", choices=["r", "pd", "rk", "nu"])
    p.add_argument("--q", required=True, help="rational num/den or decimal")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--x", default="0")
    p.add_argument("--y", default="0")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("intertwine", help="exact check of the pair-kernel intertwining")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=_cmd_intertwine)

    p = sub.add_parser("desintegration", help="exact check of the summation identities")
    p.add_argument("--q", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=_cmd_desintegration)

    p = sub.add_parser("simulate", help="discrete-time Monte Carlo")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--paths", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("ctmc", help="exponential-clock Monte Carlo")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--paths", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_ctmc)

    p = sub.add_parser("experiment", help="theorem-level comparison experiments")
    p.add_argument("which", choices=["markov-marginal", "small-q", "large-q"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", default=None)
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--big-n", type=int, default=200)
    p.add_argument("--paths", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=60)
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
