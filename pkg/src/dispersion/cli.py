"""Command-line front end: solve, gen, bench, and verify.

Exit codes: 0 success, 1 usage or parse error, 2 infeasible request or
tripped enumeration budget, 3 verification failure. Scripts and CI branch
on these.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb
from pathlib import Path

from .baselines import DEFAULT_SUBSET_BUDGET, brute_force, greedy_baseline
from .errors import BudgetExceededError, InfeasibleError, ParseError
from .exact import solve_fixed_k
from .geometry import Metric, PointSet, subset_weight
from .instances import (
    InstanceSpec,
    generate_instance,
    parse_instance,
    read_solution,
    write_instance,
    write_solution,
)
from .ptas import DEFAULT_CONFIG_BUDGET, PtasParams, choose_m, solve_ptas
from .solution import Solution, format_weight

BENCH_HEADER = "instance,n,d,k,metric,algorithm,weight,ratio,wall_ms,configs"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="dispersion", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    solve = sub.add_parser("solve", help="run one solver on one instance")
    solve.add_argument("--algo", required=True,
                       choices=["fixed-k", "ptas", "brute", "greedy"])
    solve.add_argument("--k", type=int, required=True)
    solve.add_argument("--metric", choices=["l1", "linf", "l2"], default="l1")
    solve.add_argument("--m", type=int, help="strips per axis (ptas)")
    solve.add_argument("--epsilon", help="accuracy target (ptas), e.g. 1/2")
    solve.add_argument("--input", required=True)
    solve.add_argument("--format", choices=["csv", "json"], default="csv")
    solve.add_argument("--scale", type=int, default=4,
                       help="decimal digits preserved when scaling to integers")
    solve.add_argument("--header", action="store_true",
                       help="skip a CSV header line")
    solve.add_argument("--output")
    solve.add_argument("--budget", type=int,
                       help="enumeration budget (subsets or configurations)")
    solve.add_argument("--workers", type=int, default=1)
    solve.set_defaults(func=cmd_solve)

    gen = sub.add_parser("gen", help="generate a seeded random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--lo", type=int, default=-50)
    gen.add_argument("--hi", type=int, default=50)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--clusters", type=int)
    gen.add_argument("--spread", type=int)
    gen.add_argument("--format", choices=["csv", "json"], default="csv")
    gen.add_argument("--output")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="compare algorithms over instances")
    bench.add_argument("--instances", help="directory of CSV instances")
    bench.add_argument("--gen-n", help="sizes to generate, e.g. 8:14 or 8,10,12")
    bench.add_argument("--gen-d", type=int, default=2)
    bench.add_argument("--gen-lo", type=int, default=-50)
    bench.add_argument("--gen-hi", type=int, default=50)
    bench.add_argument("--gen-seeds", type=int, default=1,
                       help="instances per size")
    bench.add_argument("--seed", type=int, default=1, help="base seed")
    bench.add_argument("--algos", default="fixed-k,brute,greedy")
    bench.add_argument("--k", type=int, required=True)
    bench.add_argument("--metric", choices=["l1", "linf", "l2"], default="l1")
    bench.add_argument("--m", type=int, default=4)
    bench.add_argument("--scale", type=int, default=4)
    bench.add_argument("--budget", type=int)
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument("--out", required=True, help="report CSV path")
    bench.add_argument("--measure", action="store_true",
                       help="record real wall times (report no longer "
                            "byte-reproducible)")
    bench.set_defaults(func=cmd_bench)

    verify = sub.add_parser("verify", help="check a solution file against "
                                           "its instance")
    verify.add_argument("--instance", required=True)
    verify.add_argument("--solution", required=True)
    verify.add_argument("--format", choices=["csv", "json"], default="csv")
    verify.add_argument("--scale", type=int, default=4)
    verify.add_argument("--header", action="store_true")
    verify.set_defaults(func=cmd_verify)

    return parser


def _run_algorithm(
    algo: str,
    ps: PointSet,
    k: int,
    metric: Metric,
    budget: int | None,
    workers: int,
    m: int | None = None,
) -> Solution:
    if algo == "fixed-k":
        return solve_fixed_k(ps, k, metric,
                             budget=budget or DEFAULT_SUBSET_BUDGET,
                             workers=workers)
    if algo == "brute":
        return brute_force(ps, k, metric,
                           budget=budget or DEFAULT_SUBSET_BUDGET,
                           workers=workers)
    if algo == "greedy":
        return greedy_baseline(ps, k, metric)
    if algo == "ptas":
        params = PtasParams(m=m or 4, metric=metric,
                            budget=budget or DEFAULT_CONFIG_BUDGET,
                            workers=workers)
        return solve_ptas(ps, k, params)
    raise _UsageError(f"unknown algorithm {algo!r}")


def cmd_solve(args) -> int:
    metric = Metric(args.metric)
    m = args.m
    if args.algo == "ptas":
        if args.m is not None and args.epsilon is not None:
            raise _UsageError("--m and --epsilon are mutually exclusive")
        if args.m is None and args.epsilon is None:
            raise _UsageError("ptas needs --m or --epsilon")
        if args.epsilon is not None:
            try:
                m = choose_m(Fraction(args.epsilon))
            except (ValueError, ZeroDivisionError):
                raise _UsageError(f"invalid --epsilon {args.epsilon!r}") from None
    elif args.m is not None or args.epsilon is not None:
        raise _UsageError("--m/--epsilon apply to --algo ptas only")

    data = Path(args.input).read_bytes()
    ps = parse_instance(data, args.format, args.scale, skip_header=args.header)
    sol = _run_algorithm(args.algo, ps, args.k, metric, args.budget,
                         args.workers, m=m)
    out = write_solution(sol, "json")
    if args.output:
        Path(args.output).write_bytes(out)
    sys.stdout.write(out.decode("utf-8"))
    return 0


def cmd_gen(args) -> int:
    if args.clusters is not None and args.spread is None:
        raise _UsageError("--clusters needs --spread")
    try:
        spec = InstanceSpec(
            n=args.n,
            d=args.d,
            lo=args.lo,
            hi=args.hi,
            seed=args.seed,
            distribution="clustered" if args.clusters is not None else "uniform",
            clusters=args.clusters,
            spread=args.spread,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    ps = generate_instance(spec)
    data = write_instance(ps, args.format, scale=0)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    echo = {
        "n": spec.n, "d": spec.d, "lo": spec.lo, "hi": spec.hi,
        "seed": spec.seed, "distribution": spec.distribution,
        "clusters": spec.clusters, "spread": spec.spread,
        "output": args.output,
    }
    print(json.dumps(echo, sort_keys=True), file=sys.stderr)
    return 0


def _parse_sizes(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t.strip()]


def _bench_instances(args):
    if (args.instances is None) == (args.gen_n is None):
        raise _UsageError("bench needs exactly one of --instances or --gen-n")
    if args.instances is not None:
        root = Path(args.instances)
        if not root.is_dir():
            raise _UsageError(f"{root} is not a directory")
        for path in sorted(root.glob("*.csv")):
            yield path.name, parse_instance(path.read_bytes(), "csv", args.scale)
        return
    try:
        sizes = _parse_sizes(args.gen_n)
    except ValueError:
        raise _UsageError(f"invalid --gen-n {args.gen_n!r}") from None
    offset = 0
    for n in sizes:
        for _ in range(args.gen_seeds):
            seed = args.seed + offset
            offset += 1
            try:
                spec = InstanceSpec(n=n, d=args.gen_d, lo=args.gen_lo,
                                    hi=args.gen_hi, seed=seed)
            except ValueError as exc:
                raise _UsageError(str(exc)) from None
            yield f"gen-n{n}-d{args.gen_d}-s{seed}", generate_instance(spec)


def _ratio_str(sol: Solution, oracle: Solution | None) -> str:
    if oracle is None:
        return ""
    if oracle.metric is Metric.L2_APPROX:
        if oracle.weight == 0:
            return "1"
        return f"{float(sol.weight) / float(oracle.weight):.12g}"
    if oracle.weight == 0:
        return "1"
    return str(Fraction(int(sol.weight), int(oracle.weight)))


def cmd_bench(args) -> int:
    metric = Metric(args.metric)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ("fixed-k", "ptas", "brute", "greedy"):
            raise _UsageError(f"unknown algorithm {a!r}")
    subset_budget = args.budget or DEFAULT_SUBSET_BUDGET

    rows = []
    ratios: dict[str, list[Fraction | float]] = {a: [] for a in algos}
    for name, ps in _bench_instances(args):
        n = len(ps)
        oracle = None
        if comb(n, args.k) <= subset_budget and 2 <= args.k <= n:
            oracle = brute_force(ps, args.k, metric, budget=subset_budget,
                                 workers=args.workers)
        for algo in algos:
            try:
                sol = _run_algorithm(algo, ps, args.k, metric, args.budget,
                                     args.workers, m=args.m)
            except (InfeasibleError, BudgetExceededError) as exc:
                rows.append((name, n, ps.dim, args.k, metric.value, algo,
                             f"ERROR:{type(exc).__name__}", "", "", ""))
                continue
            ratio = _ratio_str(sol, oracle)
            if ratio not in ("", None) and oracle is not None:
                ratios[algo].append(
                    Fraction(ratio) if metric is not Metric.L2_APPROX
                    else float(ratio)
                )
            wall = str(int(round(sol.stats.get("elapsed_ms", 0)))) \
                if args.measure else "0"
            configs = sol.stats.get("configs", sol.stats.get("subsets", ""))
            rows.append((name, n, ps.dim, args.k, metric.value, algo,
                         sol.reported_weight(), ratio, wall, str(configs)))

    rows.sort(key=lambda r: (r[0], r[5]))
    body = "\n".join(",".join(str(c) for c in row) for row in rows)
    report = BENCH_HEADER + "\n" + body + ("\n" if body else "")
    Path(args.out).write_bytes(report.encode("utf-8"))

    print(f"wrote {len(rows)} rows to {args.out}")
    for algo in algos:
        vals = ratios[algo]
        if not vals:
            print(f"{algo}: no oracle ratios")
            continue
        mean = sum(float(v) for v in vals) / len(vals)
        print(f"{algo}: ratio min={float(min(vals)):.6f} "
              f"mean={mean:.6f} over {len(vals)} runs")
    return 0


def cmd_verify(args) -> int:
    ps = parse_instance(Path(args.instance).read_bytes(), args.format,
                        args.scale, skip_header=args.header)
    sol = read_solution(Path(args.solution).read_bytes())

    def fail(message: str) -> int:
        print(f"verification failed: {message}", file=sys.stderr)
        return 3

    indices = sol["indices"]
    if not isinstance(indices, list) or not all(
        isinstance(i, int) for i in indices
    ):
        return fail(f"indices must be a list of integers, got {indices!r}")
    if len(set(indices)) != len(indices):
        return fail(f"duplicate indices in {indices}")
    if any(not 0 <= i < len(ps) for i in indices):
        return fail(f"index out of range for n={len(ps)}")
    if sol["k"] != len(indices):
        return fail(f"k={sol['k']} but {len(indices)} indices")
    metric = sol["metric"]
    try:
        weight = subset_weight(ps, indices, metric)
    except (ValueError, InfeasibleError) as exc:
        return fail(str(exc))
    expected = format_weight(weight, metric)
    claimed = str(sol["weight"])
    if metric is Metric.L2_APPROX:
        try:
            claimed_f = float(claimed)
        except ValueError:
            return fail(f"unreadable weight {claimed!r}")
        ref = float(expected)
        tol = 1e-9 * max(abs(ref), 1.0)
        if abs(claimed_f - ref) > tol:
            return fail(f"weight mismatch: claimed {claimed}, recomputed "
                        f"{expected}")
    else:
        try:
            claimed_i = int(claimed)
        except ValueError:
            return fail(f"unreadable weight {claimed!r}")
        if claimed_i != int(expected):
            return fail(f"weight mismatch: claimed {claimed}, recomputed "
                        f"{expected}")
    print(f"ok: {len(indices)} indices, weight {expected}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            parser.print_help(sys.stderr)
            return 1
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InfeasibleError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
