"""Command-line harness: run experiments, rank results, tune, inspect.

Subcommands:
  run         seeded batches of hybrid runs, CSV results + summary
  stats       ranking pipeline over a median matrix (file or bundled)
  tune        GA parameter tuning for one function, JSON output
  bench-info  write a benchmark instance descriptor

Output directory resolution: --out flag, else the LSGO_HYBRID_OUT
environment variable, else ./lsgo_hybrid_out.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import re
import sys
from dataclasses import replace
from pathlib import Path

from .benchmarks import FUNCTION_IDS, make_instance
from .hybrid import HybridConfig, fe_budget, run_batch, scaled
from .stats.fixture import FUNCTION_LABELS, reference_median_matrix
from .stats.ranking import DEFAULT_GROUPS, MedianMatrix
from .stats.report import (
    format_text,
    full_report,
    write_json,
    write_rank_csv,
    write_scores_csv,
    write_tests_csv,
    write_text,
)
from .tuning import ParamVector, TunerConfig, hybrid_config_for, load_specialist_params, tune

OUT_DIR_ENV = "LSGO_HYBRID_OUT"
_DEFAULT_OUT = "lsgo_hybrid_out"

_FID_NUM = {fid: i for i, fid in enumerate(FUNCTION_IDS)}


def _out_dir(args) -> Path:
    path = Path(args.out or os.environ.get(OUT_DIR_ENV) or _DEFAULT_OUT)
    path.mkdir(parents=True, exist_ok=True)
    return path


def parse_function_list(text: str) -> list[str]:
    """Comma-separated ids with F<a>..F<b> range syntax, e.g. F1..F3,F15."""
    chosen: list[str] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        m = re.fullmatch(r"(F\d+)\.\.(F\d+)", token)
        if m:
            lo, hi = m.group(1), m.group(2)
            if lo not in _FID_NUM or hi not in _FID_NUM:
                raise ValueError(f"unknown function in range {token!r}")
            if _FID_NUM[lo] > _FID_NUM[hi]:
                raise ValueError(f"empty range {token!r}")
            span = FUNCTION_IDS[_FID_NUM[lo]:_FID_NUM[hi] + 1]
            chosen.extend(span)
        elif token in _FID_NUM:
            chosen.append(token)
        else:
            raise ValueError(
                f"unknown function id {token!r}; expected F1..F{len(FUNCTION_IDS)}"
            )
    seen = set()
    unique = [f for f in chosen if not (f in seen or seen.add(f))]
    if not unique:
        raise ValueError("no functions selected")
    return unique


def _resolve_params(source: str, function_id: str) -> ParamVector:
    if source == "table2b":
        return load_specialist_params(function_id)
    if source.startswith("tuned:"):
        path = source[len("tuned:"):]
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        return ParamVector(par=float(payload["par"]), cr=float(payload["cr"]),
                           f=float(payload["f"]))
    if source.startswith("explicit:"):
        parts = source[len("explicit:"):].split(",")
        if len(parts) != 3:
            raise ValueError(
                "explicit parameters must be three comma-separated values: "
                "explicit:PAR,CR,F"
            )
        par, cr, f = (float(p) for p in parts)
        return ParamVector(par=par, cr=cr, f=f)
    raise ValueError(
        f"unknown --params source {source!r}; "
        "use table2b, tuned:FILE, or explicit:PAR,CR,F"
    )


def _config_hash(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def _fe_label(fe: int, budget: int) -> str:
    if fe == budget:
        return "fe_final"
    if fe % 1000 == 0:
        return f"fe_{fe // 1000}k"
    return f"fe_{fe}"


def _sci(x: float) -> str:
    return f"{x:.8e}"


def cmd_run(args) -> int:
    functions = parse_function_list(args.functions)
    out = _out_dir(args)
    checkpoints = tuple(int(c) for c in args.checkpoints.split(","))

    base = HybridConfig(checkpoints=checkpoints, seed=args.seed)
    if args.budget_scale != 1.0:
        base = scaled(base, args.budget_scale)
    base.validate()
    budget = fe_budget(base)

    config_hash = _config_hash({
        "functions": functions,
        "dim": args.dim,
        "runs": args.runs,
        "seed": args.seed,
        "budget_scale": args.budget_scale,
        "params": args.params,
        "checkpoints": list(checkpoints),
        "population_size": base.population_size,
        "outer_iterations": base.outer_iterations,
        "harmony_iterations": base.harmony.max_iterations,
        "de_iterations": base.de.max_iterations,
        "hmcr": [base.harmony.hmcr_lo, base.harmony.hmcr_hi],
        "bandwidth_fraction": base.harmony.bandwidth_fraction,
        "strategy": base.de.strategy,
    })

    per_cycle = budget // base.outer_iterations
    checkpoint_fes = [k * per_cycle for k in checkpoints]
    fe_columns = [_fe_label(fe, budget) for fe in checkpoint_fes]

    all_rows = []
    summaries = []
    workers = args.parallel if args.parallel else (os.cpu_count() or 1)
    for fid in sorted(functions, key=_FID_NUM.get):
        vector = _resolve_params(args.params, fid)
        config = hybrid_config_for(vector, base)
        results, summary = run_batch((fid, args.dim, args.seed), config,
                                     n_runs=args.runs, workers=workers)
        summaries.append(summary)
        for r in results:
            row = [fid, args.dim, r.seed]
            row += [_sci(r.best_at_checkpoint[fe]) for fe in checkpoint_fes]
            row += [_sci(r.final_best.fitness),
                    int(round(r.wall_time_s * 1000.0)), config_hash]
            all_rows.append(row)
        print(f"{fid}: {args.runs} runs done, median {_sci(summary.median)}")

    runs_path = out / "runs.csv"
    header = ["function_id", "dim", "seed", *fe_columns,
              "final_best", "wall_ms", "config_hash"]
    with open(runs_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(all_rows)

    summary_path = out / "summary.csv"
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["function_id", "dim", "n_runs", "best", "median",
                         "worst", "mean", "stddev", "config_hash"])
        for s in summaries:
            writer.writerow([s.function_id, s.dimension, s.n_runs,
                             _sci(s.best), _sci(s.median), _sci(s.worst),
                             _sci(s.mean), _sci(s.stddev), config_hash])

    print(f"wrote {runs_path} and {summary_path}")
    if args.audit:
        audit_results(runs_path, summary_path)
        print("audit: ok")
    return 0


def audit_results(runs_path: Path, summary_path: Path):
    """Recompute every summary row from its per-run rows; raise on mismatch."""
    with open(runs_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError("audit: runs file has no rows")
    fe_cols = [c for c in rows[0] if c.startswith("fe_")]

    finals: dict[str, list[float]] = {}
    for i, row in enumerate(rows, start=2):
        series = [float(row[c]) for c in fe_cols] + [float(row["final_best"])]
        if any(b > a + 1e-300 for a, b in zip(series, series[1:])):
            raise ValueError(
                f"audit: checkpoint values increase in {runs_path} line {i}"
            )
        finals.setdefault(row["function_id"], []).append(float(row["final_best"]))

    with open(summary_path, newline="", encoding="utf-8") as fh:
        summary_rows = list(csv.DictReader(fh))
    for row in summary_rows:
        fid = row["function_id"]
        values = sorted(finals.get(fid, []))
        n = len(values)
        if n != int(row["n_runs"]):
            raise ValueError(f"audit: {fid} run count mismatch")
        mean = sum(values) / n
        if n > 1:
            var = sum((v - mean) ** 2 for v in values) / (n - 1)
            stddev = var ** 0.5
        else:
            stddev = 0.0
        recomputed = {
            "best": values[0],
            "median": values[(n + 1) // 2 - 1],
            "worst": values[-1],
            "mean": mean,
            "stddev": stddev,
        }
        for key, value in recomputed.items():
            if _sci(value) != row[key]:
                raise ValueError(
                    f"audit: {fid} column {key}: recomputed {_sci(value)} "
                    f"!= stored {row[key]}"
                )


def load_median_csv(path: str) -> MedianMatrix:
    """Median matrix from CSV.

    Accepted headers: `algorithm,F1,...` (values are medians) or
    `algorithm,metric,F1,...` (rows filtered to metric == median).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError(f"{path}: empty input")
    header = rows[0]
    if not header or header[0] != "algorithm":
        raise ValueError(f"{path}: row 1: first column must be 'algorithm'")
    has_metric = len(header) > 1 and header[1] == "metric"
    first_fn = 2 if has_metric else 1
    functions = header[first_fn:]
    if not functions:
        raise ValueError(f"{path}: row 1: no function columns")

    algorithms: list[str] = []
    values: list[list[float]] = []
    for i, row in enumerate(rows[1:], start=2):
        if has_metric and row[1].strip().lower() != "median":
            continue
        if len(row) != len(header):
            raise ValueError(
                f"{path}: row {i}: expected {len(header)} fields, got {len(row)}"
            )
        name = row[0]
        if name in algorithms:
            raise ValueError(f"{path}: row {i}: duplicate algorithm {name!r}")
        parsed = []
        for j, cell in enumerate(row[first_fn:]):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ValueError(
                    f"{path}: row {i}, column {functions[j]}: "
                    f"not a number: {cell!r}"
                ) from None
        algorithms.append(name)
        values.append(parsed)
    if not algorithms:
        raise ValueError(f"{path}: no median rows found")
    return MedianMatrix(algorithms, list(functions), values)


def cmd_stats(args) -> int:
    if args.fixture:
        if args.fixture != "paper":
            raise ValueError(f"unknown fixture {args.fixture!r}; only 'paper'")
        matrix = reference_median_matrix()
    elif args.input:
        matrix = load_median_csv(args.input)
    else:
        raise ValueError("provide --input FILE or --fixture paper")

    # Race-style scoring only covers the groups whose functions the input
    # actually provides; a partial matrix simply gets fewer (or no) groups.
    present = set(matrix.functions)
    groups = tuple(
        trimmed for g in DEFAULT_GROUPS
        if (trimmed := tuple(f for f in g if f in present))
    )
    report = full_report(matrix, groups)
    out = _out_dir(args)
    write_json(report, out / "report.json")
    write_text(report, out / "report.txt")
    if args.mode in ("all", "ranks"):
        write_rank_csv(report, out / "ranks.csv")
    if args.mode in ("all", "tests"):
        write_tests_csv(report, out / "tests.csv")
    if args.mode in ("all", "f1"):
        write_scores_csv(report, out / "scores.csv")
    sys.stdout.write(format_text(report))
    print(f"wrote report files to {out}")
    return 0


def cmd_tune(args) -> int:
    instance = make_instance(args.function, args.dim, args.seed)
    config = TunerConfig(
        ga_population=args.ga_population,
        ga_generations=args.generations,
        inner_budget=args.inner_budget,
        probes_per_eval=args.probes,
        seed=args.seed,
        population_size=args.pool,
    )
    vector, fitness = tune(instance, config)
    out = _out_dir(args)
    path = out / f"tuned_{args.function}_D{args.dim}.json"
    payload = {
        "function_id": args.function,
        "dimension": args.dim,
        "par": vector.par,
        "cr": vector.cr,
        "f": vector.f,
        "probe_fitness": fitness,
        "seed": args.seed,
        "ga_population": config.ga_population,
        "ga_generations": config.ga_generations,
        "inner_budget": config.inner_budget,
        "probes_per_eval": config.probes_per_eval,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    print(f"{args.function}: par={vector.par:.4f} cr={vector.cr:.4f} "
          f"f={vector.f:.4f} probe_fitness={_sci(fitness)}")
    print(f"wrote {path}")
    return 0


def cmd_bench_info(args) -> int:
    instance = make_instance(args.function, args.dim, args.seed)
    out = _out_dir(args)
    path = out / f"{args.function}_D{args.dim}_seed{args.seed}.json"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(instance.to_json(indent=2))
        fh.write("\n")
    sizes = [sub.size for sub in instance.subcomponents]
    lo, hi = instance.bounds
    print(f"{args.function} D={args.dim} seed={args.seed}: "
          f"bounds [{lo}, {hi}], {len(sizes)} subcomponent(s) {sizes}")
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsgo-hybrid",
        description="Hybrid harmony/differential-evolution optimizer harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute seeded run batches")
    p_run.add_argument("--functions", required=True,
                       help="e.g. F1 or F1..F15 or F1,F4,F8..F11")
    p_run.add_argument("--dim", type=int, default=1000)
    p_run.add_argument("--runs", type=int, default=25)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--budget-scale", type=float, default=1.0,
                       help="scale both phases' iteration counts")
    p_run.add_argument("--params", default="table2b",
                       help="table2b | tuned:FILE | explicit:PAR,CR,F")
    p_run.add_argument("--checkpoints", default="4,20,100",
                       help="outer-cycle indices to record, comma separated")
    p_run.add_argument("--parallel", type=int, default=0,
                       help="worker processes (default: all hardware threads)")
    p_run.add_argument("--audit", action="store_true",
                       help="re-derive the summary from the run rows")
    p_run.add_argument("--out")
    p_run.set_defaults(handler=cmd_run)

    p_stats = sub.add_parser("stats", help="ranking and omnibus tests")
    p_stats.add_argument("--input", help="median matrix CSV")
    p_stats.add_argument("--fixture", choices=["paper"],
                         help="use the bundled published-results table")
    p_stats.add_argument("--mode", choices=["all", "ranks", "tests", "f1"],
                         default="all")
    p_stats.add_argument("--out")
    p_stats.set_defaults(handler=cmd_stats)

    p_tune = sub.add_parser("tune", help="GA parameter tuning for one function")
    p_tune.add_argument("--function", required=True)
    p_tune.add_argument("--dim", type=int, default=50)
    p_tune.add_argument("--seed", type=int, default=0)
    p_tune.add_argument("--generations", type=int, default=8)
    p_tune.add_argument("--ga-population", type=int, default=12)
    p_tune.add_argument("--probes", type=int, default=3)
    p_tune.add_argument("--inner-budget", type=int, default=30_000)
    p_tune.add_argument("--pool", type=int, default=200,
                        help="pool size of the probed hybrid runs")
    p_tune.add_argument("--out")
    p_tune.set_defaults(handler=cmd_tune)

    p_info = sub.add_parser("bench-info", help="write an instance descriptor")
    p_info.add_argument("--function", required=True)
    p_info.add_argument("--dim", type=int, default=1000)
    p_info.add_argument("--seed", type=int, default=0)
    p_info.add_argument("--out")
    p_info.set_defaults(handler=cmd_bench_info)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
