"""Experiment harness: plan parsing, sweep orchestration, seeding and CSV
emission.

`moeadra run` executes a (problems x strategy cells x repetitions) grid and
writes two UTF-8 comma-separated files into the output directory:

    anytime.csv  problem,strategy,ps,rep,generation,evaluations,hv,igd_scaled,igd_raw,ndom
    summary.csv  problem,strategy,ps,rep,evaluations,hv,igd_scaled,igd_raw,ndom,wall_seconds

`moeadra report` reads a summary.csv and emits per-problem regression
slopes of the indicators against ps plus the pairwise rank-sum comparison
tables. Every run's seed is derived from the base seed and the cell key by
SHA-256, so reruns are reproducible; "full" is seeded as ps=1.0 (it is the
same algorithm) and exported with ps=1.0.

The hypervolume column is expressed per problem in the frame pooled over
the final populations of every run of that problem in the invocation
(per-objective min/max, reference point at the all-ones corner), so the
values say where each run ended up inside the region the whole experiment
attained. Runs of the same cell in different invocations can therefore
carry different hv values; the scaled/raw IGD columns are invocation
independent.
"""

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .engine import EngineConfig, run
from .metrics import nondominated_filter  # noqa: F401  (re-exported convenience)
from .problems import catalog
from .stats import SampleGroup, compare_all

PS_GRID = (0.1, 0.2, 0.4, 0.6, 0.8, 1.0)
OUT_ENV_VAR = "MOEADRA_OUT"
ANYTIME_HEADER = ["problem", "strategy", "ps", "rep", "generation",
                  "evaluations", "hv", "igd_scaled", "igd_raw", "ndom"]
SUMMARY_HEADER = ["problem", "strategy", "ps", "rep", "evaluations",
                  "hv", "igd_scaled", "igd_raw", "ndom", "wall_seconds"]

_PROBLEM_ORDER = {spec.id: i for i, spec in enumerate(catalog())}


@dataclass(frozen=True)
class ExperimentPlan:
    problems: tuple[str, ...]
    cells: tuple[tuple[str, float | None], ...]  # (strategy, ps)
    reps: int = 21
    budget: int = 30000
    base_seed: int = 0
    delta_t: int = 20
    out_dir: str = "results"

    def runs(self):
        """All (problem, strategy, ps, rep) tuples in deterministic order."""
        cells = sorted(self.cells, key=lambda c: (c[0], -1.0 if c[1] is None else c[1]))
        problems = sorted(self.problems, key=_PROBLEM_ORDER.__getitem__)
        for problem in problems:
            for strategy, ps in cells:
                for rep in range(self.reps):
                    yield problem, strategy, ps, rep


def derive_seed(base_seed: int, problem: str, strategy: str,
                ps: float | None, rep: int) -> int:
    """Stable per-run seed; 'full' is keyed as ps=1.0 (identical algorithm)."""
    if strategy == "full":
        strategy, ps = "ps", 1.0
    ps_key = "" if ps is None else repr(float(ps))
    key = f"{base_seed}|{problem}|{strategy}|{ps_key}|{rep}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moeadra",
        description="benchmark experiment harness for MOEA/D-DE resource allocation")
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="execute an experiment grid")
    runp.add_argument("--config", help="JSON file with the same keys as the flags")
    runp.add_argument("--problem", action="append",
                      help="problem id (dtlz1..dtlz7, uf1..uf10); repeatable or "
                           "comma-separated; default: all 17")
    runp.add_argument("--strategy", choices=["full", "ps", "ri"])
    runp.add_argument("--ps", type=float, help="update probability for --strategy ps")
    runp.add_argument("--reps", type=int)
    runp.add_argument("--budget", type=int)
    runp.add_argument("--seed", type=int)
    runp.add_argument("--delta-t", type=int, dest="delta_t")
    runp.add_argument("--out", help=f"output directory (or ${OUT_ENV_VAR})")
    runp.add_argument("--sweep", action="store_true",
                      help=f"run the ps grid {PS_GRID} instead of a single cell")

    rep = sub.add_parser("report", help="regression slopes and rank-sum tables from a summary.csv")
    rep.add_argument("--summary", required=True, help="path to a summary.csv")
    rep.add_argument("--out", help="directory for the report CSVs (default: alongside the summary)")
    return parser


def parse_config(argv) -> ExperimentPlan:
    """Build an ExperimentPlan from `run` flags plus an optional config file."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command != "run":
        raise ValueError("parse_config only handles the run command")

    conf = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            conf = json.load(fh)

    def pick(flag, key, default):
        return flag if flag is not None else conf.get(key, default)

    problems = args.problem
    if problems is None:
        problems = conf.get("problem")
    if problems is None:
        problems = [spec.id for spec in catalog()]
    if isinstance(problems, str):
        problems = [problems]
    problems = [p.strip() for chunk in problems for p in chunk.split(",") if p.strip()]
    for p in problems:
        if p not in _PROBLEM_ORDER:
            parser.error(f"unknown problem id: {p!r}")

    strategy = pick(args.strategy, "strategy", "full")
    if strategy not in ("full", "ps", "ri"):
        parser.error(f"unknown strategy: {strategy!r}")
    ps = pick(args.ps, "ps", None)
    reps = int(pick(args.reps, "reps", 21))
    budget = int(pick(args.budget, "budget", 30000))
    seed = int(pick(args.seed, "seed", 0))
    delta_t = int(pick(args.delta_t, "delta_t", 20))
    sweep = args.sweep or bool(conf.get("sweep", False))
    out_dir = args.out or os.environ.get(OUT_ENV_VAR) or conf.get("out", "results")

    if reps < 1:
        parser.error("reps must be >= 1")
    if budget < 1:
        parser.error("budget must be >= 1")

    if sweep:
        cells = tuple(("ps", level) for level in PS_GRID)
    elif strategy == "ps":
        if ps is None:
            parser.error("--strategy ps requires --ps")
        if not 0.0 < ps <= 1.0:
            parser.error("--ps must lie in (0, 1]")
        cells = (("ps", float(ps)),)
    elif strategy == "full":
        cells = (("full", 1.0),)
    else:
        cells = (("ri", None),)

    return ExperimentPlan(problems=tuple(problems), cells=cells, reps=reps,
                          budget=budget, base_seed=seed, delta_t=delta_t,
                          out_dir=out_dir)


def _fmt(value) -> str:
    return repr(float(value))


def pooled_hv_frame(final_objectives) -> tuple[np.ndarray, np.ndarray]:
    """Per-objective (min, max - min) over the given final populations."""
    pooled = np.vstack(list(final_objectives))
    lo = pooled.min(axis=0)
    return lo, pooled.max(axis=0) - lo


def execute_runs(plan: ExperimentPlan, problem: str):
    """All runs of one problem, hv re-framed against their pooled finals.

    Yields (strategy, ps, rep, log, elapsed_seconds) in plan order.
    """
    results = []
    for strategy, ps in sorted(plan.cells,
                               key=lambda c: (c[0], -1.0 if c[1] is None else c[1])):
        for rep in range(plan.reps):
            seed = derive_seed(plan.base_seed, problem, strategy, ps, rep)
            config = EngineConfig(problem=problem, strategy=strategy,
                                  ps=1.0 if ps is None else ps,
                                  delta_t=plan.delta_t, budget=plan.budget,
                                  seed=seed)
            started = time.perf_counter()
            log, pop = run(config)
            elapsed = time.perf_counter() - started
            results.append([strategy, ps, rep, log, pop.F, elapsed])
    lo, span = pooled_hv_frame(r[4] for r in results)
    return [(s, ps, rep, log.with_hv_frame(lo, span), elapsed)
            for s, ps, rep, log, _, elapsed in results]


def run_experiment(plan: ExperimentPlan) -> tuple[str, str]:
    """Execute the plan; returns the (anytime, summary) CSV paths."""
    os.makedirs(plan.out_dir, exist_ok=True)
    anytime_path = os.path.join(plan.out_dir, "anytime.csv")
    summary_path = os.path.join(plan.out_dir, "summary.csv")
    try:
        anytime_fh = open(anytime_path, "w", newline="", encoding="utf-8")
        summary_fh = open(summary_path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write experiment output under {plan.out_dir!r}: {exc}") from exc

    problems = sorted(set(plan.problems), key=_PROBLEM_ORDER.__getitem__)
    with anytime_fh, summary_fh:
        anytime = csv.writer(anytime_fh)
        summary = csv.writer(summary_fh)
        anytime.writerow(ANYTIME_HEADER)
        summary.writerow(SUMMARY_HEADER)
        for problem in problems:
            for strategy, ps, rep, log, elapsed in execute_runs(plan, problem):
                ps_field = "" if ps is None else _fmt(ps)
                for k in range(len(log)):
                    anytime.writerow([
                        problem, strategy, ps_field, rep,
                        log.generation[k], log.evaluations[k],
                        _fmt(log.hv[k]), _fmt(log.igd_scaled[k]),
                        _fmt(log.igd_raw[k]), _fmt(log.ndom[k])])
                last = len(log) - 1
                summary.writerow([
                    problem, strategy, ps_field, rep, log.evaluations[last],
                    _fmt(log.hv[last]), _fmt(log.igd_scaled[last]),
                    _fmt(log.igd_raw[last]), _fmt(log.ndom[last]),
                    _fmt(elapsed)])
                print(f"{problem} {strategy} ps={ps_field or '-'} rep={rep} "
                      f"hv={log.hv[last]:.4f} ({elapsed:.1f}s)", file=sys.stderr)
    return anytime_path, summary_path


def sweep_report(summary_csv: str) -> pd.DataFrame:
    """Per-problem least-squares slopes of mean HV and mean log-IGD vs ps."""
    frame = pd.read_csv(summary_csv)
    frame = frame[frame["ps"].notna()]
    levels = sorted(frame["ps"].unique())
    if len(levels) < 2:
        raise ValueError("sweep report needs at least two ps levels in the summary")
    rows = []
    for problem, sub in frame.groupby("problem", sort=False):
        means = sub.groupby("ps")[["hv", "igd_scaled"]].mean().sort_index()
        ps_vals = means.index.to_numpy(dtype=float)
        hv_fit = np.polyfit(ps_vals, means["hv"].to_numpy(), 1)
        igd_fit = np.polyfit(ps_vals, np.log(means["igd_scaled"].to_numpy()), 1)
        rows.append({
            "problem": problem,
            "hv_slope": hv_fit[0], "hv_intercept": hv_fit[1],
            "log_igd_slope": igd_fit[0], "log_igd_intercept": igd_fit[1],
            "ps_levels": len(ps_vals),
        })
    return pd.DataFrame(rows)


def _group_label(strategy: str, ps) -> str:
    if strategy == "ps" or strategy == "full":
        return f"ps={ps:g}"
    return strategy


def comparison_tables(summary_csv: str, indicator: str,
                      direction: str) -> tuple[pd.DataFrame, pd.DataFrame]:
    """(per-problem-median comparison, per-problem breakdown) for one indicator."""
    frame = pd.read_csv(summary_csv)
    frame["group"] = [
        _group_label(s, p) for s, p in zip(frame["strategy"], frame["ps"])]
    labels = list(dict.fromkeys(frame["group"]))

    medians = frame.groupby(["group", "problem"], sort=False)[indicator].median()
    groups = [SampleGroup(lab, medians[lab].to_numpy()) for lab in labels]
    pooled = pd.DataFrame(compare_all(groups, direction).rows())
    pooled.insert(0, "indicator", indicator)

    by_problem = []
    for problem, sub in frame.groupby("problem", sort=False):
        groups = [SampleGroup(lab, g[indicator].to_numpy())
                  for lab, g in sub.groupby("group", sort=False)]
        if len(groups) < 2:
            continue
        part = pd.DataFrame(compare_all(groups, direction).rows())
        part.insert(0, "problem", problem)
        part.insert(0, "indicator", indicator)
        by_problem.append(part)
    breakdown = pd.concat(by_problem, ignore_index=True) if by_problem else pd.DataFrame()
    return pooled, breakdown


def _report(args) -> None:
    out_dir = args.out or os.path.dirname(os.path.abspath(args.summary))
    os.makedirs(out_dir, exist_ok=True)

    tables = []
    breakdowns = []
    for indicator, direction in (("hv", "higher"), ("igd_scaled", "lower")):
        pooled, breakdown = comparison_tables(args.summary, indicator, direction)
        tables.append(pooled)
        if len(breakdown):
            breakdowns.append(breakdown)
    comparison = pd.concat(tables, ignore_index=True)
    comparison.to_csv(os.path.join(out_dir, "comparison_medians.csv"), index=False)
    if breakdowns:
        pd.concat(breakdowns, ignore_index=True).to_csv(
            os.path.join(out_dir, "comparison_by_problem.csv"), index=False)

    print(comparison.to_string(index=False))

    try:
        slopes = sweep_report(args.summary)
    except ValueError:
        print("\n(sweep slopes skipped: single ps level)")
    else:
        slopes.to_csv(os.path.join(out_dir, "sweep_report.csv"), index=False)
        print("\n" + slopes.to_string(index=False))


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in ("run", "report", "-h", "--help"):
        argv = ["run"] + argv  # bare flags mean `run`
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        plan = parse_config(argv)
        anytime_path, summary_path = run_experiment(plan)
        print(f"wrote {anytime_path} and {summary_path}", file=sys.stderr)
    else:
        _report(args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
