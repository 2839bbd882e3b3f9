"""Batch command-line interface.

Subcommands:
  run           build + solve + audit + report one scenario
  sweep         case x reduction-goal matrix with combined difference tables
  sensitivity   fuel-price grid
  demo          write the synthetic six-state data set and a ready config
  solve-mps     solve an MPS file and write the documented solution format
                (reference implementation of the external-solver contract)

Each run writes its artifacts (model.mps, solution.sol, audit.json,
report.json, plot CSVs, ldc.csv) into a directory named from the scenario
digest, so identical configurations land in identical paths.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from dataclasses import replace
from pathlib import Path

from gridgas import report as report_mod
from gridgas import scenario as scenario_mod
from gridgas import timegrid as timegrid_mod
from gridgas.audit import audit_solution
from gridgas.build import build_model
from gridgas.milp import (
    PRESETS,
    ExternalAdapter,
    ScipyAdapter,
    SolverNotFound,
    parse_mps,
    solve,
    write_mps,
    write_solution_file,
)
from gridgas.scenario import Scenario, apply_case, load_demand, sensitivity_grid
from gridgas.topology import load_system, save_system

EXIT_OK = 0
EXIT_NOT_SOLVED = 2
EXIT_AUDIT_FAILED = 3
EXIT_CONFIG = 4
EXIT_SOLVER_MISSING = 5


class ConfigError(ValueError):
    pass


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _resolve(base: Path, value: str) -> Path:
    path = Path(value)
    return path if path.is_absolute() else base / path


def _make_adapter(spec):
    if spec in (None, "scipy"):
        return ScipyAdapter()
    if isinstance(spec, str) and spec in PRESETS:
        return PRESETS[spec]()
    if isinstance(spec, str):
        return ExternalAdapter([spec, "{mps}", "{sol}"])
    if isinstance(spec, list) and spec:
        return ExternalAdapter([str(a) for a in spec])
    raise ConfigError(f"bad solver spec: {spec!r}")


def _load_inputs(config: dict, config_dir: Path, demand_name: str):
    try:
        topo_dir = _resolve(config_dir, config["topology_dir"])
        demands = config["demands"]
    except KeyError as exc:
        raise ConfigError(f"config missing key {exc}") from exc
    if demand_name not in demands:
        raise ConfigError(f"unknown demand set {demand_name!r}; "
                          f"have {sorted(demands)}")
    system = load_system(topo_dir)
    spec = demands[demand_name]
    demand = load_demand(system,
                         _resolve(config_dir, spec["elec"]),
                         _resolve(config_dir, spec["gas"]),
                         _resolve(config_dir, spec["cf"]))
    return system, demand


def _make_grid(config: dict, config_dir: Path, demand, rep_days, seed):
    repdays_csv = config.get("repdays_csv")
    if repdays_csv:
        return timegrid_mod.load_repdays_csv(_resolve(config_dir, repdays_csv))
    k = rep_days if rep_days else config.get("rep_days",
                                             timegrid_mod.DEFAULT_REP_DAYS)
    return timegrid_mod.select_rep_days(demand.elec, demand.gas, k=int(k),
                                        seed=seed)


def _make_scenario(config: dict, demand, case, zeta) -> Scenario:
    sc = Scenario.from_config(config.get("scenario", {}), demand=demand)
    if case:
        sc = apply_case(sc, case,
                        ldes_low_type=config.get("ldes_low_type"),
                        ldes_high_type=config.get("ldes_high_type"))
    if zeta is not None:
        sc = replace(sc, zeta=float(zeta))
    return sc


def run_single(config_path: str, case: str | None, zeta: float | None,
               demand_name: str, rep_days: int | None, mip_gap: float | None,
               solver, out_dir: str | None, seed: int = 0,
               label: str | None = None) -> tuple[int, str]:
    """Execute one full run; returns (exit code, run directory)."""
    config = _load_config(config_path)
    config_dir = Path(config_path).resolve().parent
    system, demand = _load_inputs(config, config_dir, demand_name)
    grid = _make_grid(config, config_dir, demand, rep_days, seed)
    sc = _make_scenario(config, demand, case, zeta)

    out_base = Path(out_dir or _resolve(config_dir, config.get("out_dir", "runs")))
    name = label or f"{sc.name}_{demand_name}_z{int(round(sc.zeta * 100))}"
    run_dir = out_base / f"{name}_{sc.digest()[:8]}"
    run_dir.mkdir(parents=True, exist_ok=True)

    ctx = build_model(system, grid, sc)
    (run_dir / "model.mps").write_text(write_mps(ctx.model))
    (run_dir / "scenario.json").write_text(
        json.dumps(sc.to_config(), indent=2, sort_keys=True))
    timegrid_mod.save_repdays_csv(grid, run_dir / "repdays.csv")
    timegrid_mod.load_duration_diagnostic(grid, demand.elec).write_csv(
        run_dir / "ldc.csv")

    adapter = _make_adapter(solver if solver is not None
                            else config.get("solver"))
    gap = mip_gap if mip_gap is not None else config.get("mip_gap", 0.01)
    solution = solve(ctx.model, adapter=adapter, mip_gap=float(gap),
                     time_limit=config.get("time_limit"))
    write_solution_file(solution, run_dir / "solution.sol")
    print(f"[{name}] status={solution.status} "
          f"objective={solution.objective if solution.objective is not None else 'n/a'} "
          f"gap={solution.mip_gap} ({solution.solve_seconds:.1f}s)")
    if not solution.ok:
        return EXIT_NOT_SOLVED, str(run_dir)

    audit = audit_solution(system, grid, sc, solution)
    (run_dir / "audit.json").write_text(audit.to_json())
    if not audit.ok:
        print(f"[{name}] AUDIT FAILED: worst family "
              f"{audit.worst_family()!r}", file=sys.stderr)
        return EXIT_AUDIT_FAILED, str(run_dir)

    plan = report_mod.build_report(system, grid, sc, solution)
    (run_dir / "report.json").write_text(plan.to_json())
    report_mod.emit_plot_data(plan, run_dir)
    print(f"[{name}] audit ok; total cost {plan.total_cost:,.0f} "
          f"-> {run_dir}")
    return EXIT_OK, str(run_dir)


def _run_worker(kwargs: dict) -> tuple[int, str, str]:
    code, run_dir = run_single(**kwargs)
    return code, run_dir, kwargs.get("label") or ""


def cmd_run(args) -> int:
    try:
        code, _ = run_single(args.config, args.case, args.zeta, args.demand,
                             args.repdays, args.mipgap, args.solver, args.out,
                             seed=args.seed)
        return code
    except SolverNotFound as exc:
        print(f"solver not found: {exc}", file=sys.stderr)
        return EXIT_SOLVER_MISSING
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def cmd_sweep(args) -> int:
    cases = [c.strip() for c in args.cases.split(",") if c.strip()]
    zetas = [float(z) for z in args.zetas.split(",") if z.strip()]
    demands = [d.strip() for d in args.demand.split(",") if d.strip()]
    jobs = []
    for case in cases:
        for zeta in zetas:
            for dem in demands:
                jobs.append(dict(config_path=args.config, case=case, zeta=zeta,
                                 demand_name=dem, rep_days=args.repdays,
                                 mip_gap=args.mipgap, solver=args.solver,
                                 out_dir=args.out, seed=args.seed,
                                 label=f"{case}_{dem}_z{int(round(zeta*100))}"))
    results = _execute(jobs, args.workers)
    worst = max(code for code, _, _ in results)
    _emit_sweep_diffs(results, cases, zetas, demands, args.out or "runs")
    return worst


def _execute(jobs: list[dict], workers: int) -> list[tuple[int, str, str]]:
    if workers <= 1 or len(jobs) == 1:
        return [_run_worker(job) for job in jobs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_worker, jobs))


def _emit_sweep_diffs(results, cases, zetas, demands, out_base) -> None:
    if len(cases) < 2:
        return
    by_label = {label: run_dir for code, run_dir, label in results if code == 0}
    for prev, nxt in zip(cases, cases[1:]):
        for zeta in zetas:
            for dem in demands:
                a = by_label.get(f"{prev}_{dem}_z{int(round(zeta*100))}")
                b = by_label.get(f"{nxt}_{dem}_z{int(round(zeta*100))}")
                if not (a and b):
                    continue
                rep_a = _read_report(Path(a) / "report.json")
                rep_b = _read_report(Path(b) / "report.json")
                delta = report_mod.diff_reports(rep_a, rep_b)
                diff_dir = (Path(out_base) /
                            f"diff_{nxt}-{prev}_{dem}_z{int(round(zeta*100))}")
                diff_dir.mkdir(parents=True, exist_ok=True)
                (diff_dir / "report.json").write_text(delta.to_json())
                report_mod.emit_plot_data(delta, diff_dir)


def _read_report(path: Path) -> report_mod.PlanReport:
    data = json.loads(path.read_text())
    return report_mod.PlanReport(**data)


def cmd_sensitivity(args) -> int:
    ng_prices = [float(x) for x in args.ng.split(",") if x.strip()]
    lcdf_prices = [float(x) for x in args.lcdf.split(",") if x.strip()]
    config = _load_config(args.config)
    config_dir = Path(args.config).resolve().parent
    system, demand = _load_inputs(config, config_dir, args.demand)
    base = _make_scenario(config, demand, args.case, args.zeta)
    grid_scenarios = sensitivity_grid(base, ng_prices, lcdf_prices)

    jobs = []
    for sc in grid_scenarios:
        overrides = {"scenario": {**config.get("scenario", {}),
                                  "ng_price": sc.ng_price,
                                  "lcdf_price": sc.lcdf_price}}
        jobs.append(dict(config_path=args.config, case=args.case,
                         zeta=args.zeta, demand_name=args.demand,
                         rep_days=args.repdays, mip_gap=args.mipgap,
                         solver=args.solver, out_dir=args.out, seed=args.seed,
                         label=sc.name, _scenario_override=overrides))
    # sensitivity runs reuse run_single with price overrides applied through
    # a temporary config copy
    results = []
    out_base = Path(args.out or "runs")
    out_base.mkdir(parents=True, exist_ok=True)
    rows = []
    for sc, job in zip(grid_scenarios, jobs):
        tmp_config = dict(config)
        tmp_config["scenario"] = job.pop("_scenario_override")["scenario"]
        tmp_path = out_base / f"config_{sc.name}.json"
        tmp_path.write_text(json.dumps(tmp_config, indent=2))
        job["config_path"] = str(tmp_path)
        results.append(_run_worker(job))
        code, run_dir, _ = results[-1]
        if code == 0:
            rows.append((sc, _read_report(Path(run_dir) / "report.json")))
    report_mod.emit_sensitivity_table(rows, out_base / "sensitivity.csv")
    return max(code for code, _, _ in results)


def cmd_demo(args) -> int:
    from gridgas.demo import demo_demand, demo_system
    from gridgas.scenario import build_he_from_bau, save_demand
    import numpy as np

    out = Path(args.out)
    data_dir = out / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    system = demo_system(seed=args.seed)
    save_system(system, data_dir)
    bau = demo_demand(system, seed=args.seed)
    save_demand(bau, data_dir / "elec_demand_bau.csv",
                data_dir / "gas_demand_bau.csv", data_dir / "cf.csv")
    # high electrification: winter-weighted heating load moves from gas to power
    hours = np.arange(timegrid_mod.HOURS_PER_YEAR)
    winter = 1.0 + np.cos(2 * np.pi * (hours // 24) / 365.0)
    delta_total = 0.128 * bau.total_elec_mwh
    delta = winter * delta_total / (winter.sum() * len(bau.elec))
    he = build_he_from_bau(
        bau,
        {node: delta for node in bau.elec},
        {node: np.full(timegrid_mod.DAYS_PER_YEAR, 0.139) for node in bau.gas})
    save_demand(he, data_dir / "elec_demand_he.csv",
                data_dir / "gas_demand_he.csv", data_dir / "cf_he.csv")
    config = {
        "topology_dir": "data",
        "demands": {
            "BAU": {"elec": "data/elec_demand_bau.csv",
                    "gas": "data/gas_demand_bau.csv", "cf": "data/cf.csv"},
            "HE": {"elec": "data/elec_demand_he.csv",
                   "gas": "data/gas_demand_he.csv", "cf": "data/cf_he.csv"},
        },
        "scenario": {"name": "C3", "elec_shed_cost": 10000.0},
        "ldes_low_type": "metal_air_low",
        "ldes_high_type": "metal_air_high",
        "rep_days": timegrid_mod.DEFAULT_REP_DAYS,
        "solver": "scipy",
        "mip_gap": 0.01,
        "out_dir": "runs",
    }
    (out / "config.json").write_text(json.dumps(config, indent=2))
    print(f"demo data and config written to {out}")
    return EXIT_OK


def cmd_solve_mps(args) -> int:
    model = parse_mps(Path(args.mps).read_text())
    solution = solve(model, mip_gap=args.mip_gap)
    write_solution_file(solution, args.sol)
    return EXIT_OK if solution.ok else EXIT_NOT_SOLVED


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gridgas",
        description="Joint power/gas capacity expansion planning")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True)
        p.add_argument("--demand", default="BAU")
        p.add_argument("--repdays", type=int, default=None)
        p.add_argument("--mipgap", type=float, default=None)
        p.add_argument("--solver", default=None,
                       help="scipy (default), self, or an executable path")
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)

    p_run = sub.add_parser("run", help="single scenario run")
    add_common(p_run)
    p_run.add_argument("--case", default=None, choices=scenario_mod.CASES)
    p_run.add_argument("--zeta", type=float, default=None)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="case x goal matrix")
    add_common(p_sweep)
    p_sweep.add_argument("--cases", default="C1,C2,C3")
    p_sweep.add_argument("--zetas", default="0.80,0.85,0.90,0.95")
    p_sweep.set_defaults(func=cmd_sweep)

    p_sens = sub.add_parser("sensitivity", help="fuel price grid")
    add_common(p_sens)
    p_sens.add_argument("--case", default="C3", choices=scenario_mod.CASES)
    p_sens.add_argument("--zeta", type=float, default=0.80)
    p_sens.add_argument("--ng", required=True, help="comma list of NG prices")
    p_sens.add_argument("--lcdf", required=True,
                        help="comma list of drop-in fuel prices")
    p_sens.set_defaults(func=cmd_sensitivity)

    p_demo = sub.add_parser("demo", help="write the synthetic data set")
    p_demo.add_argument("--out", required=True)
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.set_defaults(func=cmd_demo)

    p_solve = sub.add_parser("solve-mps", help="solve an MPS file")
    p_solve.add_argument("mps")
    p_solve.add_argument("sol")
    p_solve.add_argument("--mip-gap", type=float, default=0.01)
    p_solve.set_defaults(func=cmd_solve_mps)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverNotFound as exc:
        print(f"solver not found: {exc}", file=sys.stderr)
        return EXIT_SOLVER_MISSING


if __name__ == "__main__":
    sys.exit(main())
