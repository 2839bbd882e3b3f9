"""Planning outcome tables: capacity and generation by technology, cost
breakdown, emissions split, storage build, and network expansion counts.

Units follow the reporting conventions of the domain: GW for capacity, TWh
for energy, MMBtu for gas, metric tons for CO2, dollars for costs. All
conversions are centralized here.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from gridgas import names
from gridgas.audit import objective_breakdown
from gridgas.build import active_storage, has_ccs_vars
from gridgas.milp import Solution
from gridgas.scenario import POWER_ONLY, Scenario
from gridgas.timegrid import DAYS_PER_YEAR, TimeGrid
from gridgas.topology import EnergySystem

MW_PER_GW = 1_000.0
MWH_PER_TWH = 1_000_000.0
HOURS_PER_YEAR = 8_760.0

COST_CATEGORIES = (
    "gen_str_inv_fom", "decommissioning", "vom_startup", "transmission",
    "co2_transport_storage", "fuel_uranium", "elec_shed", "pipeline_capex",
    "ng_purchase", "svl_inv_fom", "lcdf", "gas_shed")


@dataclass
class PlanReport:
    """Solved plan summarized into presentation quantities."""

    capacity_gw: dict[str, float] = field(default_factory=dict)
    built_units: dict[str, float] = field(default_factory=dict)
    retired_units: dict[str, float] = field(default_factory=dict)
    generation_twh: dict[str, float] = field(default_factory=dict)
    capacity_factor: dict[str, float] = field(default_factory=dict)
    power_fuel_mmbtu: dict[str, float] = field(default_factory=dict)
    costs: dict[str, float] = field(default_factory=dict)
    emissions: dict[str, float] = field(default_factory=dict)
    storage: dict[str, dict[str, float]] = field(default_factory=dict)
    network: dict[str, float] = field(default_factory=dict)
    built_line_ids: list[str] = field(default_factory=list)
    built_pipeline_ids: list[str] = field(default_factory=list)

    @property
    def total_cost(self) -> float:
        return sum(self.costs.values())

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def build_report(system: EnergySystem, grid: TimeGrid, scenario: Scenario,
                 solution: Solution) -> PlanReport:
    values = solution.values
    rep = PlanReport()
    demand = scenario.demand

    for plant in system.plant_types:
        cap_mw = 0.0
        built = 0.0
        retired = 0.0
        gen_mwh = 0.0
        fuel = 0.0
        for node in system.power_nodes:
            if plant.id not in node.existing_plant_counts:
                continue
            n = node.id
            cap_mw += plant.nameplate_mw * values[names.xop(n, plant.id)]
            built += values[names.xest(n, plant.id)]
            retired += values[names.xdec(n, plant.id)]
            for t in grid.hours_e:
                w = float(grid.weights[t])
                p = values[names.p(n, t, plant.id)]
                gen_mwh += w * p
                fuel += w * plant.heat_rate_mmbtu_per_mwh * p
        rep.capacity_gw[plant.id] = cap_mw / MW_PER_GW
        rep.built_units[plant.id] = round(built, 6)
        rep.retired_units[plant.id] = round(retired, 6)
        rep.generation_twh[plant.id] = gen_mwh / MWH_PER_TWH
        rep.capacity_factor[plant.id] = (
            gen_mwh / (cap_mw * HOURS_PER_YEAR) if cap_mw > 1e-9 else 0.0)
        if plant.is_gas_fired or plant.fuel == "uranium":
            rep.power_fuel_mmbtu[plant.id] = fuel

    rep.costs = objective_breakdown(system, grid, scenario, values)

    e_power = values[names.E_POWER]
    e_gas = values[names.E_GAS]
    budget = scenario.budget()
    capped = e_power if scenario.emissions_scope == POWER_ONLY else e_power + e_gas
    rep.emissions = {
        "power_tons": e_power,
        "gas_tons": e_gas,
        "budget_tons": budget,
        "budget_used_frac": capped / budget if budget else 0.0,
        "power_share": e_power / (e_power + e_gas) if (e_power + e_gas) else 0.0,
        "captured_tons": 0.0,
    }
    if has_ccs_vars(system):
        rep.emissions["captured_tons"] = sum(
            float(grid.weights[t]) * values[names.kcapt(node.id, t)]
            for node in system.power_nodes for t in grid.hours_e)

    for st in system.storage_types:
        power_mw = 0.0
        energy_mwh = 0.0
        for node in system.power_nodes:
            if st in active_storage(scenario, system, node):
                power_mw += values[names.ycd(node.id, st.id)]
                energy_mwh += values[names.ylev(node.id, st.id)]
        duration = (energy_mwh * st.discharge_eff / power_mw
                    if power_mw > 1e-9 else 0.0)
        rep.storage[st.id] = {"power_mw": power_mw, "energy_mwh": energy_mwh,
                              "rated_duration_h": duration}

    rep.built_line_ids = sorted(
        line.id for line in system.transmission_lines
        if not line.is_existing and values[names.ze(line.id)] > 0.5)
    rep.built_pipeline_ids = sorted(
        pipe.id for pipe in system.pipelines
        if not pipe.is_existing and values[names.zg(pipe.id)] > 0.5)
    total_injection = sum(values[names.g(g.id, d)] for g in system.ng_nodes
                          for d in range(1, DAYS_PER_YEAR + 1))
    total_lcdf = sum(values[names.alcdf(g.id, d)] for g in system.ng_nodes
                     for d in range(1, DAYS_PER_YEAR + 1))
    total_gshed = sum(values[names.ag(g.id, d)] for g in system.ng_nodes
                      for d in range(1, DAYS_PER_YEAR + 1))
    total_eshed = sum(float(grid.weights[t]) * values[names.ae(node.id, t)]
                      for node in system.power_nodes for t in grid.hours_e)
    rep.network = {
        "lines_built": float(len(rep.built_line_ids)),
        "pipelines_built": float(len(rep.built_pipeline_ids)),
        "ng_injection_mmbtu": total_injection,
        "lcdf_mmbtu": total_lcdf,
        "gas_shed_mmbtu": total_gshed,
        "elec_shed_mwh": total_eshed,
        "gas_demand_mmbtu": demand.total_gas_mmbtu,
        "elec_demand_mwh": demand.total_elec_mwh,
    }
    return rep


def _diff_num(a: dict[str, float], b: dict[str, float]) -> dict[str, float]:
    return {k: b.get(k, 0.0) - a.get(k, 0.0) for k in sorted(set(a) | set(b))}


def diff_reports(a: PlanReport, b: PlanReport) -> PlanReport:
    """Elementwise b - a across all numeric tables; the id lists keep what b
    built beyond a."""
    out = PlanReport(
        capacity_gw=_diff_num(a.capacity_gw, b.capacity_gw),
        built_units=_diff_num(a.built_units, b.built_units),
        retired_units=_diff_num(a.retired_units, b.retired_units),
        generation_twh=_diff_num(a.generation_twh, b.generation_twh),
        capacity_factor=_diff_num(a.capacity_factor, b.capacity_factor),
        power_fuel_mmbtu=_diff_num(a.power_fuel_mmbtu, b.power_fuel_mmbtu),
        costs=_diff_num(a.costs, b.costs),
        emissions=_diff_num(a.emissions, b.emissions),
        network=_diff_num(a.network, b.network),
        built_line_ids=sorted(set(b.built_line_ids) - set(a.built_line_ids)),
        built_pipeline_ids=sorted(set(b.built_pipeline_ids)
                                  - set(a.built_pipeline_ids)),
    )
    for sid in sorted(set(a.storage) | set(b.storage)):
        out.storage[sid] = _diff_num(a.storage.get(sid, {}),
                                     b.storage.get(sid, {}))
    return out


def _write_csv(path: Path, header: tuple[str, ...], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(x: float) -> str:
    return repr(float(x))


def emit_plot_data(report: PlanReport, outdir: str | Path) -> list[Path]:
    """Write the six tidy CSV tables; output is byte-deterministic."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []

    def emit(name: str, header, rows):
        path = outdir / name
        _write_csv(path, header, rows)
        paths.append(path)

    emit("capacity.csv", ("plant_type", "capacity_gw", "built_units",
                          "retired_units"),
         [(k, _fmt(report.capacity_gw[k]),
           _fmt(report.built_units.get(k, 0.0)),
           _fmt(report.retired_units.get(k, 0.0)))
          for k in sorted(report.capacity_gw)])
    emit("generation.csv", ("plant_type", "generation_twh", "capacity_factor"),
         [(k, _fmt(report.generation_twh[k]),
           _fmt(report.capacity_factor.get(k, 0.0)))
          for k in sorted(report.generation_twh)])
    emit("costs.csv", ("category", "usd"),
         [(k, _fmt(report.costs.get(k, 0.0)))
          for k in sorted(set(COST_CATEGORIES) | set(report.costs))])
    emit("emissions.csv", ("metric", "value"),
         [(k, _fmt(v)) for k, v in sorted(report.emissions.items())])
    emit("storage.csv", ("storage_type", "power_mw", "energy_mwh",
                         "rated_duration_h"),
         [(k, _fmt(d.get("power_mw", 0.0)), _fmt(d.get("energy_mwh", 0.0)),
           _fmt(d.get("rated_duration_h", 0.0)))
          for k, d in sorted(report.storage.items())])
    emit("network.csv", ("metric", "value"),
         [(k, _fmt(v)) for k, v in sorted(report.network.items())]
         + [("built_lines", ";".join(report.built_line_ids)),
            ("built_pipelines", ";".join(report.built_pipeline_ids))])
    return paths


def emit_sensitivity_table(rows: list[tuple[Scenario, PlanReport]],
                           path: str | Path) -> None:
    """Long-format table for fuel-price grids: one row per scenario with the
    full cost breakdown and fuel totals."""
    header = (("scenario", "ng_price", "lcdf_price", "total_cost")
              + COST_CATEGORIES
              + ("ng_injection_mmbtu", "lcdf_mmbtu", "gas_shed_mmbtu"))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for scenario, report in rows:
            row = [scenario.name, _fmt(scenario.ng_price),
                   _fmt(scenario.lcdf_price), _fmt(report.total_cost)]
            row += [_fmt(report.costs.get(cat, 0.0)) for cat in COST_CATEGORIES]
            row += [_fmt(report.network.get("ng_injection_mmbtu", 0.0)),
                    _fmt(report.network.get("lcdf_mmbtu", 0.0)),
                    _fmt(report.network.get("gas_shed_mmbtu", 0.0))]
            writer.writerow(row)
