"""Model assembly: creates every decision variable and drives the power, gas,
and coupling builders into one MilpModel.

Variable creation order is deterministic and puts all integer decisions
first, so the MPS output carries a single integer-marker block. Identical
inputs produce byte-identical MPS files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from gridgas import names
from gridgas.milp import BINARY, INTEGER, MilpModel
from gridgas.scenario import DemandSet, Scenario
from gridgas.timegrid import DAYS_PER_YEAR, TimeGrid
from gridgas.topology import EnergySystem, PowerNode, StorageType

THETA_MAX = math.pi


@dataclass
class VarIndex:
    """Variable handles keyed by their natural indices."""

    xop: dict = field(default_factory=dict)      # (node, plant)
    xest: dict = field(default_factory=dict)
    xdec: dict = field(default_factory=dict)
    ucx: dict = field(default_factory=dict)      # (node, slot, plant)
    ucup: dict = field(default_factory=dict)
    ucdn: dict = field(default_factory=dict)
    p: dict = field(default_factory=dict)
    fe: dict = field(default_factory=dict)       # (line, slot)
    theta: dict = field(default_factory=dict)    # (node, slot)
    ze: dict = field(default_factory=dict)       # line
    sch: dict = field(default_factory=dict)      # (node, slot, storage)
    sdis: dict = field(default_factory=dict)
    slev: dict = field(default_factory=dict)
    ycd: dict = field(default_factory=dict)      # (node, storage)
    ylev: dict = field(default_factory=dict)
    srem: dict = field(default_factory=dict)     # (node, rep day, storage)
    sday: dict = field(default_factory=dict)     # (node, calendar day, storage)
    kcapt: dict = field(default_factory=dict)    # (node, slot)
    kpipe: dict = field(default_factory=dict)    # node
    ae: dict = field(default_factory=dict)       # (node, slot)
    zg: dict = field(default_factory=dict)       # pipeline
    g: dict = field(default_factory=dict)        # (gas node, day)
    fg: dict = field(default_factory=dict)       # (pipeline, day)
    fge: dict = field(default_factory=dict)      # (gas node, power node, rep day)
    fgl: dict = field(default_factory=dict)      # (gas node, svl, day)
    fvg: dict = field(default_factory=dict)      # (svl, gas node, day)
    sstr: dict = field(default_factory=dict)     # (svl, day)
    sliq: dict = field(default_factory=dict)
    svpr: dict = field(default_factory=dict)
    xgstr: dict = field(default_factory=dict)    # svl
    xvpr: dict = field(default_factory=dict)
    alcdf: dict = field(default_factory=dict)    # (gas node, day)
    ag: dict = field(default_factory=dict)
    e_power: int = -1
    e_gas: int = -1


@dataclass
class BuildContext:
    model: MilpModel
    system: EnergySystem
    grid: TimeGrid
    scenario: Scenario
    demand: DemandSet
    vars: VarIndex


def active_storage(scenario: Scenario, system: EnergySystem,
                   node: PowerNode) -> list[StorageType]:
    """Storage technologies usable at a node under the scenario's flags."""
    out = []
    for st in system.storage_at(node):
        if st.is_long_duration:
            if not scenario.ldes_enabled:
                continue
            if scenario.ldes_type is not None and st.id != scenario.ldes_type:
                continue
        out.append(st)
    return out


def has_ccs_vars(system: EnergySystem) -> bool:
    return system.ccs_params is not None


def _create_integer_vars(ctx: BuildContext) -> None:
    m, sys_, sc = ctx.model, ctx.system, ctx.scenario
    vx = ctx.vars
    max_new = math.inf if sc.max_new_per_type is None else sc.max_new_per_type
    for node in sys_.power_nodes:
        for plant in sys_.plants_at(node):
            key = (node.id, plant.id)
            count = node.existing_plant_counts.get(plant.id, 0)
            est_hi = 0.0 if plant.is_existing else max_new
            # implied by the count identity with nonnegative counterparts
            dec_hi = 0.0 if plant.non_retirable else count + est_hi
            vx.xest[key] = m.add_var(names.xest(*key), 0.0, est_hi, INTEGER)
            vx.xdec[key] = m.add_var(names.xdec(*key), 0.0, dec_hi, INTEGER)
            vx.xop[key] = m.add_var(names.xop(*key), 0.0, count + est_hi, INTEGER)
    for line in sys_.transmission_lines:
        if not line.is_existing:
            vx.ze[line.id] = m.add_var(names.ze(line.id), kind=BINARY)
    for pipe in sys_.pipelines:
        if not pipe.is_existing:
            vx.zg[pipe.id] = m.add_var(names.zg(pipe.id), kind=BINARY)


def _create_power_vars(ctx: BuildContext) -> None:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    demand = ctx.demand
    ccs_on = has_ccs_vars(sys_)
    for node in sys_.power_nodes:
        plants = sys_.plants_at(node)
        thermals = [pl for pl in plants if pl.is_thermal_uc]
        node_has_ccs = any(pl.has_ccs for pl in plants)
        elec = demand.elec[node.id]
        for t in grid.hours_e:
            for plant in plants:
                vx.p[(node.id, t, plant.id)] = m.add_var(
                    names.p(node.id, t, plant.id))
            for plant in thermals:
                key = (node.id, t, plant.id)
                vx.ucx[key] = m.add_var(names.ucx(*key))
                vx.ucup[key] = m.add_var(names.ucup(*key))
                vx.ucdn[key] = m.add_var(names.ucdn(*key))
            vx.theta[(node.id, t)] = m.add_var(
                names.theta(node.id, t), -THETA_MAX, THETA_MAX)
            # shedding never exceeds demand in that hour
            vx.ae[(node.id, t)] = m.add_var(
                names.ae(node.id, t), 0.0, float(elec[grid.source_index(t)]))
            if ccs_on:
                hi = math.inf if node_has_ccs else 0.0
                vx.kcapt[(node.id, t)] = m.add_var(
                    names.kcapt(node.id, t), 0.0, hi)
        if ccs_on:
            hi = math.inf if node_has_ccs else 0.0
            vx.kpipe[node.id] = m.add_var(names.kpipe(node.id), 0.0, hi)
        for st in active_storage(sc, sys_, node):
            for t in grid.hours_e:
                vx.sch[(node.id, t, st.id)] = m.add_var(
                    names.sch(node.id, t, st.id))
                vx.sdis[(node.id, t, st.id)] = m.add_var(
                    names.sdis(node.id, t, st.id))
                vx.slev[(node.id, t, st.id)] = m.add_var(
                    names.slev(node.id, t, st.id))
            vx.ycd[(node.id, st.id)] = m.add_var(names.ycd(node.id, st.id))
            vx.ylev[(node.id, st.id)] = m.add_var(names.ylev(node.id, st.id))
            if st.is_long_duration:
                for tau in grid.rep_days:
                    vx.srem[(node.id, tau, st.id)] = m.add_var(
                        names.srem(node.id, tau, st.id), -math.inf, math.inf)
                for day in range(1, DAYS_PER_YEAR + 1):
                    vx.sday[(node.id, day, st.id)] = m.add_var(
                        names.sday(node.id, day, st.id))
    for line in sys_.transmission_lines:
        for t in grid.hours_e:
            vx.fe[(line.id, t)] = m.add_var(
                names.fe(line.id, t), -math.inf, math.inf)


def _create_gas_vars(ctx: BuildContext) -> None:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    days = range(1, DAYS_PER_YEAR + 1)
    lcdf_hi = math.inf if sc.lcdf_enabled else 0.0
    for gnode in sys_.ng_nodes:
        for day in days:
            vx.g[(gnode.id, day)] = m.add_var(names.g(gnode.id, day))
            vx.alcdf[(gnode.id, day)] = m.add_var(
                names.alcdf(gnode.id, day), 0.0, lcdf_hi)
            vx.ag[(gnode.id, day)] = m.add_var(names.ag(gnode.id, day))
        # power deliveries are shared by all days of a representative-day
        # cluster: one variable per cluster, reused in every daily balance
        for n in gnode.adjacent_power_nodes:
            for tau in grid.rep_days:
                vx.fge[(gnode.id, n, tau)] = m.add_var(
                    names.fge(gnode.id, n, tau))
        for j in gnode.adjacent_svl_nodes:
            for day in days:
                vx.fgl[(gnode.id, j, day)] = m.add_var(
                    names.fgl(gnode.id, j, day))
                vx.fvg[(j, gnode.id, day)] = m.add_var(
                    names.fvg(j, gnode.id, day))
    for pipe in sys_.pipelines:
        for day in days:
            vx.fg[(pipe.id, day)] = m.add_var(names.fg(pipe.id, day))
    for svl in sys_.svl_nodes:
        for day in days:
            vx.sstr[(svl.id, day)] = m.add_var(names.sstr(svl.id, day))
            vx.sliq[(svl.id, day)] = m.add_var(names.sliq(svl.id, day))
            vx.svpr[(svl.id, day)] = m.add_var(names.svpr(svl.id, day))
        vx.xgstr[svl.id] = m.add_var(names.xgstr(svl.id))
        vx.xvpr[svl.id] = m.add_var(names.xvpr(svl.id))
    vx.e_power = m.add_var(names.E_POWER, -math.inf, math.inf)
    vx.e_gas = m.add_var(names.E_GAS, -math.inf, math.inf)


def build_model(system: EnergySystem, grid: TimeGrid,
                scenario: Scenario) -> BuildContext:
    """Assemble the full joint planning MILP for one scenario."""
    from gridgas import coupling_build, gas_build, power_build

    if scenario.demand is None:
        raise ValueError("scenario carries no demand set")
    scenario.demand.validate_for(system)

    model = MilpModel("gridgas")
    ctx = BuildContext(model=model, system=system, grid=grid,
                       scenario=scenario, demand=scenario.demand,
                       vars=VarIndex())
    _create_integer_vars(ctx)
    _create_power_vars(ctx)
    _create_gas_vars(ctx)

    power_build.add_investment_uc(ctx)
    power_build.add_generation_limits(ctx)
    power_build.add_power_balance(ctx)
    power_build.add_network_dcflow(ctx)
    power_build.add_storage(ctx)
    power_build.add_rps(ctx)
    power_build.add_resource_limits(ctx)
    power_build.add_ccs(ctx)

    gas_build.add_gas_balance(ctx)
    gas_build.add_repday_equality(ctx)
    gas_build.add_supply_limits(ctx)
    gas_build.add_gas_flows(ctx)
    gas_build.add_svl_storage(ctx)

    coupling_build.add_fuel_coupling(ctx)
    coupling_build.add_emissions_cap(ctx)

    terms_p, const_p = power_build.power_objective_terms(ctx)
    terms_g, const_g = gas_build.gas_objective_terms(ctx)
    model.set_objective(terms_p + terms_g, const_p + const_g)
    model.metadata["scenario"] = scenario.name
    model.metadata["scenario_digest"] = scenario.digest()
    return ctx
