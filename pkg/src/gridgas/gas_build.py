"""Gas-system rows: daily nodal balance, supply limits, pipeline and
storage-facility flows, liquefied-gas storage dynamics, and the gas-side
objective terms.

Storage dynamics wrap the year: the day-1 balance links back to day 365, so
there is no free initial inventory.
"""

from __future__ import annotations

from gridgas import names
from gridgas.build import BuildContext
from gridgas.milp import EQ, LE
from gridgas.timegrid import DAYS_PER_YEAR
from gridgas.topology import annualize

DAYS = range(1, DAYS_PER_YEAR + 1)


def add_gas_balance(ctx: BuildContext) -> list[int]:
    m, sys_, grid = ctx.model, ctx.system, ctx.grid
    vx = ctx.vars
    demand = ctx.demand
    rows = []
    pipes_out = {g.id: [] for g in sys_.ng_nodes}
    pipes_in = {g.id: [] for g in sys_.ng_nodes}
    for pipe in sys_.pipelines:
        pipes_out[pipe.from_node].append(pipe)
        pipes_in[pipe.to_node].append(pipe)
    for gnode in sys_.ng_nodes:
        series = demand.gas[gnode.id]
        for day in DAYS:
            rep = grid.rep_of(day)
            terms = [(vx.g[(gnode.id, day)], 1.0)]
            for pipe in pipes_out[gnode.id]:
                terms.append((vx.fg[(pipe.id, day)], -1.0))
            for pipe in pipes_in[gnode.id]:
                terms.append((vx.fg[(pipe.id, day)], 1.0))
            for n in gnode.adjacent_power_nodes:
                terms.append((vx.fge[(gnode.id, n, rep)], -1.0))
            for j in gnode.adjacent_svl_nodes:
                terms.append((vx.fvg[(j, gnode.id, day)], 1.0))
                terms.append((vx.fgl[(gnode.id, j, day)], -1.0))
            terms.append((vx.alcdf[(gnode.id, day)], 1.0))
            terms.append((vx.ag[(gnode.id, day)], 1.0))
            rows.append(m.add_constraint(
                names.c_gbal(gnode.id, day), terms, EQ, float(series[day - 1])))
    return rows


def add_repday_equality(ctx: BuildContext) -> list[int]:
    """Power deliveries are equal across all days sharing a representative
    day. Implemented by variable substitution: a single delivery variable per
    (gas node, power node, representative day) is referenced by every daily
    balance in the cluster, so no explicit rows are needed."""
    return []


def add_supply_limits(ctx: BuildContext) -> list[int]:
    m, sys_ = ctx.model, ctx.system
    vx = ctx.vars
    rows = []
    for gnode in sys_.ng_nodes:
        cap = gnode.injection_cap_mmbtu_per_day
        for day in DAYS:
            rows.append(m.add_constraint(
                names.c_supply(gnode.id, day),
                [(vx.alcdf[(gnode.id, day)], 1.0), (vx.g[(gnode.id, day)], 1.0)],
                LE, cap))
    return rows


def add_gas_flows(ctx: BuildContext) -> list[int]:
    m, sys_ = ctx.model, ctx.system
    vx = ctx.vars
    rows = []
    for pipe in sys_.pipelines:
        for day in DAYS:
            f = vx.fg[(pipe.id, day)]
            if pipe.is_existing:
                rows.append(m.add_constraint(
                    names.c_pcap(pipe.id, day), [(f, 1.0)], LE,
                    pipe.capacity_mmbtu_per_day))
            else:
                rows.append(m.add_constraint(
                    names.c_pcap(pipe.id, day),
                    [(f, 1.0), (vx.zg[pipe.id], -pipe.capacity_mmbtu_per_day)],
                    LE, 0.0))
    feeders = {svl.id: [] for svl in sys_.svl_nodes}
    for gnode in sys_.ng_nodes:
        for j in gnode.adjacent_svl_nodes:
            feeders[j].append(gnode.id)
    for svl in sys_.svl_nodes:
        for day in DAYS:
            rows.append(m.add_constraint(
                names.c_liqsum(svl.id, day),
                [(vx.fgl[(k, svl.id, day)], 1.0) for k in feeders[svl.id]]
                + [(vx.sliq[(svl.id, day)], -1.0)], EQ, 0.0))
            rows.append(m.add_constraint(
                names.c_vprsum(svl.id, day),
                [(vx.fvg[(svl.id, k, day)], 1.0) for k in feeders[svl.id]]
                + [(vx.svpr[(svl.id, day)], -1.0)], EQ, 0.0))
    return rows


def add_svl_storage(ctx: BuildContext) -> list[int]:
    m, sys_, sc = ctx.model, ctx.system, ctx.scenario
    vx = ctx.vars
    rows = []
    for svl in sys_.svl_nodes:
        j = svl.id
        keep = 1.0 - svl.boiloff_daily
        for day in DAYS:
            prev = day - 1 if day > 1 else DAYS_PER_YEAR
            rows.append(m.add_constraint(
                names.c_gsbal(j, day),
                [(vx.sstr[(j, day)], 1.0), (vx.sstr[(j, prev)], -keep),
                 (vx.sliq[(j, day)], -svl.liq_charge_eff),
                 (vx.svpr[(j, day)], 1.0 / svl.vapor_discharge_eff)],
                EQ, 0.0))
            rows.append(m.add_constraint(
                names.c_vprcap(j, day),
                [(vx.svpr[(j, day)], 1.0), (vx.xvpr[j], -1.0)], LE,
                svl.vapor_cap_mmbtu_per_day))
            rows.append(m.add_constraint(
                names.c_strcap(j, day),
                [(vx.sstr[(j, day)], 1.0), (vx.xgstr[j], -1.0)], LE,
                svl.storage_cap_mmbtu))
            if sc.svl_liq_cap_strict:
                rows.append(m.add_constraint(
                    names.c_liqcap(j, day), [(vx.sliq[(j, day)], 1.0)], LE,
                    svl.liq_cap_mmbtu_per_day))
    return rows


def gas_objective_terms(ctx: BuildContext):
    sys_, sc = ctx.system, ctx.scenario
    vx = ctx.vars
    omega = sc.discount_rate
    terms: list[tuple[int, float]] = []
    constant = 0.0
    for pipe in sys_.pipelines:
        if not pipe.is_existing and pipe.capex:
            terms.append((vx.zg[pipe.id],
                          annualize(pipe.capex, sc.pipeline_lifetime_years, omega)))
    for gnode in sys_.ng_nodes:
        for day in DAYS:
            terms.append((vx.g[(gnode.id, day)], sc.ng_price))
            if sc.lcdf_enabled:
                terms.append((vx.alcdf[(gnode.id, day)], sc.lcdf_price))
            terms.append((vx.ag[(gnode.id, day)], sc.gas_shed_cost))
    for svl in sys_.svl_nodes:
        str_annual = annualize(svl.storage_capex_per_mmbtu,
                               sc.svl_lifetime_years, omega)
        vpr_annual = annualize(svl.vapor_capex, sc.svl_lifetime_years, omega)
        terms.append((vx.xgstr[svl.id], str_annual + svl.storage_fom))
        terms.append((vx.xvpr[svl.id], vpr_annual + svl.vapor_fom))
        # fixed O&M is also paid on the capacity already in place
        constant += svl.storage_fom * svl.storage_cap_mmbtu
        constant += svl.vapor_fom * svl.vapor_cap_mmbtu_per_day
    return terms, constant
