"""Cross-system rows: gas deliveries feeding power generation, and the CO2
accounting variables with the emissions cap.

Power-side emissions book all gas burned in power plants as fossil with a
capture credit; gas-side emissions net out drop-in fuel and unserved demand.
A node's drop-in fuel may exceed its non-power demand, which credits the
power system through the joint cap; this net accounting is intentional.
"""

from __future__ import annotations

from gridgas import names
from gridgas.build import BuildContext
from gridgas.milp import EQ, LE
from gridgas.scenario import POWER_ONLY
from gridgas.timegrid import DAYS_PER_YEAR


def add_fuel_coupling(ctx: BuildContext) -> list[int]:
    m, sys_, grid = ctx.model, ctx.system, ctx.grid
    vx = ctx.vars
    rows = []
    for node in sys_.power_nodes:
        gas_plants = [pl for pl in sys_.plants_at(node) if pl.is_gas_fired]
        for tau in grid.rep_days:
            terms = [(vx.fge[(k, node.id, tau)], 1.0)
                     for k in node.adjacent_gas_nodes]
            for t in grid.hours_of_day[tau]:
                for plant in gas_plants:
                    terms.append((vx.p[(node.id, t, plant.id)],
                                  -plant.heat_rate_mmbtu_per_mwh))
            rows.append(m.add_constraint(
                names.c_fuel(node.id, tau), terms, EQ, 0.0))
    return rows


def add_emissions_cap(ctx: BuildContext) -> list[int]:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    demand = ctx.demand
    eta_g = sc.emission_factor
    rows = []

    terms = [(vx.e_power, 1.0)]
    for node in sys_.power_nodes:
        for plant in sys_.plants_at(node):
            if not plant.is_gas_fired:
                continue
            coef = (1.0 - plant.capture_rate) * eta_g * plant.heat_rate_mmbtu_per_mwh
            for t in grid.hours_e:
                terms.append((vx.p[(node.id, t, plant.id)],
                              -float(grid.weights[t]) * coef))
    rows.append(m.add_constraint(names.C_EDEF_POWER, terms, EQ, 0.0))

    terms = [(vx.e_gas, 1.0)]
    gross = 0.0
    for gnode in sys_.ng_nodes:
        series = demand.gas[gnode.id]
        gross += eta_g * float(series.sum())
        for day in range(1, DAYS_PER_YEAR + 1):
            terms.append((vx.alcdf[(gnode.id, day)], eta_g))
            terms.append((vx.ag[(gnode.id, day)], eta_g))
    rows.append(m.add_constraint(names.C_EDEF_GAS, terms, EQ, gross))

    cap_terms = [(vx.e_power, 1.0)]
    if sc.emissions_scope != POWER_ONLY:
        cap_terms.append((vx.e_gas, 1.0))
    rows.append(m.add_constraint(names.C_ECAP, cap_terms, LE, sc.budget()))
    return rows
