"""Power-system rows: investment and commitment, dispatch limits, network
flow, storage dynamics, policy constraints, carbon capture, and the
power-side objective terms.

Chronology convention: within a representative day the hour preceding the
first hour is the day's last hour, for both commitment and ramping, matching
the storage time-wrap.
"""

from __future__ import annotations

import math

from gridgas import names
from gridgas.build import THETA_MAX, BuildContext, active_storage, has_ccs_vars
from gridgas.milp import EQ, GE, LE
from gridgas.timegrid import DAYS_PER_YEAR
from gridgas.topology import TransmissionLine, annualize, effective_plant_capex


def line_big_m(line: TransmissionLine) -> float:
    # loose enough to free the angle relation when the line is unbuilt
    return line.capacity_mw + line.susceptance * 2.0 * THETA_MAX


def line_sign(line: TransmissionLine, node_id: str) -> int:
    """Flow sign in a node balance: positive flow runs toward the
    lexicographically larger endpoint."""
    return -1 if node_id == min(line.node_a, line.node_b) else 1


def add_investment_uc(ctx: BuildContext) -> list[int]:
    m, sys_, grid = ctx.model, ctx.system, ctx.grid
    vx = ctx.vars
    rows = []
    for node in sys_.power_nodes:
        for plant in sys_.plants_at(node):
            key = (node.id, plant.id)
            count = node.existing_plant_counts.get(plant.id, 0)
            rows.append(m.add_constraint(
                names.c_inv(*key),
                [(vx.xop[key], 1.0), (vx.xdec[key], 1.0), (vx.xest[key], -1.0)],
                EQ, float(count)))
            if not plant.is_thermal_uc:
                continue
            for t in grid.hours_e:
                prev = grid.prev_slot(t)
                k = (node.id, t, plant.id)
                rows.append(m.add_constraint(
                    names.c_chron(*k),
                    [(vx.ucx[k], 1.0), (vx.ucx[(node.id, prev, plant.id)], -1.0),
                     (vx.ucup[k], -1.0), (vx.ucdn[k], 1.0)],
                    EQ, 0.0))
                rows.append(m.add_constraint(
                    names.c_commit(*k),
                    [(vx.ucx[k], 1.0), (vx.xop[key], -1.0)], LE, 0.0))
    return rows


def add_generation_limits(ctx: BuildContext) -> list[int]:
    m, sys_, grid = ctx.model, ctx.system, ctx.grid
    vx = ctx.vars
    demand = ctx.demand
    rows = []
    for node in sys_.power_nodes:
        for plant in sys_.plants_at(node):
            cap = plant.nameplate_mw
            if plant.is_thermal_uc:
                lo = plant.min_stable_frac * cap
                ramp = plant.ramp_frac * cap
                start_room = max(plant.min_stable_frac, plant.ramp_frac) * cap
                for t in grid.hours_e:
                    k = (node.id, t, plant.id)
                    pv, xv = vx.p[k], vx.ucx[k]
                    rows.append(m.add_constraint(
                        names.c_pmax(*k), [(pv, 1.0), (xv, -cap)], LE, 0.0))
                    rows.append(m.add_constraint(
                        names.c_pmin(*k), [(pv, 1.0), (xv, -lo)], GE, 0.0))
                    prev = grid.prev_slot(t)
                    pprev = vx.p[(node.id, prev, plant.id)]
                    upv = vx.ucup[k]
                    ramp_terms = [(xv, -ramp), (upv, -(start_room - ramp))]
                    rows.append(m.add_constraint(
                        names.c_rampup(*k),
                        [(pv, 1.0), (pprev, -1.0)] + ramp_terms, LE, 0.0))
                    rows.append(m.add_constraint(
                        names.c_rampdn(*k),
                        [(pv, -1.0), (pprev, 1.0)] + ramp_terms, LE, 0.0))
            elif plant.is_vre:
                profile = demand.cf_profile(node.id, plant.id)
                xop = vx.xop[(node.id, plant.id)]
                for t in grid.hours_e:
                    rho = float(profile[grid.source_index(t)])
                    k = (node.id, t, plant.id)
                    rows.append(m.add_constraint(
                        names.c_vrecap(*k),
                        [(vx.p[k], 1.0), (xop, -rho * cap)], LE, 0.0))
            else:
                xop = vx.xop[(node.id, plant.id)]
                for t in grid.hours_e:
                    k = (node.id, t, plant.id)
                    rows.append(m.add_constraint(
                        names.c_cap(*k), [(vx.p[k], 1.0), (xop, -cap)], LE, 0.0))
    return rows


def add_power_balance(ctx: BuildContext) -> list[int]:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    demand = ctx.demand
    ccs_on = has_ccs_vars(sys_)
    ccs = sys_.ccs_params
    rows = []
    lines_at = {node.id: sys_.lines_at(node.id) for node in sys_.power_nodes}
    for node in sys_.power_nodes:
        plants = sys_.plants_at(node)
        storages = active_storage(sc, sys_, node)
        elec = demand.elec[node.id]
        for t in grid.hours_e:
            terms = [(vx.p[(node.id, t, pl.id)], 1.0) for pl in plants]
            for line in lines_at[node.id]:
                terms.append((vx.fe[(line.id, t)],
                              float(line_sign(line, node.id))))
            for st in storages:
                terms.append((vx.sdis[(node.id, t, st.id)], 1.0))
                terms.append((vx.sch[(node.id, t, st.id)], -1.0))
            terms.append((vx.ae[(node.id, t)], 1.0))
            if ccs_on:
                d = node.co2_site_distance_miles
                terms.append((vx.kpipe[node.id],
                              -d * ccs.pipe_elec_mwh_per_mile_ton_h))
                terms.append((vx.kcapt[(node.id, t)],
                              -ccs.compressors(d) * ccs.pump_elec_mwh_per_ton_h))
            rows.append(m.add_constraint(
                names.c_bal(node.id, t), terms, EQ,
                float(elec[grid.source_index(t)])))
    return rows


def add_network_dcflow(ctx: BuildContext) -> list[int]:
    m, sys_, grid = ctx.model, ctx.system, ctx.grid
    vx = ctx.vars
    rows = []
    ref = sys_.reference_node()
    for line in sys_.transmission_lines:
        lo_node, hi_node = sorted((line.node_a, line.node_b))
        b = line.susceptance
        for t in grid.hours_e:
            f = vx.fe[(line.id, t)]
            th_lo = vx.theta[(lo_node, t)]
            th_hi = vx.theta[(hi_node, t)]
            if line.is_existing:
                rows.append(m.add_constraint(
                    names.c_fcap_hi(line.id, t), [(f, 1.0)], LE,
                    line.capacity_mw))
                rows.append(m.add_constraint(
                    names.c_fcap_lo(line.id, t), [(f, -1.0)], LE,
                    line.capacity_mw))
                rows.append(m.add_constraint(
                    names.c_dcflow(line.id, t),
                    [(f, 1.0), (th_hi, -b), (th_lo, b)], EQ, 0.0))
            else:
                z = vx.ze[line.id]
                big_m = line_big_m(line)
                rows.append(m.add_constraint(
                    names.c_fcap_hi(line.id, t),
                    [(f, 1.0), (z, -line.capacity_mw)], LE, 0.0))
                rows.append(m.add_constraint(
                    names.c_fcap_lo(line.id, t),
                    [(f, -1.0), (z, -line.capacity_mw)], LE, 0.0))
                rows.append(m.add_constraint(
                    names.c_dcdev_hi(line.id, t),
                    [(f, 1.0), (th_hi, -b), (th_lo, b), (z, big_m)], LE, big_m))
                rows.append(m.add_constraint(
                    names.c_dcdev_lo(line.id, t),
                    [(f, -1.0), (th_hi, b), (th_lo, -b), (z, big_m)], LE, big_m))
    for t in grid.hours_e:
        rows.append(m.add_constraint(
            names.c_refangle(t), [(vx.theta[(ref, t)], 1.0)], EQ, 0.0))
    return rows


def add_storage(ctx: BuildContext) -> list[int]:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    rows = []
    for node in sys_.power_nodes:
        for st in active_storage(sc, sys_, node):
            n, r = node.id, st.id
            keep = 1.0 - st.hourly_self_discharge
            keep_day = 1.0 - 24.0 * st.hourly_self_discharge
            for tau in grid.rep_days:
                t0 = grid.t_start[tau]
                t1 = grid.t_end[tau]
                # day wrap: start-of-day level follows from end-of-day level,
                # minus any inter-day carryover for long-duration storage
                terms = [(vx.slev[(n, t0, r)], 1.0),
                         (vx.slev[(n, t1, r)], -keep),
                         (vx.sch[(n, t0, r)], -st.charge_eff),
                         (vx.sdis[(n, t0, r)], 1.0 / st.discharge_eff)]
                if st.is_long_duration:
                    terms.append((vx.srem[(n, tau, r)], keep))
                rows.append(m.add_constraint(
                    names.c_sbal(n, t0, r), terms, EQ, 0.0))
                for t in range(t0 + 1, t1 + 1):
                    rows.append(m.add_constraint(
                        names.c_sbal(n, t, r),
                        [(vx.slev[(n, t, r)], 1.0),
                         (vx.slev[(n, t - 1, r)], -keep),
                         (vx.sch[(n, t, r)], -st.charge_eff),
                         (vx.sdis[(n, t, r)], 1.0 / st.discharge_eff)],
                        EQ, 0.0))
            for t in grid.hours_e:
                rows.append(m.add_constraint(
                    names.c_chcap(n, t, r),
                    [(vx.sch[(n, t, r)], 1.0), (vx.ycd[(n, r)], -1.0)], LE, 0.0))
                rows.append(m.add_constraint(
                    names.c_discap(n, t, r),
                    [(vx.sdis[(n, t, r)], 1.0), (vx.ycd[(n, r)], -1.0)], LE, 0.0))
                rows.append(m.add_constraint(
                    names.c_levcap(n, t, r),
                    [(vx.slev[(n, t, r)], 1.0), (vx.ylev[(n, r)], -1.0)], LE, 0.0))
            if not st.is_long_duration:
                continue
            # inter-day chain over the full calendar, wrapping the year
            for day in range(1, DAYS_PER_YEAR + 1):
                nxt = day % DAYS_PER_YEAR + 1
                rows.append(m.add_constraint(
                    names.c_sday_chain(n, day, r),
                    [(vx.sday[(n, nxt, r)], 1.0),
                     (vx.sday[(n, day, r)], -keep_day),
                     (vx.srem[(n, grid.rep_of(day), r)], -1.0)],
                    EQ, 0.0))
            for tau in grid.rep_days:
                rows.append(m.add_constraint(
                    names.c_sday_anchor(n, tau, r),
                    [(vx.sday[(n, tau, r)], 1.0),
                     (vx.slev[(n, grid.t_end[tau], r)], -1.0),
                     (vx.srem[(n, tau, r)], 1.0)],
                    EQ, 0.0))
    return rows


def add_rps(ctx: BuildContext) -> list[int]:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    demand = ctx.demand
    terms = []
    total_demand = 0.0
    for node in sys_.power_nodes:
        elec = demand.elec[node.id]
        for t in grid.hours_e:
            w = float(grid.weights[t])
            total_demand += w * float(elec[grid.source_index(t)])
            for plant in sys_.plants_at(node):
                if plant.is_vre:
                    terms.append((vx.p[(node.id, t, plant.id)], w))
    return [m.add_constraint(names.C_RPS, terms, GE,
                             sc.rps_level * total_demand)]


def add_resource_limits(ctx: BuildContext) -> list[int]:
    m, sys_ = ctx.model, ctx.system
    vx = ctx.vars
    rows = []
    for cls, members in sys_.resource_classes().items():
        terms = []
        for node in sys_.power_nodes:
            for plant in members:
                key = (node.id, plant.id)
                if key in vx.xop:
                    terms.append((vx.xop[key], plant.nameplate_mw))
        if terms:
            rows.append(m.add_constraint(
                names.c_resource(cls), terms, LE, sys_.resource_limits[cls]))
    return rows


def add_ccs(ctx: BuildContext) -> list[int]:
    m, sys_, grid, sc = ctx.model, ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    if not has_ccs_vars(sys_):
        return []
    eta_g = sc.emission_factor
    rows = []
    cap_terms = []
    for node in sys_.power_nodes:
        ccs_plants = [pl for pl in sys_.plants_at(node) if pl.has_ccs]
        for t in grid.hours_e:
            kc = vx.kcapt[(node.id, t)]
            terms = [(kc, 1.0)]
            for plant in ccs_plants:
                coef = eta_g * plant.capture_rate * plant.heat_rate_mmbtu_per_mwh
                terms.append((vx.p[(node.id, t, plant.id)], -coef))
            rows.append(m.add_constraint(
                names.c_ccs_capt(node.id, t), terms, EQ, 0.0))
            rows.append(m.add_constraint(
                names.c_ccs_pipe(node.id, t),
                [(kc, 1.0), (vx.kpipe[node.id], -1.0)], LE, 0.0))
            cap_terms.append((kc, float(grid.weights[t])))
    rows.append(m.add_constraint(
        names.C_CCS_CAP, cap_terms, LE, sys_.ccs_params.annual_storage_cap_tons))
    return rows


def power_objective_terms(ctx: BuildContext):
    sys_, grid, sc = ctx.system, ctx.grid, ctx.scenario
    vx = ctx.vars
    omega = sc.discount_rate
    terms: list[tuple[int, float]] = []
    for node in sys_.power_nodes:
        for plant in sys_.plants_at(node):
            key = (node.id, plant.id)
            if not plant.is_existing:
                terms.append((vx.xest[key],
                              effective_plant_capex(plant, node, omega)))
            terms.append((vx.xop[key], plant.fom_per_plant))
            if not plant.non_retirable and plant.decom_cost_per_plant:
                terms.append((vx.xdec[key],
                              annualize(plant.decom_cost_per_plant,
                                        plant.lifetime_years, omega)))
            uses_priced_fuel = plant.fuel == "uranium"
            for t in grid.hours_e:
                w = float(grid.weights[t])
                pv = vx.p[(node.id, t, plant.id)]
                coef = w * plant.vom_per_mwh
                if uses_priced_fuel:
                    coef += w * plant.fuel_price * plant.heat_rate_mmbtu_per_mwh
                if coef:
                    terms.append((pv, coef))
                if plant.is_thermal_uc and plant.startup_cost:
                    terms.append((vx.ucup[(node.id, t, plant.id)],
                                  w * plant.startup_cost))
        for st in active_storage(sc, sys_, node):
            terms.append((vx.ycd[(node.id, st.id)],
                          annualize(st.power_capex_per_mw, st.lifetime_years,
                                    omega) + st.power_fom_per_mw_yr))
            terms.append((vx.ylev[(node.id, st.id)],
                          annualize(st.energy_capex_per_mwh, st.lifetime_years,
                                    omega) + st.energy_fom_per_mwh_yr))
        for t in grid.hours_e:
            terms.append((vx.ae[(node.id, t)],
                          float(grid.weights[t]) * sc.elec_shed_cost))
    for line in sys_.transmission_lines:
        if not line.is_existing:
            terms.append((vx.ze[line.id],
                          annualize(line.capex, sc.line_lifetime_years, omega)))
    if has_ccs_vars(sys_):
        ccs = sys_.ccs_params
        for node in sys_.power_nodes:
            terms.append((vx.kpipe[node.id],
                          node.co2_site_distance_miles *
                          ccs.pipe_capex_per_mile_ton))
            for t in grid.hours_e:
                terms.append((vx.kcapt[(node.id, t)],
                              float(grid.weights[t]) * ccs.storage_cost_per_ton))
    return terms, 0.0
