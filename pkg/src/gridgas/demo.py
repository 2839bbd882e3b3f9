"""Synthetic six-state demo system.

A fully self-contained data set shaped like the tool's target use case: six
power nodes with an existing fleet plus seven candidate technologies, a
meshed transmission network (23 existing, 7 candidate lines), an 18-node gas
network (28 existing, 36 candidate pipelines), and seven liquefied-gas
storage sites. Demand, wind, and solar profiles are generated from seeded
sinusoids with noise. Useful for demos, scaling tests, and CLI smoke runs;
the numbers are representative, not a calibrated regional data set.
"""

from __future__ import annotations

import numpy as np

from gridgas.scenario import DemandSet
from gridgas.timegrid import DAYS_PER_YEAR, HOURS_PER_YEAR
from gridgas.topology import (
    CcsParams,
    EnergySystem,
    NgNode,
    Pipeline,
    PlantType,
    PowerNode,
    StorageType,
    SvlNode,
    TransmissionLine,
)

STATES = ("CT", "MA", "ME", "NH", "RI", "VT")

# existing fleet capacity per state in MW (converted to unit counts below)
EXISTING_MW = {
    "CT": {"ng": 4375, "solar": 12, "wind": 5, "nuclear": 1888},
    "MA": {"ng": 1763, "solar": 3, "wind": 40, "hydro": 0},
    "ME": {"wind": 629, "hydro": 529},
    "NH": {"ng": 1808, "wind": 78, "hydro": 349, "nuclear": 1226},
    "RI": {"ng": 6667, "solar": 369, "wind": 65, "hydro": 1432, "nuclear": 617},
    "VT": {"solar": 61, "wind": 111, "hydro": 199},
}

REGIONAL_MULTIPLIERS = {
    "CT": {"ocgt": 1.25, "ccgt": 1.3, "ccgt_ccs": 1.3, "solar_upv": 1.15,
           "wind_new": 1.4, "wind_offshore": 1.1, "nuclear_new": 1.1},
    "MA": {"ocgt": 1.1, "ccgt": 1.1, "ccgt_ccs": 1.1, "solar_upv": 1.05,
           "wind_new": 1.35, "wind_offshore": 1.1, "nuclear_new": 1.05},
    "ME": {"ocgt": 1.25, "ccgt": 1.3, "ccgt_ccs": 1.3, "solar_upv": 1.1,
           "wind_new": 1.35, "wind_offshore": 1.1, "nuclear_new": 1.1},
    "NH": {"ocgt": 1.1, "ccgt": 1.1, "ccgt_ccs": 1.1, "solar_upv": 1.05,
           "wind_new": 1.35, "wind_offshore": 1.1, "nuclear_new": 1.05},
    "RI": {"ocgt": 1.2, "ccgt": 1.25, "ccgt_ccs": 1.25, "solar_upv": 1.1,
           "wind_new": 1.35, "wind_offshore": 1.1, "nuclear_new": 1.05},
    "VT": {"ocgt": 1.1, "ccgt": 1.1, "ccgt_ccs": 1.1, "solar_upv": 1.05,
           "wind_new": 1.35, "wind_offshore": 1.1, "nuclear_new": 1.05},
}

OFFSHORE_STATES = ("CT", "MA")


def plant_types() -> list[PlantType]:
    return [
        PlantType(id="ng", is_existing=True, fuel="gas_fired", is_vre=False,
                  is_thermal_uc=True, has_ccs=False, nameplate_mw=173.0,
                  min_stable_frac=0.31, ramp_frac=0.96,
                  heat_rate_mmbtu_per_mwh=8.7, fom_per_plant=3.6e6,
                  vom_per_mwh=5.0, startup_cost=4.52e4,
                  decom_cost_per_plant=5.0e6),
        PlantType(id="solar", is_existing=True, fuel="none", is_vre=True,
                  is_thermal_uc=False, has_ccs=False, nameplate_mw=6.3,
                  fom_per_plant=1.45e5, decom_cost_per_plant=4.5e4,
                  resource_class="solar"),
        PlantType(id="wind", is_existing=True, fuel="none", is_vre=True,
                  is_thermal_uc=False, has_ccs=False, nameplate_mw=42.0,
                  fom_per_plant=1.8e6, decom_cost_per_plant=1.0e6,
                  resource_class="onshore_wind"),
        PlantType(id="hydro", is_existing=True, fuel="none", is_vre=True,
                  is_thermal_uc=False, has_ccs=False, nameplate_mw=23.0,
                  fom_per_plant=1.8e6, non_retirable=True),
        PlantType(id="nuclear", is_existing=True, fuel="uranium", is_vre=False,
                  is_thermal_uc=True, has_ccs=False, nameplate_mw=933.0,
                  min_stable_frac=0.42, ramp_frac=0.25,
                  heat_rate_mmbtu_per_mwh=10.6, fom_per_plant=1.4e8,
                  vom_per_mwh=2.0, startup_cost=4.6e4,
                  decom_cost_per_plant=3.0e8, fuel_price=0.72,
                  resource_class="nuclear"),
        PlantType(id="ocgt", is_existing=False, fuel="gas_fired", is_vre=False,
                  is_thermal_uc=True, has_ccs=False, nameplate_mw=237.0,
                  min_stable_frac=0.25, ramp_frac=1.0,
                  heat_rate_mmbtu_per_mwh=9.72, capex_per_plant=1.85e8,
                  fom_per_plant=5.0e6, vom_per_mwh=5.0, startup_cost=8.0e3,
                  lifetime_years=30),
        PlantType(id="ccgt", is_existing=False, fuel="gas_fired", is_vre=False,
                  is_thermal_uc=True, has_ccs=False, nameplate_mw=573.0,
                  min_stable_frac=0.33, ramp_frac=1.0,
                  heat_rate_mmbtu_per_mwh=6.36, capex_per_plant=5.36e8,
                  fom_per_plant=1.55e7, vom_per_mwh=2.0, startup_cost=4.52e4,
                  lifetime_years=30),
        PlantType(id="ccgt_ccs", is_existing=False, fuel="gas_fired",
                  is_vre=False, is_thermal_uc=True, has_ccs=True,
                  nameplate_mw=400.0, min_stable_frac=0.5, ramp_frac=1.0,
                  heat_rate_mmbtu_per_mwh=7.16, capture_rate=0.9,
                  capex_per_plant=8.67e8, fom_per_plant=2.6e7, vom_per_mwh=6.0,
                  startup_cost=3.79e4, lifetime_years=30),
        PlantType(id="solar_upv", is_existing=False, fuel="none", is_vre=True,
                  is_thermal_uc=False, has_ccs=False, nameplate_mw=10.0,
                  capex_per_plant=6.72e6, fom_per_plant=1.5e5,
                  lifetime_years=30, resource_class="solar"),
        PlantType(id="wind_new", is_existing=False, fuel="none", is_vre=True,
                  is_thermal_uc=False, has_ccs=False, nameplate_mw=10.0,
                  capex_per_plant=8.01e6, fom_per_plant=3.5e5,
                  lifetime_years=30, resource_class="onshore_wind"),
        PlantType(id="wind_offshore", is_existing=False, fuel="none",
                  is_vre=True, is_thermal_uc=False, has_ccs=False,
                  nameplate_mw=10.0, capex_per_plant=2.04e7,
                  fom_per_plant=5.22e5, lifetime_years=30,
                  resource_class="offshore_wind"),
        PlantType(id="nuclear_new", is_existing=False, fuel="uranium",
                  is_vre=False, is_thermal_uc=True, has_ccs=False,
                  nameplate_mw=360.0, min_stable_frac=0.5, ramp_frac=0.25,
                  heat_rate_mmbtu_per_mwh=10.46, capex_per_plant=2.21e9,
                  fom_per_plant=5.22e7, vom_per_mwh=2.0, startup_cost=4.6e4,
                  fuel_price=0.72, lifetime_years=30,
                  resource_class="nuclear"),
    ]


def storage_types() -> list[StorageType]:
    return [
        StorageType(id="liion", is_long_duration=False,
                    energy_capex_per_mwh=129_000.0, power_capex_per_mw=156_000.0,
                    energy_fom_per_mwh_yr=3_220.0, power_fom_per_mw_yr=3_900.0,
                    charge_eff=0.92, discharge_eff=0.92,
                    hourly_self_discharge=2.08e-5, lifetime_years=15),
        StorageType(id="metal_air_low", is_long_duration=True,
                    energy_capex_per_mwh=100.0, power_capex_per_mw=595_000.0,
                    energy_fom_per_mwh_yr=0.0, power_fom_per_mw_yr=14_900.0,
                    charge_eff=0.7, discharge_eff=0.59,
                    hourly_self_discharge=2.08e-5, lifetime_years=25),
        StorageType(id="metal_air_high", is_long_duration=True,
                    energy_capex_per_mwh=3_600.0, power_capex_per_mw=950_000.0,
                    energy_fom_per_mwh_yr=100.0, power_fom_per_mw_yr=23_700.0,
                    charge_eff=0.72, discharge_eff=0.6,
                    hourly_self_discharge=2.08e-5, lifetime_years=25),
    ]


def _unit_counts(plants: list[PlantType]) -> dict[str, dict[str, int]]:
    by_id = {p.id: p for p in plants}
    counts: dict[str, dict[str, int]] = {}
    for state, caps in EXISTING_MW.items():
        counts[state] = {}
        for pid, mw in caps.items():
            counts[state][pid] = int(round(mw / by_id[pid].nameplate_mw))
    return counts


def demo_system(seed: int = 0) -> EnergySystem:
    rng = np.random.default_rng(seed)
    plants = plant_types()
    counts = _unit_counts(plants)
    new_ids = [p.id for p in plants if not p.is_existing]

    ng_ids = [f"g{i:02d}" for i in range(1, 19)]
    svl_ids = [f"s{i}" for i in range(1, 8)]

    # each power node draws from its three nearest gas nodes
    ge_pairs = []
    for idx, state in enumerate(STATES):
        for offset in range(3):
            ge_pairs.append((ng_ids[(3 * idx + offset) % len(ng_ids)], state))
    # each gas node ties to its two nearest storage sites
    gs_pairs = []
    for idx, gid in enumerate(ng_ids):
        gs_pairs.append((gid, svl_ids[idx % len(svl_ids)]))
        gs_pairs.append((gid, svl_ids[(idx + 1) % len(svl_ids)]))

    power_nodes = []
    for idx, state in enumerate(STATES):
        site_counts = dict(counts.get(state, {}))
        for pid in new_ids:
            if pid == "wind_offshore" and state not in OFFSHORE_STATES:
                continue
            site_counts.setdefault(pid, 0)
        power_nodes.append(PowerNode(
            id=state, state=state,
            existing_plant_counts=dict(sorted(site_counts.items())),
            allowed_storage_types=tuple(s.id for s in storage_types()),
            adjacent_gas_nodes=tuple(g for g, n in ge_pairs if n == state),
            regional_capex_multiplier=dict(sorted(
                REGIONAL_MULTIPLIERS[state].items())),
            co2_site_distance_miles=float(rng.integers(200, 420)),
        ))

    lines = []
    pairs = [(a, b) for i, a in enumerate(STATES) for b in STATES[i + 1:]]
    line_no = 0
    # 23 existing lines spread over the state pairs, then 7 candidates
    for idx in range(23):
        a, b = pairs[idx % len(pairs)]
        line_no += 1
        lines.append(TransmissionLine(
            id=f"l{line_no:02d}", node_a=a, node_b=b, is_existing=True,
            capacity_mw=float(rng.integers(400, 1800)),
            susceptance=float(rng.uniform(8.0, 25.0)),
            length_miles=float(rng.integers(40, 220))))
    for idx in range(7):
        a, b = pairs[idx % len(pairs)]
        line_no += 1
        length = float(rng.integers(40, 220))
        capacity = float(rng.integers(500, 1500))
        lines.append(TransmissionLine(
            id=f"l{line_no:02d}", node_a=a, node_b=b, is_existing=False,
            capacity_mw=capacity, susceptance=float(rng.uniform(8.0, 25.0)),
            length_miles=length, capex=3_500.0 * capacity * length))

    ng_nodes = []
    for gid in ng_ids:
        ng_nodes.append(NgNode(
            id=gid,
            injection_cap_mmbtu_per_day=float(rng.integers(2, 9) * 1e5),
            adjacent_svl_nodes=tuple(j for k, j in gs_pairs if k == gid),
            adjacent_power_nodes=tuple(n for k, n in ge_pairs if k == gid),
        ))

    pipelines = []
    pipe_no = 0
    for idx in range(28):
        a = ng_ids[idx % len(ng_ids)]
        b = ng_ids[(idx + 1 + idx // len(ng_ids)) % len(ng_ids)]
        pipe_no += 1
        pipelines.append(Pipeline(
            id=f"p{pipe_no:02d}", from_node=a, to_node=b, is_existing=True,
            capacity_mmbtu_per_day=float(rng.integers(2, 8) * 1e5),
            length_miles=float(rng.integers(20, 140))))
    for idx in range(36):
        a = ng_ids[idx % len(ng_ids)]
        b = ng_ids[(idx + 2) % len(ng_ids)]
        pipe_no += 1
        length = float(rng.integers(20, 140))
        pipelines.append(Pipeline(
            id=f"p{pipe_no:02d}", from_node=a, to_node=b, is_existing=False,
            capacity_mmbtu_per_day=float(rng.integers(2, 8) * 1e5),
            length_miles=length, capex=5.34e6 * length))

    svl_nodes = []
    for idx, sid in enumerate(svl_ids):
        has_liq = idx < 5   # the two import terminals vaporize only
        svl_nodes.append(SvlNode(
            id=sid,
            storage_cap_mmbtu=float(rng.integers(5, 20) * 1e5),
            vapor_cap_mmbtu_per_day=float(rng.integers(1, 5) * 1e5),
            liq_cap_mmbtu_per_day=float(rng.integers(1, 4) * 1e5) if has_liq else 0.0,
            storage_capex_per_mmbtu=729.1, vapor_capex=1818.31,
            storage_fom=3.6, vapor_fom=327.3,
            liq_charge_eff=1.0, vapor_discharge_eff=0.989,
            boiloff_daily=1e-4))

    return EnergySystem(
        power_nodes=power_nodes,
        transmission_lines=lines,
        plant_types=plants,
        storage_types=storage_types(),
        ng_nodes=ng_nodes,
        pipelines=pipelines,
        svl_nodes=svl_nodes,
        ccs_params=CcsParams(
            annual_storage_cap_tons=12.78e6,
            pipe_capex_per_mile_ton=0.0196,
            storage_cost_per_ton=0.13,
            pipe_elec_mwh_per_mile_ton_h=3.65e-9,
            pump_elec_mwh_per_ton_h=4.78e-7,
            compressor_spacing_miles=3.3),
        resource_limits={"solar": 22_000.0, "onshore_wind": 10_000.0,
                         "offshore_wind": 280_000.0, "nuclear": 3_500.0},
    )


def demo_demand(system: EnergySystem, seed: int = 0,
                annual_elec_twh: float = 128.64,
                annual_gas_mmbtu: float = 5.15e7) -> DemandSet:
    """Seeded synthetic profiles: winter-peaking loads with diurnal shape,
    solar by daylight, noisy wind."""
    rng = np.random.default_rng(seed + 1)
    hours = np.arange(HOURS_PER_YEAR)
    day_of_year = hours // 24
    hour_of_day = hours % 24
    seasonal = 1.0 + 0.25 * np.cos(2 * np.pi * day_of_year / DAYS_PER_YEAR)
    diurnal = 1.0 + 0.2 * np.sin(2 * np.pi * (hour_of_day - 8) / 24.0)

    shares = {"CT": 0.26, "MA": 0.40, "ME": 0.08, "NH": 0.10, "RI": 0.07,
              "VT": 0.09}
    elec = {}
    for state in STATES:
        noise = 1.0 + 0.05 * rng.standard_normal(HOURS_PER_YEAR)
        shape = np.clip(seasonal * diurnal * noise, 0.05, None)
        shape *= shares[state] * annual_elec_twh * 1e6 / shape.sum()
        elec[state] = shape

    days = np.arange(DAYS_PER_YEAR)
    gas_seasonal = 1.0 + 0.6 * np.cos(2 * np.pi * days / DAYS_PER_YEAR)
    gas = {}
    weights = rng.dirichlet(np.ones(len(system.ng_nodes)) * 4.0)
    for gnode, w in zip(system.ng_nodes, weights):
        noise = 1.0 + 0.04 * rng.standard_normal(DAYS_PER_YEAR)
        shape = np.clip(gas_seasonal * noise, 0.05, None)
        shape *= w * annual_gas_mmbtu / shape.sum()
        gas[gnode.id] = shape

    solar_shape = np.clip(np.sin(np.pi * (hour_of_day - 6) / 12.0), 0.0, 1.0)
    solar_season = 0.75 + 0.25 * np.cos(2 * np.pi * (day_of_year - 172) / 365.0)
    cf = {}
    for node in system.power_nodes:
        by_plant = {}
        for plant in system.plants_at(node):
            if not plant.is_vre:
                continue
            if "solar" in plant.id:
                profile = solar_shape * solar_season
            elif "hydro" in plant.id:
                profile = np.full(HOURS_PER_YEAR, 0.45)
            else:  # wind classes, stronger in winter
                base = 0.35 if "offshore" not in plant.id else 0.45
                wind_season = 1.0 + 0.3 * np.cos(2 * np.pi * day_of_year / 365.0)
                noise = rng.uniform(0.4, 1.6, HOURS_PER_YEAR)
                profile = np.clip(base * wind_season * noise, 0.0, 1.0)
            by_plant[plant.id] = np.clip(profile, 0.0, 1.0)
        cf[node.id] = by_plant
    return DemandSet(elec=elec, gas=gas, cf=cf)
