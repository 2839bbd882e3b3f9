"""Shared micro fixtures: hand-sized systems whose optima can be certified by
enumeration, used across builder, audit, report, and acceptance tests."""

import numpy as np
import pytest

from gridgas.scenario import DemandSet, Scenario
from gridgas.timegrid import DAYS_PER_YEAR, HOURS_PER_YEAR, TimeGrid
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


def plant(pid, **kw):
    base = dict(id=pid, is_existing=False, fuel="none", is_vre=False,
                is_thermal_uc=False, has_ccs=False, nameplate_mw=100.0)
    base.update(kw)
    return PlantType(**base)


def li_ion(**kw):
    base = dict(id="liion", is_long_duration=False, energy_capex_per_mwh=10.0,
                power_capex_per_mw=20.0, charge_eff=0.92, discharge_eff=0.92,
                hourly_self_discharge=0.0, lifetime_years=15)
    base.update(kw)
    return StorageType(**base)


def metal_air(**kw):
    base = dict(id="metalair", is_long_duration=True, energy_capex_per_mwh=1.0,
                power_capex_per_mw=50.0, charge_eff=0.7, discharge_eff=0.59,
                hourly_self_discharge=0.0, lifetime_years=25)
    base.update(kw)
    return StorageType(**base)


def flat(value, length=HOURS_PER_YEAR):
    return np.full(length, float(value))


def two_day_grid():
    day_of = np.where(np.arange(1, DAYS_PER_YEAR + 1) <= 182, 1, 183)
    day_of[0] = 1
    day_of[182] = 183
    return TimeGrid(day_of)


def day_night_profile(peak_mw, length=HOURS_PER_YEAR):
    hours = np.arange(length)
    return peak_mw * (0.6 + 0.4 * np.sin(2 * np.pi * ((hours % 24) - 6) / 24.0))


def solar_cf(length=HOURS_PER_YEAR):
    hours = np.arange(length) % 24
    cf = np.clip(np.sin(np.pi * (hours - 6) / 12.0), 0.0, 1.0)
    return cf


def scenario_defaults(**kw):
    base = dict(
        name="micro",
        emissions_scope="joint",
        lcdf_enabled=False,
        ldes_enabled=False,
        zeta=0.8,
        emissions_budget_tons=1e9,   # slack unless a fixture tightens it
        rps_level=0.0,
        ng_price=5.45,
        lcdf_price=20.0,
        elec_shed_cost=10_000.0,
        gas_shed_cost=1_000.0,
        discount_rate=0.071,
        max_new_per_type=1,
    )
    base.update(kw)
    return base


def nuclear_island(load_mw=100.0):
    """One node, one existing must-run-capable nuclear unit, trivial gas side."""
    nuke = plant("nuke", is_existing=True, fuel="uranium", is_thermal_uc=True,
                 nameplate_mw=200.0, min_stable_frac=0.3, ramp_frac=0.25,
                 heat_rate_mmbtu_per_mwh=10.6, fuel_price=0.72,
                 fom_per_plant=1000.0, vom_per_mwh=2.0, startup_cost=50.0,
                 decom_cost_per_plant=500.0)
    system = EnergySystem(
        power_nodes=[PowerNode(id="N1", existing_plant_counts={"nuke": 1})],
        transmission_lines=[],
        plant_types=[nuke],
        storage_types=[],
        ng_nodes=[NgNode(id="G1", injection_cap_mmbtu_per_day=0.0)],
        pipelines=[],
        svl_nodes=[],
    )
    demand = DemandSet(elec={"N1": flat(load_mw)},
                       gas={"G1": flat(0.0, DAYS_PER_YEAR)})
    sc = Scenario(demand=demand, **scenario_defaults())
    return system, TimeGrid.single_day(1), sc


def wind_line():
    """Windy cheap node, loaded far node, one candidate line to arbitrate."""
    wind = plant("wind", is_vre=True, nameplate_mw=50.0, capex_per_plant=2e4,
                 fom_per_plant=100.0, resource_class="onshore")
    ct = plant("ct", fuel="gas_fired", is_thermal_uc=True, nameplate_mw=80.0,
               min_stable_frac=0.2, ramp_frac=1.0,
               heat_rate_mmbtu_per_mwh=9.72, capex_per_plant=4e4,
               fom_per_plant=200.0, vom_per_mwh=5.0, startup_cost=10.0)
    system = EnergySystem(
        power_nodes=[
            PowerNode(id="N1", existing_plant_counts={"wind": 0},
                      adjacent_gas_nodes=("G1",)),
            PowerNode(id="N2", existing_plant_counts={"ct": 0},
                      adjacent_gas_nodes=("G1",),
                      regional_capex_multiplier={"ct": 1.3}),
        ],
        transmission_lines=[
            TransmissionLine(id="L1", node_a="N1", node_b="N2",
                             is_existing=False, capacity_mw=60.0,
                             susceptance=10.0, length_miles=50.0, capex=5e4),
        ],
        plant_types=[wind, ct],
        storage_types=[],
        ng_nodes=[NgNode(id="G1", injection_cap_mmbtu_per_day=1e5,
                         adjacent_power_nodes=("N1", "N2"))],
        pipelines=[],
        svl_nodes=[],
        resource_limits={"onshore": 100.0},
    )
    cf = solar_cf() * 0.0 + 0.6  # steady wind
    demand = DemandSet(
        elec={"N1": flat(5.0), "N2": flat(40.0)},
        gas={"G1": flat(100.0, DAYS_PER_YEAR)},
        cf={"N1": {"wind": cf}, "N2": {}},
    )
    sc = Scenario(demand=demand, **scenario_defaults())
    return system, TimeGrid.single_day(1), sc


def gas_chain(candidate_pipe=True, lcdf=False, budget=None):
    """Two gas nodes in a line feeding one power node with a gas turbine."""
    ocgt = plant("ocgt", fuel="gas_fired", is_thermal_uc=True,
                 nameplate_mw=120.0, min_stable_frac=0.1, ramp_frac=1.0,
                 heat_rate_mmbtu_per_mwh=9.72, capex_per_plant=3e4,
                 fom_per_plant=500.0, vom_per_mwh=5.0, startup_cost=20.0)
    pipes = [Pipeline(id="P1", from_node="G1", to_node="G2", is_existing=True,
                      capacity_mmbtu_per_day=3e4)]
    if candidate_pipe:
        pipes.append(Pipeline(id="P2", from_node="G1", to_node="G2",
                              is_existing=False, capacity_mmbtu_per_day=3e4,
                              length_miles=10.0, capex=6e4))
    system = EnergySystem(
        power_nodes=[PowerNode(id="N1", existing_plant_counts={"ocgt": 0},
                               adjacent_gas_nodes=("G2",))],
        transmission_lines=[],
        plant_types=[ocgt],
        storage_types=[],
        ng_nodes=[
            NgNode(id="G1", injection_cap_mmbtu_per_day=8e4),
            NgNode(id="G2", injection_cap_mmbtu_per_day=0.0,
                   adjacent_power_nodes=("N1",)),
        ],
        pipelines=pipes,
        svl_nodes=[],
    )
    demand = DemandSet(
        elec={"N1": flat(60.0)},
        gas={"G1": flat(200.0, DAYS_PER_YEAR), "G2": flat(5_000.0, DAYS_PER_YEAR)},
    )
    sc = Scenario(demand=demand, **scenario_defaults(
        lcdf_enabled=lcdf,
        emissions_budget_tons=budget if budget is not None else 1e9,
    ))
    return system, TimeGrid.single_day(1), sc


def ccs_cap_fixture():
    """Gas plant with and without capture under a binding emissions cap."""
    ccgt = plant("ccgt", fuel="gas_fired", is_thermal_uc=True,
                 nameplate_mw=150.0, min_stable_frac=0.0, ramp_frac=1.0,
                 heat_rate_mmbtu_per_mwh=6.36, capex_per_plant=2e4,
                 fom_per_plant=300.0, vom_per_mwh=2.0)
    ccs = plant("ccgt_ccs", fuel="gas_fired", is_thermal_uc=True, has_ccs=True,
                nameplate_mw=150.0, min_stable_frac=0.0, ramp_frac=1.0,
                heat_rate_mmbtu_per_mwh=7.16, capture_rate=0.9,
                capex_per_plant=5e4, fom_per_plant=600.0, vom_per_mwh=6.0)
    system = EnergySystem(
        power_nodes=[PowerNode(id="N1",
                               existing_plant_counts={"ccgt": 0, "ccgt_ccs": 0},
                               adjacent_gas_nodes=("G1",),
                               co2_site_distance_miles=200.0)],
        transmission_lines=[],
        plant_types=[ccgt, ccs],
        storage_types=[],
        ng_nodes=[NgNode(id="G1", injection_cap_mmbtu_per_day=1e6,
                         adjacent_power_nodes=("N1",))],
        pipelines=[],
        svl_nodes=[],
        ccs_params=CcsParams(annual_storage_cap_tons=1e7,
                             pipe_capex_per_mile_ton=0.0196,
                             storage_cost_per_ton=0.13,
                             pipe_elec_mwh_per_mile_ton_h=3.65e-9,
                             pump_elec_mwh_per_ton_h=4.78e-7,
                             compressor_spacing_miles=3.3),
    )
    demand = DemandSet(elec={"N1": flat(100.0)},
                       gas={"G1": flat(1_000.0, DAYS_PER_YEAR)})
    sc = Scenario(demand=demand, **scenario_defaults(
        emissions_budget_tons=1.8e5))
    return system, TimeGrid.single_day(1), sc


def svl_store_fixture(ldes=False, boiloff=0.0):
    """Seasonal gas demand met through liquefied storage; optional inter-day
    electric storage alongside solar."""
    solar = plant("solar", is_vre=True, nameplate_mw=50.0, capex_per_plant=1e4,
                  fom_per_plant=50.0)
    ocgt = plant("ocgt", fuel="gas_fired", is_thermal_uc=True,
                 nameplate_mw=100.0, min_stable_frac=0.0, ramp_frac=1.0,
                 heat_rate_mmbtu_per_mwh=9.72, capex_per_plant=3e4,
                 fom_per_plant=400.0, vom_per_mwh=5.0)
    storage = [li_ion(), metal_air()]
    system = EnergySystem(
        power_nodes=[PowerNode(id="N1",
                               existing_plant_counts={"solar": 0, "ocgt": 0},
                               adjacent_gas_nodes=("G1",))],
        transmission_lines=[],
        plant_types=[solar, ocgt],
        storage_types=storage,
        ng_nodes=[NgNode(id="G1", injection_cap_mmbtu_per_day=2_000.0,
                         adjacent_svl_nodes=("S1",),
                         adjacent_power_nodes=("N1",))],
        pipelines=[],
        svl_nodes=[SvlNode(id="S1", storage_cap_mmbtu=5e5,
                           vapor_cap_mmbtu_per_day=5e4,
                           liq_cap_mmbtu_per_day=5e4,
                           storage_capex_per_mmbtu=1.0, vapor_capex=2.0,
                           storage_fom=0.01, vapor_fom=0.02,
                           liq_charge_eff=1.0, vapor_discharge_eff=0.989,
                           boiloff_daily=boiloff)],
    )
    days = np.arange(DAYS_PER_YEAR)
    gas_demand = 1_000.0 + 800.0 * (days >= 300)  # late-year surge
    demand = DemandSet(
        elec={"N1": day_night_profile(40.0)},
        gas={"G1": gas_demand.astype(float)},
        cf={"N1": {"solar": solar_cf()}},
    )
    sc = Scenario(demand=demand, **scenario_defaults(
        ldes_enabled=ldes, ldes_type="metalair" if ldes else None))
    return system, two_day_grid(), sc


MICRO_FIXTURES = {
    "nuclear_island": nuclear_island,
    "wind_line": wind_line,
    "gas_chain": gas_chain,
    "ccs_cap": ccs_cap_fixture,
    "svl_store": svl_store_fixture,
}


@pytest.fixture
def micro(request):
    return MICRO_FIXTURES[request.param]()
