"""Scenario assembly: demand profiles, prices, emissions budgets, policy
levels, and the technology/case flags that select model variants.

A scenario owns everything that changes between runs on a fixed topology:
the demand set, the emissions accounting scope and budget, fuel prices,
penalty costs, and which optional technologies (drop-in fuel, inter-day
storage) are available.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from gridgas.timegrid import DAYS_PER_YEAR, HOURS_PER_YEAR
from gridgas.topology import EnergySystem, SchemaViolation

POWER_ONLY = "power_only"
JOINT = "joint"

BUDGET_TABLE = "table"          # zeta * baseline, rounded to 3 significant digits
BUDGET_COMPLEMENT = "complement"  # (1 - zeta) * baseline, unrounded

CASES = ("C1", "C2", "C3", "C3a", "C3b")


class EmptyGrid(ValueError):
    pass


class NegativeResult(ValueError):
    pass


@dataclass(eq=False)
class DemandSet:
    """Exogenous demand and renewable availability profiles.

    elec: power node -> hourly demand over the year [MWh]
    gas:  gas node -> daily demand over the year [MMBtu]
    cf:   power node -> plant type -> hourly capacity factor in [0, 1]
    """

    elec: dict[str, np.ndarray]
    gas: dict[str, np.ndarray]
    cf: dict[str, dict[str, np.ndarray]] = field(default_factory=dict)

    def __post_init__(self):
        self.elec = {n: np.asarray(v, dtype=float) for n, v in self.elec.items()}
        self.gas = {k: np.asarray(v, dtype=float) for k, v in self.gas.items()}
        self.cf = {n: {p: np.asarray(v, dtype=float) for p, v in by_plant.items()}
                   for n, by_plant in self.cf.items()}
        for node, series in self.elec.items():
            if series.shape != (HOURS_PER_YEAR,):
                raise ValueError(f"elec demand for {node}: need {HOURS_PER_YEAR} hours")
            if (series < 0).any():
                raise ValueError(f"elec demand for {node}: negative values")
        for node, series in self.gas.items():
            if series.shape != (DAYS_PER_YEAR,):
                raise ValueError(f"gas demand for {node}: need {DAYS_PER_YEAR} days")
            if (series < 0).any():
                raise ValueError(f"gas demand for {node}: negative values")
        for node, by_plant in self.cf.items():
            for plant, series in by_plant.items():
                if series.shape != (HOURS_PER_YEAR,):
                    raise ValueError(f"cf for {node}/{plant}: need hourly profile")
                if (series < 0).any() or (series > 1).any():
                    raise ValueError(f"cf for {node}/{plant}: outside [0, 1]")

    @property
    def total_elec_mwh(self) -> float:
        return float(sum(v.sum() for v in self.elec.values()))

    @property
    def total_gas_mmbtu(self) -> float:
        return float(sum(v.sum() for v in self.gas.values()))

    def cf_profile(self, node: str, plant: str) -> np.ndarray | None:
        return self.cf.get(node, {}).get(plant)

    def validate_for(self, system: EnergySystem) -> None:
        for node in system.power_nodes:
            if node.id not in self.elec:
                raise ValueError(f"no electric demand for node {node.id}")
            for plant in system.plants_at(node):
                if plant.is_vre and self.cf_profile(node.id, plant.id) is None:
                    raise ValueError(
                        f"no capacity-factor profile for {node.id}/{plant.id}")
        for gnode in system.ng_nodes:
            if gnode.id not in self.gas:
                raise ValueError(f"no gas demand for node {gnode.id}")

    def digest(self) -> str:
        h = hashlib.sha256()
        for node in sorted(self.elec):
            h.update(node.encode())
            h.update(np.ascontiguousarray(self.elec[node]).tobytes())
        for node in sorted(self.gas):
            h.update(node.encode())
            h.update(np.ascontiguousarray(self.gas[node]).tobytes())
        for node in sorted(self.cf):
            for plant in sorted(self.cf[node]):
                h.update(f"{node}/{plant}".encode())
                h.update(np.ascontiguousarray(self.cf[node][plant]).tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class Scenario:
    """One solvable configuration of the planning problem."""

    name: str = "base"
    emissions_scope: str = JOINT
    lcdf_enabled: bool = True
    ldes_enabled: bool = False
    ldes_type: str | None = None
    zeta: float = 0.80
    emissions_budget_tons: float | None = None   # explicit override
    baseline_e_tons: float = 43.9e6
    baseline_g_tons: float = 23.6e6
    budget_rule: str = BUDGET_TABLE
    rps_level: float = 0.5
    ng_price: float = 5.45              # $/MMBtu
    lcdf_price: float = 20.0            # $/MMBtu
    elec_shed_cost: float = 10_000.0    # $/MWh; must dominate all supply costs
    gas_shed_cost: float = 1_000.0      # $/MMBtu
    emission_factor: float = 0.053      # ton CO2 per MMBtu of fossil gas
    discount_rate: float = 0.071
    line_lifetime_years: int = 30
    pipeline_lifetime_years: int = 30
    svl_lifetime_years: int = 30
    max_new_per_type: int | None = None
    svl_liq_cap_strict: bool = False
    demand: DemandSet | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError(f"zeta outside [0, 1]: {self.zeta}")
        if self.emissions_scope not in (POWER_ONLY, JOINT):
            raise ValueError(f"unknown emissions scope {self.emissions_scope!r}")
        for attr in ("ng_price", "lcdf_price", "elec_shed_cost", "gas_shed_cost",
                     "emission_factor", "rps_level"):
            if getattr(self, attr) < 0:
                raise ValueError(f"{attr} must be >= 0")
        if self.emissions_budget_tons is not None and self.emissions_budget_tons <= 0:
            raise ValueError("emissions budget must be > 0")

    def budget(self) -> float:
        return emissions_budget(self.emissions_scope, self.zeta,
                                self.baseline_e_tons, self.baseline_g_tons,
                                override=self.emissions_budget_tons,
                                rule=self.budget_rule)

    def to_config(self) -> dict:
        data = asdict(self)
        data.pop("demand")
        return data

    @classmethod
    def from_config(cls, data: dict, demand: DemandSet | None = None) -> "Scenario":
        known = {f for f in cls.__dataclass_fields__ if f != "demand"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
        return cls(demand=demand, **data)

    def digest(self) -> str:
        h = hashlib.sha256(json.dumps(self.to_config(), sort_keys=True).encode())
        if self.demand is not None:
            h.update(self.demand.digest().encode())
        return h.hexdigest()


def _round_sig(x: float, digits: int = 3) -> float:
    if x == 0:
        return 0.0
    exp = math.floor(math.log10(abs(x)))
    scale = 10.0 ** (exp - digits + 1)
    return round(x / scale) * scale


def emissions_budget(scope: str, zeta: float, baseline_e_tons: float,
                     baseline_g_tons: float, override: float | None = None,
                     rule: str = BUDGET_TABLE) -> float:
    """CO2 budget in tons for a reduction goal against the 1990 baselines.

    The default "table" rule is zeta times the applicable baseline, rounded
    to three significant digits so the published per-goal budgets are
    reproduced exactly. The printed-formula alternative (1 - zeta) times the
    baseline is available as the "complement" rule; the two disagree and are
    deliberately not reconciled here.
    """
    if override is not None:
        return override
    base = baseline_e_tons if scope == POWER_ONLY else baseline_e_tons + baseline_g_tons
    if rule == BUDGET_TABLE:
        return _round_sig(zeta * base)
    if rule == BUDGET_COMPLEMENT:
        return (1.0 - zeta) * base
    raise ValueError(f"unknown budget rule {rule!r}")


def apply_case(scenario: Scenario, case: str, ldes_low_type: str | None = None,
               ldes_high_type: str | None = None) -> Scenario:
    """Return a copy of the scenario with one of the standard technology/policy
    case presets applied (emissions scope, drop-in fuel, inter-day storage)."""
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    flags = {
        "C1": dict(emissions_scope=POWER_ONLY, lcdf_enabled=False,
                   ldes_enabled=False, ldes_type=None),
        "C2": dict(emissions_scope=JOINT, lcdf_enabled=False,
                   ldes_enabled=False, ldes_type=None),
        "C3": dict(emissions_scope=JOINT, lcdf_enabled=True,
                   ldes_enabled=False, ldes_type=None),
        "C3a": dict(emissions_scope=JOINT, lcdf_enabled=True,
                    ldes_enabled=True, ldes_type=ldes_low_type),
        "C3b": dict(emissions_scope=JOINT, lcdf_enabled=True,
                    ldes_enabled=True, ldes_type=ldes_high_type),
    }[case]
    return replace(scenario, name=case, **flags)


def build_he_from_bau(bau: DemandSet, elec_heating_delta: dict[str, np.ndarray],
                      gas_heating_share: dict[str, np.ndarray]) -> DemandSet:
    """Derive a high-electrification demand set from the baseline one.

    Hourly electric load grows by the heating delta; daily gas load shrinks by
    the per-node displaced heating share. Capacity factors are unchanged.
    """
    elec = {}
    for node, series in bau.elec.items():
        delta = np.asarray(elec_heating_delta.get(node, 0.0), dtype=float)
        if (delta < 0).any():
            raise NegativeResult(f"heating delta for {node} must be >= 0")
        elec[node] = series + delta
    gas = {}
    for node, series in bau.gas.items():
        share = np.asarray(gas_heating_share.get(node, 0.0), dtype=float)
        if (share < 0).any() or (share > 1).any():
            raise NegativeResult(f"heating share for {node} must lie in [0, 1]")
        gas[node] = series * (1.0 - share)
    return DemandSet(elec=elec, gas=gas, cf=bau.cf)


def sensitivity_grid(base: Scenario, ng_prices, lcdf_prices) -> list[Scenario]:
    """Cartesian product of fuel-price levels, everything else unchanged."""
    ng_prices = list(ng_prices)
    lcdf_prices = list(lcdf_prices)
    if not ng_prices or not lcdf_prices:
        raise EmptyGrid("both price lists must be non-empty")
    grid = []
    for ng in ng_prices:
        for lcdf in lcdf_prices:
            grid.append(replace(base, name=f"{base.name}_ng{ng:g}_lcdf{lcdf:g}",
                                ng_price=float(ng), lcdf_price=float(lcdf)))
    return grid


# ----------------------------------------------------------------- demand I/O

def load_demand(system: EnergySystem, elec_csv: str | Path, gas_csv: str | Path,
                cf_csv: str | Path) -> DemandSet:
    """Read demand/availability profiles from the documented CSV schemas:
    elec (node,hour,mwh), gas (node,day,mmbtu), cf (node,plant_type,hour,factor).
    Hours and days are 1-based and must be complete per node."""
    elec: dict[str, np.ndarray] = {}
    for row, rowno in _iter_csv(elec_csv, ("node", "hour", "mwh")):
        series = elec.setdefault(row["node"], np.full(HOURS_PER_YEAR, np.nan))
        series[int(row["hour"]) - 1] = float(row["mwh"])
    gas: dict[str, np.ndarray] = {}
    for row, rowno in _iter_csv(gas_csv, ("node", "day", "mmbtu")):
        series = gas.setdefault(row["node"], np.full(DAYS_PER_YEAR, np.nan))
        series[int(row["day"]) - 1] = float(row["mmbtu"])
    cf: dict[str, dict[str, np.ndarray]] = {}
    for row, rowno in _iter_csv(cf_csv, ("node", "plant_type", "hour", "factor")):
        by_plant = cf.setdefault(row["node"], {})
        series = by_plant.setdefault(row["plant_type"],
                                     np.full(HOURS_PER_YEAR, np.nan))
        series[int(row["hour"]) - 1] = float(row["factor"])
    for name, mapping in (("elec", elec), ("gas", gas)):
        for node, series in mapping.items():
            if np.isnan(series).any():
                raise ValueError(f"{name} profile for {node} is incomplete")
    for node, by_plant in cf.items():
        for plant, series in by_plant.items():
            if np.isnan(series).any():
                raise ValueError(f"cf profile for {node}/{plant} is incomplete")
    demand = DemandSet(elec=elec, gas=gas, cf=cf)
    demand.validate_for(system)
    return demand


def save_demand(demand: DemandSet, elec_csv: str | Path, gas_csv: str | Path,
                cf_csv: str | Path) -> None:
    with open(elec_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("node", "hour", "mwh"))
        for node in sorted(demand.elec):
            for hour, value in enumerate(demand.elec[node], start=1):
                writer.writerow((node, hour, repr(float(value))))
    with open(gas_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("node", "day", "mmbtu"))
        for node in sorted(demand.gas):
            for day, value in enumerate(demand.gas[node], start=1):
                writer.writerow((node, day, repr(float(value))))
    with open(cf_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("node", "plant_type", "hour", "factor"))
        for node in sorted(demand.cf):
            for plant in sorted(demand.cf[node]):
                for hour, value in enumerate(demand.cf[node][plant], start=1):
                    writer.writerow((node, plant, hour, repr(float(value))))


def _iter_csv(path: str | Path, columns: tuple[str, ...]):
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        if set(header) != set(columns):
            raise SchemaViolation(path.name, 1,
                                  f"expected columns {columns}, got {header}")
        for rowno, row in enumerate(reader, start=2):
            if any(v is None or v == "" for v in row.values()):
                raise SchemaViolation(path.name, rowno, "incomplete row")
            yield row, rowno
