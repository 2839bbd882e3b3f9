"""Typed data model for the coupled power-gas-storage network.

All techno-economic inputs live here: plant and storage technologies, power
nodes and transmission lines, gas nodes and pipelines, liquefied-gas storage
sites (storage + vaporization + liquefaction, "SVL"), carbon transport
parameters, and resource availability caps. Loaded systems are validated for
referential closure and treated as immutable afterwards, so they can be
shared across concurrent scenario solves.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

GAS_FIRED = "gas_fired"
URANIUM = "uranium"
NO_FUEL = "none"
_FUELS = (GAS_FIRED, URANIUM, NO_FUEL)


class TopologyError(ValueError):
    pass


class SchemaViolation(TopologyError):
    def __init__(self, file: str, row: int | None, message: str):
        super().__init__(f"{file}:{row if row is not None else '?'}: {message}")
        self.file = file
        self.row = row


class MissingReference(TopologyError):
    pass


class NonPositiveCapacity(TopologyError):
    pass


class NonPositiveRate(TopologyError):
    pass


# --------------------------------------------------------------------- costs

def annualize(capex: float, lifetime_years: float, discount_rate: float) -> float:
    """Annual payment equivalent of an up-front cost over the asset lifetime.

    Uses the standard annuity fraction r / (1 - (1/(1+r))**lifetime).
    """
    if discount_rate <= 0:
        raise NonPositiveRate(f"discount rate must be > 0, got {discount_rate}")
    if lifetime_years < 1:
        raise TopologyError(f"lifetime must be >= 1 year, got {lifetime_years}")
    factor = discount_rate / (1.0 - (1.0 / (1.0 + discount_rate)) ** lifetime_years)
    return capex * factor


def effective_plant_capex(plant: "PlantType", node: "PowerNode",
                          discount_rate: float) -> float:
    """Annualized plant CAPEX scaled by the node's regional cost multiplier."""
    base = annualize(plant.capex_per_plant, plant.lifetime_years, discount_rate)
    return base * node.multiplier(plant.id)


# --------------------------------------------------------------------- types

@dataclass(frozen=True)
class PlantType:
    """One generation technology, existing fleet or candidate build."""

    id: str
    is_existing: bool
    fuel: str                       # gas_fired | uranium | none
    is_vre: bool
    is_thermal_uc: bool
    has_ccs: bool
    nameplate_mw: float             # per-unit capacity
    min_stable_frac: float = 0.0    # fraction of nameplate
    ramp_frac: float = 1.0          # fraction of nameplate per hour
    heat_rate_mmbtu_per_mwh: float = 0.0
    capture_rate: float = 0.0
    capex_per_plant: float = 0.0    # $ per unit, before annualization
    fom_per_plant: float = 0.0      # $ per unit per year
    vom_per_mwh: float = 0.0
    startup_cost: float = 0.0       # $ per start
    decom_cost_per_plant: float = 0.0
    fuel_price: float = 0.0         # $/MMBtu, non-gas fuels only
    lifetime_years: int = 30
    resource_class: str | None = None
    non_retirable: bool = False

    def __post_init__(self):
        if self.nameplate_mw <= 0:
            raise NonPositiveCapacity(f"plant {self.id}: nameplate must be > 0")
        if self.fuel not in _FUELS:
            raise TopologyError(f"plant {self.id}: unknown fuel {self.fuel!r}")
        if not 0.0 <= self.min_stable_frac <= 1.0:
            raise TopologyError(f"plant {self.id}: min_stable_frac outside [0, 1]")
        if not 0.0 <= self.capture_rate <= 1.0:
            raise TopologyError(f"plant {self.id}: capture_rate outside [0, 1]")
        if self.has_ccs and self.fuel != GAS_FIRED:
            raise TopologyError(f"plant {self.id}: CCS requires a gas-fired plant")
        if self.is_vre and (self.heat_rate_mmbtu_per_mwh != 0 or self.is_thermal_uc):
            raise TopologyError(
                f"plant {self.id}: VRE plants have no heat rate or commitment")

    @property
    def is_gas_fired(self) -> bool:
        return self.fuel == GAS_FIRED


@dataclass(frozen=True)
class StorageType:
    """Electricity storage technology (short-duration or inter-day)."""

    id: str
    is_long_duration: bool
    energy_capex_per_mwh: float
    power_capex_per_mw: float
    energy_fom_per_mwh_yr: float = 0.0
    power_fom_per_mw_yr: float = 0.0
    charge_eff: float = 1.0
    discharge_eff: float = 1.0
    hourly_self_discharge: float = 0.0
    lifetime_years: int = 30

    def __post_init__(self):
        if not 0.0 < self.charge_eff <= 1.0:
            raise TopologyError(f"storage {self.id}: charge_eff outside (0, 1]")
        if not 0.0 < self.discharge_eff <= 1.0:
            raise TopologyError(f"storage {self.id}: discharge_eff outside (0, 1]")
        if not 0.0 <= self.hourly_self_discharge < 1.0:
            raise TopologyError(f"storage {self.id}: self-discharge outside [0, 1)")


@dataclass(frozen=True)
class PowerNode:
    id: str
    state: str = ""
    existing_plant_counts: dict[str, int] = field(default_factory=dict)
    allowed_storage_types: tuple[str, ...] = ()
    adjacent_gas_nodes: tuple[str, ...] = ()
    regional_capex_multiplier: dict[str, float] = field(default_factory=dict)
    co2_site_distance_miles: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "adjacent_gas_nodes",
                           tuple(sorted(self.adjacent_gas_nodes)))
        object.__setattr__(self, "allowed_storage_types",
                           tuple(sorted(self.allowed_storage_types)))
        for plant, count in self.existing_plant_counts.items():
            if count < 0:
                raise TopologyError(f"node {self.id}: negative count for {plant}")

    def multiplier(self, plant_id: str) -> float:
        return self.regional_capex_multiplier.get(plant_id, 1.0)


@dataclass(frozen=True)
class TransmissionLine:
    id: str
    node_a: str
    node_b: str
    is_existing: bool
    capacity_mw: float
    susceptance: float
    length_miles: float = 0.0
    capex: float = 0.0              # $ total, candidates only

    def __post_init__(self):
        if self.node_a == self.node_b:
            raise TopologyError(f"line {self.id}: endpoints must differ")
        if self.capacity_mw <= 0:
            raise NonPositiveCapacity(f"line {self.id}: capacity must be > 0")
        if self.susceptance <= 0:
            raise TopologyError(f"line {self.id}: susceptance must be > 0")


@dataclass(frozen=True)
class NgNode:
    id: str
    injection_cap_mmbtu_per_day: float = 0.0
    adjacent_svl_nodes: tuple[str, ...] = ()
    adjacent_power_nodes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "adjacent_svl_nodes",
                           tuple(sorted(self.adjacent_svl_nodes)))
        object.__setattr__(self, "adjacent_power_nodes",
                           tuple(sorted(self.adjacent_power_nodes)))
        if self.injection_cap_mmbtu_per_day < 0:
            raise NonPositiveCapacity(f"gas node {self.id}: negative injection cap")


@dataclass(frozen=True)
class Pipeline:
    """Directed gas pipeline; flow runs from_node -> to_node only."""

    id: str
    from_node: str
    to_node: str
    is_existing: bool
    capacity_mmbtu_per_day: float
    length_miles: float = 0.0
    capex: float = 0.0              # $ total, candidates only

    def __post_init__(self):
        if self.from_node == self.to_node:
            raise TopologyError(f"pipeline {self.id}: endpoints must differ")
        if self.capacity_mmbtu_per_day <= 0:
            raise NonPositiveCapacity(f"pipeline {self.id}: capacity must be > 0")


@dataclass(frozen=True)
class SvlNode:
    """Co-located storage / vaporization / liquefaction facility."""

    id: str
    storage_cap_mmbtu: float = 0.0
    vapor_cap_mmbtu_per_day: float = 0.0
    liq_cap_mmbtu_per_day: float = 0.0
    storage_capex_per_mmbtu: float = 0.0
    vapor_capex: float = 0.0
    storage_fom: float = 0.0
    vapor_fom: float = 0.0
    liq_charge_eff: float = 1.0
    vapor_discharge_eff: float = 1.0
    boiloff_daily: float = 0.0

    def __post_init__(self):
        for attr in ("storage_cap_mmbtu", "vapor_cap_mmbtu_per_day",
                     "liq_cap_mmbtu_per_day"):
            if getattr(self, attr) < 0:
                raise NonPositiveCapacity(f"svl {self.id}: negative {attr}")
        if not 0.0 < self.liq_charge_eff <= 1.0:
            raise TopologyError(f"svl {self.id}: liq_charge_eff outside (0, 1]")
        if not 0.0 < self.vapor_discharge_eff <= 1.0:
            raise TopologyError(f"svl {self.id}: vapor_discharge_eff outside (0, 1]")
        if not 0.0 <= self.boiloff_daily < 1.0:
            raise TopologyError(f"svl {self.id}: boiloff outside [0, 1)")


@dataclass(frozen=True)
class CcsParams:
    """Carbon transport and storage coefficients shared by all power nodes."""

    annual_storage_cap_tons: float
    pipe_capex_per_mile_ton: float = 0.0
    storage_cost_per_ton: float = 0.0
    pipe_elec_mwh_per_mile_ton_h: float = 0.0
    pump_elec_mwh_per_ton_h: float = 0.0
    compressor_spacing_miles: float = 3.3

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise TopologyError(f"ccs: {f.name} must be >= 0")
        if self.compressor_spacing_miles == 0:
            raise TopologyError("ccs: compressor spacing must be > 0")

    def compressors(self, distance_miles: float) -> float:
        return distance_miles / self.compressor_spacing_miles


@dataclass
class EnergySystem:
    """Full cross-validated topology; immutable by convention after load."""

    power_nodes: list[PowerNode]
    transmission_lines: list[TransmissionLine]
    plant_types: list[PlantType]
    storage_types: list[StorageType]
    ng_nodes: list[NgNode]
    pipelines: list[Pipeline]
    svl_nodes: list[SvlNode]
    ccs_params: CcsParams | None = None
    resource_limits: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self._plants = _index("plant", self.plant_types)
        self._pnodes = _index("power node", self.power_nodes)
        self._storage = _index("storage type", self.storage_types)
        self._gnodes = _index("gas node", self.ng_nodes)
        self._svls = _index("svl node", self.svl_nodes)
        _index("line", self.transmission_lines)
        _index("pipeline", self.pipelines)
        self.validate()

    # lookups ---------------------------------------------------------------

    def plant(self, plant_id: str) -> PlantType:
        return self._plants[plant_id]

    def power_node(self, node_id: str) -> PowerNode:
        return self._pnodes[node_id]

    def ng_node(self, node_id: str) -> NgNode:
        return self._gnodes[node_id]

    def svl_node(self, svl_id: str) -> SvlNode:
        return self._svls[svl_id]

    def storage_type(self, storage_id: str) -> StorageType:
        return self._storage[storage_id]

    def plants_at(self, node: PowerNode) -> list[PlantType]:
        """Plant types available at a node (a zero count marks a build site)."""
        return [p for p in self.plant_types if p.id in node.existing_plant_counts]

    def storage_at(self, node: PowerNode) -> list[StorageType]:
        return [s for s in self.storage_types if s.id in node.allowed_storage_types]

    def lines_at(self, node_id: str) -> list[TransmissionLine]:
        return [l for l in self.transmission_lines
                if node_id in (l.node_a, l.node_b)]

    def reference_node(self) -> str:
        return min(n.id for n in self.power_nodes)

    # validation ------------------------------------------------------------

    def validate(self) -> None:
        for line in self.transmission_lines:
            for end in (line.node_a, line.node_b):
                if end not in self._pnodes:
                    raise MissingReference(f"line {line.id}: unknown node {end!r}")
        for node in self.power_nodes:
            for plant_id in node.existing_plant_counts:
                if plant_id not in self._plants:
                    raise MissingReference(
                        f"node {node.id}: unknown plant type {plant_id!r}")
            for sid in node.allowed_storage_types:
                if sid not in self._storage:
                    raise MissingReference(
                        f"node {node.id}: unknown storage type {sid!r}")
            for gid in node.adjacent_gas_nodes:
                if gid not in self._gnodes:
                    raise MissingReference(
                        f"node {node.id}: unknown gas node {gid!r}")
            if any(self.plant(p).is_gas_fired for p in node.existing_plant_counts) \
                    and not node.adjacent_gas_nodes:
                raise MissingReference(
                    f"node {node.id} hosts gas-fired plants but has no adjacent "
                    f"gas node")
        for pipe in self.pipelines:
            for end in (pipe.from_node, pipe.to_node):
                if end not in self._gnodes:
                    raise MissingReference(
                        f"pipeline {pipe.id}: unknown node {end!r}")
        for gnode in self.ng_nodes:
            for sid in gnode.adjacent_svl_nodes:
                if sid not in self._svls:
                    raise MissingReference(
                        f"gas node {gnode.id}: unknown svl {sid!r}")
            for nid in gnode.adjacent_power_nodes:
                if nid not in self._pnodes:
                    raise MissingReference(
                        f"gas node {gnode.id}: unknown power node {nid!r}")
                if gnode.id not in self.power_node(nid).adjacent_gas_nodes:
                    raise MissingReference(
                        f"gas node {gnode.id} lists power node {nid} but not "
                        f"vice versa")
        for node in self.power_nodes:
            for gid in node.adjacent_gas_nodes:
                if node.id not in self.ng_node(gid).adjacent_power_nodes:
                    raise MissingReference(
                        f"power node {node.id} lists gas node {gid} but not "
                        f"vice versa")
        for plant in self.plant_types:
            if plant.resource_class and self.resource_limits.get(
                    plant.resource_class, math.inf) < 0:
                raise TopologyError(
                    f"resource class {plant.resource_class}: negative cap")
        if any(p.has_ccs for p in self.plant_types) and self.ccs_params is None:
            raise MissingReference("system has CCS plants but no CCS parameters")

    def resource_classes(self) -> dict[str, list[PlantType]]:
        """Members of each capped resource class, in plant declaration order."""
        classes: dict[str, list[PlantType]] = {}
        for cls in self.resource_limits:
            classes[cls] = [p for p in self.plant_types if p.resource_class == cls]
        return classes


def _index(kind: str, items) -> dict:
    index = {}
    for item in items:
        if item.id in index:
            raise TopologyError(f"duplicate {kind} id {item.id!r}")
        index[item.id] = item
    return index


# ------------------------------------------------------------------ CSV I/O

_FILES = {
    "power_nodes": ("id", "state", "co2_site_distance_miles", "storage_types"),
    "plants": ("id", "is_existing", "fuel", "is_vre", "is_thermal_uc", "has_ccs",
               "nameplate_mw", "min_stable_frac", "ramp_frac",
               "heat_rate_mmbtu_per_mwh", "capture_rate", "capex_per_plant",
               "fom_per_plant", "vom_per_mwh", "startup_cost",
               "decom_cost_per_plant", "fuel_price", "lifetime_years",
               "resource_class", "non_retirable"),
    "plant_sites": ("node", "plant_type", "existing_count"),
    "lines": ("id", "node_a", "node_b", "is_existing", "capacity_mw",
              "susceptance", "length_miles", "capex"),
    "ng_nodes": ("id", "injection_cap_mmbtu_per_day"),
    "pipelines": ("id", "from_node", "to_node", "is_existing",
                  "capacity_mmbtu_per_day", "length_miles", "capex"),
    "svl": ("id", "storage_cap_mmbtu", "vapor_cap_mmbtu_per_day",
            "liq_cap_mmbtu_per_day", "storage_capex_per_mmbtu", "vapor_capex",
            "storage_fom", "vapor_fom", "liq_charge_eff",
            "vapor_discharge_eff", "boiloff_daily"),
    "storage_types": ("id", "is_long_duration", "energy_capex_per_mwh",
                      "power_capex_per_mw", "energy_fom_per_mwh_yr",
                      "power_fom_per_mw_yr", "charge_eff", "discharge_eff",
                      "hourly_self_discharge", "lifetime_years"),
    "resource_limits": ("resource_class", "max_mw"),
    "multipliers": ("node", "plant_type", "multiplier"),
    "ccs": ("annual_storage_cap_tons", "pipe_capex_per_mile_ton",
            "storage_cost_per_ton", "pipe_elec_mwh_per_mile_ton_h",
            "pump_elec_mwh_per_ton_h", "compressor_spacing_miles"),
    "adjacency_ge": ("ng_node", "power_node"),
    "adjacency_gs": ("ng_node", "svl_node"),
}


def _read_rows(directory: Path, stem: str) -> list[dict[str, str]]:
    path = directory / f"{stem}.csv"
    columns = _FILES[stem]
    if not path.exists():
        raise SchemaViolation(path.name, None, "file missing")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        unknown = [c for c in header if c not in columns]
        if unknown:
            raise SchemaViolation(path.name, 1, f"unknown columns {unknown}")
        missing = [c for c in columns if c not in header]
        if missing:
            raise SchemaViolation(path.name, 1, f"missing columns {missing}")
        rows = []
        for rowno, row in enumerate(reader, start=2):
            if None in row or any(v is None for v in row.values()):
                raise SchemaViolation(path.name, rowno, "ragged row")
            rows.append({k: v.strip() for k, v in row.items()})
        return rows


def _as_float(value: str, file: str, rowno: int, col: str,
              default: float | None = None) -> float:
    if value == "":
        if default is None:
            raise SchemaViolation(file, rowno, f"missing value for {col}")
        return default
    try:
        return float(value)
    except ValueError:
        raise SchemaViolation(file, rowno, f"bad number {value!r} in {col}") from None


def _as_int(value: str, file: str, rowno: int, col: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise SchemaViolation(file, rowno, f"bad integer {value!r} in {col}") from None


def _as_bool(value: str, file: str, rowno: int, col: str) -> bool:
    low = value.lower()
    if low in ("1", "true", "yes"):
        return True
    if low in ("0", "false", "no", ""):
        return False
    raise SchemaViolation(file, rowno, f"bad flag {value!r} in {col}")


def load_system(directory: str | Path) -> EnergySystem:
    """Load and cross-validate a full topology from a directory of CSV files."""
    directory = Path(directory)

    plant_rows = _read_rows(directory, "plants")
    plants = []
    for rowno, row in enumerate(plant_rows, start=2):
        f, kw = "plants.csv", {}
        try:
            plants.append(PlantType(
                id=row["id"],
                is_existing=_as_bool(row["is_existing"], f, rowno, "is_existing"),
                fuel=row["fuel"] or NO_FUEL,
                is_vre=_as_bool(row["is_vre"], f, rowno, "is_vre"),
                is_thermal_uc=_as_bool(row["is_thermal_uc"], f, rowno, "is_thermal_uc"),
                has_ccs=_as_bool(row["has_ccs"], f, rowno, "has_ccs"),
                nameplate_mw=_as_float(row["nameplate_mw"], f, rowno, "nameplate_mw"),
                min_stable_frac=_as_float(row["min_stable_frac"], f, rowno,
                                          "min_stable_frac", 0.0),
                ramp_frac=_as_float(row["ramp_frac"], f, rowno, "ramp_frac", 1.0),
                heat_rate_mmbtu_per_mwh=_as_float(
                    row["heat_rate_mmbtu_per_mwh"], f, rowno,
                    "heat_rate_mmbtu_per_mwh", 0.0),
                capture_rate=_as_float(row["capture_rate"], f, rowno,
                                       "capture_rate", 0.0),
                capex_per_plant=_as_float(row["capex_per_plant"], f, rowno,
                                          "capex_per_plant", 0.0),
                fom_per_plant=_as_float(row["fom_per_plant"], f, rowno,
                                        "fom_per_plant", 0.0),
                vom_per_mwh=_as_float(row["vom_per_mwh"], f, rowno,
                                      "vom_per_mwh", 0.0),
                startup_cost=_as_float(row["startup_cost"], f, rowno,
                                       "startup_cost", 0.0),
                decom_cost_per_plant=_as_float(row["decom_cost_per_plant"], f,
                                               rowno, "decom_cost_per_plant", 0.0),
                fuel_price=_as_float(row["fuel_price"], f, rowno, "fuel_price", 0.0),
                lifetime_years=_as_int(row["lifetime_years"] or "30", f, rowno,
                                       "lifetime_years"),
                resource_class=row["resource_class"] or None,
                non_retirable=_as_bool(row["non_retirable"], f, rowno,
                                       "non_retirable"),
            ))
        except TopologyError:
            raise
        except (KeyError, ValueError) as exc:
            raise SchemaViolation(f, rowno, str(exc)) from exc

    storage_types = []
    for rowno, row in enumerate(_read_rows(directory, "storage_types"), start=2):
        f = "storage_types.csv"
        storage_types.append(StorageType(
            id=row["id"],
            is_long_duration=_as_bool(row["is_long_duration"], f, rowno,
                                      "is_long_duration"),
            energy_capex_per_mwh=_as_float(row["energy_capex_per_mwh"], f, rowno,
                                           "energy_capex_per_mwh"),
            power_capex_per_mw=_as_float(row["power_capex_per_mw"], f, rowno,
                                         "power_capex_per_mw"),
            energy_fom_per_mwh_yr=_as_float(row["energy_fom_per_mwh_yr"], f, rowno,
                                            "energy_fom_per_mwh_yr", 0.0),
            power_fom_per_mw_yr=_as_float(row["power_fom_per_mw_yr"], f, rowno,
                                          "power_fom_per_mw_yr", 0.0),
            charge_eff=_as_float(row["charge_eff"], f, rowno, "charge_eff", 1.0),
            discharge_eff=_as_float(row["discharge_eff"], f, rowno,
                                    "discharge_eff", 1.0),
            hourly_self_discharge=_as_float(row["hourly_self_discharge"], f, rowno,
                                            "hourly_self_discharge", 0.0),
            lifetime_years=_as_int(row["lifetime_years"] or "30", f, rowno,
                                   "lifetime_years"),
        ))
    storage_ids = [s.id for s in storage_types]

    sites: dict[str, dict[str, int]] = {}
    for rowno, row in enumerate(_read_rows(directory, "plant_sites"), start=2):
        count = _as_int(row["existing_count"], "plant_sites.csv", rowno,
                        "existing_count")
        sites.setdefault(row["node"], {})[row["plant_type"]] = count

    multipliers: dict[str, dict[str, float]] = {}
    for rowno, row in enumerate(_read_rows(directory, "multipliers"), start=2):
        value = _as_float(row["multiplier"], "multipliers.csv", rowno, "multiplier")
        multipliers.setdefault(row["node"], {})[row["plant_type"]] = value

    ge_pairs = [(r["ng_node"], r["power_node"])
                for r in _read_rows(directory, "adjacency_ge")]
    gs_pairs = [(r["ng_node"], r["svl_node"])
                for r in _read_rows(directory, "adjacency_gs")]

    power_nodes = []
    for rowno, row in enumerate(_read_rows(directory, "power_nodes"), start=2):
        f = "power_nodes.csv"
        # storage_types column: "" = every type, "-" = none, else ";"-separated
        allowed = row.get("storage_types", "")
        if allowed == "":
            allowed_types = tuple(storage_ids)
        elif allowed == "-":
            allowed_types = ()
        else:
            allowed_types = tuple(s for s in allowed.split(";") if s)
        power_nodes.append(PowerNode(
            id=row["id"],
            state=row["state"],
            existing_plant_counts=dict(sorted(sites.get(row["id"], {}).items())),
            allowed_storage_types=allowed_types,
            adjacent_gas_nodes=tuple(k for k, n in ge_pairs if n == row["id"]),
            regional_capex_multiplier=dict(
                sorted(multipliers.get(row["id"], {}).items())),
            co2_site_distance_miles=_as_float(row["co2_site_distance_miles"], f,
                                              rowno, "co2_site_distance_miles", 0.0),
        ))

    lines = []
    for rowno, row in enumerate(_read_rows(directory, "lines"), start=2):
        f = "lines.csv"
        lines.append(TransmissionLine(
            id=row["id"],
            node_a=row["node_a"],
            node_b=row["node_b"],
            is_existing=_as_bool(row["is_existing"], f, rowno, "is_existing"),
            capacity_mw=_as_float(row["capacity_mw"], f, rowno, "capacity_mw"),
            susceptance=_as_float(row["susceptance"], f, rowno, "susceptance"),
            length_miles=_as_float(row["length_miles"], f, rowno,
                                   "length_miles", 0.0),
            capex=_as_float(row["capex"], f, rowno, "capex", 0.0),
        ))

    ng_nodes = []
    for rowno, row in enumerate(_read_rows(directory, "ng_nodes"), start=2):
        f = "ng_nodes.csv"
        ng_nodes.append(NgNode(
            id=row["id"],
            injection_cap_mmbtu_per_day=_as_float(
                row["injection_cap_mmbtu_per_day"], f, rowno,
                "injection_cap_mmbtu_per_day", 0.0),
            adjacent_svl_nodes=tuple(j for k, j in gs_pairs if k == row["id"]),
            adjacent_power_nodes=tuple(n for k, n in ge_pairs if k == row["id"]),
        ))

    pipe_rows = _read_rows(directory, "pipelines")
    existing_caps = [
        float(r["capacity_mmbtu_per_day"]) for r in pipe_rows
        if r["capacity_mmbtu_per_day"] and r["is_existing"].lower() in ("1", "true", "yes")
    ]
    default_cap = sum(existing_caps) / len(existing_caps) if existing_caps else None
    pipelines = []
    for rowno, row in enumerate(pipe_rows, start=2):
        f = "pipelines.csv"
        is_existing = _as_bool(row["is_existing"], f, rowno, "is_existing")
        # candidate capacity defaults to the mean of existing pipeline capacities
        capacity = _as_float(row["capacity_mmbtu_per_day"], f, rowno,
                             "capacity_mmbtu_per_day",
                             default_cap if not is_existing else None)
        pipelines.append(Pipeline(
            id=row["id"],
            from_node=row["from_node"],
            to_node=row["to_node"],
            is_existing=is_existing,
            capacity_mmbtu_per_day=capacity,
            length_miles=_as_float(row["length_miles"], f, rowno,
                                   "length_miles", 0.0),
            capex=_as_float(row["capex"], f, rowno, "capex", 0.0),
        ))

    svl_nodes = []
    for rowno, row in enumerate(_read_rows(directory, "svl"), start=2):
        f = "svl.csv"
        svl_nodes.append(SvlNode(
            id=row["id"],
            storage_cap_mmbtu=_as_float(row["storage_cap_mmbtu"], f, rowno,
                                        "storage_cap_mmbtu", 0.0),
            vapor_cap_mmbtu_per_day=_as_float(row["vapor_cap_mmbtu_per_day"], f,
                                              rowno, "vapor_cap_mmbtu_per_day", 0.0),
            liq_cap_mmbtu_per_day=_as_float(row["liq_cap_mmbtu_per_day"], f, rowno,
                                            "liq_cap_mmbtu_per_day", 0.0),
            storage_capex_per_mmbtu=_as_float(row["storage_capex_per_mmbtu"], f,
                                              rowno, "storage_capex_per_mmbtu", 0.0),
            vapor_capex=_as_float(row["vapor_capex"], f, rowno, "vapor_capex", 0.0),
            storage_fom=_as_float(row["storage_fom"], f, rowno, "storage_fom", 0.0),
            vapor_fom=_as_float(row["vapor_fom"], f, rowno, "vapor_fom", 0.0),
            liq_charge_eff=_as_float(row["liq_charge_eff"], f, rowno,
                                     "liq_charge_eff", 1.0),
            vapor_discharge_eff=_as_float(row["vapor_discharge_eff"], f, rowno,
                                          "vapor_discharge_eff", 1.0),
            boiloff_daily=_as_float(row["boiloff_daily"], f, rowno,
                                    "boiloff_daily", 0.0),
        ))

    resource_limits = {}
    for rowno, row in enumerate(_read_rows(directory, "resource_limits"), start=2):
        resource_limits[row["resource_class"]] = _as_float(
            row["max_mw"], "resource_limits.csv", rowno, "max_mw")

    ccs_rows = _read_rows(directory, "ccs")
    ccs = None
    if ccs_rows:
        row = ccs_rows[0]
        f = "ccs.csv"
        ccs = CcsParams(
            annual_storage_cap_tons=_as_float(row["annual_storage_cap_tons"], f, 2,
                                              "annual_storage_cap_tons"),
            pipe_capex_per_mile_ton=_as_float(row["pipe_capex_per_mile_ton"], f, 2,
                                              "pipe_capex_per_mile_ton", 0.0),
            storage_cost_per_ton=_as_float(row["storage_cost_per_ton"], f, 2,
                                           "storage_cost_per_ton", 0.0),
            pipe_elec_mwh_per_mile_ton_h=_as_float(
                row["pipe_elec_mwh_per_mile_ton_h"], f, 2,
                "pipe_elec_mwh_per_mile_ton_h", 0.0),
            pump_elec_mwh_per_ton_h=_as_float(row["pump_elec_mwh_per_ton_h"], f, 2,
                                              "pump_elec_mwh_per_ton_h", 0.0),
            compressor_spacing_miles=_as_float(row["compressor_spacing_miles"], f,
                                               2, "compressor_spacing_miles", 3.3),
        )

    return EnergySystem(
        power_nodes=power_nodes,
        transmission_lines=lines,
        plant_types=plants,
        storage_types=storage_types,
        ng_nodes=ng_nodes,
        pipelines=pipelines,
        svl_nodes=svl_nodes,
        ccs_params=ccs,
        resource_limits=dict(sorted(resource_limits.items())),
    )


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if value == int(value) and abs(value) < 1e15:
            return str(int(value))
        return repr(value)
    if value is None:
        return ""
    return str(value)


def save_system(system: EnergySystem, directory: str | Path) -> None:
    """Write the canonical CSV set; load_system(save_system(s)) == s."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    def write(stem: str, rows: list[list]) -> None:
        with open(directory / f"{stem}.csv", "w", newline="",
                  encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(_FILES[stem])
            writer.writerows([[_fmt(v) for v in row] for row in rows])

    write("plants", [[p.id, p.is_existing, p.fuel, p.is_vre, p.is_thermal_uc,
                      p.has_ccs, p.nameplate_mw, p.min_stable_frac, p.ramp_frac,
                      p.heat_rate_mmbtu_per_mwh, p.capture_rate, p.capex_per_plant,
                      p.fom_per_plant, p.vom_per_mwh, p.startup_cost,
                      p.decom_cost_per_plant, p.fuel_price, p.lifetime_years,
                      p.resource_class, p.non_retirable]
                     for p in system.plant_types])
    write("storage_types", [[s.id, s.is_long_duration, s.energy_capex_per_mwh,
                             s.power_capex_per_mw, s.energy_fom_per_mwh_yr,
                             s.power_fom_per_mw_yr, s.charge_eff, s.discharge_eff,
                             s.hourly_self_discharge, s.lifetime_years]
                            for s in system.storage_types])
    all_storage = tuple(sorted(s.id for s in system.storage_types))

    def storage_col(node: PowerNode) -> str:
        if node.allowed_storage_types == all_storage:
            return ""
        if not node.allowed_storage_types:
            return "-"
        return ";".join(node.allowed_storage_types)

    write("power_nodes", [[n.id, n.state, n.co2_site_distance_miles,
                           storage_col(n)]
                          for n in system.power_nodes])
    write("plant_sites", [[n.id, plant, count]
                          for n in system.power_nodes
                          for plant, count in n.existing_plant_counts.items()])
    write("multipliers", [[n.id, plant, mult]
                          for n in system.power_nodes
                          for plant, mult in n.regional_capex_multiplier.items()])
    write("lines", [[l.id, l.node_a, l.node_b, l.is_existing, l.capacity_mw,
                     l.susceptance, l.length_miles, l.capex]
                    for l in system.transmission_lines])
    write("ng_nodes", [[g.id, g.injection_cap_mmbtu_per_day]
                       for g in system.ng_nodes])
    write("pipelines", [[p.id, p.from_node, p.to_node, p.is_existing,
                         p.capacity_mmbtu_per_day, p.length_miles, p.capex]
                        for p in system.pipelines])
    write("svl", [[s.id, s.storage_cap_mmbtu, s.vapor_cap_mmbtu_per_day,
                   s.liq_cap_mmbtu_per_day, s.storage_capex_per_mmbtu,
                   s.vapor_capex, s.storage_fom, s.vapor_fom, s.liq_charge_eff,
                   s.vapor_discharge_eff, s.boiloff_daily]
                  for s in system.svl_nodes])
    write("resource_limits", [[cls, cap]
                              for cls, cap in system.resource_limits.items()])
    ccs_rows = []
    if system.ccs_params is not None:
        c = system.ccs_params
        ccs_rows.append([c.annual_storage_cap_tons, c.pipe_capex_per_mile_ton,
                         c.storage_cost_per_ton, c.pipe_elec_mwh_per_mile_ton_h,
                         c.pump_elec_mwh_per_ton_h, c.compressor_spacing_miles])
    write("ccs", ccs_rows)
    write("adjacency_ge", [[g.id, n] for g in system.ng_nodes
                           for n in g.adjacent_power_nodes])
    write("adjacency_gs", [[g.id, j] for g in system.ng_nodes
                           for j in g.adjacent_svl_nodes])
