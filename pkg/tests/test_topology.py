import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridgas.demo import demo_demand, demo_system
from gridgas.topology import (
    EnergySystem,
    MissingReference,
    NgNode,
    NonPositiveCapacity,
    NonPositiveRate,
    Pipeline,
    PlantType,
    PowerNode,
    SchemaViolation,
    TransmissionLine,
    annualize,
    effective_plant_capex,
    load_system,
    save_system,
)


def annuity_alt(rate, years):
    # algebraically equivalent closed form used as an independent oracle
    return rate * (1 + rate) ** years / ((1 + rate) ** years - 1)


class TestAnnualize:
    def test_reference_factor(self):
        assert annualize(1.0, 30, 0.071) == pytest.approx(0.08140, abs=1e-4)

    def test_matches_alternative_form(self):
        for years in (1, 5, 30, 60):
            for rate in (0.01, 0.071, 0.2):
                assert annualize(1.0, years, rate) == pytest.approx(
                    annuity_alt(rate, years), rel=1e-12)

    def test_zero_capex(self):
        assert annualize(0.0, 30, 0.071) == 0.0

    def test_one_year(self):
        assert annualize(1.0, 1, 0.071) == pytest.approx(1.071, rel=1e-12)

    def test_nonpositive_rate(self):
        with pytest.raises(NonPositiveRate):
            annualize(1.0, 30, 0.0)
        with pytest.raises(NonPositiveRate):
            annualize(1.0, 30, -0.05)

    def test_bad_lifetime(self):
        with pytest.raises(ValueError):
            annualize(1.0, 0, 0.071)

    @given(capex=st.floats(0, 1e9), scale=st.floats(0.1, 10))
    @settings(max_examples=50, deadline=None)
    def test_linear_in_capex(self, capex, scale):
        one = annualize(capex, 30, 0.071)
        scaled = annualize(capex * scale, 30, 0.071)
        assert scaled == pytest.approx(one * scale, rel=1e-9, abs=1e-9)

    @given(years=st.integers(1, 59))
    @settings(max_examples=30, deadline=None)
    def test_decreasing_in_lifetime(self, years):
        assert annualize(1.0, years, 0.071) > annualize(1.0, years + 1, 0.071)


class TestEffectiveCapex:
    def test_regional_multiplier(self):
        ccgt = PlantType(id="ccgt", is_existing=False, fuel="gas_fired",
                         is_vre=False, is_thermal_uc=True, has_ccs=False,
                         nameplate_mw=573.0, capex_per_plant=5.36e8,
                         lifetime_years=30)
        node = PowerNode(id="CT", existing_plant_counts={"ccgt": 0},
                         adjacent_gas_nodes=("G",),
                         regional_capex_multiplier={"ccgt": 1.3})
        expected = annualize(5.36e8, 30, 0.071) * 1.3
        got = effective_plant_capex(ccgt, node, 0.071)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(5.36e8 * 0.08140 * 1.3, rel=1e-3)

    def test_default_multiplier_is_identity(self):
        solar = PlantType(id="solar_upv", is_existing=False, fuel="none",
                          is_vre=True, is_thermal_uc=False, has_ccs=False,
                          nameplate_mw=10.0, capex_per_plant=6.72e6,
                          lifetime_years=30)
        node = PowerNode(id="X", existing_plant_counts={"solar_upv": 0})
        assert effective_plant_capex(solar, node, 0.071) == pytest.approx(
            annualize(6.72e6, 30, 0.071))

    def test_vt_solar_example(self):
        solar = PlantType(id="solar_upv", is_existing=False, fuel="none",
                          is_vre=True, is_thermal_uc=False, has_ccs=False,
                          nameplate_mw=10.0, capex_per_plant=6.72e6,
                          lifetime_years=30)
        node = PowerNode(id="VT", existing_plant_counts={"solar_upv": 0},
                         regional_capex_multiplier={"solar_upv": 1.05})
        assert effective_plant_capex(solar, node, 0.071) == pytest.approx(
            6.72e6 * 0.08140 * 1.05, rel=1e-3)


class TestTypeInvariants:
    def test_ccs_requires_gas(self):
        with pytest.raises(ValueError):
            PlantType(id="bad", is_existing=False, fuel="uranium", is_vre=False,
                      is_thermal_uc=True, has_ccs=True, nameplate_mw=100.0)

    def test_vre_has_no_heat_rate(self):
        with pytest.raises(ValueError):
            PlantType(id="bad", is_existing=False, fuel="none", is_vre=True,
                      is_thermal_uc=False, has_ccs=False, nameplate_mw=10.0,
                      heat_rate_mmbtu_per_mwh=5.0)

    def test_nonpositive_nameplate(self):
        with pytest.raises(NonPositiveCapacity):
            PlantType(id="bad", is_existing=False, fuel="none", is_vre=False,
                      is_thermal_uc=False, has_ccs=False, nameplate_mw=0.0)

    def test_line_endpoints_differ(self):
        with pytest.raises(ValueError):
            TransmissionLine(id="l", node_a="A", node_b="A", is_existing=True,
                             capacity_mw=10.0, susceptance=1.0)

    def test_line_capacity_positive(self):
        with pytest.raises(NonPositiveCapacity):
            TransmissionLine(id="l", node_a="A", node_b="B", is_existing=True,
                             capacity_mw=0.0, susceptance=1.0)


class TestSystemValidation:
    def test_unknown_pipeline_node(self):
        with pytest.raises(MissingReference, match="X9"):
            EnergySystem(
                power_nodes=[PowerNode(id="N1")],
                transmission_lines=[],
                plant_types=[],
                storage_types=[],
                ng_nodes=[NgNode(id="G1")],
                pipelines=[Pipeline(id="p1", from_node="G1", to_node="X9",
                                    is_existing=True,
                                    capacity_mmbtu_per_day=10.0)],
                svl_nodes=[],
            )

    def test_gas_plant_needs_adjacency(self):
        gas = PlantType(id="ng", is_existing=True, fuel="gas_fired",
                        is_vre=False, is_thermal_uc=True, has_ccs=False,
                        nameplate_mw=100.0)
        with pytest.raises(MissingReference, match="gas-fired"):
            EnergySystem(
                power_nodes=[PowerNode(id="N1",
                                       existing_plant_counts={"ng": 1})],
                transmission_lines=[],
                plant_types=[gas],
                storage_types=[],
                ng_nodes=[NgNode(id="G1")],
                pipelines=[],
                svl_nodes=[],
            )

    def test_asymmetric_adjacency_rejected(self):
        with pytest.raises(MissingReference, match="vice versa"):
            EnergySystem(
                power_nodes=[PowerNode(id="N1")],
                transmission_lines=[],
                plant_types=[],
                storage_types=[],
                ng_nodes=[NgNode(id="G1", adjacent_power_nodes=("N1",))],
                pipelines=[],
                svl_nodes=[],
            )


class TestLoadSave:
    def test_demo_counts(self, tmp_path):
        system = demo_system()
        save_system(system, tmp_path)
        loaded = load_system(tmp_path)
        lines = loaded.transmission_lines
        pipes = loaded.pipelines
        assert len(loaded.power_nodes) == 6
        assert len(loaded.ng_nodes) == 18
        assert len(loaded.svl_nodes) == 7
        assert sum(1 for l in lines if l.is_existing) == 23
        assert sum(1 for l in lines if not l.is_existing) == 7
        assert sum(1 for p in pipes if p.is_existing) == 28
        assert sum(1 for p in pipes if not p.is_existing) == 36

    def test_roundtrip_identity(self, tmp_path):
        system = demo_system()
        save_system(system, tmp_path / "a")
        loaded = load_system(tmp_path / "a")
        save_system(loaded, tmp_path / "b")
        again = load_system(tmp_path / "b")
        assert loaded == again
        assert (tmp_path / "a" / "plants.csv").read_text() == \
            (tmp_path / "b" / "plants.csv").read_text()

    def test_empty_candidate_lines_ok(self, tmp_path):
        system = demo_system()
        save_system(system, tmp_path)
        lines = (tmp_path / "lines.csv").read_text().splitlines()
        keep = [lines[0]] + [l for l in lines[1:] if ",1," in l]
        (tmp_path / "lines.csv").write_text("\n".join(keep) + "\n")
        loaded = load_system(tmp_path)
        assert all(l.is_existing for l in loaded.transmission_lines)

    def test_unknown_column_rejected(self, tmp_path):
        save_system(demo_system(), tmp_path)
        path = tmp_path / "ng_nodes.csv"
        lines = path.read_text().splitlines()
        lines[0] += ",mystery"
        lines[1] += ",1"
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(SchemaViolation, match="mystery"):
            load_system(tmp_path)

    def test_missing_file_rejected(self, tmp_path):
        save_system(demo_system(), tmp_path)
        (tmp_path / "svl.csv").unlink()
        with pytest.raises(SchemaViolation, match="missing"):
            load_system(tmp_path)

    def test_bad_number_rejected(self, tmp_path):
        save_system(demo_system(), tmp_path)
        path = tmp_path / "ng_nodes.csv"
        text = path.read_text().splitlines()
        first = text[1].split(",")
        first[1] = "not-a-number"
        text[1] = ",".join(first)
        path.write_text("\n".join(text) + "\n")
        with pytest.raises(SchemaViolation):
            load_system(tmp_path)

    def test_candidate_pipeline_capacity_defaults_to_mean(self, tmp_path):
        system = demo_system()
        save_system(system, tmp_path)
        path = tmp_path / "pipelines.csv"
        rows = path.read_text().splitlines()
        header = rows[0].split(",")
        cap_col = header.index("capacity_mmbtu_per_day")
        exist_col = header.index("is_existing")
        existing = []
        out = [rows[0]]
        target = None
        for row in rows[1:]:
            cells = row.split(",")
            if cells[exist_col] == "1":
                existing.append(float(cells[cap_col]))
            elif target is None:
                target = cells[0]
                cells[cap_col] = ""
            out.append(",".join(cells))
        path.write_text("\n".join(out) + "\n")
        loaded = load_system(tmp_path)
        mean = sum(existing) / len(existing)
        pipe = next(p for p in loaded.pipelines if p.id == target)
        assert pipe.capacity_mmbtu_per_day == pytest.approx(mean)

    def test_referential_closure_on_demo(self):
        system = demo_system()
        for node in system.power_nodes:
            for gid in node.adjacent_gas_nodes:
                assert system.ng_node(gid) is not None
            for plant in system.plants_at(node):
                assert system.plant(plant.id) is plant
        demand = demo_demand(system)
        demand.validate_for(system)
