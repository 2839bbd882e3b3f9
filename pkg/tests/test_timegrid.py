import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridgas.timegrid import (
    DAYS_PER_YEAR,
    DEFAULT_REP_DAYS,
    HOURS_PER_YEAR,
    DegenerateInput,
    TimeGrid,
    load_duration_diagnostic,
    load_repdays_csv,
    save_repdays_csv,
    select_rep_days,
    _day_features,
    _distance_matrix,
)


def two_level_demand(n_winter=180, winter=100.0, summer=40.0):
    """Step demand: `n_winter` identical high days then identical low days."""
    elec = np.empty(HOURS_PER_YEAR)
    per_day = elec.reshape(DAYS_PER_YEAR, 24)
    per_day[:n_winter] = winter
    per_day[n_winter:] = summer
    gas = np.where(np.arange(DAYS_PER_YEAR) < n_winter, 500.0, 200.0)
    return {"N1": elec}, {"G1": gas}


def rich_demand(seed=7):
    rng = np.random.default_rng(seed)
    elec = {"N1": 50.0 + 20.0 * rng.random(HOURS_PER_YEAR)}
    gas = {"G1": 100.0 + 50.0 * rng.random(DAYS_PER_YEAR)}
    return elec, gas


class TestTimeGridStructure:
    def test_full_year_identity(self):
        grid = TimeGrid.full_year()
        assert grid.k == 365
        assert all(w == 1 for w in grid.weights_day.values())
        assert sum(grid.weights_day.values()) == DAYS_PER_YEAR
        assert grid.n_hours == HOURS_PER_YEAR

    def test_single_day(self):
        grid = TimeGrid.single_day(1)
        assert grid.weights_day == {1: 365}
        assert int(grid.weights.sum()) == HOURS_PER_YEAR

    def test_rep_day_must_map_to_itself(self):
        day_of = np.full(DAYS_PER_YEAR, 2)
        day_of[1] = 3  # day 2 claims day 3, but others claim day 2
        with pytest.raises(ValueError):
            TimeGrid(day_of)

    def test_phi_maps_day_start_to_year_hour(self):
        grid = TimeGrid.single_day(42)
        t0 = grid.t_start[42]
        assert grid.phi_e[t0] == 24 * (42 - 1) + 1
        assert grid.source_index(t0) == 24 * 41

    def test_prev_slot_wraps_within_day(self):
        grid = TimeGrid.single_day(1)
        assert grid.prev_slot(grid.t_start[1]) == grid.t_end[1]
        assert grid.prev_slot(5) == 4

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=20, deadline=None)
    def test_random_assignment_invariants(self, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 12))
        reps = np.sort(rng.choice(np.arange(1, DAYS_PER_YEAR + 1), size=k,
                                  replace=False))
        day_of = reps[rng.integers(0, k, size=DAYS_PER_YEAR)]
        day_of[reps - 1] = reps
        grid = TimeGrid(day_of)
        assert sum(grid.weights_day.values()) == DAYS_PER_YEAR
        assert int(grid.weights.sum()) == sum(24 * w
                                              for w in grid.weights_day.values())
        # representative-day mapping is idempotent
        for day in range(1, DAYS_PER_YEAR + 1):
            assert grid.rep_of(grid.rep_of(day)) == grid.rep_of(day)
        # hour mapping is injective and ordered within each day
        phi = grid.phi_e
        assert len(set(phi.tolist())) == len(phi)
        for tau in grid.rep_days:
            hours = phi[list(grid.hours_of_day[tau])]
            assert list(hours) == list(range(hours[0], hours[0] + 24))


class TestSelectRepDays:
    def test_identity_k365(self):
        elec, gas = rich_demand()
        grid = select_rep_days(elec, gas, k=365)
        assert grid.k == 365
        assert all(w == 1 for w in grid.weights_day.values())

    def test_constant_demand_k1(self):
        elec = {"N1": np.full(HOURS_PER_YEAR, 10.0)}
        gas = {"G1": np.full(DAYS_PER_YEAR, 5.0)}
        grid = select_rep_days(elec, gas, k=1)
        assert grid.k == 1
        assert list(grid.weights_day.values()) == [365]
        assert int(grid.weights.sum()) == HOURS_PER_YEAR

    def test_two_level_series_brute_force(self):
        elec, gas = two_level_demand()
        grid = select_rep_days(elec, gas, k=2)
        assert sorted(grid.weights_day.values()) == [180, 185]
        # independent oracle: enumerate every medoid pair on the same features
        feats = _day_features(elec, gas)
        dist = _distance_matrix(feats)
        best_cost = np.inf
        for i, j in itertools.combinations(range(40), 2):  # indices cover both levels
            cost = dist[:, [i, j]].min(axis=1).sum()
            best_cost = min(best_cost, cost)
        for i, j in itertools.combinations([0, 1, 179, 180, 181, 364], 2):
            cost = dist[:, [i, j]].min(axis=1).sum()
            best_cost = min(best_cost, cost)
        meds = [d - 1 for d in grid.rep_days]
        got_cost = dist[:, meds].min(axis=1).sum()
        assert got_cost == pytest.approx(best_cost, abs=1e-9)
        # one representative in each regime
        assert sum(1 for d in grid.rep_days if d <= 180) == 1

    def test_degenerate_more_clusters_than_patterns(self):
        elec = {"N1": np.full(HOURS_PER_YEAR, 10.0)}
        gas = {"G1": np.full(DAYS_PER_YEAR, 5.0)}
        with pytest.raises(DegenerateInput):
            select_rep_days(elec, gas, k=2)

    def test_k_out_of_range(self):
        elec, gas = rich_demand()
        with pytest.raises(DegenerateInput):
            select_rep_days(elec, gas, k=0)
        with pytest.raises(DegenerateInput):
            select_rep_days(elec, gas, k=366)

    def test_deterministic_for_seed(self):
        elec, gas = rich_demand()
        a = select_rep_days(elec, gas, k=5, seed=3)
        b = select_rep_days(elec, gas, k=5, seed=3)
        assert a == b

    def test_default_rep_day_count_documented(self):
        assert DEFAULT_REP_DAYS == 30


class TestLdcDiagnostic:
    def test_exact_at_k365(self):
        elec, gas = rich_demand()
        grid = select_rep_days(elec, gas, k=365)
        diag = load_duration_diagnostic(grid, elec)
        assert diag.max_abs_gap == 0.0
        assert diag.mean_abs_gap == 0.0

    def test_constant_load_any_k(self):
        elec = {"N1": np.full(HOURS_PER_YEAR, 10.0)}
        grid = TimeGrid.single_day(17)
        diag = load_duration_diagnostic(grid, elec)
        assert diag.max_abs_gap == 0.0

    def test_two_level_exact_reconstruction(self):
        elec, gas = two_level_demand()
        grid = select_rep_days(elec, gas, k=2)
        diag = load_duration_diagnostic(grid, elec)
        # medoid profiles are identical to every represented day, so the
        # sorted curves coincide
        assert diag.max_abs_gap == pytest.approx(0.0, abs=1e-9)

    def test_csv_emission(self, tmp_path):
        elec, gas = rich_demand()
        grid = select_rep_days(elec, gas, k=3)
        diag = load_duration_diagnostic(grid, elec)
        path = tmp_path / "ldc.csv"
        diag.write_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "rank,exact_mw,approx_mw"
        assert len(lines) == HOURS_PER_YEAR + 1


class TestRepdaysCsv:
    def test_full_assignment_roundtrip(self, tmp_path):
        elec, gas = rich_demand()
        grid = select_rep_days(elec, gas, k=4)
        path = tmp_path / "repdays.csv"
        save_repdays_csv(grid, path)
        assert load_repdays_csv(path) == grid

    def test_compact_weights_schema(self, tmp_path):
        path = tmp_path / "repdays.csv"
        path.write_text("day,weight\n10,100\n200,265\n")
        grid = load_repdays_csv(path)
        assert grid.rep_days == (10, 200)
        assert grid.weights_day == {10: 100, 200: 265}
        assert grid.rep_of(10) == 10 and grid.rep_of(200) == 200

    def test_compact_weights_must_sum(self, tmp_path):
        path = tmp_path / "repdays.csv"
        path.write_text("day,weight\n10,100\n200,200\n")
        with pytest.raises(ValueError, match="sum"):
            load_repdays_csv(path)

    def test_unknown_schema(self, tmp_path):
        path = tmp_path / "repdays.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError, match="columns"):
            load_repdays_csv(path)
