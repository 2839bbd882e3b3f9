"""Dual-resolution time structure: hourly representative days for the power
system, all 365 calendar days for the gas system, and the index mappings
between them.

A ``TimeGrid`` is fully determined by the day assignment: for every calendar
day, which representative day stands in for it. Hour slots are the
chronologically ordered hours of the representative days; each slot knows its
original hour of the year and carries its day's cluster size as weight.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

HOURS_PER_DAY = 24
DAYS_PER_YEAR = 365
HOURS_PER_YEAR = HOURS_PER_DAY * DAYS_PER_YEAR

DEFAULT_REP_DAYS = 30


class DegenerateInput(ValueError):
    pass


class TimeGrid:
    """Representative-day time structure (immutable after construction).

    Parameters
    ----------
    day_of : sequence of int
        For each calendar day 1..365 (index 0 holds day 1), the calendar day
        acting as its representative. Representative days must map to
        themselves.
    """

    def __init__(self, day_of):
        day_of = np.asarray(day_of, dtype=np.int64)
        if day_of.shape != (DAYS_PER_YEAR,):
            raise ValueError(f"day assignment must cover {DAYS_PER_YEAR} days")
        if day_of.min() < 1 or day_of.max() > DAYS_PER_YEAR:
            raise ValueError("representative days must lie in 1..365")
        rep_days = tuple(sorted(set(int(d) for d in day_of)))
        for tau in rep_days:
            if day_of[tau - 1] != tau:
                raise ValueError(f"representative day {tau} must represent itself")
        self.day_of = day_of
        self.day_of.setflags(write=False)
        self.rep_days = rep_days
        counts = {tau: 0 for tau in rep_days}
        for d in day_of:
            counts[int(d)] += 1
        self.weights_day = counts

        n = len(rep_days) * HOURS_PER_DAY
        self.n_hours = n
        self.hours_e = range(n)
        phi = np.empty(n, dtype=np.int64)      # 1-based hour of year
        weights = np.empty(n, dtype=np.int64)
        slot_day = np.empty(n, dtype=np.int64)
        self.t_start: dict[int, int] = {}
        self.t_end: dict[int, int] = {}
        self.hours_of_day: dict[int, range] = {}
        for pos, tau in enumerate(rep_days):
            base = pos * HOURS_PER_DAY
            self.t_start[tau] = base
            self.t_end[tau] = base + HOURS_PER_DAY - 1
            self.hours_of_day[tau] = range(base, base + HOURS_PER_DAY)
            for h in range(HOURS_PER_DAY):
                phi[base + h] = (tau - 1) * HOURS_PER_DAY + h + 1
                weights[base + h] = counts[tau]
                slot_day[base + h] = tau
        for arr in (phi, weights, slot_day):
            arr.setflags(write=False)
        self.phi_e = phi
        self.weights = weights
        self.slot_day = slot_day

    # ------------------------------------------------------------- accessors

    @property
    def k(self) -> int:
        return len(self.rep_days)

    def weight(self, slot: int) -> int:
        return int(self.weights[slot])

    def source_index(self, slot: int) -> int:
        """0-based index into an hour-of-year array for this slot."""
        return int(self.phi_e[slot]) - 1

    def rep_of(self, day: int) -> int:
        """Representative day for calendar day (1-based)."""
        return int(self.day_of[day - 1])

    def prev_slot(self, slot: int) -> int:
        """Hour preceding `slot` with the day's first hour wrapping to its last."""
        tau = int(self.slot_day[slot])
        if slot == self.t_start[tau]:
            return self.t_end[tau]
        return slot - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, TimeGrid) and bool(
            np.array_equal(self.day_of, other.day_of))

    def __repr__(self) -> str:
        return f"TimeGrid(k={self.k}, rep_days={self.rep_days[:4]}...)"

    @classmethod
    def full_year(cls) -> "TimeGrid":
        return cls(np.arange(1, DAYS_PER_YEAR + 1))

    @classmethod
    def single_day(cls, day: int = 1) -> "TimeGrid":
        return cls(np.full(DAYS_PER_YEAR, day))


# -------------------------------------------------------------- day selection

def _day_features(elec_demand: dict[str, np.ndarray],
                  gas_demand: dict[str, np.ndarray]) -> np.ndarray:
    """Per-day feature matrix: hourly electric load and daily gas load across
    nodes, z-score normalized per feature."""
    cols = []
    for node in sorted(elec_demand):
        series = np.asarray(elec_demand[node], dtype=float)
        if series.shape != (HOURS_PER_YEAR,):
            raise ValueError(f"electric demand for {node} must have 8760 hours")
        cols.append(series.reshape(DAYS_PER_YEAR, HOURS_PER_DAY))
    for node in sorted(gas_demand):
        series = np.asarray(gas_demand[node], dtype=float)
        if series.shape != (DAYS_PER_YEAR,):
            raise ValueError(f"gas demand for {node} must have 365 days")
        cols.append(series.reshape(DAYS_PER_YEAR, 1))
    feats = np.hstack(cols) if cols else np.zeros((DAYS_PER_YEAR, 0))
    mean = feats.mean(axis=0)
    std = feats.std(axis=0)
    std[std == 0.0] = 1.0
    return (feats - mean) / std


def _distance_matrix(feats: np.ndarray) -> np.ndarray:
    sq = (feats * feats).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * feats @ feats.T
    np.maximum(d2, 0.0, out=d2)
    return np.sqrt(d2)


def _pam(dist: np.ndarray, k: int, rng: np.random.Generator) -> list[int]:
    """k-medoids: greedy build then first-improvement swaps."""
    n = dist.shape[0]
    medoids = [int(np.argmin(dist.sum(axis=1)))]
    while len(medoids) < k:
        current = dist[:, medoids].min(axis=1)
        best_day, best_cost = -1, np.inf
        for cand in range(n):
            if cand in medoids:
                continue
            cost = np.minimum(current, dist[:, cand]).sum()
            if cost < best_cost - 1e-12:
                best_day, best_cost = cand, cost
        medoids.append(best_day)

    def total(meds: list[int]) -> float:
        return float(dist[:, meds].min(axis=1).sum())

    best = total(medoids)
    improved = True
    while improved:
        improved = False
        med_order = rng.permutation(len(medoids))
        for mi in med_order:
            others = [m for j, m in enumerate(medoids) if j != mi]
            partial = dist[:, others].min(axis=1) if others else np.full(n, np.inf)
            for cand in range(n):
                if cand in medoids:
                    continue
                cost = float(np.minimum(partial, dist[:, cand]).sum())
                if cost < best - 1e-9:
                    medoids[mi] = cand
                    best = cost
                    improved = True
                    break
            if improved:
                break
    return sorted(medoids)


def select_rep_days(elec_demand: dict[str, np.ndarray],
                    gas_demand: dict[str, np.ndarray],
                    k: int = DEFAULT_REP_DAYS, seed: int = 0) -> TimeGrid:
    """Pick k representative calendar days by k-medoids over joint
    electric/gas daily profiles and assign every day to its medoid.

    Deterministic for a fixed seed; assignment ties break toward the lower
    day index. k=365 short-circuits to the identity grid.
    """
    if not 1 <= k <= DAYS_PER_YEAR:
        raise DegenerateInput(f"k must be in 1..{DAYS_PER_YEAR}, got {k}")
    if k == DAYS_PER_YEAR:
        return TimeGrid.full_year()
    feats = _day_features(elec_demand, gas_demand)
    n_distinct = len(np.unique(feats, axis=0))
    if k > n_distinct:
        raise DegenerateInput(
            f"k={k} exceeds the {n_distinct} distinct day profiles")
    dist = _distance_matrix(feats)
    rng = np.random.default_rng(seed)
    medoids = _pam(dist, k, rng)
    med_arr = np.array(medoids)
    # argmin returns the first (lowest-index) medoid on ties
    assign = med_arr[np.argmin(dist[:, med_arr], axis=1)]
    assign[med_arr] = med_arr  # medoids always represent themselves
    return TimeGrid(assign + 1)


# ---------------------------------------------------------------- diagnostics

@dataclass
class LdcDiagnostic:
    """Sorted full-year vs representative-day approximation of system load."""

    exact_sorted: np.ndarray
    approx_sorted: np.ndarray
    max_abs_gap: float
    mean_abs_gap: float

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(("rank", "exact_mw", "approx_mw"))
            for rank in range(len(self.exact_sorted)):
                writer.writerow((rank + 1, repr(float(self.exact_sorted[rank])),
                                 repr(float(self.approx_sorted[rank]))))


def load_duration_diagnostic(grid: TimeGrid,
                             elec_demand: dict[str, np.ndarray]) -> LdcDiagnostic:
    """Compare the exact system load-duration curve against the one implied by
    letting each day's medoid profile stand in for the whole cluster."""
    total = np.zeros(HOURS_PER_YEAR)
    for series in elec_demand.values():
        total = total + np.asarray(series, dtype=float)
    by_day = total.reshape(DAYS_PER_YEAR, HOURS_PER_DAY)
    approx = by_day[grid.day_of - 1].reshape(-1)
    exact_sorted = np.sort(total)[::-1]
    approx_sorted = np.sort(approx)[::-1]
    gaps = np.abs(exact_sorted - approx_sorted)
    return LdcDiagnostic(exact_sorted, approx_sorted,
                         float(gaps.max()), float(gaps.mean()))


# ------------------------------------------------------------------- file I/O

def save_repdays_csv(grid: TimeGrid, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("day", "rep_day"))
        for day in range(1, DAYS_PER_YEAR + 1):
            writer.writerow((day, grid.rep_of(day)))


def load_repdays_csv(path: str | Path) -> TimeGrid:
    """Load a representative-day choice made elsewhere.

    Two schemas are accepted: a full (day, rep_day) assignment, or a compact
    (day, weight) table listing only the representative days. In the compact
    form, calendar days are assigned to the nearest representative day (by
    day index) whose cluster still has room, processing closest pairs first.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        rows = list(reader)
    if header == ("day", "rep_day"):
        day_of = np.zeros(DAYS_PER_YEAR, dtype=np.int64)
        for row in rows:
            day_of[int(row["day"]) - 1] = int(row["rep_day"])
        if (day_of == 0).any():
            raise ValueError(f"{path}: assignment does not cover all 365 days")
        return TimeGrid(day_of)
    if header == ("day", "weight"):
        caps = {int(r["day"]): int(r["weight"]) for r in rows}
        if sum(caps.values()) != DAYS_PER_YEAR:
            raise ValueError(f"{path}: weights must sum to {DAYS_PER_YEAR}")
        if any(w <= 0 for w in caps.values()):
            raise ValueError(f"{path}: weights must be positive")
        reps = sorted(caps)
        pairs = sorted((abs(day - tau), day, tau)
                       for day in range(1, DAYS_PER_YEAR + 1) for tau in reps)
        day_of = np.zeros(DAYS_PER_YEAR, dtype=np.int64)
        remaining = dict(caps)
        for _dist, day, tau in pairs:
            if day_of[day - 1] == 0 and remaining[tau] > 0:
                day_of[day - 1] = tau
                remaining[tau] -= 1
        return TimeGrid(day_of)
    raise ValueError(f"{path}: expected columns (day, rep_day) or (day, weight)")
