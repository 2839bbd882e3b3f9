"""Solver adapters: in-process HiGHS (via scipy) and external executables.

An external solver is any executable that accepts an MPS path and writes the
documented solution file: one ``<variable> <value>`` pair per line plus
``=obj=`` and ``=status=`` sentinel lines. Variables omitted from the file
default to zero.
"""

from __future__ import annotations

import math
import os
import shutil
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from gridgas.milp.model import (
    CONTINUOUS,
    EQ,
    ERROR,
    FEASIBLE_GAP,
    GE,
    INFEASIBLE,
    LE,
    OPTIMAL,
    STATUSES,
    UNBOUNDED,
    MilpModel,
    Solution,
)
from gridgas.milp.mps import write_mps

DEFAULT_MIP_GAP = 0.01

SOLVER_ENV_VAR = "GRIDGAS_SOLVER"


class SolverError(RuntimeError):
    pass


class SolverNotFound(SolverError):
    pass


class SolverCrash(SolverError):
    pass


class SolutionParseError(SolverError):
    pass


class ScipyAdapter:
    """In-process adapter backed by scipy.optimize.milp (HiGHS)."""

    name = "scipy-highs"

    def solve(self, model: MilpModel, mip_gap: float = DEFAULT_MIP_GAP,
              time_limit: float | None = None) -> Solution:
        from scipy import sparse
        from scipy.optimize import Bounds, LinearConstraint, milp

        t0 = time.perf_counter()
        n = model.num_vars
        if n == 0:
            return Solution(OPTIMAL, model.obj_constant, 0.0, {}, 0.0)

        c = np.zeros(n)
        for idx, coef in model.objective_items():
            c[idx] = coef
        lo = np.empty(n)
        hi = np.empty(n)
        integrality = np.zeros(n)
        for i in range(n):
            lo[i], hi[i] = model.var_bounds(i)
            if model.var_kind(i) != CONTINUOUS:
                integrality[i] = 1

        m = model.num_constraints
        constraints = None
        if m:
            r_idx: list[int] = []
            c_idx: list[int] = []
            data: list[float] = []
            bl = np.empty(m)
            bu = np.empty(m)
            for row, (_name, idxs, coefs, sense, rhs) in enumerate(model.iter_constraints()):
                r_idx.extend([row] * len(idxs))
                c_idx.extend(idxs)
                data.extend(coefs)
                if sense == LE:
                    bl[row], bu[row] = -np.inf, rhs
                elif sense == GE:
                    bl[row], bu[row] = rhs, np.inf
                else:
                    bl[row], bu[row] = rhs, rhs
            mat = sparse.csr_matrix((data, (r_idx, c_idx)), shape=(m, n))
            constraints = LinearConstraint(mat, bl, bu)

        options: dict = {"mip_rel_gap": mip_gap, "presolve": True}
        if time_limit is not None:
            options["time_limit"] = float(time_limit)
        res = milp(c=c, constraints=constraints, integrality=integrality,
                   bounds=Bounds(lo, hi), options=options)
        elapsed = time.perf_counter() - t0

        if res.status == 0:
            status = OPTIMAL
        elif res.status == 1:
            status = FEASIBLE_GAP if res.x is not None else ERROR
        elif res.status == 2:
            status = INFEASIBLE
        elif res.status == 3:
            status = UNBOUNDED
        else:
            status = ERROR
        values: dict[str, float] = {}
        objective = None
        gap = None
        if res.x is not None:
            values = {model.var_name(i): float(res.x[i]) for i in range(n)}
            objective = float(res.fun) + model.obj_constant
            gap = float(getattr(res, "mip_gap", 0.0) or 0.0)
        return Solution(status, objective, gap, values, elapsed)


class ExternalAdapter:
    """Run an external solver executable on an MPS file.

    ``argv`` is the command template; ``{mps}``, ``{sol}`` and ``{gap}``
    placeholders are substituted. The executable may be overridden with the
    ``GRIDGAS_SOLVER`` environment variable.
    """

    name = "external"

    def __init__(self, argv: list[str], env_var: str = SOLVER_ENV_VAR,
                 workdir: str | None = None):
        if not argv:
            raise ValueError("argv must name an executable")
        self.argv = list(argv)
        self.env_var = env_var
        self.workdir = workdir

    def solve(self, model: MilpModel, mip_gap: float = DEFAULT_MIP_GAP,
              time_limit: float | None = None) -> Solution:
        exe = os.environ.get(self.env_var) or self.argv[0]
        if shutil.which(exe) is None and not Path(exe).exists():
            raise SolverNotFound(f"solver executable not found: {exe}")
        t0 = time.perf_counter()
        with tempfile.TemporaryDirectory(prefix="gridgas-solve-") as tmp:
            mps_path = Path(self.workdir or tmp) / "model.mps"
            sol_path = Path(self.workdir or tmp) / "model.sol"
            mps_path.write_text(write_mps(model))
            cmd = [exe] + [
                a.format(mps=str(mps_path), sol=str(sol_path), gap=mip_gap)
                for a in self.argv[1:]
            ]
            proc = subprocess.run(cmd, capture_output=True, text=True,
                                  timeout=time_limit)
            if not sol_path.exists():
                raise SolverCrash(
                    f"{exe} exited with {proc.returncode} and wrote no solution "
                    f"file; stderr: {proc.stderr[-2000:]}"
                )
            solution = parse_solution_file(sol_path.read_text())
        solution.solve_seconds = time.perf_counter() - t0
        # keep only model variables; anything the solver did not report is 0
        known = {model.var_name(i) for i in range(model.num_vars)}
        solution.values = {k: v for k, v in solution.values.items() if k in known}
        if solution.objective is None and solution.ok:
            solution.objective = model.objective_value(solution.values)
        return solution


def write_solution_file(solution: Solution, path: str | Path) -> None:
    """Write the documented external-solver solution format."""
    lines = [f"=status= {solution.status}"]
    if solution.objective is not None:
        lines.append(f"=obj= {solution.objective!r}")
    for name, value in solution.values.items():
        lines.append(f"{name} {value!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def parse_solution_file(text: str) -> Solution:
    status = None
    objective = None
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if len(tok) != 2:
            raise SolutionParseError(f"solution line {lineno}: expected two fields")
        key, val = tok
        if key == "=status=":
            if val not in STATUSES and val != "feasible":
                raise SolutionParseError(f"solution line {lineno}: bad status {val!r}")
            status = FEASIBLE_GAP if val == "feasible" else val
        elif key == "=obj=":
            objective = _to_float(val, lineno)
        else:
            values[key] = _to_float(val, lineno)
    if status is None:
        raise SolutionParseError("solution file has no =status= line")
    return Solution(status, objective, None, values)


def _to_float(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise SolutionParseError(f"solution line {lineno}: bad number {token!r}") from None
    if math.isnan(value):
        raise SolutionParseError(f"solution line {lineno}: NaN value")
    return value


def solve(model: MilpModel, adapter=None, mip_gap: float = DEFAULT_MIP_GAP,
          time_limit: float | None = None) -> Solution:
    """Solve with the given adapter (default: in-process HiGHS via scipy)."""
    if adapter is None:
        adapter = ScipyAdapter()
    return adapter.solve(model, mip_gap=mip_gap, time_limit=time_limit)


def _self_adapter() -> ExternalAdapter:
    # round-trips through our own CLI in a subprocess; mainly a reference
    # implementation of the external-solver contract
    return ExternalAdapter([
        sys.executable, "-m", "gridgas", "solve-mps", "{mps}", "{sol}",
        "--mip-gap", "{gap}",
    ])


PRESETS = {
    "scipy": ScipyAdapter,
    "self": _self_adapter,
}
