"""Solver-agnostic MILP container, MPS interchange, and solver adapters."""

from gridgas.milp.model import (
    BINARY,
    CONTINUOUS,
    EQ,
    GE,
    INTEGER,
    LE,
    DuplicateName,
    MilpModel,
    ModelError,
    NonFiniteCoefficient,
    Solution,
)
from gridgas.milp.mps import parse_mps, write_mps
from gridgas.milp.solvers import (
    PRESETS,
    ExternalAdapter,
    ScipyAdapter,
    SolutionParseError,
    SolverCrash,
    SolverError,
    SolverNotFound,
    parse_solution_file,
    solve,
    write_solution_file,
)

__all__ = [
    "BINARY",
    "CONTINUOUS",
    "EQ",
    "GE",
    "INTEGER",
    "LE",
    "DuplicateName",
    "ExternalAdapter",
    "MilpModel",
    "ModelError",
    "NonFiniteCoefficient",
    "PRESETS",
    "ScipyAdapter",
    "Solution",
    "SolutionParseError",
    "SolverCrash",
    "SolverError",
    "SolverNotFound",
    "parse_mps",
    "parse_solution_file",
    "solve",
    "write_mps",
    "write_solution_file",
]
