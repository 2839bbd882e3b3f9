"""In-memory MILP representation with stable names and deterministic ordering.

The model is a plain container: variables with bounds and kinds, linear
constraints, and a linear minimization objective. Builders own a model while
constructing it; afterwards it is treated as immutable and can be serialized
to MPS or handed to any solver adapter.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

CONTINUOUS = "C"
INTEGER = "I"
BINARY = "B"

LE = "<="
EQ = "="
GE = ">="

_KINDS = (CONTINUOUS, INTEGER, BINARY)
_SENSES = (LE, EQ, GE)
_WS = re.compile(r"\s")

OPTIMAL = "optimal"
FEASIBLE_GAP = "feasible_gap"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ERROR = "error"

STATUSES = (OPTIMAL, FEASIBLE_GAP, INFEASIBLE, UNBOUNDED, ERROR)


class ModelError(ValueError):
    pass


class DuplicateName(ModelError):
    pass


class NonFiniteCoefficient(ModelError):
    pass


@dataclass
class Solution:
    """Result of one solve: status, objective, and per-variable values."""

    status: str
    objective: float | None = None
    mip_gap: float | None = None
    values: dict[str, float] = field(default_factory=dict)
    solve_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in (OPTIMAL, FEASIBLE_GAP)


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise ModelError(f"name must be a non-empty string, got {name!r}")
    if _WS.search(name):
        raise ModelError(f"name may not contain whitespace: {name!r}")
    return name


class MilpModel:
    """Mutable MILP builder; insertion order of rows and columns is stable."""

    def __init__(self, name: str = "model"):
        self.name = _check_name(name)
        self.metadata: dict[str, str] = {}
        self._var_names: list[str] = []
        self._var_index: dict[str, int] = {}
        self._lo: list[float] = []
        self._hi: list[float] = []
        self._kind: list[str] = []
        # each constraint: (name, var-index tuple, coefficient tuple, sense, rhs)
        self._cons: list[tuple[str, tuple[int, ...], tuple[float, ...], str, float]] = []
        self._con_index: dict[str, int] = {}
        self._obj: dict[int, float] = {}
        self.obj_constant: float = 0.0

    # ------------------------------------------------------------------ vars

    def add_var(self, name: str, lo: float = 0.0, hi: float = math.inf,
                kind: str = CONTINUOUS) -> int:
        _check_name(name)
        if name in self._var_index:
            raise DuplicateName(f"variable {name!r} already exists")
        if kind not in _KINDS:
            raise ModelError(f"unknown variable kind {kind!r}")
        if math.isnan(lo) or math.isnan(hi):
            raise NonFiniteCoefficient(f"NaN bound on {name!r}")
        if kind == BINARY:
            lo, hi = max(lo, 0.0), min(hi, 1.0)
        if lo > hi:
            raise ModelError(f"variable {name!r} has lo={lo} > hi={hi}")
        idx = len(self._var_names)
        self._var_names.append(name)
        self._var_index[name] = idx
        self._lo.append(float(lo))
        self._hi.append(float(hi))
        self._kind.append(kind)
        return idx

    @property
    def num_vars(self) -> int:
        return len(self._var_names)

    def var_id(self, name: str) -> int:
        return self._var_index[name]

    def var_name(self, idx: int) -> str:
        return self._var_names[idx]

    def var_bounds(self, var: int | str) -> tuple[float, float]:
        idx = self._resolve(var)
        return self._lo[idx], self._hi[idx]

    def var_kind(self, var: int | str) -> str:
        return self._kind[self._resolve(var)]

    def set_var_bounds(self, var: int | str, lo: float, hi: float) -> None:
        idx = self._resolve(var)
        if math.isnan(lo) or math.isnan(hi):
            raise NonFiniteCoefficient(f"NaN bound on {self._var_names[idx]!r}")
        if lo > hi:
            raise ModelError(f"{self._var_names[idx]!r}: lo={lo} > hi={hi}")
        self._lo[idx] = float(lo)
        self._hi[idx] = float(hi)

    def integer_var_ids(self) -> list[int]:
        return [i for i, k in enumerate(self._kind) if k != CONTINUOUS]

    def _resolve(self, var: int | str) -> int:
        if isinstance(var, str):
            return self._var_index[var]
        return var

    # ----------------------------------------------------------- constraints

    def add_constraint(self, name: str, terms, sense: str, rhs: float) -> int:
        """Add a linear row.  `terms` is an iterable of (var, coefficient)
        pairs where var may be a handle or a name; duplicate variables are
        merged and zero coefficients dropped."""
        _check_name(name)
        if name in self._con_index:
            raise DuplicateName(f"constraint {name!r} already exists")
        if sense not in _SENSES:
            raise ModelError(f"unknown sense {sense!r}")
        if not math.isfinite(rhs):
            raise NonFiniteCoefficient(f"constraint {name!r}: rhs {rhs} not finite")
        merged: dict[int, float] = {}
        nvars = len(self._var_names)
        var_index = self._var_index
        for var, coef in terms:
            if not math.isfinite(coef):
                raise NonFiniteCoefficient(f"constraint {name!r}: coefficient {coef}")
            idx = var_index[var] if isinstance(var, str) else var
            if not 0 <= idx < nvars:
                raise ModelError(f"constraint {name!r}: unknown variable handle {idx}")
            merged[idx] = merged.get(idx, 0.0) + float(coef)
        idxs = tuple(i for i, c in merged.items() if c != 0.0)
        coefs = tuple(merged[i] for i in idxs)
        row = len(self._cons)
        self._cons.append((name, idxs, coefs, sense, float(rhs)))
        self._con_index[name] = row
        return row

    @property
    def num_constraints(self) -> int:
        return len(self._cons)

    def constraint(self, key: int | str):
        """Return (name, terms, sense, rhs) with terms as ((var_idx, coef), ...)."""
        row = self._con_index[key] if isinstance(key, str) else key
        name, idxs, coefs, sense, rhs = self._cons[row]
        return name, tuple(zip(idxs, coefs)), sense, rhs

    def constraint_names(self) -> list[str]:
        return [c[0] for c in self._cons]

    def iter_constraints(self):
        return iter(self._cons)

    # -------------------------------------------------------------- objective

    def set_objective(self, terms, constant: float = 0.0) -> None:
        """Replace the (minimize) objective with the given linear terms."""
        self._obj = {}
        self.obj_constant = 0.0
        self.add_objective_terms(terms, constant)

    def add_objective_terms(self, terms, constant: float = 0.0) -> None:
        if not math.isfinite(constant):
            raise NonFiniteCoefficient(f"objective constant {constant} not finite")
        obj = self._obj
        nvars = len(self._var_names)
        for var, coef in terms:
            if not math.isfinite(coef):
                raise NonFiniteCoefficient(f"objective coefficient {coef}")
            idx = self._var_index[var] if isinstance(var, str) else var
            if not 0 <= idx < nvars:
                raise ModelError(f"objective: unknown variable handle {idx}")
            obj[idx] = obj.get(idx, 0.0) + float(coef)
        self.obj_constant += float(constant)

    def objective_coef(self, var: int | str) -> float:
        return self._obj.get(self._resolve(var), 0.0)

    def objective_items(self):
        """(var_idx, coef) pairs in variable-creation order, zeros dropped."""
        return [(i, c) for i, c in sorted(self._obj.items()) if c != 0.0]

    # ---------------------------------------------------------------- helpers

    def objective_value(self, values: dict[str, float]) -> float:
        """Evaluate the objective at a named solution point."""
        total = self.obj_constant
        for idx, coef in self._obj.items():
            total += coef * values.get(self._var_names[idx], 0.0)
        return total

    def stats(self) -> dict[str, int]:
        n_int = sum(1 for k in self._kind if k != CONTINUOUS)
        return {
            "variables": self.num_vars,
            "integer_variables": n_int,
            "constraints": self.num_constraints,
            "nonzeros": sum(len(c[1]) for c in self._cons),
        }
