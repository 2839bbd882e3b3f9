"""Free-format MPS emission and parsing.

Only the subset needed for linear minimization models is supported: NAME,
OBJSENSE (MIN), ROWS, COLUMNS with INTORG/INTEND markers, RHS, BOUNDS and
ENDATA. RANGES is deliberately rejected. Emission is deterministic
(insertion order), so emit -> parse -> emit is byte-identical.
"""

from __future__ import annotations

import math

from gridgas.milp.model import (
    BINARY,
    CONTINUOUS,
    EQ,
    GE,
    INTEGER,
    LE,
    MilpModel,
    ModelError,
)

_SENSE_TO_ROW = {LE: "L", EQ: "E", GE: "G"}
_ROW_TO_SENSE = {v: k for k, v in _SENSE_TO_ROW.items()}

_OBJ_ROW = "OBJ"
_RHS_SET = "RHS"
_BND_SET = "BND"


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def write_mps(model: MilpModel) -> str:
    """Serialize to free-format MPS with OBJSENSE MIN."""
    out: list[str] = []
    push = out.append
    push(f"NAME {model.name}")
    push("OBJSENSE")
    push("    MIN")
    push("ROWS")
    push(f" N  {_OBJ_ROW}")
    for name, _idxs, _coefs, sense, _rhs in model.iter_constraints():
        push(f" {_SENSE_TO_ROW[sense]}  {name}")

    # transpose rows into per-column entry lists (ascending row order)
    n = model.num_vars
    col_entries: list[list[tuple[str, float]]] = [[] for _ in range(n)]
    for idx, coef in model.objective_items():
        col_entries[idx].append((_OBJ_ROW, coef))
    for name, idxs, coefs, _sense, _rhs in model.iter_constraints():
        for idx, coef in zip(idxs, coefs):
            col_entries[idx].append((name, coef))

    push("COLUMNS")
    in_int = False
    marker_no = 0
    for idx in range(n):
        vname = model.var_name(idx)
        is_int = model.var_kind(idx) != CONTINUOUS
        if is_int and not in_int:
            push(f"    MARKER{marker_no}  'MARKER'  'INTORG'")
            marker_no += 1
            in_int = True
        elif not is_int and in_int:
            push(f"    MARKER{marker_no}  'MARKER'  'INTEND'")
            marker_no += 1
            in_int = False
        for row, coef in col_entries[idx]:
            push(f"    {vname}  {row}  {_num(coef)}")
    if in_int:
        push(f"    MARKER{marker_no}  'MARKER'  'INTEND'")

    push("RHS")
    if model.obj_constant != 0.0:
        push(f"    {_RHS_SET}  {_OBJ_ROW}  {_num(-model.obj_constant)}")
    for name, _idxs, _coefs, _sense, rhs in model.iter_constraints():
        if rhs != 0.0:
            push(f"    {_RHS_SET}  {name}  {_num(rhs)}")

    push("BOUNDS")
    for idx in range(n):
        vname = model.var_name(idx)
        lo, hi = model.var_bounds(idx)
        kind = model.var_kind(idx)
        if kind == BINARY:
            push(f" BV {_BND_SET}  {vname}")
            continue
        if lo == hi:
            push(f" FX {_BND_SET}  {vname}  {_num(lo)}")
            continue
        if kind == CONTINUOUS and lo == 0.0 and hi == math.inf:
            continue  # MPS default
        if lo == -math.inf and hi == math.inf:
            push(f" FR {_BND_SET}  {vname}")
            continue
        if lo == -math.inf:
            push(f" MI {_BND_SET}  {vname}")
        else:
            push(f" LO {_BND_SET}  {vname}  {_num(lo)}")
        if hi == math.inf:
            push(f" PL {_BND_SET}  {vname}")
        else:
            push(f" UP {_BND_SET}  {vname}  {_num(hi)}")

    push("ENDATA")
    push("")
    return "\n".join(out)


class MpsParseError(ModelError):
    pass


def parse_mps(text: str) -> MilpModel:
    """Parse free-format MPS produced by :func:`write_mps` (plus the common
    subset emitted by other tools)."""
    name = "model"
    section = None
    obj_row = None
    rows: list[tuple[str, str]] = []  # (name, sense) in declaration order
    row_sense: dict[str, str] = {}
    row_terms: dict[str, list[tuple[str, float]]] = {}
    row_rhs: dict[str, float] = {}
    obj_terms: list[tuple[str, float]] = []
    obj_constant = 0.0
    var_order: list[str] = []
    var_kind: dict[str, str] = {}
    var_lo: dict[str, float] = {}
    var_hi: dict[str, float] = {}
    in_int = False
    expect_objsense = False

    def ensure_var(v: str) -> None:
        if v not in var_kind:
            var_order.append(v)
            var_kind[v] = INTEGER if in_int else CONTINUOUS
            var_lo[v] = 0.0
            var_hi[v] = math.inf

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line or line.startswith("*"):
            continue
        head = not line[0].isspace()
        tok = line.split()
        if head:
            keyword = tok[0].upper()
            if keyword == "NAME":
                name = tok[1] if len(tok) > 1 else "model"
                section = "NAME"
                continue
            if keyword in ("ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA",
                           "OBJSENSE"):
                if keyword == "RANGES":
                    raise MpsParseError("RANGES section is not supported")
                section = keyword
                expect_objsense = keyword == "OBJSENSE"
                if expect_objsense and len(tok) > 1:
                    _check_objsense(tok[1], lineno)
                    expect_objsense = False
                if keyword == "ENDATA":
                    break
                continue
            raise MpsParseError(f"line {lineno}: unknown section {tok[0]!r}")

        if expect_objsense:
            _check_objsense(tok[0], lineno)
            expect_objsense = False
            continue
        if section == "ROWS":
            if len(tok) != 2:
                raise MpsParseError(f"line {lineno}: malformed row declaration")
            rtype, rname = tok[0].upper(), tok[1]
            if rtype == "N":
                if obj_row is None:
                    obj_row = rname
                continue
            if rtype not in _ROW_TO_SENSE:
                raise MpsParseError(f"line {lineno}: unknown row type {rtype!r}")
            rows.append((rname, _ROW_TO_SENSE[rtype]))
            row_sense[rname] = _ROW_TO_SENSE[rtype]
            row_terms[rname] = []
        elif section == "COLUMNS":
            if len(tok) >= 3 and tok[1] == "'MARKER'":
                marker = tok[-1].strip("'").upper()
                if marker == "INTORG":
                    in_int = True
                elif marker == "INTEND":
                    in_int = False
                else:
                    raise MpsParseError(f"line {lineno}: unknown marker {marker!r}")
                continue
            if len(tok) < 3 or len(tok) % 2 == 0:
                raise MpsParseError(f"line {lineno}: malformed COLUMNS entry")
            vname = tok[0]
            ensure_var(vname)
            for rname, val in zip(tok[1::2], tok[2::2]):
                coef = _parse_num(val, lineno)
                if rname == obj_row:
                    obj_terms.append((vname, coef))
                elif rname in row_terms:
                    row_terms[rname].append((vname, coef))
                else:
                    raise MpsParseError(f"line {lineno}: unknown row {rname!r}")
        elif section == "RHS":
            if len(tok) < 3 or len(tok) % 2 == 0:
                raise MpsParseError(f"line {lineno}: malformed RHS entry")
            for rname, val in zip(tok[1::2], tok[2::2]):
                v = _parse_num(val, lineno)
                if rname == obj_row:
                    obj_constant = -v
                elif rname in row_sense:
                    row_rhs[rname] = v
                else:
                    raise MpsParseError(f"line {lineno}: unknown row {rname!r}")
        elif section == "BOUNDS":
            btype = tok[0].upper()
            if btype in ("FR", "MI", "PL", "BV"):
                if len(tok) != 3:
                    raise MpsParseError(f"line {lineno}: malformed bound")
                vname = tok[2]
                ensure_var(vname)
                if btype == "FR":
                    var_lo[vname], var_hi[vname] = -math.inf, math.inf
                elif btype == "MI":
                    var_lo[vname] = -math.inf
                elif btype == "PL":
                    var_hi[vname] = math.inf
                else:  # BV
                    var_kind[vname] = BINARY
                    var_lo[vname], var_hi[vname] = 0.0, 1.0
            elif btype in ("UP", "LO", "FX", "UI", "LI"):
                if len(tok) != 4:
                    raise MpsParseError(f"line {lineno}: malformed bound")
                vname = tok[2]
                ensure_var(vname)
                val = _parse_num(tok[3], lineno)
                if btype in ("UP", "UI"):
                    var_hi[vname] = val
                elif btype in ("LO", "LI"):
                    var_lo[vname] = val
                else:
                    var_lo[vname] = var_hi[vname] = val
                if btype in ("UI", "LI"):
                    var_kind[vname] = INTEGER
            else:
                raise MpsParseError(f"line {lineno}: unknown bound type {btype!r}")
        elif section in ("NAME", None):
            raise MpsParseError(f"line {lineno}: data outside of a section")

    model = MilpModel(name)
    for vname in var_order:
        model.add_var(vname, var_lo[vname], var_hi[vname], var_kind[vname])
    for rname, sense in rows:
        model.add_constraint(rname, row_terms[rname], sense, row_rhs.get(rname, 0.0))
    model.set_objective(obj_terms, obj_constant)
    return model


def _check_objsense(token: str, lineno: int) -> None:
    sense = token.upper()
    if sense in ("MIN", "MINIMIZE"):
        return
    raise MpsParseError(f"line {lineno}: only minimization supported, got {token!r}")


def _parse_num(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise MpsParseError(f"line {lineno}: bad number {token!r}") from None
