import math
import os
import stat
import sys
import textwrap

import pytest

from gridgas.milp import (
    BINARY,
    CONTINUOUS,
    EQ,
    GE,
    INTEGER,
    LE,
    DuplicateName,
    ExternalAdapter,
    MilpModel,
    NonFiniteCoefficient,
    ScipyAdapter,
    SolutionParseError,
    SolverCrash,
    SolverNotFound,
    parse_mps,
    parse_solution_file,
    solve,
    write_mps,
    write_solution_file,
)
from gridgas.milp.model import Solution


def one_var_lp():
    m = MilpModel("toy")
    x = m.add_var("x", lo=0.0)
    m.add_constraint("cap", [(x, 1.0)], LE, 5.0)
    m.set_objective([(x, -1.0)])
    return m


class TestBuilder:
    def test_one_var_lp_solves(self):
        sol = solve(one_var_lp())
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(-5.0)
        assert sol.values["x"] == pytest.approx(5.0)

    def test_duplicate_var_name(self):
        m = MilpModel()
        m.add_var("x")
        with pytest.raises(DuplicateName):
            m.add_var("x")

    def test_duplicate_constraint_name(self):
        m = MilpModel()
        x = m.add_var("x")
        m.add_constraint("c", [(x, 1.0)], LE, 1.0)
        with pytest.raises(DuplicateName):
            m.add_constraint("c", [(x, 2.0)], LE, 1.0)

    def test_nonfinite_coefficient(self):
        m = MilpModel()
        x = m.add_var("x")
        with pytest.raises(NonFiniteCoefficient):
            m.add_constraint("c", [(x, math.nan)], LE, 1.0)
        with pytest.raises(NonFiniteCoefficient):
            m.add_constraint("c2", [(x, 1.0)], LE, math.inf)

    def test_empty_integer_box_is_infeasible(self):
        m = MilpModel()
        m.add_var("n", lo=0.2, hi=0.8, kind=INTEGER)
        m.set_objective([])
        assert solve(m).status == "infeasible"

    def test_infeasible_toy(self):
        m = MilpModel()
        x = m.add_var("x")
        m.add_constraint("ge1", [(x, 1.0)], GE, 1.0)
        m.add_constraint("le0", [(x, 1.0)], LE, 0.0)
        assert solve(m).status == "infeasible"

    def test_unbounded(self):
        m = MilpModel()
        x = m.add_var("x")
        m.set_objective([(x, -1.0)])
        assert solve(m).status == "unbounded"

    def test_terms_merge_and_names(self):
        m = MilpModel()
        x = m.add_var("x")
        m.add_constraint("c", [(x, 1.0), ("x", 2.0)], EQ, 3.0)
        _, terms, sense, rhs = m.constraint("c")
        assert terms == ((x, 3.0),)
        assert sense == EQ and rhs == 3.0

    def test_whitespace_name_rejected(self):
        m = MilpModel()
        with pytest.raises(ValueError):
            m.add_var("bad name")

    def test_objective_constant(self):
        m = one_var_lp()
        m.add_objective_terms([], constant=10.0)
        sol = solve(m)
        assert sol.objective == pytest.approx(5.0)


class TestMps:
    def test_empty_model(self):
        text = write_mps(MilpModel("empty"))
        assert text.startswith("NAME empty")
        for section in ("ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"):
            assert section in text
        again = parse_mps(text)
        assert again.num_vars == 0 and again.num_constraints == 0

    def test_roundtrip_byte_identical(self):
        m = MilpModel("rt")
        x = m.add_var("x", lo=-1.5, hi=4.0)
        y = m.add_var("y", kind=INTEGER, hi=7)
        b = m.add_var("b", kind=BINARY)
        f = m.add_var("free", lo=-math.inf, hi=math.inf)
        m.add_constraint("c1", [(x, 1.0), (y, -2.25)], LE, 5.0)
        m.add_constraint("c2", [(y, 1.0), (b, 1.0), (f, 0.5)], EQ, 1.0)
        m.add_constraint("c3", [(x, 3.0)], GE, -2.0)
        m.set_objective([(x, 1.0), (b, -1.0)], constant=2.5)
        text = write_mps(m)
        assert write_mps(parse_mps(text)) == text

    def test_roundtrip_preserves_structure(self):
        m = MilpModel("rt2")
        x = m.add_var("x", hi=9.0)
        y = m.add_var("y", kind=INTEGER, hi=3)
        m.add_constraint("c", [(x, 2.0), (y, 1.0)], LE, 4.5)
        m.set_objective([(x, -1.0), (y, -1.0)])
        p = parse_mps(write_mps(m))
        assert p.var_bounds("x") == (0.0, 9.0)
        assert p.var_kind("y") == INTEGER
        assert p.constraint("c")[1:] == m.constraint("c")[1:]
        assert p.objective_coef("x") == -1.0

    def test_reparse_solves_to_same_optimum(self):
        m = one_var_lp()
        sol1 = solve(m)
        sol2 = solve(parse_mps(write_mps(m)))
        assert sol2.objective == pytest.approx(sol1.objective)

    def test_contiguous_integers_one_marker_pair(self):
        m = MilpModel("ints")
        for i in range(10):
            m.add_var(f"n{i}", kind=INTEGER, hi=1)
        m.set_objective([])
        text = write_mps(m)
        assert text.count("'INTORG'") == 1
        assert text.count("'INTEND'") == 1

    def test_interleaved_kinds_multiple_markers(self):
        m = MilpModel()
        m.add_var("a", kind=INTEGER, hi=1)
        m.add_var("c", hi=1.0)
        m.add_var("b", kind=INTEGER, hi=1)
        text = write_mps(m)
        assert text.count("'INTORG'") == 2

    def test_ranges_rejected(self):
        text = "NAME x\nROWS\n N OBJ\nRANGES\nENDATA\n"
        with pytest.raises(ValueError):
            parse_mps(text)

    def test_integer_bounds_explicit(self):
        m = MilpModel()
        m.add_var("n", kind=INTEGER, hi=7)
        text = write_mps(m)
        assert " LO BND  n  0" in text
        assert " UP BND  n  7" in text


class TestFixedIntegerRestriction:
    def test_fixed_integers_match_lp_restriction(self):
        m = MilpModel("mix")
        x = m.add_var("x", hi=10.0)
        n = m.add_var("n", kind=INTEGER, hi=3)
        m.add_constraint("c", [(x, 1.0), (n, 2.0)], LE, 8.0)
        m.set_objective([(x, -1.0), (n, -1.5)])
        best = solve(m, mip_gap=0.0)
        # enumerate the integer by hand and solve each LP restriction
        lp_best = math.inf
        for v in range(4):
            lp = MilpModel("lp")
            xx = lp.add_var("x", hi=10.0)
            lp.add_constraint("c", [(xx, 1.0)], LE, 8.0 - 2.0 * v)
            lp.set_objective([(xx, -1.0)], constant=-1.5 * v)
            s = solve(lp)
            if s.status == "optimal":
                lp_best = min(lp_best, s.objective)
        assert best.objective == pytest.approx(lp_best, rel=1e-9)


def _write_stub_solver(tmp_path, body: str) -> str:
    script = tmp_path / "stub_solver.py"
    script.write_text(textwrap.dedent(body))
    return str(script)


class TestExternalAdapter:
    def test_stub_solver_roundtrip(self, tmp_path):
        # stub echoes a fixed optimal solution in the documented format
        script = _write_stub_solver(tmp_path, """
            import sys
            mps, sol = sys.argv[1], sys.argv[2]
            assert open(mps).read().startswith("NAME")
            with open(sol, "w") as fh:
                fh.write("=status= optimal\\n=obj= -5.0\\nx 5.0\\n")
        """)
        adapter = ExternalAdapter([sys.executable, script, "{mps}", "{sol}"])
        sol = solve(one_var_lp(), adapter=adapter)
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(-5.0)
        assert sol.values == {"x": 5.0}

    def test_missing_executable(self):
        adapter = ExternalAdapter(["/no/such/solver-binary", "{mps}", "{sol}"])
        with pytest.raises(SolverNotFound):
            solve(one_var_lp(), adapter=adapter)

    def test_crash_without_solution(self, tmp_path):
        script = _write_stub_solver(tmp_path, """
            import sys
            sys.stderr.write("boom")
            sys.exit(3)
        """)
        adapter = ExternalAdapter([sys.executable, script, "{mps}", "{sol}"])
        with pytest.raises(SolverCrash, match="boom"):
            solve(one_var_lp(), adapter=adapter)

    def test_env_var_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("GRIDGAS_SOLVER", "/no/such/override")
        adapter = ExternalAdapter([sys.executable, "ignored", "{mps}", "{sol}"])
        with pytest.raises(SolverNotFound, match="override"):
            solve(one_var_lp(), adapter=adapter)

    def test_unreported_vars_default_to_zero(self, tmp_path):
        script = _write_stub_solver(tmp_path, """
            import sys
            with open(sys.argv[2], "w") as fh:
                fh.write("=status= optimal\\n")
        """)
        adapter = ExternalAdapter([sys.executable, script, "{mps}", "{sol}"])
        sol = solve(one_var_lp(), adapter=adapter)
        assert sol.objective == pytest.approx(0.0)


class TestSolutionFile:
    def test_write_parse_roundtrip(self, tmp_path):
        sol = Solution("optimal", objective=-5.0, values={"x": 5.0, "y": 0.25})
        path = tmp_path / "s.sol"
        write_solution_file(sol, path)
        back = parse_solution_file(path.read_text())
        assert back.status == "optimal"
        assert back.objective == pytest.approx(-5.0)
        assert back.values == sol.values

    def test_missing_status_rejected(self):
        with pytest.raises(SolutionParseError):
            parse_solution_file("x 1.0\n")

    def test_malformed_line_rejected(self):
        with pytest.raises(SolutionParseError):
            parse_solution_file("=status= optimal\nx 1.0 extra\n")

    def test_bad_number_rejected(self):
        with pytest.raises(SolutionParseError):
            parse_solution_file("=status= optimal\nx abc\n")
