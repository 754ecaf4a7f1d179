# ##############################################################################
#  This file is part of alg2cnf                                                #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
import importlib.util
import itertools
import os
import sys
import tempfile
import threading
import time
from unittest import TestCase, skipUnless

from hypothesis import given, settings
from hypothesis.strategies import integers, lists, sampled_from

from alg2cnf.cnf.clauses import TemplateCnf, unsatisfied
from alg2cnf.exceptions import ImproperlyConfigured, SolverError, SolverMismatch
from alg2cnf.instances import CubeStream, Instance, inversion_instance
from alg2cnf.lang.frontend import compile_source
from alg2cnf.pipeline import translate
from alg2cnf.solving import (
    CdclSolver,
    SolveConfig,
    SolveResult,
    Status,
    check_model,
    propagate,
    solve,
    solve_cubes,
    solve_external,
)
from alg2cnf.solving.cdcl import luby
from alg2cnf.solving.cubes import solve_one
from alg2cnf.solving.external import parse_solver_output
from test_alg2cnf.test_instances import ADDER

WIDTH = 7
LITERALS = integers(1, WIDTH).flatmap(lambda v: sampled_from([v, -v]))
CLAUSES = lists(lists(LITERALS, min_size=1, max_size=3), min_size=1, max_size=30)


def instance_of(clauses, var_count, assumptions=()):
    template = TemplateCnf("test", var_count, [tuple(sorted(set(x), key=abs)) for x in clauses])
    return Instance(template, tuple(assumptions))


def pigeonhole(holes):
    """Clauses of `holes + 1` pigeons in `holes` holes; variable p * holes + h + 1."""

    def var(pigeon, hole):
        return pigeon * holes + hole + 1

    clauses = [[var(p, h) for h in range(holes)] for p in range(holes + 1)]
    for h in range(holes):
        for p, q in itertools.combinations(range(holes + 1), 2):
            clauses.append([-var(p, h), -var(q, h)])
    return instance_of(clauses, (holes + 1) * holes)


def brute_force(clauses, assumptions=()):
    for values in itertools.product((0, 1), repeat=WIDTH):
        assignment = (0,) + values
        if any(assignment[abs(x)] != (x > 0) for x in assumptions):
            continue
        if not unsatisfied(clauses, assignment):
            return True
    return False


def fake_solver(dirname, output, code=0, delay=0):
    """Command of a script printing `output` and exiting with `code`."""
    path = os.path.join(dirname, "solver.py")
    with open(path, "w") as fd:
        fd.write("import sys, time\n")
        fd.write(f"time.sleep({delay})\n")
        fd.write(f"sys.stdout.write({output!r})\n")
        fd.write(f"sys.exit({code})\n")
    return f"{sys.executable} {path}"


class TestCdcl(TestCase):
    @settings(max_examples=150, deadline=None)
    @given(CLAUSES, lists(LITERALS, max_size=3), integers(0, 3))
    def test_brute_force(self, clauses, assumptions, seed):
        instance = instance_of(clauses, WIDTH, assumptions)
        result = solve(instance, SolveConfig(seed=seed, restart_base=1))
        expected = brute_force(clauses, assumptions)
        self.assertEqual(Status.SAT if expected else Status.UNSAT, result.status)
        if expected:
            self.assertEqual([], unsatisfied(clauses, [0] + [int(x > 0) for x in result.model]))
        else:
            self.assertTrue(set(result.core) <= set(assumptions))
            self.assertFalse(brute_force(clauses, result.core))

    def test_pigeonhole(self):
        result = solve(pigeonhole(4))
        self.assertEqual(Status.UNSAT, result.status)
        self.assertEqual([], result.core)
        self.assertGreater(result.stats["conflicts"], 1)
        self.assertEqual(result.exit_code, 20)

    def test_trivial(self):
        result = solve(instance_of([[1], [-1, 2]], 3))
        self.assertEqual(Status.SAT, result.status)
        self.assertEqual([1, 2], result.model[:2])
        self.assertEqual(3, len(result.model))
        self.assertEqual(10, result.exit_code)
        self.assertEqual(Status.UNSAT, solve(instance_of([[1], [-1]], 1)).status)

    def test_core(self):
        instance = instance_of([[-1, 2]], 3, [3, 1, -2])
        result = solve(instance)
        self.assertEqual(Status.UNSAT, result.status)
        self.assertEqual({1, -2}, set(result.core))
        result = solve(instance_of([[2, 3]], 3, [1, -1]))
        self.assertEqual({1, -1}, set(result.core))

    def test_input_priority(self):
        __, template = translate(compile_source(ADDER, name="adder"))
        instance = inversion_instance(template, [1, 0, 1, 1])
        result = solve(instance, SolveConfig(input_priority=2))
        self.assertEqual(Status.SAT, result.status)
        self.assertTrue(result.decisions)
        self.assertTrue(set(abs(x) for x in result.decisions) <= set(template.input_vars))
        # inputs first is the default
        self.assertEqual(2.0, SolveConfig().input_priority)
        result = solve(instance)
        self.assertTrue(set(abs(x) for x in result.decisions) <= set(template.input_vars))
        result = solve(instance, SolveConfig(decision_log=0))
        self.assertEqual([], result.decisions)

    def test_limits(self):
        instance = pigeonhole(5)
        result = solve(instance, SolveConfig(conflict_limit=1))
        self.assertEqual(Status.UNKNOWN, result.status)
        self.assertEqual("UNKNOWN(conflict-limit)", str(result))
        self.assertIsNone(result.model)
        self.assertEqual(0, result.exit_code)
        result = solve(instance, SolveConfig(time_limit=1e-9))
        self.assertEqual("time-limit", result.reason)
        stop = threading.Event()
        stop.set()
        self.assertEqual("interrupted", solve(instance, stop_event=stop).reason)

    def test_incremental(self):
        solver = CdclSolver(3)
        self.assertTrue(solver.add_clause([1, 2]))
        self.assertTrue(solver.add_clause([-1, 3]))
        self.assertEqual(Status.UNSAT, solver.solve([-2, -3]).status)
        self.assertEqual(Status.SAT, solver.solve([-2]).status)
        self.assertFalse(solver.add_clause([-3]) and solver.add_clause([-2]))

    def test_luby(self):
        sequence = [int(luby(2, i)) for i in range(15)]
        self.assertEqual([1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8], sequence)


class TestPropagate(TestCase):
    def test_fixpoint(self):
        instance = instance_of([[-1, 2], [-2, 3], [4, 5]], 5)
        propagation = propagate(instance, [1])
        self.assertFalse(propagation.conflict)
        self.assertEqual({1: 1, 2: 1, 3: 1}, propagation.values)
        self.assertIsNone(propagation.value(4))
        self.assertTrue(propagate(instance, [1, -3]).conflict)
        self.assertEqual({}, propagate(instance).values)

    def test_forward(self):
        program = compile_source(ADDER, name="adder")
        __, template = translate(program)
        row = [1, 0, 1, 0, 1, 1, 0, 0]
        assumptions = [x if bit else -x for x, bit in zip(template.input_vars, row)]
        propagation = propagate(Instance(template), assumptions)
        self.assertFalse(propagation.conflict)
        # 5 + 3
        self.assertEqual([0, 0, 0, 1], [propagation.value(x) for x in template.output_vars])


class TestConfig(TestCase):
    def test_validation(self):
        for kwargs in (
            {"var_decay": 1.0},
            {"clause_decay": 0},
            {"input_priority": 0.5},
            {"restart_base": 0},
            {"jobs": 0},
            {"time_limit": -1},
        ):
            with self.assertRaises(ImproperlyConfigured):
                SolveConfig(**kwargs)

    def test_from_settings(self):
        config = SolveConfig.from_settings(
            {"SOLVER_INPUT_PRIORITY": 4.0, "SOLVER_TIME_LIMIT": None, "SOLVER_JOBS": 2}
        )
        self.assertEqual(4.0, config.input_priority)
        self.assertEqual(0.0, config.time_limit)
        self.assertEqual(2, config.jobs)
        self.assertEqual(0.95, config.var_decay)

    def test_result(self):
        with self.assertRaises(ValueError):
            SolveResult(Status.SAT)
        with self.assertRaises(ValueError):
            SolveResult(Status.UNSAT, model=[1])
        result = SolveResult(Status.SAT, list(range(1, 13)))
        self.assertEqual(
            ["s SATISFIABLE", "v 1 2 3 4 5 6 7 8 9 10", "v 11 12", "v 0"],
            result.competition_lines(),
        )

    def test_check_model(self):
        instance = instance_of([[1, 2]], 2, [-1])
        check_model(instance, [-1, 2])
        for model in ([-1, -2], [1, 2], [-1]):
            with self.assertRaises(SolverMismatch):
                check_model(instance, model)


class TestExternal(TestCase):
    instance = instance_of([[1], [-1, -2]], 2)

    def test_parse(self):
        self.assertEqual((Status.UNSAT, []), parse_solver_output("s UNSATISFIABLE\n"))
        self.assertEqual((None, []), parse_solver_output("c nothing\n"))
        self.assertEqual((Status.SAT, [1, 2]), parse_solver_output("s SATISFIABLE\nv 1 x 2 0"))

    def test_answers(self):
        with tempfile.TemporaryDirectory() as dirname:
            command = fake_solver(dirname, "s SATISFIABLE\nv 1 -2 0\n", 10)
            result = solve_external(self.instance, command)
            self.assertEqual(Status.SAT, result.status)
            self.assertEqual([1, -2], result.model)
            self.assertEqual(command, result.solver)
            command = fake_solver(dirname, "s UNSATISFIABLE\n", 20)
            self.assertEqual(Status.UNSAT, solve_external(self.instance, command).status)
            command = fake_solver(dirname, "", 20)
            self.assertEqual(Status.UNSAT, solve_external(self.instance, command).status)
            command = fake_solver(dirname, "c crashed\n", 1)
            result = solve_external(self.instance, command)
            self.assertEqual("UNKNOWN(external-failure)", str(result))
            command = fake_solver(dirname, "s SATISFIABLE\nv 1 2 0\n", 10)
            with self.assertRaises(SolverMismatch):
                solve_external(self.instance, command)

    def test_timeout(self):
        with tempfile.TemporaryDirectory() as dirname:
            command = fake_solver(dirname, "s UNSATISFIABLE\n", 20, delay=5)
            result = solve_external(self.instance, command, SolveConfig(time_limit=0.5))
        self.assertEqual("UNKNOWN(timeout)", str(result))

    def test_stop_event(self):
        stop_event = threading.Event()
        timer = threading.Timer(0.3, stop_event.set)
        with tempfile.TemporaryDirectory() as dirname:
            command = fake_solver(dirname, "s UNSATISFIABLE\n", 20, delay=30)
            start = time.monotonic()
            timer.start()
            try:
                result = solve_external(self.instance, command, stop_event=stop_event)
            finally:
                timer.cancel()
        self.assertEqual("UNKNOWN(interrupted)", str(result))
        self.assertLess(time.monotonic() - start, 10)

    def test_stopped_cube_workers(self):
        stop_event = threading.Event()
        stop_event.set()
        with tempfile.TemporaryDirectory() as dirname:
            config = SolveConfig(external=fake_solver(dirname, "s UNSATISFIABLE\n", 20, delay=30))
            start = time.monotonic()
            result = solve_one(self.instance, [2], config, stop_event=stop_event)
        self.assertEqual("UNKNOWN(interrupted)", str(result))
        self.assertLess(time.monotonic() - start, 10)

    def test_missing(self):
        with self.assertRaises(SolverError):
            solve_external(self.instance, "/nonexistent/solver --quiet")
        with self.assertRaises(SolverError):
            solve_external(self.instance, "  ")

    @skipUnless(importlib.util.find_spec("pysat"), "python-sat is not installed")
    def test_pysat(self):
        result = solve_external(self.instance, "pysat:minisat22")
        self.assertEqual(Status.SAT, result.status)
        self.assertEqual([1, -2], result.model)
        self.assertEqual("pysat:minisat22", result.solver)
        instance = self.instance.extend([2])
        result = solve_external(instance, "pysat:minisat22")
        self.assertEqual(Status.UNSAT, result.status)
        self.assertEqual([2], [abs(x) for x in result.core])


class TestCubes(TestCase):
    def setUp(self):
        __, self.template = translate(compile_source(ADDER, name="adder"))

    def test_first_sat(self):
        # s = 3 needs a[0] ^ b[0]
        instance = inversion_instance(self.template, [1, 1, 0, 0])
        report = solve_cubes(instance, CubeStream([1, 5]))
        self.assertEqual(Status.SAT, report.status)
        self.assertEqual((-1, 5), report.cube)
        self.assertEqual({"UNSAT": 1, "SAT": 1}, report.counts)
        self.assertEqual(10, report.exit_code)
        self.assertIn("cube=-1 5", report.stat_lines())

    def test_all_unsat(self):
        instance = inversion_instance(self.template, [1, 1, 0, 0]).extend([1, 5])
        report = solve_cubes(instance, CubeStream([2, 6]))
        self.assertEqual(Status.UNSAT, report.status)
        self.assertEqual({"UNSAT": 4}, report.counts)
        self.assertEqual(20, report.exit_code)
        self.assertIsNone(report.cube)

    def test_results_are_streamed(self):
        instance = inversion_instance(self.template, [1, 1, 0, 0]).extend([1, 5])
        seen = []
        report = solve_cubes(
            instance, CubeStream([2, 6]), on_result=lambda cube, r: seen.append((cube, r.status))
        )
        self.assertEqual(4, report.solved)
        self.assertEqual(
            [((-2, -6), Status.UNSAT), ((-2, 6), Status.UNSAT)], seen[:2]
        )
        self.assertEqual(4, len(seen))
        self.assertEqual(
            {"status", "result", "cube", "counts", "wall_time"}, set(vars(report))
        )

    def test_unknown(self):
        instance = pigeonhole(5)
        report = solve_cubes(instance, CubeStream([1]), SolveConfig(conflict_limit=1))
        self.assertEqual(Status.UNKNOWN, report.status)
        self.assertEqual(0, report.exit_code)

    def test_parallel(self):
        instance = inversion_instance(self.template, [0, 1, 1, 0])
        report = solve_cubes(instance, CubeStream([1, 2, 5, 6]), jobs=2)
        self.assertEqual(Status.SAT, report.status)
        model = report.result.model
        self.assertEqual([0, 1, 1, 0], instance.output_bits(model))
        for lit in report.cube:
            self.assertEqual(lit, model[abs(lit) - 1])
        # with a[0] = b[0] = 1, the carry forces a[1] = b[1]
        instance = instance.extend([1, 5])
        report = solve_cubes(instance, CubeStream([2, 6]), jobs=2)
        self.assertEqual(Status.SAT, report.status)
        self.assertEqual(report.cube[0] > 0, report.cube[1] > 0)
