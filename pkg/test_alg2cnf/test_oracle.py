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
import json
import os
import random
import tempfile
from dataclasses import replace
from unittest import TestCase, skipUnless

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers, lists

from alg2cnf.cnf.clauses import literal
from alg2cnf.cnf.dimacs import dimacs_text, variable_map
from alg2cnf.corpus import NAMES, corpus_root, get
from alg2cnf.exceptions import Alg2CnfError, EncodingError
from alg2cnf.execution import TracePoint, execute
from alg2cnf.instances import (
    CubeStream,
    collision_instance,
    cube_instance,
    inversion_instance,
    partition,
    read_conditions,
)
from alg2cnf.instances.partition import write_cubes
from alg2cnf.lang.frontend import compile_source
from alg2cnf.oracle import (
    check_agreement,
    brute_force_invert,
    concrete_trace,
    run_concrete,
    run_concrete_batch,
    solve_instance,
    verify_collision,
    verify_forward,
    verify_inversion,
)
from alg2cnf.pipeline import translate
from alg2cnf.solving import SolveConfig, Status, solve
from alg2cnf.utils import random_bits
from test_alg2cnf.test_exec import MIXER
from test_alg2cnf.test_instances import ADDER, MASKED

GEFFE = """
__in bit x1, x2, x3;
__out bit z;
void main() {
    z = (x1 & x2) ^ (x2 & x3) ^ (x1 & x3);
}
"""

WIDE = """
__in bit k[14];
__out bit z[2];
void main() {
    z[0] = k[0] ^ k[13];
    z[1] = k[5] & k[13];
}
"""

BOUNDS = "__in bit a, b; __out bit c, d; void main() { c = a & b; d = a | b; }"


class TestConcrete(TestCase):
    def test_combiner(self):
        program = compile_source(GEFFE, name="geffe")
        self.assertEqual([1], run_concrete(program, [1, 1, 0]))
        self.assertEqual([0], run_concrete(program, [0, 0, 1]))

    def test_batch(self):
        program = compile_source(BOUNDS, name="bounds")
        rows = [[(i >> 1) & 1, i & 1] for i in range(5000)]
        outputs = run_concrete_batch(program, rows)
        self.assertEqual(5000, len(outputs))
        for (a, b), output in zip(rows, outputs):
            self.assertEqual([a & b, a | b], output)
        self.assertEqual([], run_concrete_batch(program, []))

    def test_trace(self):
        program = compile_source(
            "__in bit a, b; __out bit o; void main() { bit t = a & b; t = t ^ a; o = ~t; }",
            name="traced",
        )
        trace = concrete_trace(program, [1, 1])
        self.assertEqual(1, trace[TracePoint("main", "t", None, 0)])
        self.assertEqual(0, trace[TracePoint("main", "t", None, 1)])
        self.assertEqual(1, trace[TracePoint("traced", "a", None, 0)])
        self.assertEqual(1, trace[TracePoint("traced", "o", None, 0)])

    @settings(max_examples=30, deadline=None)
    @given(lists(lists(integers(0, 1), min_size=17, max_size=17), min_size=1, max_size=4))
    def test_agrees_with_formula(self, rows):
        program = compile_source(MIXER, name="mixer")
        encoding = execute(program)
        self.assertEqual([encoding.eval(row) for row in rows], run_concrete_batch(program, rows))


class TestBruteForce(TestCase):
    @settings(max_examples=20, deadline=None)
    @given(integers(0, 255))
    def test_contains_input(self, value):
        program = compile_source(ADDER, name="adder")
        x = [(value >> (7 - i)) & 1 for i in range(8)]
        preimages = brute_force_invert(program, run_concrete(program, x))
        self.assertIn(x, preimages)
        # a + b has 16 preimages for every sum
        self.assertEqual(16, len(preimages))

    def test_several_batches(self):
        program = compile_source(WIDE, name="wide")
        preimages = brute_force_invert(program, [1, 1])
        self.assertEqual(1 << 11, len(preimages))
        for x in preimages:
            self.assertEqual((0, 1, 1), (x[0], x[5], x[13]))
        self.assertEqual(preimages, sorted(preimages))

    def test_out_of_range(self):
        program = compile_source(BOUNDS, name="bounds")
        self.assertEqual([], brute_force_invert(program, [1, 0]))
        constant = compile_source("__in bit k[3]; __out bit z; void main() { z = 1; }")
        self.assertEqual(8, len(brute_force_invert(constant, [1])))
        self.assertEqual([], brute_force_invert(constant, [0]))

    def test_limits(self):
        program = compile_source("__in bit k[25]; __out bit z; void main() { z = k[3]; }")
        with self.assertRaises(Alg2CnfError):
            brute_force_invert(program, [1])
        with self.assertRaises(Alg2CnfError):
            brute_force_invert(compile_source(BOUNDS), [1])


class TestVerify(TestCase):
    def test_forward(self):
        program = compile_source(MIXER, name="mixer")
        __, template = translate(program)
        report = verify_forward(program, template, trials=40, seed=5)
        self.assertTrue(report.passed, report.lines())
        self.assertEqual(40, report.trials)
        data = json.loads(report.to_json())
        self.assertEqual(5, data["seed"])
        self.assertTrue(data["passed"])

    def test_corrupted(self):
        program = compile_source("__in bit a, b; __out bit c; void main() { c = a & b; }")
        __, template = translate(program)
        self.assertEqual((1, -3), template.clauses[0])
        corrupted = replace(template, clauses=[(-1, -3)] + template.clauses[1:])
        report = verify_forward(program, corrupted, trials=64, seed=1)
        self.assertFalse(report.passed)
        # a = b = 1 contradicts the corrupted clause, a = 0 with b = 1 leaves c open
        self.assertEqual({"conflict", "undetermined"}, {x.status for x in report.failures})
        self.assertIn("passed=no", report.lines())
        self.assertTrue(verify_forward(program, corrupted, trials=0).passed)

    def test_mismatched_template(self):
        __, template = translate(compile_source(BOUNDS))
        with self.assertRaises(EncodingError):
            verify_forward(compile_source(ADDER), template)

    def test_agreement(self):
        program = compile_source(MIXER, name="mixer")
        report = check_agreement(program, execute(program, fuse_limit=4), trials=50)
        self.assertTrue(report.passed)

    def test_inversion(self):
        program = compile_source(ADDER, name="adder")
        __, template = translate(program)
        report = verify_inversion(program, template, trials=6, seed=2)
        self.assertTrue(report.passed, report.lines())
        self.assertEqual(0, report.unsat)

    def test_preimage_in_brute_force_set(self):
        program = compile_source(ADDER, name="adder")
        __, template = translate(program)
        for sum_ in range(16):
            y = [(sum_ >> i) & 1 for i in range(4)]
            instance = inversion_instance(template, y)
            result = solve(instance)
            self.assertEqual(Status.SAT, result.status)
            self.assertIn(instance.input_bits(result.model), brute_force_invert(program, y))

    def test_targets(self):
        program = compile_source(BOUNDS, name="bounds")
        __, template = translate(program)
        report = verify_inversion(program, template, targets=[[1, 0], [1, 1], [0, 1]])
        self.assertTrue(report.passed)
        self.assertEqual(3, report.trials)
        self.assertEqual(1, report.unsat)
        self.assertIsNone(report.seed)


class TestCollision(TestCase):
    program = compile_source(MASKED, name="pair")

    def test_collision(self):
        instance = collision_instance(self.program, distinct_inputs=True)
        result = solve(instance)
        check = verify_collision(self.program, instance, result.model)
        self.assertTrue(check.valid)
        self.assertTrue(check.equal_outputs)
        self.assertIn("collision=yes", check.lines())

    def test_free_chaining_value(self):
        instance = collision_instance(self.program, overrides={"IV": "free"})
        model = [1] * instance.var_count
        check = verify_collision(self.program, instance, model)
        self.assertEqual(tuple([1] * 32), check.first_globals["IV"])
        self.assertEqual(check.first_globals, check.second_globals)
        self.assertFalse(check.distinct)
        self.assertFalse(check.valid)

    def test_not_a_collision_instance(self):
        __, template = translate(self.program)
        instance = inversion_instance(template, [0] * 8)
        with self.assertRaises(Alg2CnfError):
            verify_collision(self.program, instance, [1] * instance.var_count)


class TestCorpusInstances(TestCase):
    def test_lfsr16_partitioning(self):
        entry = get("lfsr16")
        __, template = translate(entry.program)
        x = random_bits(random.Random(16), 16)
        y = run_concrete(entry.program, x)
        instance = inversion_instance(template, y)
        stream = partition(instance, entry.decomposition())
        self.assertEqual(256, len(stream))
        positions = [template.input_vars.index(var) for var in stream.variables]
        expected = {
            tuple(literal(var, p[i]) for var, i in zip(stream.variables, positions))
            for p in brute_force_invert(entry.program, y)
        }
        statuses = {}
        for cube in stream:
            statuses[cube] = solve(cube_instance(instance, cube)).status
        sat = {cube for cube, status in statuses.items() if status is Status.SAT}
        self.assertEqual(expected, sat)
        self.assertEqual(1, len(sat))
        self.assertEqual(255, list(statuses.values()).count(Status.UNSAT))
        self.assertEqual(1 << 31, CubeStream(list(range(1, 32))).count)

    def test_maj3_collision(self):
        program = get("maj3").program
        instance = collision_instance(program, distinct_inputs=True)
        result = solve(instance)
        self.assertEqual(Status.SAT, result.status)
        check = verify_collision(program, instance, result.model)
        self.assertTrue(check.valid, check.lines())
        preimages = brute_force_invert(program, check.first_output)
        self.assertIn(check.first, preimages)
        self.assertIn(check.second, preimages)

    def test_deterministic_outputs(self):
        for name in ("geffe96", "a5_1"):
            program = get(name, validate=False).program
            first, second = translate(program)[1], translate(program)[1]
            self.assertEqual(dimacs_text(first), dimacs_text(second), name)
            self.assertEqual(variable_map(first), variable_map(second), name)
        __, template = translate(get("a5_1", validate=False).program)
        instance = inversion_instance(template, [0] * len(template.outputs))
        texts = []
        with tempfile.TemporaryDirectory() as dirname:
            for copy in range(2):
                path = os.path.join(dirname, f"cubes{copy}.icnf")
                stream = partition(
                    instance, template.input_vars[:20], mode="sample", count=50, seed=4
                )
                self.assertEqual(50, write_cubes(stream, path))
                with open(path) as fd:
                    texts.append(fd.read())
        self.assertEqual(texts[0], texts[1])


@pytest.mark.slow
class TestWholeCorpusEncodings(TestCase):
    def test_forward_soundness(self):
        for name in NAMES:
            entry = get(name, validate=False)
            __, template = translate(entry.program)
            report = verify_forward(entry.program, template, trials=20, seed=7)
            self.assertTrue(report.passed, report.lines())

    def test_geffe96_inversion(self):
        entry = get("geffe96", validate=False)
        __, template = translate(entry.program)
        report = verify_inversion(
            entry.program, template, trials=10, seed=1, config=SolveConfig(time_limit=600)
        )
        self.assertTrue(report.passed, report.lines())
        self.assertEqual(0, report.unknown)

    @skipUnless(importlib.util.find_spec("pysat"), "python-sat is not installed")
    def test_md5_eleven_zero_bytes(self):
        path = os.path.join(corpus_root(), "md5", "conditions", "stage1_zero11.txt")
        instance = collision_instance(get("md5", validate=False).program, read_conditions(path))
        result = solve_instance(
            instance, SolveConfig(external="pysat:cadical153", time_limit=3600)
        )
        self.assertEqual(Status.UNSAT, result.status)
