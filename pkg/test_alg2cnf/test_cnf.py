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
import itertools
import os
import tempfile
from unittest import TestCase

from hypothesis import given, settings
from hypothesis.strategies import integers

from alg2cnf.cnf.clauses import TemplateCnf, make_clause, unsatisfied
from alg2cnf.cnf.dimacs import dimacs_text, emit_dimacs, load_template, map_path_for
from alg2cnf.cnf.minimize import cube_rows, minimize_cover
from alg2cnf.cnf.tseitin import (
    and_clauses,
    encode_table,
    ite_clauses,
    not_clauses,
    or_clauses,
    xor_clauses,
)
from alg2cnf.exceptions import EncodingError
from alg2cnf.execution import execute
from alg2cnf.formula import tables
from alg2cnf.formula.dag import FormulaDag
from alg2cnf.lang.frontend import compile_source
from alg2cnf.pipeline import TranslateConfig, translate
from test_alg2cnf.test_exec import MIXER

TABLES = integers(1, 5).flatmap(lambda k: integers(0, tables.full_table(k)).map(lambda t: (k, t)))


def satisfying(clauses, width):
    """Assignments of variables 1..width satisfying all clauses."""
    result = set()
    for values in itertools.product((0, 1), repeat=width):
        if not unsatisfied(clauses, (0,) + values):
            result.add(values)
    return result


def gate_models(width, function):
    """Assignments (u1..uk, v) with v = function(u1..uk); v is the last variable."""
    return {
        values + (function(*values) & 1,)
        for values in itertools.product((0, 1), repeat=width)
    }


def model_assignment(encoding, template, row):
    """Assignment of every template variable computed by evaluating the DAG."""
    nodes = list(template.provenance.values())
    values = encoding.dag.eval(nodes, row)
    assignment = [0] * (template.var_count + 1)
    for var, value in zip(template.provenance, values):
        assignment[var] = value
    for point, var in template.trace.items():
        assert assignment[var] == encoding.dag.eval([encoding.trace[point]], row)[0]
    return assignment


class TestGateEncodings(TestCase):
    def test_not(self):
        clauses = not_clauses(2, 1)
        self.assertEqual(2, len(clauses))
        self.assertEqual(gate_models(1, lambda a: 1 - a), satisfying(clauses, 2))

    def test_and(self):
        clauses = and_clauses(3, [1, 2])
        self.assertEqual([(1, -3), (2, -3), (-1, -2, 3)], clauses)
        self.assertEqual(gate_models(2, lambda a, b: a & b), satisfying(clauses, 3))
        wide = and_clauses(5, [1, 2, 3, 4])
        self.assertEqual(5, len(wide))
        self.assertEqual(
            gate_models(4, lambda a, b, c, d: a & b & c & d), satisfying(wide, 5)
        )

    def test_or(self):
        clauses = or_clauses(3, [1, 2])
        self.assertEqual(3, len(clauses))
        self.assertEqual(gate_models(2, lambda a, b: a | b), satisfying(clauses, 3))

    def test_xor(self):
        clauses = xor_clauses(3, [1, 2])
        self.assertEqual(4, len(clauses))
        self.assertEqual(gate_models(2, lambda a, b: a ^ b), satisfying(clauses, 3))
        self.assertEqual(
            gate_models(3, lambda a, b, c: a ^ b ^ c), satisfying(xor_clauses(4, [1, 2, 3]), 4)
        )

    def test_ite(self):
        def ite(c, t, e):
            return t if c else e

        for extra, count in ((False, 4), (True, 6)):
            clauses = ite_clauses(4, 1, 2, 3, extra=extra)
            self.assertEqual(count, len(clauses))
            self.assertEqual(gate_models(3, ite), satisfying(clauses, 4))

    @settings(max_examples=60, deadline=None)
    @given(TABLES)
    def test_table(self, item):
        k, table = item
        clauses = encode_table(k + 1, list(range(1, k + 1)), table)
        expected = gate_models(k, lambda *bits: tables.table_value(table, bits))
        self.assertEqual(expected, satisfying(clauses, k + 1))

    def test_majority(self):
        clauses = encode_table(4, [1, 2, 3], tables.MAJ3)
        self.assertEqual(6, len(clauses))

    def test_constant_table(self):
        self.assertEqual([(-3,)], encode_table(3, [1, 2], 0))
        self.assertEqual([(3,)], encode_table(3, [1, 2], 0xF))

    def test_identity_table(self):
        dag = FormulaDag()
        a = dag.mk_input()
        self.assertEqual(a, dag.mk_table([a], 0b10))

    def test_arity(self):
        with self.assertRaises(EncodingError):
            encode_table(1, [], 1)


class TestMinimize(TestCase):
    def test_examples(self):
        self.assertEqual("11- 1-1 -11", str(minimize_cover(tables.MAJ3, 3)))
        self.assertEqual("10 01", str(minimize_cover(tables.XOR2, 2)))
        self.assertEqual("1111", str(minimize_cover(0x8000, 4)))
        self.assertEqual("", str(minimize_cover(0, 4)))

    def test_empty_cover_exactness_follows_the_limit(self):
        self.assertTrue(minimize_cover(0, 4).exact)
        self.assertFalse(minimize_cover(0, 4, exact_limit=0).exact)
        self.assertFalse(minimize_cover(tables.full_table(4), 4, 0, polarity=0).exact)

    @settings(max_examples=50, deadline=None)
    @given(TABLES)
    def test_equivalence(self, item):
        k, table = item
        full = tables.full_table(k)
        for exact_limit in (0, 8):
            on_cover = minimize_cover(table, k, exact_limit)
            off_cover = minimize_cover(table, k, exact_limit, polarity=0)
            self.assertEqual(table, on_cover.table())
            self.assertEqual(full ^ table, off_cover.table())
            for first, second in itertools.permutations(on_cover.cubes, 2):
                rows = cube_rows(first, k)
                self.assertNotEqual(rows, rows & cube_rows(second, k))

    @settings(max_examples=40, deadline=None)
    @given(integers(0, tables.full_table(4)))
    def test_exact_is_not_larger(self, table):
        exact = minimize_cover(table, 4)
        greedy = minimize_cover(table, 4, exact_limit=0)
        self.assertTrue(exact.exact)
        self.assertFalse(greedy.exact)
        self.assertLessEqual(len(exact.cubes), len(greedy.cubes))


class TestTseitin(TestCase):
    def test_and2(self):
        program = compile_source("__in bit a, b; __out bit c; void main() { c = a & b; }")
        __, template = translate(program)
        self.assertEqual(3, template.var_count)
        self.assertEqual([(1, -3), (2, -3), (-1, -2, 3)], template.clauses)
        self.assertEqual([("a", 1), ("b", 2)], template.inputs)
        self.assertEqual([("c", 3)], template.outputs)

    def test_input_and_constant_outputs(self):
        program = compile_source(
            "__in bit a; __out bit o, z; void main() { o = a; z = 1; }"
        )
        __, template = translate(program)
        self.assertEqual([("o", 2), ("z", 3)], template.outputs)
        self.assertIn((-1, 2), template.clauses)
        self.assertIn((1, -2), template.clauses)
        self.assertIn((3,), template.clauses)
        template.check()

    def test_pruning(self):
        program = compile_source(
            "__in bit a, b; __out bit o; void main() { bit t = a & b; o = a ^ b; }"
        )
        encoding, pruned = translate(program)
        __, full = translate(program, TranslateConfig(prune=False))
        point = next(x for x in encoding.trace if x.name == "t")
        self.assertNotIn(point, pruned.trace)
        self.assertIn(point, full.trace)
        self.assertGreater(full.var_count, pruned.var_count)

    def test_mixer(self):
        program = compile_source(MIXER)
        for config in (TranslateConfig(), TranslateConfig(fuse_limit=0, ite_extra=True)):
            encoding, template = translate(program, config)
            template.check()
            self.assertEqual(len(set(template.clauses)), len(template.clauses))
            for clause in template.clauses:
                self.assertEqual(make_clause(clause), clause)
            self.assertEqual(list(range(1, 18)), template.input_vars)
            for seed in range(8):
                row = [(seed * 2654435761 >> i) & 1 for i in range(17)]
                assignment = model_assignment(encoding, template, row)
                self.assertEqual([], unsatisfied(template.clauses, assignment))
                outputs = [assignment[var] for var in template.output_vars]
                self.assertEqual(encoding.eval(row), outputs)

    def test_stats(self):
        encoding = execute(compile_source(MIXER))
        __, template = translate(compile_source(MIXER))
        stats = template.stats()
        self.assertEqual(template.var_count, stats["variables"])
        self.assertEqual(sum(stats["histogram"].values()), stats["clauses"])
        self.assertEqual(len(encoding.inputs), stats["inputs"])


class TestDimacs(TestCase):
    def setUp(self):
        program = compile_source(
            "__in bit a, b; __out bit c; void main() { bit t = a & b; c = t; }", name="and2"
        )
        __, self.template = translate(program)

    def test_text(self):
        text = dimacs_text(self.template)
        self.assertIn("p cnf 3 3\n", text)
        self.assertEqual(2, text.count("c in "))
        self.assertEqual(1, text.count("c out "))

    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as dirname:
            cnf_path = os.path.join(dirname, "sub", "and2.cnf")
            emit_dimacs(self.template, cnf_path)
            loaded = load_template(cnf_path)
            self.assertEqual(self.template, TemplateCnf(
                name=loaded.name,
                var_count=loaded.var_count,
                clauses=loaded.clauses,
                inputs=loaded.inputs,
                outputs=loaded.outputs,
                provenance=self.template.provenance,
                trace=loaded.trace,
                trace_constants=loaded.trace_constants,
                shapes=loaded.shapes,
            ))
            os.remove(map_path_for(cnf_path))
            loaded = load_template(cnf_path)
            self.assertEqual("and2", loaded.name)
            self.assertEqual(self.template.inputs, loaded.inputs)
            self.assertEqual({}, loaded.trace)

    def test_errors(self):
        with tempfile.TemporaryDirectory() as dirname:
            path = os.path.join(dirname, "bad.cnf")
            for content in ("p cnf 2 1\n1 x 0\n", "1 2 0\n", "p cnf 1 1\n2 0\n"):
                with open(path, "w") as fd:
                    fd.write(content)
                with self.assertRaises(EncodingError):
                    load_template(path)
            with self.assertRaises(EncodingError):
                load_template(os.path.join(dirname, "missing.cnf"))
