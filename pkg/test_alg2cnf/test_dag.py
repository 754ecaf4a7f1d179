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
import random
from unittest import TestCase

from hypothesis import given, settings
from hypothesis.strategies import integers, lists, sampled_from, tuples

from alg2cnf.exceptions import FormulaError
from alg2cnf.formula import tables
from alg2cnf.formula.dag import FormulaDag, Op


class TestConstruction(TestCase):
    def setUp(self):
        self.dag = FormulaDag()
        self.a = self.dag.mk_input()
        self.b = self.dag.mk_input()
        self.c = self.dag.mk_input()

    def test_constants(self):
        dag = FormulaDag()
        self.assertEqual(dag.mk_const(0), dag.mk_const(0))
        self.assertNotEqual(dag.mk_const(0), dag.mk_const(1))
        self.assertEqual(dag.mk_const(1), dag.mk_not(dag.mk_const(0)))
        self.assertEqual(2, dag.stats()["nodes"])

    def test_inputs(self):
        self.assertEqual(3, self.dag.input_count)
        self.assertEqual(0, self.dag.node(self.a).param)
        self.assertEqual(Op.INPUT, self.dag.node(self.a).op)
        self.assertEqual(3, len({self.a, self.b, self.c}))

    def test_hash_consing(self):
        g = self.dag.mk_gate(Op.AND, [self.a, self.b])
        self.assertEqual(g, self.dag.mk_gate(Op.AND, [self.a, self.b]))
        self.assertEqual(g, self.dag.mk_gate(Op.AND, [self.b, self.a]))
        self.assertEqual(6, len(self.dag))

    def test_rewrites(self):
        a, b, dag = self.a, self.b, self.dag
        self.assertEqual(a, dag.mk_gate(Op.NOT, [dag.mk_gate(Op.NOT, [a])]))
        self.assertEqual(a, dag.mk_gate(Op.AND, [a, a]))
        self.assertEqual(dag.FALSE, dag.mk_gate(Op.XOR, [a, a]))
        self.assertEqual(dag.FALSE, dag.mk_gate(Op.AND, [a, dag.FALSE]))
        self.assertEqual(dag.TRUE, dag.mk_gate(Op.OR, [a, dag.TRUE]))
        self.assertEqual(b, dag.mk_gate(Op.ITE, [a, b, b]))
        self.assertEqual(a, dag.mk_gate(Op.ITE, [dag.TRUE, a, b]))
        self.assertEqual(dag.FALSE, dag.mk_and([a, dag.mk_not(a)]))

    def test_table_rewrites(self):
        a, b, dag = self.a, self.b, self.dag
        self.assertEqual(a, dag.mk_table([a], 0b10))
        self.assertEqual(dag.mk_not(a), dag.mk_table([a], 0b01))
        self.assertEqual(dag.mk_and([a, b]), dag.mk_table([b, a], tables.AND2))
        self.assertEqual(b, dag.mk_table([a, b], tables.var_table(1, 2)))
        self.assertEqual(dag.mk_and([a, b]), dag.mk_table([a, b, dag.FALSE], tables.MAJ3))
        maj = dag.mk_table([self.c, a, b], tables.MAJ3)
        node = dag.node(maj)
        self.assertEqual(Op.TABLE, node.op)
        self.assertEqual((a, b, self.c), node.operands)

    def test_two_input_tables_absorb_complements(self):
        a, dag = self.a, self.dag
        not_a = dag.mk_not(a)
        size = len(dag)
        self.assertEqual(dag.FALSE, dag.mk_table([a, not_a], tables.AND2))
        self.assertEqual(dag.TRUE, dag.mk_table([not_a, a], tables.OR2))
        self.assertEqual(dag.TRUE, dag.mk_table([a, not_a], tables.XOR2))
        self.assertEqual(size, len(dag))

    def test_double_negation_is_shared(self):
        g = self.dag.mk_and([self.a, self.b])
        size = len(self.dag)
        self.assertEqual(g, self.dag.mk_not(self.dag.mk_not(g)))
        self.assertEqual(size + 1, len(self.dag))

    def test_errors(self):
        self.assertRaises(FormulaError, self.dag.mk_gate, Op.NOT, [self.a, self.b])
        self.assertRaises(FormulaError, self.dag.mk_gate, Op.ITE, [self.a, self.b])
        self.assertRaises(FormulaError, self.dag.mk_gate, Op.AND, [self.a, 1000])
        self.assertRaises(FormulaError, self.dag.mk_gate, Op.INPUT, [])
        self.assertRaises(FormulaError, self.dag.eval, [1000], [0, 0, 0])
        self.assertRaises(FormulaError, self.dag.eval, [self.a], [0])

    def test_eval_majority(self):
        x1, x2, x3 = self.a, self.b, self.c
        dag = self.dag
        z = dag.mk_xor(
            [dag.mk_and([x1, x2]), dag.mk_and([x2, x3]), dag.mk_and([x1, x3])]
        )
        self.assertEqual([1], dag.eval([z], [1, 1, 0]))
        self.assertEqual([1], dag.eval([dag.TRUE], [0, 0, 0]))

    def test_dump(self):
        maj = self.dag.mk_table([self.a, self.b, self.c], tables.MAJ3)
        self.assertEqual(
            "2 INPUT 0\n3 INPUT 1\n4 INPUT 2\n5 TABLE 0xe8 2 3 4\n",
            self.dag.dump([maj]),
        )

    def test_ite_truth_table(self):
        dag = FormulaDag()
        c, t, e = dag.mk_input(), dag.mk_input(), dag.mk_input()
        node = dag.mk_ite(c, t, e)
        for bits in itertools.product([0, 1], repeat=3):
            expected = bits[1] if bits[0] else bits[2]
            self.assertEqual([expected], dag.eval([node], list(bits)))


OPS = [Op.NOT, Op.AND, Op.OR, Op.XOR, Op.ITE, Op.TABLE]


def build(dag: FormulaDag, recipe, input_count: int):
    ids = [dag.mk_const(0), dag.mk_const(1)]
    ids += [dag.mk_input() for __ in range(input_count)]
    for op, picks, table in recipe:
        operands = [ids[p % len(ids)] for p in picks]
        if op is Op.NOT:
            ids.append(dag.mk_gate(op, operands[:1]))
        elif op is Op.ITE:
            ids.append(dag.mk_gate(op, operands[:3]))
        elif op is Op.TABLE:
            ids.append(dag.mk_gate(op, operands[:3], table))
        else:
            ids.append(dag.mk_gate(op, operands))
    return ids[-1]


class TestRewriteSoundness(TestCase):
    @settings(max_examples=60, deadline=None)
    @given(
        lists(
            tuples(
                sampled_from(OPS),
                lists(integers(0, 50), min_size=3, max_size=4),
                integers(0, 255),
            ),
            min_size=1,
            max_size=25,
        ),
        integers(0, 2**32),
    )
    def test_same_evaluation(self, recipe, seed):
        plain, simplified = FormulaDag(simplify=False), FormulaDag()
        root_plain = build(plain, recipe, 5)
        root_simplified = build(simplified, recipe, 5)
        rng = random.Random(seed)
        masks = [rng.getrandbits(64) for __ in range(5)]
        self.assertEqual(
            plain.eval_masks([root_plain], masks, 64),
            simplified.eval_masks([root_simplified], masks, 64),
        )

    def test_table_nodes_brute_force(self):
        rng = random.Random(4)
        for k in range(2, 9):
            dag = FormulaDag()
            inputs = [dag.mk_input() for __ in range(k)]
            table = rng.getrandbits(1 << k)
            node = dag.mk_table(inputs, table)
            for row in range(1 << k):
                bits = [(row >> i) & 1 for i in range(k)]
                self.assertEqual([(table >> row) & 1], dag.eval([node], bits))
