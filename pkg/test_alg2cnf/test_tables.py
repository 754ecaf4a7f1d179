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
from unittest import TestCase

from hypothesis import given
from hypothesis.strategies import integers, lists, permutations

from alg2cnf.formula import tables


class TestTables(TestCase):
    def test_var_table(self):
        for k in range(1, 6):
            for i in range(k):
                expected = tables.table_from_function(k, lambda *bits: bits[i])
                self.assertEqual(expected, tables.var_table(i, k))

    def test_constants(self):
        self.assertEqual(
            tables.MAJ3,
            tables.table_from_function(3, lambda a, b, c: (a & b) | (b & c) | (a & c)),
        )
        self.assertEqual(tables.XOR3, tables.table_from_function(3, lambda a, b, c: a ^ b ^ c))
        self.assertEqual(tables.AND2, tables.table_from_function(2, lambda a, b: a & b))
        self.assertEqual(tables.OR2, tables.table_from_function(2, lambda a, b: a | b))
        self.assertEqual(tables.XOR2, tables.table_from_function(2, lambda a, b: a ^ b))

    @given(integers(min_value=0, max_value=(1 << 16) - 1), integers(0, 3), integers(0, 1))
    def test_cofactor(self, table, i, value):
        reduced = tables.cofactor(table, 4, i, value)
        for row in range(8):
            bits = [(row >> j) & 1 for j in range(3)]
            full_bits = bits[:i] + [value] + bits[i:]
            self.assertEqual(
                tables.table_value(table, full_bits), tables.table_value(reduced, bits)
            )

    @given(integers(min_value=0, max_value=(1 << 16) - 1), permutations([0, 1, 2, 3]))
    def test_permute(self, table, order):
        permuted = tables.permute(table, 4, order)
        for row in range(16):
            new_bits = [(row >> j) & 1 for j in range(4)]
            old_bits = [0] * 4
            for j, old in enumerate(order):
                old_bits[old] = new_bits[j]
            self.assertEqual(
                tables.table_value(table, old_bits), tables.table_value(permuted, new_bits)
            )

    @given(integers(min_value=0, max_value=(1 << 8) - 1))
    def test_merge_operands(self, table):
        merged = tables.merge_operands(table, 3, 0, 2)
        for row in range(4):
            a, b = row & 1, (row >> 1) & 1
            self.assertEqual(
                tables.table_value(table, [a, b, a]), tables.table_value(merged, [a, b])
            )

    @given(
        integers(min_value=0, max_value=(1 << 32) - 1),
        lists(integers(min_value=0, max_value=255), min_size=5, max_size=5),
    )
    def test_eval_table_masks(self, table, masks):
        result = tables.eval_table_masks(table, 5, masks, 8)
        for lane in range(8):
            bits = [(m >> lane) & 1 for m in masks]
            self.assertEqual(tables.table_value(table, bits), (result >> lane) & 1)

    def test_depends_on(self):
        self.assertTrue(tables.depends_on(tables.MAJ3, 3, 2))
        table = tables.var_table(1, 3)
        self.assertEqual([False, True, False], [tables.depends_on(table, 3, i) for i in range(3)])
