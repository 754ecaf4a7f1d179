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
import argparse
import os
import random
import tempfile
from unittest import TestCase

from hypothesis import given
from hypothesis.strategies import integers, lists

from alg2cnf.utils import (
    bits_to_hex,
    bits_to_int,
    ensure_dir,
    hex_to_bits,
    int_to_bits,
    random_bits,
    remove_arguments_from_help,
)


class TestEnsureDir(TestCase):
    def test_ensure_dir(self):
        with tempfile.TemporaryDirectory() as dirname:
            path = os.path.join(dirname, "cubes", "all.icnf")
            self.assertEqual(path, ensure_dir(path))
            self.assertTrue(os.path.isdir(os.path.join(dirname, "cubes")))
            self.assertFalse(os.path.exists(path))
            path = os.path.join(dirname, "logs", "alg2cnf")
            ensure_dir(path, parent=False)
            self.assertTrue(os.path.isdir(path))
        self.assertEqual("local.cnf", ensure_dir("local.cnf"))


class TestHelp(TestCase):
    def test_remove_arguments(self):
        parser = argparse.ArgumentParser(prog="alg2cnf")
        parser.add_argument("--settings", help="hidden option")
        parser.add_argument("--seed", help="random seed")
        remove_arguments_from_help(parser, {"--settings"})
        text = parser.format_help()
        self.assertNotIn("--settings", text)
        self.assertIn("--seed", text)
        self.assertEqual("x", parser.parse_args(["--settings", "x"]).settings)


class TestBits(TestCase):
    def test_hex(self):
        self.assertEqual([0, 0, 0, 1], hex_to_bits("1", 4))
        self.assertEqual([1] * 8, hex_to_bits("0xFF", 8))
        self.assertEqual([1] * 8, hex_to_bits("f_f", 8))
        self.assertEqual("00ff", bits_to_hex([0] * 8 + [1] * 8))
        self.assertEqual("1", bits_to_hex([1]))
        for text, width in (("", 4), ("1ff", 8), ("zz", 8), ("0x", 4)):
            with self.assertRaises(ValueError):
                hex_to_bits(text, width)

    @given(lists(integers(0, 1), max_size=70))
    def test_hex_bits(self, bits):
        self.assertEqual(bits, hex_to_bits(bits_to_hex(bits) or "0", len(bits)))
        self.assertEqual(bits, int_to_bits(bits_to_int(bits), len(bits)))

    def test_random_bits(self):
        rng = random.Random(4)
        self.assertEqual([], random_bits(rng, 0))
        bits = random_bits(rng, 64)
        self.assertEqual(64, len(bits))
        self.assertEqual(bits, random_bits(random.Random(4), 64))
        self.assertTrue(set(bits) <= {0, 1})
