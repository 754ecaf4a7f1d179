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
import math
import os
import tempfile
from unittest import TestCase

from hypothesis import given
from hypothesis.strategies import floats, integers, text

from alg2cnf.checks import config_check_results
from alg2cnf.config.fields import (
    BooleanConfigField,
    CharConfigField,
    ChoiceConfigField,
    ConfigField,
    DirectoryPathConfigField,
    FloatConfigField,
    IntegerConfigField,
    bool_setting,
    str_or_blank,
    str_or_none,
)


class CheckResultsMixin:
    def setUp(self):
        self.previous = list(config_check_results)
        del config_check_results[:]

    def tearDown(self):
        config_check_results[:] = self.previous


class TestFunctions(TestCase):
    def test_bool_setting(self):
        for k in {"1", "ok", "yes", "true", "on", "ON", "True"}:
            self.assertTrue(bool_setting(k))
        for k in {"0", "ko", "no", "false", "of"}:
            self.assertFalse(bool_setting(k))

    @given(text())
    def test_bool_setting_multi(self, k):
        if k.lower() not in {"1", "ok", "yes", "true", "on"}:
            self.assertFalse(bool_setting(k))

    def test_str_or_none(self):
        self.assertIsNone(str_or_none(""))
        self.assertIsNone(str_or_none(None))

    @given(text())
    def test_str_or_none_multi(self, k):
        if k:
            self.assertEqual(k, str_or_none(k))

    def test_str_or_blank(self):
        self.assertEqual("", str_or_blank(""))
        self.assertEqual("", str_or_blank(None))
        self.assertEqual("3", str_or_blank(3))

    @given(text())
    def test_str_or_blank_multi(self, k):
        self.assertEqual(k, str_or_blank(k))


class TestFields(CheckResultsMixin, TestCase):
    def assertEqual(self, x, y, msg=None):
        if (
            isinstance(x, float)
            and isinstance(y, float)
            and math.isnan(x)
            and math.isnan(y)
        ):
            return
        super().assertEqual(x, y, msg=msg)

    def check(self, field: ConfigField, str_value, py_value, reverse: bool = True):
        self.assertEqual(py_value, field.from_str(str_value))
        if reverse:
            self.assertEqual(str_value, field.to_str(py_value))
            self.assertEqual(str_value, field.to_str(field.from_str(str_value)))
            self.assertEqual(py_value, field.from_str(field.to_str(py_value)))

    def test_char_config_field(self):
        self.check(CharConfigField("solver.external", "TEST", allow_none=True), "", None)
        self.check(CharConfigField("solver.external", "TEST", allow_none=False), "", "")

    @given(text())
    def test_char_config_field_multi(self, value):
        self.check(CharConfigField("solver.external", "TEST", allow_none=False), value, value)

    def test_int_config_field(self):
        self.check(IntegerConfigField("solver.seed", "TEST", allow_none=False), "0", 0)
        self.check(IntegerConfigField("solver.seed", "TEST", allow_none=False), "1", 1)
        self.check(IntegerConfigField("solver.seed", "TEST", allow_none=True), "", None)
        self.check(
            IntegerConfigField("solver.seed", "TEST", allow_none=False),
            "",
            0,
            reverse=False,
        )
        self.assertEqual([], config_check_results)

    @given(integers())
    def test_int_config_field_multi(self, value):
        self.check(
            IntegerConfigField("solver.seed", "TEST", allow_none=False), str(value), value
        )

    def test_int_bounds(self):
        field = IntegerConfigField("solver.jobs", "SOLVER_JOBS", min_value=1, max_value=64)
        self.assertEqual(4, field.from_str("4"))
        self.assertEqual([], config_check_results)
        self.assertEqual(0, field.from_str("0"))
        self.assertEqual(1, len(config_check_results))
        self.assertIn("SOLVER_JOBS", config_check_results[0].msg)
        self.assertTrue(config_check_results[0].is_serious())
        self.assertIsNone(field.from_str("four"))
        self.assertEqual("alg2cnf.E001", config_check_results[1].id)

    def test_float_config_field(self):
        self.check(FloatConfigField("solver.var_decay", "TEST", allow_none=False), "0.0", 0.0)
        self.check(FloatConfigField("solver.var_decay", "TEST", allow_none=False), "1.0", 1.0)
        self.check(FloatConfigField("solver.var_decay", "TEST", allow_none=True), "", None)
        self.check(
            FloatConfigField("solver.var_decay", "TEST", allow_none=False),
            "",
            0.0,
            reverse=False,
        )

    @given(floats())
    def test_float_config_field_multi(self, value):
        self.check(
            FloatConfigField("solver.var_decay", "TEST", allow_none=False), str(value), value
        )

    def test_float_bounds(self):
        field = FloatConfigField("solver.var_decay", "TEST", min_value=0.5, max_value=1.0)
        self.assertEqual(0.75, field.from_str("0.75"))
        self.assertEqual([], config_check_results)
        field.from_str("1.5")
        self.assertEqual("alg2cnf.E003", config_check_results[0].id)

    def test_bool_config_field(self):
        self.check(BooleanConfigField("translate.prune", "TEST"), "true", True)
        self.check(BooleanConfigField("translate.prune", "TEST"), "false", False)
        self.check(BooleanConfigField("translate.prune", "TEST", allow_none=True), "", None)

    def test_choice_config_field(self):
        field = ChoiceConfigField("log.level", "TEST", {"1": "V1", "2": "V2"})
        self.check(field, "1", "V1")
        self.assertEqual(0, len(config_check_results))
        self.check(field, "3", None, reverse=False)
        self.assertEqual(1, len(config_check_results))
        self.assertIn('"1", "2"', config_check_results[0].msg)
        self.assertIn("Valid choices", field.__doc__)

    def test_directory_config_field(self):
        field = DirectoryPathConfigField("corpus.directory", "CORPUS_DIRECTORY")
        self.assertIsNone(field.from_str(""))
        self.assertIsNone(field.from_str("   "))
        with tempfile.TemporaryDirectory() as dirname:
            self.assertEqual(os.path.abspath(dirname), field.from_str(f" {dirname} "))
            self.assertEqual([], config_check_results)
            missing = os.path.join(dirname, "missing")
            self.assertEqual(missing, field.from_str(missing))
        self.assertEqual(1, len(config_check_results))
        self.assertEqual("alg2cnf.W002", config_check_results[0].id)
        self.assertFalse(config_check_results[0].is_serious())

    def test_str(self):
        self.assertEqual("solver.seed", str(IntegerConfigField("solver.seed", "SOLVER_SEED")))
        self.assertEqual("SOLVER_SEED", str(IntegerConfigField(None, "SOLVER_SEED")))
