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
import os
import tempfile
from typing import Dict, Iterable
from unittest import TestCase

from alg2cnf.config.fields import BooleanConfigField, IntegerConfigField
from alg2cnf.config.values_providers import (
    DictProvider,
    EnvironmentConfigProvider,
    IniConfigProvider,
    PythonModuleProvider,
)


class EnvPatch:
    def __init__(self, delete: Iterable[str] = None, **values):
        self.backup = os.environ.copy()  # type: Dict[str, str]
        self.values = values  # type: Dict[str, str]
        self.delete = delete

    def __enter__(self):
        if self.delete:
            for key in self.delete:
                if key in os.environ:
                    del os.environ[key]
        for k, v in self.values.items():
            os.environ[k] = v
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        for k in list(os.environ):
            if k not in self.backup:
                del os.environ[k]
        os.environ.update(self.backup)


class TestEnvironmentConfigProvider(TestCase):
    def test_has_value(self):
        provider = EnvironmentConfigProvider(prefix="ALG2CNF_")
        with EnvPatch(ALG2CNF_TRANSLATE_PRUNE="on"):
            self.assertTrue(
                provider.has_value(BooleanConfigField("translate.prune", "TRANSLATE_PRUNE"))
            )
            self.assertFalse(
                provider.has_value(BooleanConfigField("translate.zero_init", "ZERO"))
            )

    def test_get_value(self):
        provider = EnvironmentConfigProvider(prefix="ALG2CNF_")
        field = BooleanConfigField("translate.prune", "TRANSLATE_PRUNE", default=True)
        with EnvPatch(ALG2CNF_TRANSLATE_PRUNE="off"):
            self.assertEqual(False, provider.get_value(field))
        self.assertEqual(True, provider.get_value(field))
        self.assertEqual("Shell environment (1 variable)", str(provider))

    def test_explicit_name(self):
        provider = EnvironmentConfigProvider(prefix="ALG2CNF_")
        field = IntegerConfigField("solver.jobs", "SOLVER_JOBS", env_name="JOBS")
        hidden = IntegerConfigField("solver.seed", "SOLVER_SEED", env_name=None)
        with EnvPatch(JOBS="4", ALG2CNF_SOLVER_SEED="3"):
            self.assertEqual(4, provider.get_value(field))
            self.assertFalse(provider.has_value(hidden))

    def test_get_extra_settings(self):
        provider = EnvironmentConfigProvider(prefix="ALG2CNF_")
        self.assertEqual([], list(provider.get_extra_settings()))

    def test_is_valid(self):
        provider = EnvironmentConfigProvider(prefix="ALG2CNF_")
        self.assertEqual(True, provider.is_valid())


class TestIniConfigProvider(TestCase):
    def provider(self, content: bytes):
        with tempfile.NamedTemporaryFile(suffix=".ini", delete=False) as fd:
            fd.write(content)
        self.addCleanup(os.remove, fd.name)
        return IniConfigProvider(config_file=fd.name)

    def test_has_value(self):
        provider = self.provider(b"[translate]\nprune = on\n")
        self.assertTrue(
            provider.has_value(BooleanConfigField("translate.prune", "TRANSLATE_PRUNE"))
        )
        self.assertFalse(
            provider.has_value(BooleanConfigField("translate.zero_init", "ZERO"))
        )
        self.assertFalse(provider.has_value(BooleanConfigField(None, "TRANSLATE_PRUNE")))

    def test_get_value(self):
        provider = self.provider(b"[translate]\nprune = off\n")
        v = provider.get_value(
            BooleanConfigField("translate.prune", "TRANSLATE_PRUNE", default=True)
        )
        self.assertEqual(False, v)
        v = provider.get_value(BooleanConfigField("translate.zero_init", "ZERO", default=True))
        self.assertEqual(True, v)

    def test_get_extra_settings(self):
        provider = self.provider(b"[translate]\nprune = off\n")
        self.assertEqual([], list(provider.get_extra_settings()))

    def test_is_valid(self):
        provider = self.provider(b"[translate]\nprune = off\n")
        self.assertEqual(True, provider.is_valid())
        self.assertEqual(provider.config_file, str(provider))
        provider = IniConfigProvider(config_file=provider.config_file + ".missing")
        self.assertEqual(False, provider.is_valid())
        self.assertEqual(False, IniConfigProvider().is_valid())


class TestPythonModuleProvider(TestCase):
    def get_provider(self):
        return PythonModuleProvider("alg2cnf.config.defaults")

    def test_has_value(self):
        provider = self.get_provider()
        self.assertTrue(provider.has_value(IntegerConfigField("solver.seed", "SOLVER_SEED")))
        self.assertFalse(provider.has_value(IntegerConfigField("solver.seed", "SOLVER_SEED2")))

    def test_get_value(self):
        provider = self.get_provider()
        v = provider.get_value(IntegerConfigField("solver.jobs", "SOLVER_JOBS", default=4))
        self.assertEqual(1, v)

    def test_get_extra_settings(self):
        settings = dict(self.get_provider().get_extra_settings())
        self.assertEqual(6, settings["TRANSLATE_FUSE_LIMIT"])
        self.assertNotIn("SettingReference", settings)
        for key in settings:
            self.assertEqual(key.upper(), key)

    def test_is_valid(self):
        self.assertEqual(True, self.get_provider().is_valid())
        provider = PythonModuleProvider("alg2cnf.config.missing_defaults")
        self.assertEqual(False, provider.is_valid())
        self.assertEqual([], list(provider.get_extra_settings()))


class TestDictProvider(TestCase):
    def get_provider(self):
        return DictProvider({"SOLVER_SEED": 7, "verbose": True}, name="tests")

    def test_values(self):
        provider = self.get_provider()
        field = IntegerConfigField("solver.seed", "SOLVER_SEED", default=0)
        self.assertTrue(provider.has_value(field))
        self.assertEqual(7, provider.get_value(field))
        other = IntegerConfigField("solver.jobs", "SOLVER_JOBS", default=2)
        self.assertEqual(2, provider.get_value(other))
        self.assertEqual([("SOLVER_SEED", 7)], list(provider.get_extra_settings()))
        self.assertEqual("tests", str(provider))
        self.assertTrue(provider.is_valid())
