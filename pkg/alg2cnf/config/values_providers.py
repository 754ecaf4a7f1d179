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
"""Sources of setting values, by increasing priority in :func:`alg2cnf.manage.get_merger`.

Text sources (.ini files, the environment) give strings that are converted by the
field; Python sources (the defaults module, dicts of command-line values) give
ready-to-use values and may also define settings that are not mapped to any field.
"""
import os
from configparser import ConfigParser
from importlib import import_module
from typing import Any, Dict, Iterable, Optional, Set, Tuple

from alg2cnf.config.fields import ConfigField

MISSING = object()


class ConfigProvider:
    """One source of setting values.

    Subclasses implement :meth:`lookup`, which returns :data:`MISSING` when the source
    does not define the field.
    """

    name = None
    textual = False

    def lookup(self, config_field: ConfigField) -> Any:
        raise NotImplementedError

    def has_value(self, config_field: ConfigField) -> bool:
        return self.lookup(config_field) is not MISSING

    def get_value(self, config_field: ConfigField):
        """Value of the field in this source, or the default value of the field."""
        raw = self.lookup(config_field)
        if raw is MISSING:
            return config_field.value
        if self.textual:
            return config_field.from_str(raw)
        return raw

    def get_extra_settings(self) -> Iterable[Tuple[str, Any]]:
        """(name, value) of the settings defined outside the .ini mapping."""
        return []

    def is_valid(self) -> bool:
        return True


class EnvironmentConfigProvider(ConfigProvider):
    """Variables like `ALG2CNF_SOLVER_SEED=7`, or the explicit `env_name` of a field."""

    name = "Environment"
    textual = True

    def __init__(self, prefix: str):
        self.prefix = prefix
        self.exported_values = set()  # type: Set[str]

    def __str__(self):
        count = len(self.exported_values)
        return f"Shell environment ({count} variable{'s' if count > 1 else ''})"

    def get_key(self, config_field: ConfigField) -> Optional[str]:
        if config_field.environ_name is config_field.AUTO:
            return f"{self.prefix}{config_field.setting_name}"
        return config_field.environ_name

    def lookup(self, config_field: ConfigField) -> Any:
        key = self.get_key(config_field)
        if key is None or key not in os.environ:
            return MISSING
        self.exported_values.add(key)
        return os.environ[key]


class IniConfigProvider(ConfigProvider):
    """A settings file in .ini syntax; `translate.fuse_limit` is option fuse_limit of [translate]."""

    name = ".ini file"
    textual = True

    def __init__(self, config_file: Optional[str] = None):
        self.parser = ConfigParser()
        self.config_file = config_file
        if config_file:
            self.parser.read([config_file], encoding="utf-8")

    def __str__(self):
        return self.config_file or "<empty>"

    def lookup(self, config_field: ConfigField) -> Any:
        if config_field.name is None:
            return MISSING
        section, __, option = config_field.name.partition(".")
        if not self.parser.has_option(section, option):
            return MISSING
        return self.parser.get(section, option)

    def is_valid(self):
        return bool(self.config_file) and os.path.isfile(self.config_file)


class PythonModuleProvider(ConfigProvider):
    """Upper-case names of a Python module, like :mod:`alg2cnf.config.defaults`."""

    name = "Python module"

    def __init__(self, module_name: Optional[str] = None):
        self.module_name = module_name
        self.module = None
        if module_name is not None:
            try:
                self.module = import_module(module_name)
            except ImportError:
                pass

    def __str__(self):
        return self.module_name or "<none>"

    def lookup(self, config_field: ConfigField) -> Any:
        if self.module is None:
            return MISSING
        return getattr(self.module, config_field.setting_name, MISSING)

    def get_extra_settings(self):
        if self.module is None:
            return
        for key, value in sorted(vars(self.module).items()):
            if key == key.upper() and not key.startswith("_"):
                yield key, value

    def is_valid(self):
        return self.module is not None


class DictProvider(ConfigProvider):
    """Values given by the program itself (built-in values, command-line options)."""

    name = "dict"

    def __init__(self, values: Dict[str, Any], name: str = "default values"):
        self.name = name
        self.values = values

    def __str__(self):
        return self.name

    def lookup(self, config_field: ConfigField) -> Any:
        return self.values.get(config_field.setting_name, MISSING)

    def get_extra_settings(self):
        return [(k, v) for k, v in self.values.items() if k == k.upper()]
