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
"""Typed options of the alg2cnf .ini files.

Each field reads one `section.option` of a .ini file (or one environment variable)
and converts it to the value of a setting. Conversion never raises: invalid values
are appended to :data:`alg2cnf.checks.config_check_results` and the command line
reports them before running.

>>> IntegerConfigField("solver.jobs", "SOLVER_JOBS", min_value=1).from_str("4")
4
>>> BooleanConfigField("translate.prune", "TRANSLATE_PRUNE").to_str(False)
'false'
"""

import os
from typing import Any, Callable, Dict, Optional, Union

from alg2cnf.checks import Error, Warning, config_check_results

TRUE_WORDS = frozenset({"1", "ok", "yes", "true", "on"})


def bool_setting(value) -> bool:
    """Return `True` if the lower-cased text is one of 1, ok, yes, true, on."""
    return str(value).lower() in TRUE_WORDS


def str_or_none(text):
    return text or None


def str_or_blank(value) -> str:
    return "" if value is None else str(value)


def report(message: str, check_id: str, serious: bool = True):
    cls = Error if serious else Warning
    config_check_results.append(cls(message, obj="configuration", id=check_id))


class ConfigField:
    """Map an option of a .ini file (or an environment variable) to a setting.

    :param name: "section.option" in the .ini files, `None` if the setting is not read from them
    :param setting_name: name of the merged setting, like "SOLVER_VAR_DECAY"
    :param from_str: converts the text of the option to the value of the setting
    :param to_str: converts the value back to text (used for documentation)
    :param help_str: one-line description of the option
    :param default: value used when no provider defines the setting
    :param env_name: environment variable; derived from `setting_name` by default,
        never read if `None`
    """

    AUTO = frozenset()

    def __init__(
        self,
        name: Optional[str],
        setting_name: str,
        from_str: Callable[[str], Any] = str,
        to_str: Callable[[Any], str] = str_or_blank,
        help_str: Optional[str] = None,
        default: Any = None,
        env_name: Optional[Union[frozenset, str]] = AUTO,
    ):
        self.name = name
        self.setting_name = setting_name
        self.from_str = from_str
        self.to_str = to_str
        self.__doc__ = help_str
        self.value = default
        self.environ_name = env_name

    def __str__(self):
        return self.name or self.setting_name


class CharConfigField(ConfigField):
    """Text value; an empty text gives `None` when `allow_none` is set."""

    def __init__(self, name, setting_name, allow_none: bool = True, **kwargs):
        kwargs.setdefault("from_str", str_or_none if allow_none else str)
        super().__init__(name, setting_name, **kwargs)


class NumberConfigField(ConfigField):
    """Number in an optional closed range.

    Unparsable text is reported (E001) and replaced by the empty value (`None`, or zero
    when `allow_none` is not set). Out-of-range numbers are reported (E003) but kept, so
    the command line can still show which value was rejected.
    """

    number_type = int  # type: Callable[[str], Any]

    def __init__(
        self,
        name,
        setting_name,
        allow_none: bool = True,
        min_value=None,
        max_value=None,
        **kwargs,
    ):
        self.min_value = min_value
        self.max_value = max_value
        self.empty = None if allow_none else self.number_type(0)
        super().__init__(name, setting_name, from_str=self.parse, **kwargs)

    def parse(self, value: str):
        if not value:
            return self.empty
        try:
            number = self.number_type(value)
        except ValueError:
            report(f'Invalid value "{value}" for {self.setting_name}.', "alg2cnf.E001")
            return self.empty
        too_low = self.min_value is not None and number < self.min_value
        too_high = self.max_value is not None and number > self.max_value
        if too_low or too_high:
            report(
                f"{self.setting_name} must lie in [{self.min_value}, {self.max_value}] "
                f"(got {number}).",
                "alg2cnf.E003",
            )
        return number


class IntegerConfigField(NumberConfigField):
    number_type = int


class FloatConfigField(NumberConfigField):
    number_type = float


class BooleanConfigField(ConfigField):
    """On/off switch; an empty text gives `None` when `allow_none` is set."""

    def __init__(self, name, setting_name, allow_none: bool = False, **kwargs):
        self.allow_none = allow_none
        super().__init__(
            name, setting_name, from_str=self.parse, to_str=self.format, **kwargs
        )

    def parse(self, value: str) -> Optional[bool]:
        if self.allow_none and not value:
            return None
        return bool_setting(value)

    def format(self, value: Optional[bool]) -> str:
        if self.allow_none and value is None:
            return ""
        return "true" if value else "false"


class ChoiceConfigField(ConfigField):
    """One value among `choices`, a dict from .ini words to setting values.

    Unknown words give `None` and an E002 diagnostic listing the valid ones.
    """

    def __init__(
        self, name, setting_name, choices: Dict[str, Any], help_str: str = "", **kwargs
    ):
        self.choices = choices
        valid = self.valid_words()
        help_str = f"{help_str} Valid choices: {valid}" if help_str else f"Valid choices: {valid}"
        super().__init__(
            name,
            setting_name,
            from_str=self.parse,
            to_str=self.format,
            help_str=help_str,
            **kwargs,
        )

    def valid_words(self) -> str:
        return ", ".join(f'"{x}"' for x in self.choices)

    def parse(self, value: str):
        if value not in self.choices:
            report(
                f'Invalid value "{value}". Valid choices: {self.valid_words()}.',
                "alg2cnf.E002",
            )
        return self.choices.get(value)

    def format(self, value) -> str:
        words = [k for k, v in self.choices.items() if v == value]
        return str(words[0]) if words else ""


class DirectoryPathConfigField(ConfigField):
    """Absolute path of a directory; a missing directory only raises a warning (W002)."""

    def __init__(self, name, setting_name, **kwargs):
        super().__init__(name, setting_name, from_str=self.parse, **kwargs)

    @staticmethod
    def parse(value: Optional[str]) -> Optional[str]:
        if not value or not value.strip():
            return None
        path = os.path.abspath(value.strip())
        if not os.path.isdir(path):
            report(f'File "{path}" is not a directory.', "alg2cnf.W002", serious=False)
        return path
