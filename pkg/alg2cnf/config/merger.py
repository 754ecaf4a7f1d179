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
"""Merge the values of all providers into the final settings of a command."""
import logging
import string
from collections import OrderedDict
from typing import Any, Dict, List, Optional

from alg2cnf.config.dynamic_settings import DynamicSetting
from alg2cnf.config.fields_providers import FieldsProvider
from alg2cnf.config.values_providers import ConfigProvider

logger = logging.getLogger(__name__)


class SettingMerger:
    """Merge settings from providers given by increasing priority.

    `raw_settings[name]` keeps every raw value of a setting, keyed by the name of its
    provider (`None` for the default value of the .ini field); the last one wins.
    Raw values are then expanded: strings are formatted with other settings
    (`"{SOLVER_SEED}"`), containers are expanded item by item and dynamic settings
    are evaluated.

    >>> from alg2cnf.config.values_providers import DictProvider
    >>> merger = SettingMerger(None, [DictProvider({"A": 1, "B": "x{A}"})])
    >>> merger.process()
    >>> merger.settings["B"]
    'x1'
    """

    def __init__(
        self,
        fields_provider: Optional[FieldsProvider],
        providers: Optional[List[ConfigProvider]],
    ):
        self.fields_provider = fields_provider or FieldsProvider([])
        self.providers = providers or []
        self.settings = {}  # type: Dict[str, Any]
        self.raw_settings = OrderedDict()  # type: Dict[str, Dict[Optional[str], Any]]
        self._pending = []  # type: List[str]
        self._formatter = string.Formatter()

    def add_provider(self, provider: ConfigProvider):
        self.providers.append(provider)

    def process(self):
        self.collect()
        for setting_name in self.raw_settings:
            self.get_setting_value(setting_name)

    def collect(self):
        """Read every provider without expanding any value."""
        fields = self.fields_provider.get_config_fields()
        extras = [list(provider.get_extra_settings()) for provider in self.providers]
        names = {field.setting_name for field in fields}
        names.update(name for values in extras for name, __ in values)
        self.raw_settings = OrderedDict((name, OrderedDict()) for name in sorted(names))
        for field in fields:
            self.raw_settings[field.setting_name][None] = field.value
        for provider, values in zip(self.providers, extras):
            source = str(provider)
            for field in fields:
                if provider.has_value(field):
                    self.raw_settings[field.setting_name][source] = provider.get_value(field)
            for name, value in values:
                self.raw_settings[name][source] = value
            if provider.is_valid():
                logger.debug("settings read from %s '%s'", provider.name, source)

    def get_setting_value(self, setting_name: str) -> Any:
        """Expanded value of a setting; expands the settings it references first."""
        if setting_name in self.settings:
            return self.settings[setting_name]
        if setting_name in self._pending:
            cycle = self._pending[self._pending.index(setting_name) :] + [setting_name]
            raise ValueError("cyclic setting references: " + " -> ".join(cycle))
        sources = self.raw_settings.get(setting_name)
        if sources is None:
            raise ValueError(f"reference to an unknown setting: {setting_name}")
        source, raw_value = next(reversed(sources.items()), (None, None))
        self._pending.append(setting_name)
        try:
            value = self.expand(raw_value, source, setting_name)
        finally:
            self._pending.pop()
        self.settings[setting_name] = value
        return value

    def expand(self, obj: Any, source: Optional[str], setting_name: str) -> Any:
        if isinstance(obj, DynamicSetting):
            return obj.get_value(self, source, setting_name)
        elif isinstance(obj, str):
            references = {
                field: self.get_setting_value(field)
                for __, field, __, __ in self._formatter.parse(obj)
                if field is not None
            }
            return self._formatter.format(obj, **references)
        elif isinstance(obj, (list, tuple)):
            items = [self.expand(x, source, setting_name) for x in obj]
            return tuple(items) if isinstance(obj, tuple) else items
        elif isinstance(obj, dict):
            return {
                self.expand(k, source, setting_name): self.expand(v, source, setting_name)
                for k, v in obj.items()
            }
        return obj
