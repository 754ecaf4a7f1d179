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
"""Settings computed at merge time.

Allow to define settings based on references to other settings (overriden in other config files).

.. code-block:: python

  # alg2cnf.config.defaults
  from alg2cnf.config.dynamic_settings import SettingReference
  SOLVER_SEED = 0
  VERIFY_SEED = SettingReference("SOLVER_SEED")

.. code-block:: ini

  ; local_settings.ini
  [solver]
  seed = 7

Since the second file overrides the first one, `VERIFY_SEED` is also 7 unless it is set explicitly.
"""
from typing import Any, Callable, Optional


class DynamicSetting:
    """Base class for special setting values.

    When a setting is a :class:`DynamicSetting`, then its method
    `get_value(merger, provider_name, setting_name)` is called for getting the definitive value.
    """

    def __init__(self, value: Any):
        self.value = value

    def get_value(self, merger, provider_name: Optional[str], setting_name: str):
        """Return the interpreted value.

        :param merger: merger object, with all interpreted settings
        :type merger: :class:`alg2cnf.config.merger.SettingMerger`
        :param provider_name: name of the provider containing this value
        :param setting_name: name of the setting containing this value
        """
        raise NotImplementedError

    def __repr__(self):
        return "%s(%r)" % (self.__class__.__name__, self.value)

    def __eq__(self, other):
        return isinstance(other, self.__class__) and other.value == self.value

    def __hash__(self):
        return hash((self.__class__.__name__, self.value))


class RawValue(DynamicSetting):
    """Return the value as-is.

    By default, all string values are formatted with other settings (`"{SOLVER_SEED}"`).
    External solver commands use `{}` as placeholder for the DIMACS file and are kept raw.

    >>> RawValue("kissat {}").get_value(None, None, "SOLVER_EXTERNAL")
    'kissat {}'
    """

    def get_value(self, merger, provider_name, setting_name):
        return self.value


class SettingReference(DynamicSetting):
    """Reference any setting object by its name, optionally transformed by `func`."""

    def __init__(self, value: str, func: Optional[Callable[[Any], Any]] = None):
        super().__init__(value)
        self.func = func

    def get_value(self, merger, provider_name, setting_name):
        result = merger.get_setting_value(self.value)
        if self.func:
            result = self.func(result)
        return result
