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
"""Sources of :class:`alg2cnf.config.fields.ConfigField` lists."""
from importlib import import_module
from typing import Any, List, Optional, Sequence, Tuple, Union

from alg2cnf.config.fields import ConfigField


def import_attribute(value: str, default=None) -> Tuple[Optional[Any], bool]:
    """Import `package.module:attribute`, returning `(default, False)` when it cannot be found.

    >>> import_attribute("alg2cnf.config.fields:bool_setting")[1]
    True
    >>> import_attribute("alg2cnf.config.fields:missing", [])
    ([], False)
    """
    if value is None:
        return default, False
    module_name, __, attribute_name = value.partition(":")
    try:
        module = import_module(module_name)
    except ImportError:
        return default, False
    if not hasattr(module, attribute_name):
        return default, False
    return getattr(module, attribute_name), True


class FieldsProvider:
    """Give the config fields that values providers are asked for."""

    name = "Python attribute"

    def __init__(self, mapping: Union[str, Sequence[ConfigField], None] = None):
        if mapping is None:
            mapping = "alg2cnf.iniconf:INI_MAPPING"
        if isinstance(mapping, str):
            self.source = mapping
            fields, self.valid = import_attribute(mapping, [])
        else:
            self.source = "<explicit fields>"
            fields, self.valid = mapping, True
        self.fields = list(fields)

    def is_valid(self) -> bool:
        return self.valid

    def get_config_fields(self) -> List[ConfigField]:
        return self.fields

    def __str__(self):
        return self.source
