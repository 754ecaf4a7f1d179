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
"""Diagnostics emitted by the compiler and by the configuration layer."""
from typing import Optional, Tuple

from django.core.checks import ERROR, WARNING, CheckMessage

config_check_results = []


class Diagnostic(CheckMessage):
    """Check message that can also point to a source location.

    >>> str(Error("entry point missing", filename="toy.alg", location=(1, 1)))
    'toy.alg:1:1: error: entry point missing'
    >>> str(Warning("unused value", obj="configuration"))
    'configuration: warning: unused value'
    """

    level = None
    severity = None

    def __init__(
        self,
        msg: str,
        location: Optional[Tuple[int, int]] = None,
        filename: Optional[str] = None,
        hint: Optional[str] = None,
        obj: Optional[str] = None,
        id: Optional[str] = None,
    ):
        super().__init__(self.level, msg, hint=hint, obj=obj, id=id)
        self.location = location
        self.filename = filename

    @property
    def message(self) -> str:
        return self.msg

    def is_error(self) -> bool:
        return self.is_serious()

    def __eq__(self, other):
        return (
            super().__eq__(other)
            and self.location == other.location
            and self.filename == other.filename
        )

    def __hash__(self):
        return hash((self.level, self.msg, self.location, self.filename))

    def __str__(self):
        if self.location is not None:
            line, column = self.location
            prefix = f"{self.filename or '<source>'}:{line}:{column}"
        else:
            prefix = self.obj or self.filename or "alg2cnf"
        text = f"{prefix}: {self.severity}: {self.msg}"
        if self.hint:
            text += f"\n\tHINT: {self.hint}"
        return text


class Error(Diagnostic):
    level = ERROR
    severity = "error"


class Warning(Diagnostic):  # noqa: A001
    level = WARNING
    severity = "warning"
