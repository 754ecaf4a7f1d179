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
"""Exceptions raised by the translator, the instance builder and the solvers.

Every error that can be blamed on the user (bad source, bad condition file, bad option)
derives from :class:`Alg2CnfError`; the command line maps them to exit code 1.
"""
from typing import List, Optional, Sequence


class Alg2CnfError(Exception):
    """Base class of all errors that are reported without a traceback."""


class ImproperlyConfigured(Alg2CnfError):
    """A setting has an invalid value."""


class CompileError(Alg2CnfError):
    """The source program has at least one error diagnostic."""

    def __init__(self, diagnostics: Sequence, filename: Optional[str] = None):
        self.diagnostics = list(diagnostics)
        self.filename = filename
        errors = [x for x in self.diagnostics if x.is_error()]
        if errors:
            message = str(errors[0])
            if len(errors) > 1:
                message += f" (and {len(errors) - 1} more error(s))"
        else:
            message = "compilation failed"
        super().__init__(message)


class FormulaError(Alg2CnfError):
    """Invalid construction of a formula node."""


class ExecutionError(Alg2CnfError):
    """Runtime error during the symbolic or concrete execution of a program."""

    def __init__(self, message: str, location=None, filename: Optional[str] = None):
        self.location = location
        self.filename = filename
        self.reason = message
        if location is not None:
            line, column = location
            message = f"{filename or '<source>'}:{line}:{column}: {message}"
        super().__init__(message)


class EncodingError(Alg2CnfError):
    """The CNF backend cannot encode a node or read a template file."""


class TraceLookupError(Alg2CnfError):
    """A trace point does not exist in an encoding."""

    def __init__(self, point: str, suggestions: List[str] = None):
        self.point = point
        self.suggestions = suggestions or []
        message = f"unknown trace point '{point}'"
        if self.suggestions:
            message += "; did you mean " + ", ".join(self.suggestions) + "?"
        super().__init__(message)


class InstanceError(Alg2CnfError):
    """Invalid instance construction (bad variables, bad condition file, …)."""

    def __init__(
        self, message: str, filename: Optional[str] = None, line: Optional[int] = None
    ):
        self.filename = filename
        self.line = line
        if line is not None:
            message = f"{filename or '<conditions>'}:{line}: {message}"
        super().__init__(message)


class SolverError(Alg2CnfError):
    """A solver cannot be run."""


class SolverMismatch(SolverError):
    """A solver returned a model that does not satisfy the instance."""


class CorpusError(Alg2CnfError):
    """Unknown corpus entry, or corpus data that does not match its program."""
