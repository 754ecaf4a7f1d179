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
"""Source text to checked program.

>>> program = compile_source("__in bit a, b; __out bit c; void main() { c = a & b; }", name="and2")
>>> program.name, program.input_width, program.output_width
('and2', 2, 1)
"""
import logging
import os
from typing import List, Optional, Tuple

from alg2cnf.checks import Diagnostic
from alg2cnf.exceptions import Alg2CnfError, CompileError
from alg2cnf.lang import ast
from alg2cnf.lang.checker import check
from alg2cnf.lang.parser import parse
from alg2cnf.lang.resolver import resolve
from alg2cnf.lang.tokens import lexical_diagnostics, tokenize

logger = logging.getLogger(__name__)


def analyze(
    source: str, filename: Optional[str] = None
) -> Tuple[ast.Program, List[Diagnostic]]:
    """Run all front-end passes and return the program with every diagnostic.

    Resolution and checks only run when the previous passes found no error.
    """
    tokens = tokenize(source)
    diagnostics = lexical_diagnostics(tokens, filename)
    program, syntax = parse(tokens, filename=filename)
    diagnostics += syntax
    if any(x.is_error() for x in diagnostics):
        return program, diagnostics
    diagnostics += resolve(program)
    if any(x.is_error() for x in diagnostics):
        return program, diagnostics
    diagnostics += check(program)
    return program, diagnostics


def compile_source(
    source: str, filename: Optional[str] = None, name: Optional[str] = None
) -> ast.Program:
    """Return the checked program, or raise :class:`CompileError` with all the diagnostics."""
    program, diagnostics = analyze(source, filename=filename)
    if any(x.is_error() for x in diagnostics):
        raise CompileError(diagnostics, filename=filename)
    if name is None and filename:
        name = os.path.splitext(os.path.basename(filename))[0]
    program.name = name or "program"
    logger.debug(
        "%s: %d function(s), %d input bit(s), %d output bit(s)",
        program.name,
        len(program.functions),
        program.input_width,
        program.output_width,
    )
    return program


def compile_file(path: str, name: Optional[str] = None) -> ast.Program:
    try:
        with open(path, encoding="utf-8") as fd:
            source = fd.read()
    except OSError as e:
        raise Alg2CnfError(f"cannot read {path}: {e.strerror or e}")
    return compile_source(source, filename=path, name=name)
