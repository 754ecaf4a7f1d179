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
"""Front end of the algorithm description language: lexer, parser, scopes and checks."""
from alg2cnf.lang.checker import check
from alg2cnf.lang.frontend import analyze, compile_file, compile_source
from alg2cnf.lang.parser import parse, parse_source
from alg2cnf.lang.printer import format_program
from alg2cnf.lang.resolver import resolve
from alg2cnf.lang.tokens import tokenize

__all__ = [
    "analyze",
    "check",
    "compile_file",
    "compile_source",
    "format_program",
    "parse",
    "parse_source",
    "resolve",
    "tokenize",
]
