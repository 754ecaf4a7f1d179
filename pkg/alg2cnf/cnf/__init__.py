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
"""Template CNFs: Tseitin encoding, table minimization and DIMACS files."""
from alg2cnf.cnf.clauses import TemplateCnf, literal, make_clause
from alg2cnf.cnf.dimacs import emit_dimacs, load_template, read_dimacs
from alg2cnf.cnf.minimize import Cover, minimize_cover
from alg2cnf.cnf.tseitin import encode_table, tseitinize

__all__ = [
    "Cover",
    "TemplateCnf",
    "emit_dimacs",
    "encode_table",
    "literal",
    "load_template",
    "make_clause",
    "minimize_cover",
    "read_dimacs",
    "tseitinize",
]
