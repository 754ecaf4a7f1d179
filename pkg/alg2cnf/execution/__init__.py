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
"""Execution of checked programs, symbolically (formula DAG) or concretely (bit lanes)."""
from alg2cnf.execution.base import Executor, TracePoint
from alg2cnf.execution.concrete import ConcreteDomain, run_batch
from alg2cnf.execution.symbolic import (
    Encoding,
    SymbolicDomain,
    encode_conditional,
    execute,
    trace_lookup,
)

__all__ = [
    "ConcreteDomain",
    "Encoding",
    "Executor",
    "SymbolicDomain",
    "TracePoint",
    "encode_conditional",
    "execute",
    "run_batch",
    "trace_lookup",
]
