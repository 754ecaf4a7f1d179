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
"""Deciding instances: embedded CDCL solver, external solvers and cube partitionings."""
from alg2cnf.solving.cdcl import CdclSolver, Propagation, propagate, solve
from alg2cnf.solving.config import SolveConfig, SolveResult, Status, check_model
from alg2cnf.solving.cubes import CubeReport, solve_cubes
from alg2cnf.solving.external import solve_external

__all__ = [
    "CdclSolver",
    "CubeReport",
    "Propagation",
    "SolveConfig",
    "SolveResult",
    "Status",
    "check_model",
    "propagate",
    "solve",
    "solve_cubes",
    "solve_external",
]
