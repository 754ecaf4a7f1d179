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
"""SAT instances: inversion, guessing bits, partitionings, collisions and bit conditions."""
from alg2cnf.instances.collision import collision_instance, split_model
from alg2cnf.instances.conditions import BitCondition, BitRef, inject_constraints, read_conditions
from alg2cnf.instances.instance import (
    Instance,
    fix_guessing_bits,
    inversion_instance,
    model_value,
    select_guessing_bits,
)
from alg2cnf.instances.partition import CubeStream, cube_instance, partition

__all__ = [
    "BitCondition",
    "BitRef",
    "CubeStream",
    "Instance",
    "collision_instance",
    "cube_instance",
    "fix_guessing_bits",
    "inject_constraints",
    "inversion_instance",
    "model_value",
    "partition",
    "read_conditions",
    "select_guessing_bits",
    "split_model",
]
