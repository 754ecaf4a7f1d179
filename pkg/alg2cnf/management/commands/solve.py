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
"""Decide an instance, directly or cube by cube."""
from argparse import ArgumentParser

from alg2cnf.instances.partition import read_cubes
from alg2cnf.management.base import Alg2CnfCommand
from alg2cnf.oracle import solve_instance
from alg2cnf.solving.config import Status
from alg2cnf.solving.cubes import solve_cubes
from alg2cnf.utils import bits_to_hex, ensure_dir


class Command(Alg2CnfCommand):
    help = (
        "Solve a DIMACS instance. The exit code is 10 when it is satisfiable, 20 when it is "
        "not, and 0 when the limits are reached. Inputs and outputs of a model are displayed "
        "as MSB-first hexadecimal values."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("instance", help="instance DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument("--cubes", default=None, help="iCNF file of cubes")
        parser.add_argument("--jobs", type=int, default=None, help="parallel cube workers")
        parser.add_argument(
            "--model", default=None, metavar="FILE", help="write 's' and 'v' lines here"
        )
        self.add_solver_arguments(parser)

    def handle(self, *args, **options):
        instance = self.load_instance(options["instance"], options["map"])
        config = self.solve_config(options)
        if options["cubes"]:
            report = solve_cubes(instance, read_cubes(options["cubes"]), config)
            self.write_lines(report.stat_lines())
            result = report.result
            self.exit_code = report.exit_code
        else:
            result = solve_instance(instance, config)
            self.write_lines(result.stat_lines())
            self.exit_code = result.exit_code
        if result is None:
            return
        if options["model"]:
            with open(ensure_dir(options["model"]), "w") as fd:
                fd.write("\n".join(result.competition_lines()) + "\n")
        if result.status is Status.SAT:
            if instance.base.inputs:
                self.stdout.write(f"input={bits_to_hex(instance.input_bits(result.model))}")
            if instance.base.outputs:
                self.stdout.write(f"output={bits_to_hex(instance.output_bits(result.model))}")
