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
"""Collision instance of a compression function, optionally solved and checked."""
from argparse import ArgumentParser

from alg2cnf.instances.collision import collision_instance
from alg2cnf.instances.conditions import read_conditions
from alg2cnf.management.base import Alg2CnfCommand
from alg2cnf.oracle import solve_instance, verify_collision
from alg2cnf.solving.config import Status


class Command(Alg2CnfCommand):
    help = (
        "Build a collision instance: two copies of the program whose outputs are equal, "
        "plus the bit conditions of the given files. With --solve, a model is decoded into "
        "two messages and checked by concrete evaluation."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("program", help="source file (.alg)")
        parser.add_argument(
            "--conditions",
            action="append",
            default=[],
            metavar="FILE",
            help="condition file (can be repeated)",
        )
        parser.add_argument(
            "--distinct",
            action="store_true",
            default=False,
            help="require distinct messages",
        )
        parser.add_argument(
            "--free-outputs",
            action="store_true",
            default=False,
            help="do not equate the outputs of both copies",
        )
        parser.add_argument("-o", "--output", default=None, help="instance DIMACS file")
        parser.add_argument("--label", default=None, help="name of the instance")
        parser.add_argument(
            "--solve", action="store_true", default=False, help="solve the instance"
        )
        self.add_translate_arguments(parser)
        self.add_solver_arguments(parser)

    def handle(self, *args, **options):
        program = self.compile(options["program"])
        conditions = []
        for path in options["conditions"]:
            conditions += read_conditions(path)
        instance = collision_instance(
            program,
            conditions,
            overrides=self.overrides(options),
            config=self.translate_config(options),
            equate_outputs=not options["free_outputs"],
            distinct_inputs=options["distinct"],
            label=options["label"],
        )
        self.write_lines(
            [
                f"instance={instance.name}",
                f"variables={instance.var_count}",
                f"clauses={len(instance.clauses)}",
                f"assumptions={len(instance.assumptions)}",
            ]
        )
        if options["output"]:
            cnf_path, __ = instance.write(options["output"])
            self.stdout.write(f"cnf={cnf_path}")
        if not options["solve"]:
            return
        result = solve_instance(instance, self.solve_config(options))
        self.write_lines(result.stat_lines())
        if result.status is Status.SAT:
            check = verify_collision(program, instance, result.model)
            self.write_lines(check.lines())
        self.exit_code = result.exit_code
