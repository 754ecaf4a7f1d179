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
"""Bit conditions added to an existing instance."""
from argparse import ArgumentParser

from alg2cnf.instances.conditions import inject_constraints, read_conditions
from alg2cnf.management.base import Alg2CnfCommand


class Command(Alg2CnfCommand):
    help = (
        "Add the fix, eq, xor32 and diff32 lines of condition files to an instance. "
        "Trace points are looked up in its variable map."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("instance", help="instance DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument(
            "--conditions",
            action="append",
            required=True,
            metavar="FILE",
            help="condition file (can be repeated)",
        )
        parser.add_argument("-o", "--output", required=True, help="instance DIMACS file")

    def handle(self, *args, **options):
        instance = self.load_instance(options["instance"], options["map"])
        before = len(instance.clauses)
        for path in options["conditions"]:
            instance = inject_constraints(instance, read_conditions(path))
        cnf_path, __ = instance.write(options["output"])
        self.write_lines(
            [
                f"instance={instance.name}",
                f"variables={instance.var_count}",
                f"added_clauses={len(instance.clauses) - before}",
                f"added_assumptions={len(instance.assumptions)}",
                f"cnf={cnf_path}",
            ]
        )
