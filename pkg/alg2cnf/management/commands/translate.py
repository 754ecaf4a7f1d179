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
"""Compile a program into a template CNF, with its JSON variable map."""
import os
from argparse import ArgumentParser

from alg2cnf.cnf.dimacs import emit_dimacs
from alg2cnf.management.base import Alg2CnfCommand
from alg2cnf.pipeline import translate
from alg2cnf.utils import ensure_dir


class Command(Alg2CnfCommand):
    help = (
        "Translate a program into a template CNF. Inputs and outputs are listed in the header "
        "comments and in the variable map (default: the CNF path with a .map suffix)."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("program", help="source file (.alg)")
        parser.add_argument(
            "-o", "--output", default=None, help="DIMACS file (default: <program name>.cnf)"
        )
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument("--name", default=None, help="name of the template")
        parser.add_argument("--dump-dag", default=None, metavar="FILE", help="formula dump")
        self.add_translate_arguments(parser)

    def handle(self, *args, **options):
        program = self.compile(options["program"], name=options["name"])
        config = self.translate_config(options)
        encoding, template = translate(program, config, self.overrides(options))
        output = options["output"] or f"{program.name}.cnf"
        if options["dump_dag"]:
            with open(ensure_dir(options["dump_dag"]), "w") as fd:
                roots = None if options["no_prune"] else encoding.output_nodes
                fd.write(encoding.dag.dump(roots))
        cnf_path, map_path = emit_dimacs(template, output, map_path=options["map"])
        self.write_lines(self.template_lines(template))
        self.write_lines([f"cnf={os.path.abspath(cnf_path)}", f"map={os.path.abspath(map_path)}"])
