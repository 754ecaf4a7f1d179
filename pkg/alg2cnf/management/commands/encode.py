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
"""Inversion instance: a template with its output bits fixed."""
from argparse import ArgumentParser

from alg2cnf.instances.instance import inversion_instance
from alg2cnf.management.base import Alg2CnfCommand


class Command(Alg2CnfCommand):
    help = "Fix the outputs of a template CNF to a known value (MSB-first hexadecimal)."

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("template", help="template DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        values = parser.add_mutually_exclusive_group(required=True)
        values.add_argument("--output-hex", default=None, help="value of the outputs")
        values.add_argument("--output-file", default=None, help="file holding that value")
        parser.add_argument("-o", "--output", required=True, help="instance DIMACS file")
        parser.add_argument("--label", default=None, help="name of the instance")

    def handle(self, *args, **options):
        instance = self.load_instance(options["template"], options["map"])
        template = instance.base
        y = self.read_hex(
            options["output_hex"], options["output_file"], len(template.outputs), "output value"
        )
        instance = inversion_instance(template, y, label=options["label"])
        cnf_path, map_path = instance.write(options["output"])
        self.write_lines(
            [f"instance={instance.name}", f"fixed={len(instance.assumptions)}", f"cnf={cnf_path}"]
        )
