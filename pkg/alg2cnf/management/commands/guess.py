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
"""Guessing bits: input variables fixed to the values of a known key."""
from argparse import ArgumentParser

from alg2cnf.instances.instance import fix_guessing_bits, select_guessing_bits
from alg2cnf.management.base import Alg2CnfCommand


class Command(Alg2CnfCommand):
    help = (
        "Fix K input bits of an instance to the values they take in a known key. "
        "The key covers all the inputs, MSB-first: its first bit is the first input."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("instance", help="instance (or template) DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument("--bits", type=int, required=True, help="number of guessing bits")
        key = parser.add_mutually_exclusive_group(required=True)
        key.add_argument("--key-hex", default=None, help="known value of the inputs")
        key.add_argument("--key-file", default=None, help="file holding that value")
        parser.add_argument(
            "--select",
            default="last",
            choices=["first", "last", "random"],
            help="which input bits are guessed (default: last)",
        )
        parser.add_argument("--seed", type=int, default=0, help="seed of --select random")
        parser.add_argument("-o", "--output", required=True, help="instance DIMACS file")

    def handle(self, *args, **options):
        instance = self.load_instance(options["instance"], options["map"])
        template = instance.base
        key = self.read_hex(
            options["key_hex"], options["key_file"], len(template.inputs), "key"
        )
        variables = select_guessing_bits(
            template, options["bits"], options["select"], options["seed"]
        )
        position = {var: i for i, var in enumerate(template.input_vars)}
        values = [key[position[var]] for var in variables]
        instance = fix_guessing_bits(instance, variables, values)
        cnf_path, __ = instance.write(options["output"])
        self.write_lines(
            [
                f"instance={instance.name}",
                f"guessing={instance.guessing}",
                "guessed=" + " ".join(str(x) for x in variables),
                f"cnf={cnf_path}",
            ]
        )
