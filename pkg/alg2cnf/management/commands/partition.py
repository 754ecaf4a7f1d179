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
"""Cubes of a decomposition set, as an iCNF file."""
from argparse import ArgumentParser

from django.core.management import CommandError

from alg2cnf.instances.partition import partition, read_decomposition, write_cubes
from alg2cnf.management.base import Alg2CnfCommand


def parse_mode(value: str):
    """
    >>> parse_mode("enumerate"), parse_mode("sample:12")
    (('enumerate', None), ('sample', 12))
    """
    mode, __, count = value.partition(":")
    if mode == "enumerate" and not count:
        return mode, None
    elif mode == "sample" and count.isdigit():
        return mode, int(count)
    raise CommandError(f"invalid mode '{value}' (enumerate or sample:N)")


class Command(Alg2CnfCommand):
    help = (
        "Split an instance by the assignments of a decomposition set (input names or "
        "variable numbers, one file). Cubes are written as 'a <literals> 0' lines."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("instance", help="instance DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument("--set", required=True, help="decomposition set file")
        parser.add_argument("--mode", default="enumerate", help="enumerate or sample:N")
        parser.add_argument("--seed", type=int, default=0, help="seed of the sampled cubes")
        parser.add_argument("-o", "--output", default=None, help="iCNF file of the cubes")
        parser.add_argument(
            "--count-only",
            action="store_true",
            default=False,
            help="only display the number of cubes",
        )

    def handle(self, *args, **options):
        mode, count = parse_mode(options["mode"])
        instance = self.load_instance(options["instance"], options["map"])
        try:
            with open(options["set"]) as fd:
                refs = read_decomposition(fd)
        except OSError as e:
            raise CommandError(f"cannot read {options['set']}: {e.strerror or e}")
        stream = partition(instance, refs, mode=mode, count=count, seed=options["seed"])
        self.write_lines([f"variables={len(stream.variables)}", f"cubes={stream.count}"])
        if options["count_only"]:
            return
        if not options["output"]:
            raise CommandError("-o/--output is required unless --count-only is given")
        written = write_cubes(stream, options["output"])
        self.write_lines([f"written={written}", f"icnf={options['output']}"])
