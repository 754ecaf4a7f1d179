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
"""Round-trip checks of a template against its program."""
from argparse import ArgumentParser

from alg2cnf.cnf.dimacs import load_template
from alg2cnf.management.base import EXIT_USER_ERROR, Alg2CnfCommand
from alg2cnf.oracle import verify_forward, verify_inversion


class Command(Alg2CnfCommand):
    help = (
        "Compare a template CNF with the concrete evaluation of its program on random "
        "inputs: forward (propagation of fixed inputs) or, with --inversion, by solving "
        "inversion instances. The exit code is 1 when a trial fails."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("program", help="source file (.alg)")
        parser.add_argument("template", help="template DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument("--trials", type=int, default=None, help="number of random inputs")
        parser.add_argument("--seed", type=int, default=None, help="random seed")
        parser.add_argument(
            "--inversion",
            action="store_true",
            default=False,
            help="solve inversion instances instead of propagating inputs",
        )
        parser.add_argument(
            "--free",
            action="append",
            default=[],
            metavar="GLOBAL",
            help="global replaced by free input variables in the template",
        )
        parser.add_argument(
            "--json", action="store_true", default=False, help="display the report as JSON"
        )

    def handle(self, *args, **options):
        program = self.compile(options["program"])
        template = load_template(options["template"], options["map"])
        trials = options["trials"]
        if trials is None:
            trials = self.settings.get("VERIFY_TRIALS", 100)
        seed = options["seed"]
        if seed is None:
            seed = self.settings.get("VERIFY_SEED", 0)
        overrides = self.overrides(options)
        if options["inversion"]:
            report = verify_inversion(
                program,
                template,
                trials=trials,
                seed=seed,
                config=self.solve_config({}),
                overrides=overrides,
            )
        else:
            report = verify_forward(program, template, trials=trials, seed=seed, overrides=overrides)
        if options["json"]:
            self.stdout.write(report.to_json())
        else:
            self.write_lines(report.lines())
        if not report.passed:
            self.exit_code = EXIT_USER_ERROR
