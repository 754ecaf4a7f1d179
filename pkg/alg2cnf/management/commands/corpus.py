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
"""The bundled programs: list, translate, validate and regenerate their vectors."""
import os
from argparse import ArgumentParser

from django.core.management import CommandError

from alg2cnf.cnf.dimacs import emit_dimacs
from alg2cnf.corpus.registry import available, get, validate_all, write_vectors
from alg2cnf.management.base import EXIT_USER_ERROR, Alg2CnfCommand
from alg2cnf.pipeline import translate


class Command(Alg2CnfCommand):
    help = (
        "Work on the corpus: 'list' the entries, 'build <name>' their template CNF, "
        "'validate' every vector file against the programs and the reference "
        "implementations, or write new 'vectors <name>' from the reference implementation."
    )
    actions = {
        "list": "display the entries with their widths",
        "build": "translate an entry (compared with the published sizes)",
        "validate": "check the vectors and random agreement with the references",
        "vectors": "write random vectors computed by the reference implementation",
    }

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument(
            "action",
            choices=self.actions,
            help=",\n".join('"%s": %s' % x for x in self.actions.items()),
        )
        parser.add_argument("name", nargs="?", default=None, help="corpus entry")
        parser.add_argument(
            "-o",
            "--output",
            default=None,
            help="directory of the built CNF, or file of the vectors",
        )
        parser.add_argument("--trials", type=int, default=10, help="random trials per entry")
        parser.add_argument("--count", type=int, default=4, help="number of vectors")
        parser.add_argument("--seed", type=int, default=0, help="random seed")
        self.add_translate_arguments(parser)

    def handle(self, *args, **options):
        root = self.settings.get("CORPUS_DIRECTORY")
        action = options["action"]
        if action in ("build", "vectors") and not options["name"]:
            raise CommandError(f"'{action}' needs the name of a corpus entry")
        if action == "list":
            self.show_list(root)
        elif action == "build":
            self.build(options, root)
        elif action == "validate":
            report = validate_all(root=root, random_trials=options["trials"], seed=options["seed"])
            self.write_lines(report.lines())
            if not report.passed:
                self.exit_code = EXIT_USER_ERROR
        else:
            path = write_vectors(
                options["name"],
                count=options["count"],
                seed=options["seed"],
                root=root,
                path=options["output"],
            )
            self.stdout.write(f"vectors={path}")

    def show_list(self, root):
        for name in available(root):
            entry = get(name, root=root, validate=False)
            line = f"{name:<8} {entry.input_width:>4} -> {entry.output_width:<4}"
            if entry.profile.description:
                line += f" {entry.profile.description}"
            self.stdout.write(line)

    def build(self, options, root):
        entry = get(options["name"], root=root)
        __, template = translate(
            entry.program, self.translate_config(options), self.overrides(options)
        )
        directory = options["output"] or "."
        cnf_path, map_path = emit_dimacs(
            template, os.path.join(directory, f"{entry.name}.cnf")
        )
        self.write_lines(self.template_lines(template))
        measured = entry.measured_size(template)
        self.write_lines(self.published_lines(measured, entry.published_size))
        if entry.profile.guessing_bits:
            self.stdout.write(f"guessing_bits={entry.profile.guessing_bits}")
        self.write_lines([f"cnf={cnf_path}", f"map={map_path}"])
