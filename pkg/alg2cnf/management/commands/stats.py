"""Size of a template or of an instance."""
from argparse import ArgumentParser

from alg2cnf.cnf.dimacs import load_template
from alg2cnf.corpus.registry import NAMES, get
from alg2cnf.management.base import Alg2CnfCommand


class Command(Alg2CnfCommand):
    help = (
        "Display the variables, clauses, literals and clause lengths of a DIMACS file. "
        "Corpus templates are compared with the published sizes (for the hash functions, "
        "with the size of the collision encoding they yield)."
    )

    def add_arguments(self, parser: ArgumentParser):
        parser.add_argument("cnf", help="DIMACS file")
        parser.add_argument("--map", default=None, help="JSON variable map")
        parser.add_argument(
            "--compare",
            default=None,
            metavar="NAME",
            help="corpus entry to compare with (default: the template name)",
        )

    def handle(self, *args, **options):
        template = load_template(options["cnf"], options["map"])
        self.write_lines(self.template_lines(template))
        name = options["compare"] or template.name
        if name not in NAMES:
            return
        entry = get(name, validate=False)
        measured = entry.measured_size(template)
        self.write_lines(self.published_lines(measured, entry.published_size))
