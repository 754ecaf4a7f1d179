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
"""Common behaviour of the alg2cnf verbs.

Every verb is a Django management command run without any Django project: the settings come
from :func:`alg2cnf.manage.get_merger`, the logging from :class:`alg2cnf.log.LogConfiguration`,
and the errors of the library become one-line messages with a conventional exit code.
"""
import logging
import logging.config
import os
from argparse import ArgumentParser
from dataclasses import replace
from typing import Dict, Iterable, List, Optional, Tuple

from django.core.management import BaseCommand, CommandError

from alg2cnf.checks import config_check_results
from alg2cnf.cnf.clauses import TemplateCnf
from alg2cnf.cnf.dimacs import load_template
from alg2cnf.exceptions import Alg2CnfError, CompileError
from alg2cnf.instances.instance import Instance
from alg2cnf.lang import ast
from alg2cnf.lang.frontend import compile_file
from alg2cnf.log import LogConfiguration
from alg2cnf.pipeline import TranslateConfig
from alg2cnf.solving.config import SolveConfig
from alg2cnf.utils import hex_to_bits, remove_arguments_from_help

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_INTERNAL_ERROR = 2


class Alg2CnfCommand(BaseCommand):
    """Base class of the verbs; `handle` sets `exit_code` when it is not 0."""

    requires_system_checks = []
    hidden_arguments = {"--settings", "--pythonpath", "--skip-checks", "--force-color"}

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.settings = {}  # type: Dict
        self.exit_code = EXIT_OK
        self.argv = []  # type: List[str]

    def get_version(self):
        from alg2cnf import __version__

        return __version__

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.add_argument(
            "--config", default=None, help="read settings from this .ini file"
        )
        remove_arguments_from_help(parser, self.hidden_arguments)
        return parser

    def run_from_argv(self, argv) -> int:
        """Parse the arguments and run the command, returning its exit code.

        Errors are written on stderr as a single line (exit code 1 for user errors,
        2 for internal ones) unless `--traceback` is given.
        """
        self.argv = list(argv)
        parser = self.create_parser(os.path.basename(argv[0]), argv[1])
        try:
            options = parser.parse_args(argv[2:])
        except CommandError as e:
            self.stderr.write(parser.format_usage().rstrip())
            self.stderr.write(f"{argv[1]}: {e}")
            return EXIT_USER_ERROR
        except SystemExit as e:  # --help and --version
            return e.code or EXIT_OK
        cmd_options = vars(options)
        args = cmd_options.pop("args", ())
        try:
            self.execute(*args, **cmd_options)
        except CommandError as e:
            if cmd_options.get("traceback"):
                raise
            self.stderr.write(f"{argv[1]}: {e}")
            return e.returncode
        except Exception as e:
            if cmd_options.get("traceback"):
                raise
            logger.exception("internal error in '%s'", argv[1])
            self.stderr.write(f"{argv[1]}: internal error: {e.__class__.__name__}: {e}")
            return EXIT_INTERNAL_ERROR
        return self.exit_code

    def execute(self, *args, **options):
        self.exit_code = EXIT_OK
        self.settings = self.load_settings(options.get("config"))
        self.configure_logging(options["verbosity"])
        self.report_configuration()
        try:
            return super().execute(*args, **options)
        except CompileError as e:
            for diagnostic in e.diagnostics:
                self.stderr.write(str(diagnostic))
            raise CommandError(str(e), returncode=EXIT_USER_ERROR) from e
        except Alg2CnfError as e:
            raise CommandError(str(e), returncode=EXIT_USER_ERROR) from e

    @staticmethod
    def load_settings(config_file: Optional[str]) -> Dict:
        from alg2cnf.manage import get_merger

        if config_file and not os.path.isfile(config_file):
            raise CommandError(f"configuration file {config_file} not found")
        del config_check_results[:]
        merger = get_merger(config_file)
        try:
            merger.process()
        except ValueError as e:
            raise CommandError(f"invalid configuration: {e}", returncode=EXIT_USER_ERROR)
        return merger.settings

    def configure_logging(self, verbosity: int):
        config = LogConfiguration()(self.settings, argv=self.argv, verbosity=verbosity)
        logging.config.dictConfig(config)

    def report_configuration(self):
        errors = 0
        for message in config_check_results:
            self.stderr.write(str(message))
            errors += message.is_serious()
        if errors:
            raise CommandError(f"{errors} configuration error(s)", returncode=EXIT_USER_ERROR)

    # options shared by several verbs
    @staticmethod
    def add_translate_arguments(parser: ArgumentParser):
        group = parser.add_argument_group("translation")
        group.add_argument(
            "--fuse-limit",
            type=int,
            default=None,
            help="maximal number of leaves of a fused truth table, 0 disables fusion",
        )
        group.add_argument(
            "--no-prune",
            action="store_true",
            default=False,
            help="encode every gate, even outside the cone of the outputs",
        )
        group.add_argument(
            "--zero-init",
            action="store_true",
            default=False,
            help="read never-written bits as 0",
        )
        group.add_argument(
            "--ite-extra",
            action="store_true",
            default=False,
            help="add the redundant clauses of if-then-else gates",
        )
        group.add_argument(
            "--free",
            action="append",
            default=[],
            metavar="GLOBAL",
            help="replace a global (like IV) by free input variables",
        )

    def translate_config(self, options) -> TranslateConfig:
        config = TranslateConfig.from_settings(self.settings)
        changes = {}
        if options.get("fuse_limit") is not None:
            if options["fuse_limit"] != 0 and not 3 <= options["fuse_limit"] <= 16:
                raise CommandError("--fuse-limit must be 0 or lie in [3, 16]")
            changes["fuse_limit"] = options["fuse_limit"]
        if options.get("no_prune"):
            changes["prune"] = False
        if options.get("zero_init"):
            changes["zero_init"] = True
        if options.get("ite_extra"):
            changes["ite_extra"] = True
        return replace(config, **changes)

    @staticmethod
    def overrides(options) -> Optional[Dict]:
        if not options.get("free"):
            return None
        return {name: "free" for name in options["free"]}

    @staticmethod
    def add_solver_arguments(parser: ArgumentParser):
        group = parser.add_argument_group("solver")
        group.add_argument(
            "--external",
            default=None,
            metavar="COMMAND",
            help='external solver, like "kissat -q {}" or "pysat:cadical153"',
        )
        group.add_argument("--time-limit", type=float, default=None, help="seconds")
        group.add_argument("--conflict-limit", type=int, default=None)
        group.add_argument(
            "--input-priority",
            type=float,
            default=None,
            help="activity boost of input variables (>= 2 branches on inputs first)",
        )
        group.add_argument("--seed", type=int, default=None, help="random seed")

    def solve_config(self, options) -> SolveConfig:
        config = SolveConfig.from_settings(self.settings)
        changes = {}
        for option, attribute in (
            ("external", "external"),
            ("time_limit", "time_limit"),
            ("conflict_limit", "conflict_limit"),
            ("input_priority", "input_priority"),
            ("seed", "seed"),
            ("jobs", "jobs"),
        ):
            if options.get(option) is not None:
                changes[attribute] = options[option]
        return replace(config, **changes)

    # inputs and outputs
    def compile(self, path: str, name: Optional[str] = None) -> ast.Program:
        program = compile_file(path, name=name)
        for warning in program.warnings:
            self.stderr.write(str(warning))
        return program

    @staticmethod
    def load_instance(cnf_path: str, map_path: Optional[str] = None) -> Instance:
        return Instance(load_template(cnf_path, map_path))

    @staticmethod
    def read_hex(value: Optional[str], path: Optional[str], width: int, what: str) -> List[int]:
        """Bits of a MSB-first hexadecimal value given inline or as the first word of a file."""
        if path:
            try:
                with open(path) as fd:
                    words = fd.read().split("#", 1)[0].split()
            except OSError as e:
                raise CommandError(f"cannot read {path}: {e.strerror or e}")
            if not words:
                raise CommandError(f"{path} does not contain any value")
            value = "".join(words)
        if value is None:
            raise CommandError(f"no {what} given")
        try:
            return hex_to_bits(value, width)
        except ValueError as e:
            raise CommandError(f"invalid {what}: {e}")

    def write_lines(self, lines: Iterable[str]):
        for line in lines:
            self.stdout.write(line)

    @staticmethod
    def template_lines(template: TemplateCnf) -> List[str]:
        stats = template.stats()
        lines = [f"{key}={stats[key]}" for key in ("name", "variables", "clauses", "literals")]
        lines += [f"inputs={stats['inputs']}", f"outputs={stats['outputs']}"]
        lines += [f"clauses_{size}={count}" for size, count in stats["histogram"].items()]
        return lines

    @staticmethod
    def published_lines(measured: Tuple[int, int], published) -> List[str]:
        """Comparison of measured (variables, clauses) counts with published ones."""
        if not published:
            return []
        variables, clauses = published
        return [
            f"published_variables={variables}",
            f"published_clauses={clauses}",
            f"ratio_variables={measured[0] / variables:.3f}",
            f"ratio_clauses={measured[1] / clauses:.3f}",
        ]
