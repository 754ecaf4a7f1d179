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
"""Settings providers and dispatch of the `alg2cnf` command line to one verb."""
import difflib
import os
import sys
from importlib import import_module
from typing import Any, Dict, List, Optional

from alg2cnf.config.fields_providers import FieldsProvider
from alg2cnf.config.merger import SettingMerger
from alg2cnf.config.values_providers import (
    DictProvider,
    EnvironmentConfigProvider,
    IniConfigProvider,
    PythonModuleProvider,
)

PROG_NAME = "alg2cnf"
ENVIRONMENT_PREFIX = "ALG2CNF_"
COMMANDS = {
    "translate": "compile a program into a template CNF and its variable map",
    "encode": "fix the output bits of a template (inversion instance)",
    "guess": "fix guessing bits of an instance to the values of a known key",
    "partition": "write the cubes of a decomposition set",
    "collide": "build (and optionally solve) a collision instance",
    "inject": "add the constraints of a condition file to an instance",
    "solve": "decide an instance with the embedded or an external solver",
    "verify": "check a template against the concrete evaluation of its program",
    "stats": "display the size of a CNF",
    "corpus": "list, build and validate the bundled programs",
}
EXIT_USAGE = 1


def get_merger(
    config_file: Optional[str] = None, values: Optional[Dict[str, Any]] = None
) -> SettingMerger:
    """Return a setting merger with all the providers, by increasing priority.

    * built-in values (`values`),
    * alg2cnf.config.defaults,
    * {prefix}/etc/alg2cnf/settings.ini,
    * environment variables (`ALG2CNF_SOLVER_SEED=7`),
    * ./local_settings.ini,
    * the `--config` file of the command line.
    """
    prefix = os.path.abspath(sys.prefix)
    if prefix == "/usr":
        prefix = ""
    providers = [
        DictProvider(values or {}, name="default values"),
        PythonModuleProvider("alg2cnf.config.defaults"),
        IniConfigProvider(f"{prefix}/etc/{PROG_NAME}/settings.ini"),
        EnvironmentConfigProvider(ENVIRONMENT_PREFIX),
        IniConfigProvider(os.path.abspath("local_settings.ini")),
    ]
    if config_file:
        providers.append(IniConfigProvider(os.path.abspath(config_file)))
    return SettingMerger(FieldsProvider(f"{PROG_NAME}.iniconf:INI_MAPPING"), providers)


def usage() -> str:
    """
    >>> usage().splitlines()[0]
    'usage: alg2cnf <command> [options]'
    """
    lines = [f"usage: {PROG_NAME} <command> [options]", "", "commands:"]
    width = max(len(x) for x in COMMANDS)
    lines += [f"  {name.ljust(width)}  {text}" for name, text in COMMANDS.items()]
    lines += ["", f"'{PROG_NAME} <command> --help' shows the options of a command."]
    return "\n".join(lines) + "\n"


def manage(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    """Run one command and return its exit code."""
    argv = list(sys.argv if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    verb = argv[1] if len(argv) > 1 else None
    if verb in ("help", "-h", "--help"):
        stdout.write(usage())
        return 0
    elif verb == "--version":
        from alg2cnf import __version__

        stdout.write(f"{__version__}\n")
        return 0
    elif verb is None:
        stderr.write(usage())
        return EXIT_USAGE
    elif verb not in COMMANDS:
        message = f"{PROG_NAME}: unknown command '{verb}'"
        suggestions = difflib.get_close_matches(verb, list(COMMANDS), n=2)
        if suggestions:
            message += "; did you mean " + " or ".join(suggestions) + "?"
        stderr.write(message + "\n\n" + usage())
        return EXIT_USAGE
    module = import_module(f"{PROG_NAME}.management.commands.{verb}")
    command = module.Command(stdout=stdout, stderr=stderr)
    return command.run_from_argv(argv)


def main():
    sys.exit(manage())
