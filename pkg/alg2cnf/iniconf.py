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
"""List of external settings (via .ini files or environment variables).

.. code-block:: ini

  [translate]
  fuse_limit = 8
  [solver]
  external = kissat -q {}
  time_limit = 600
"""
from typing import List

from alg2cnf.checks import Error, config_check_results
from alg2cnf.config.dynamic_settings import RawValue
from alg2cnf.config.fields import (
    BooleanConfigField,
    CharConfigField,
    ChoiceConfigField,
    ConfigField,
    DirectoryPathConfigField,
    FloatConfigField,
    IntegerConfigField,
)


def external_command(value: str):
    """Keep `{}` placeholders of solver commands out of setting interpolation.

    >>> external_command("kissat {}")
    RawValue('kissat {}')
    >>> external_command("") is None
    True
    """
    value = (value or "").strip()
    return RawValue(value) if value else None


def fuse_limit(value: str) -> int:
    """Parse the fusion limit: 0 (disabled) or a table width between 3 and 16.

    >>> fuse_limit("0"), fuse_limit("6")
    (0, 6)
    """
    limit = int(value) if value else 0
    if limit != 0 and not 3 <= limit <= 16:
        config_check_results.append(
            Error(
                f"translate.fuse_limit must be 0 or lie in [3, 16] (got {limit}).",
                obj="configuration",
                id="alg2cnf.E004",
            )
        )
        limit = min(max(limit, 3), 16)
    return limit


LOG_MAPPING = [
    ChoiceConfigField(
        "log.level",
        "LOG_LEVEL",
        choices={
            "debug": "debug",
            "info": "info",
            "warning": "warning",
            "error": "error",
            "critical": "critical",
        },
        help_str="Minimal level of displayed log messages.",
    ),
    DirectoryPathConfigField(
        "log.directory",
        "LOG_DIRECTORY",
        help_str="Write one rotated log file per command in this directory.",
    ),
    BooleanConfigField("log.debug", "DEBUG", help_str="Display debug messages."),
]
TRANSLATE_MAPPING = [
    ConfigField(
        "translate.fuse_limit",
        "TRANSLATE_FUSE_LIMIT",
        from_str=fuse_limit,
        help_str="Maximal number of leaves of a fused truth table (0 disables fusion).",
    ),
    BooleanConfigField(
        "translate.zero_init",
        "TRANSLATE_ZERO_INIT",
        help_str="Read never-written bits as constant 0 instead of failing.",
    ),
    BooleanConfigField(
        "translate.prune",
        "TRANSLATE_PRUNE",
        help_str="Only encode the gates in the cone of influence of the outputs.",
    ),
    BooleanConfigField(
        "translate.ite_extra",
        "TRANSLATE_ITE_EXTRA",
        help_str="Add the two redundant clauses of if-then-else gates.",
    ),
    IntegerConfigField(
        "translate.exact_limit",
        "MINIMIZE_EXACT_LIMIT",
        allow_none=False,
        min_value=0,
        max_value=16,
        help_str="Truth tables up to this width get an exact minimum cover.",
    ),
    DirectoryPathConfigField(
        "corpus.directory",
        "CORPUS_DIRECTORY",
        help_str="Alternative directory of corpus programs.",
    ),
]
SOLVER_MAPPING = [
    FloatConfigField(
        "solver.var_decay",
        "SOLVER_VAR_DECAY",
        allow_none=False,
        min_value=0.0,
        max_value=1.0,
    ),
    FloatConfigField(
        "solver.clause_decay",
        "SOLVER_CLAUSE_DECAY",
        allow_none=False,
        min_value=0.0,
        max_value=1.0,
    ),
    FloatConfigField(
        "solver.input_priority",
        "SOLVER_INPUT_PRIORITY",
        allow_none=False,
        min_value=1.0,
        help_str="Activity boost of input variables (>= 2 branches on inputs first).",
    ),
    IntegerConfigField(
        "solver.restart_base", "SOLVER_RESTART_BASE", allow_none=False, min_value=1
    ),
    BooleanConfigField("solver.phase_saving", "SOLVER_PHASE_SAVING"),
    FloatConfigField(
        "solver.time_limit",
        "SOLVER_TIME_LIMIT",
        allow_none=False,
        min_value=0.0,
        help_str="Seconds (0 for no limit).",
    ),
    IntegerConfigField(
        "solver.conflict_limit",
        "SOLVER_CONFLICT_LIMIT",
        allow_none=False,
        min_value=0,
        help_str="Conflicts (0 for no limit).",
    ),
    IntegerConfigField("solver.seed", "SOLVER_SEED", allow_none=False),
    CharConfigField(
        "solver.external",
        "SOLVER_EXTERNAL",
        from_str=external_command,
        help_str='External DIMACS solver, like "kissat -q {}" or "pysat:cadical153".',
    ),
    IntegerConfigField("solver.jobs", "SOLVER_JOBS", allow_none=False, min_value=1),
]
VERIFY_MAPPING = [
    IntegerConfigField("verify.trials", "VERIFY_TRIALS", allow_none=False, min_value=0),
    IntegerConfigField("verify.seed", "VERIFY_SEED", allow_none=False),
]

INI_MAPPING = (
    LOG_MAPPING + TRANSLATE_MAPPING + SOLVER_MAPPING + VERIFY_MAPPING
)  # type: List[ConfigField]
