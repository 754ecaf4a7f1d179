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
"""Solver settings and results."""
import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from alg2cnf.cnf.clauses import unsatisfied
from alg2cnf.exceptions import ImproperlyConfigured, SolverMismatch

logger = logging.getLogger(__name__)

EXIT_SAT = 10
EXIT_UNSAT = 20


@dataclass(frozen=True)
class SolveConfig:
    """Settings of one solver run.

    Limits equal to 0 are disabled. `input_priority` scales the initial activity and the
    activity bumps of the input variables; from 2 on, unassigned inputs are always branched
    on first.
    """

    var_decay: float = 0.95
    clause_decay: float = 0.999
    input_priority: float = 2.0
    restart_base: int = 100
    phase_saving: bool = True
    time_limit: float = 0.0
    conflict_limit: int = 0
    seed: int = 0
    external: Optional[str] = None
    jobs: int = 1
    decision_log: int = 1000

    def __post_init__(self):
        if not 0 < self.var_decay < 1:
            raise ImproperlyConfigured(f"var_decay must be in ]0, 1[, not {self.var_decay}")
        if not 0 < self.clause_decay <= 1:
            raise ImproperlyConfigured(
                f"clause_decay must be in ]0, 1], not {self.clause_decay}"
            )
        if self.input_priority < 1:
            raise ImproperlyConfigured(
                f"input_priority must be at least 1, not {self.input_priority}"
            )
        if self.restart_base < 1 or self.jobs < 1:
            raise ImproperlyConfigured("restart_base and jobs must be positive")
        if self.time_limit < 0 or self.conflict_limit < 0 or self.decision_log < 0:
            raise ImproperlyConfigured("solver limits cannot be negative")

    @classmethod
    def from_settings(cls, settings: Dict) -> "SolveConfig":
        return cls(
            var_decay=settings.get("SOLVER_VAR_DECAY", cls.var_decay),
            clause_decay=settings.get("SOLVER_CLAUSE_DECAY", cls.clause_decay),
            input_priority=settings.get("SOLVER_INPUT_PRIORITY", cls.input_priority),
            restart_base=settings.get("SOLVER_RESTART_BASE", cls.restart_base),
            phase_saving=settings.get("SOLVER_PHASE_SAVING", cls.phase_saving),
            time_limit=settings.get("SOLVER_TIME_LIMIT") or 0.0,
            conflict_limit=settings.get("SOLVER_CONFLICT_LIMIT") or 0,
            seed=settings.get("SOLVER_SEED", cls.seed),
            external=settings.get("SOLVER_EXTERNAL"),
            jobs=settings.get("SOLVER_JOBS", cls.jobs),
        )


class Status(enum.Enum):
    SAT = "SATISFIABLE"
    UNSAT = "UNSATISFIABLE"
    UNKNOWN = "UNKNOWN"


@dataclass
class SolveResult:
    status: Status
    # one literal per variable, `model[v - 1]` is `v` or `-v`
    model: Optional[List[int]] = None
    reason: str = ""
    stats: Dict[str, float] = field(default_factory=dict)
    # decided literals, in order, up to `SolveConfig.decision_log`
    decisions: List[int] = field(default_factory=list)
    # failed assumptions of an UNSAT answer (empty when the clauses alone are UNSAT)
    core: List[int] = field(default_factory=list)
    solver: str = "cdcl"

    def __post_init__(self):
        if (self.model is not None) != (self.status is Status.SAT):
            raise ValueError("a model is given if and only if the status is SAT")

    def __str__(self):
        if self.status is Status.UNKNOWN and self.reason:
            return f"UNKNOWN({self.reason})"
        return self.status.name

    @property
    def exit_code(self) -> int:
        return {Status.SAT: EXIT_SAT, Status.UNSAT: EXIT_UNSAT}.get(self.status, 0)

    def stat_lines(self) -> List[str]:
        """Machine-readable `key=value` lines.

        >>> SolveResult(Status.UNSAT, stats={"conflicts": 3}).stat_lines()
        ['status=UNSAT', 'solver=cdcl', 'conflicts=3']
        """
        lines = [f"status={self}", f"solver={self.solver}"]
        for key, value in self.stats.items():
            if isinstance(value, float):
                value = f"{value:.3f}"
            lines.append(f"{key}={value}")
        return lines

    def competition_lines(self) -> List[str]:
        """`s` and `v` lines of the SAT competition output format."""
        lines = [f"s {self.status.value}"]
        if self.model is not None:
            for start in range(0, len(self.model), 10):
                lines.append("v " + " ".join(str(x) for x in self.model[start : start + 10]))
            lines.append("v 0")
        return lines


def complete_model(literals: Sequence[int], var_count: int) -> List[int]:
    """One literal per variable; unassigned variables are set to false.

    >>> complete_model([2, -3], 4)
    [-1, 2, -3, -4]
    """
    values = {}
    for lit in literals:
        if lit and abs(lit) <= var_count:
            values[abs(lit)] = lit
    return [values.get(var, -var) for var in range(1, var_count + 1)]


def check_model(instance, model: Sequence[int], solver: str = "solver"):
    """Raise :class:`SolverMismatch` unless the model satisfies the instance."""
    assignment = [0] + [1 if x > 0 else 0 for x in model]
    if len(model) < instance.var_count:
        raise SolverMismatch(
            f"{solver} returned {len(model)} value(s) for {instance.var_count} variable(s)"
        )
    failed = unsatisfied(instance.clauses, assignment)
    failed += [(x,) for x in instance.assumptions if assignment[abs(x)] != (x > 0)]
    if failed:
        raise SolverMismatch(
            f"{solver} returned a model violating {len(failed)} clause(s), e.g. {failed[0]}"
        )
