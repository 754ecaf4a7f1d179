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
"""Literals, clauses and template CNFs.

Literals are DIMACS integers: variable `x` is the literal `x`, its negation is `-x`.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from alg2cnf.exceptions import EncodingError
from alg2cnf.execution.base import TracePoint

Clause = Tuple[int, ...]


def literal(var: int, value: int) -> int:
    """The literal of `var` that is true when the variable equals `value`.

    >>> literal(3, 1), literal(3, 0)
    (3, -3)
    """
    return var if value else -var


def make_clause(literals: Iterable[int]) -> Optional[Clause]:
    """Normalized clause (sorted by variable, without duplicates), None for tautologies.

    >>> make_clause([3, -1, 3])
    (-1, 3)
    >>> make_clause([2, -2]) is None
    True
    """
    seen = set()
    for lit in literals:
        if lit == 0:
            raise EncodingError("0 is not a literal")
        if -lit in seen:
            return None
        seen.add(lit)
    if not seen:
        raise EncodingError("empty clause")
    return tuple(sorted(seen, key=lambda x: (abs(x), x)))


def clause_value(clause: Sequence[int], assignment: Sequence[int]) -> bool:
    """Value of a clause under an assignment indexed by variable (index 0 unused)."""
    for lit in clause:
        if (assignment[abs(lit)] == 1) == (lit > 0):
            return True
    return False


def unsatisfied(clauses: Iterable[Sequence[int]], assignment: Sequence[int]) -> List:
    return [clause for clause in clauses if not clause_value(clause, assignment)]


@dataclass
class TemplateCnf:
    """CNF of a function: input variables first, then the auxiliary gate variables."""

    name: str = "template"
    var_count: int = 0
    clauses: List[Clause] = field(default_factory=list)
    inputs: List[Tuple[str, int]] = field(default_factory=list)
    outputs: List[Tuple[str, int]] = field(default_factory=list)
    # variable -> id of the formula node it encodes
    provenance: Dict[int, int] = field(default_factory=dict)
    trace: Dict[TracePoint, int] = field(default_factory=dict)
    # trace points whose value is a constant
    trace_constants: Dict[TracePoint, int] = field(default_factory=dict)
    # "qualifier.name" -> shape of the traced variables
    shapes: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def input_vars(self) -> List[int]:
        return [var for __, var in self.inputs]

    @property
    def output_vars(self) -> List[int]:
        return [var for __, var in self.outputs]

    def new_var(self) -> int:
        self.var_count += 1
        return self.var_count

    def add_clause(self, literals: Iterable[int]):
        clause = make_clause(literals)
        if clause is not None:
            self.clauses.append(clause)

    def input_var(self, name: str) -> int:
        for input_name, var in self.inputs:
            if input_name == name:
                return var
        raise EncodingError(f"unknown input '{name}'")

    def trace_var(self, point: TracePoint) -> Optional[int]:
        return self.trace.get(point)

    def last_occurrence(self, qualifier: str, name: str, index: Optional[int]) -> int:
        cell = (qualifier, name, index)
        occurrences = [
            x.occurrence for x in list(self.trace) + list(self.trace_constants) if x.cell == cell
        ]
        return max(occurrences, default=-1)

    def stats(self) -> Dict:
        """Variables, clauses, literals and the clause length histogram.

        >>> TemplateCnf(var_count=3, clauses=[(1, 2), (-3,), (1, 2, 3)]).stats()["histogram"]
        {1: 1, 2: 1, 3: 1}
        """
        histogram = {}
        literals = 0
        for clause in self.clauses:
            literals += len(clause)
            histogram[len(clause)] = histogram.get(len(clause), 0) + 1
        return {
            "name": self.name,
            "variables": self.var_count,
            "clauses": len(self.clauses),
            "literals": literals,
            "inputs": len(self.inputs),
            "outputs": len(self.outputs),
            "histogram": dict(sorted(histogram.items())),
        }

    def check(self):
        """Raise :class:`EncodingError` when the template is malformed."""
        inputs = set(self.input_vars)
        for __, var in self.inputs + self.outputs:
            if not 1 <= var <= self.var_count:
                raise EncodingError(f"variable {var} out of range [1, {self.var_count}]")
        if inputs & set(self.output_vars):
            raise EncodingError("input and output variables must be disjoint")
        for clause in self.clauses:
            for lit in clause:
                if not 1 <= abs(lit) <= self.var_count:
                    raise EncodingError(f"literal {lit} out of range in clause {clause}")
