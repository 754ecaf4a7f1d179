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
"""SAT instances built on top of a template CNF.

An instance never modifies its template: the output values, guessing bits and cubes are
kept as assumptions, and the clauses of additional constraints (bit conditions, collision
gadgets) are kept apart with the auxiliary variables they need.
"""
import logging
import random
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from alg2cnf.cnf.clauses import Clause, TemplateCnf, literal
from alg2cnf.cnf.dimacs import emit_dimacs
from alg2cnf.exceptions import InstanceError

logger = logging.getLogger(__name__)

# a model lists one literal per variable: model[v - 1] is v or -v
Model = Sequence[int]
InputRef = Union[str, int]


def model_value(model: Model, var: int) -> int:
    """
    >>> model_value([1, -2, 3], 2), model_value([1, -2, 3], 3)
    (0, 1)
    """
    return 1 if model[var - 1] > 0 else 0


@dataclass(frozen=True)
class Instance:
    base: TemplateCnf
    assumptions: Tuple[int, ...] = ()
    extra_clauses: Tuple[Clause, ...] = ()
    # variables allocated beyond the template (0: none)
    extra_vars: int = 0
    label: str = ""
    # number of guessing bits fixed with :func:`fix_guessing_bits`
    guessing: int = 0
    meta: Dict = field(default_factory=dict, compare=False)

    @property
    def var_count(self) -> int:
        return self.base.var_count + self.extra_vars

    @property
    def clauses(self) -> List[Clause]:
        return self.base.clauses + list(self.extra_clauses)

    @property
    def name(self) -> str:
        return self.label or self.base.name

    def extend(
        self,
        assumptions: Iterable[int] = (),
        clauses: Iterable[Clause] = (),
        extra_vars: int = 0,
        **kwargs,
    ) -> "Instance":
        """New instance with more assumptions, clauses or auxiliary variables.

        Duplicate assumptions and clauses are ignored.

        >>> base = TemplateCnf("t", 2, [(1, 2)])
        >>> Instance(base).extend([1, 1, -2], [(-1, 2)]).assumptions
        (1, -2)
        """
        current = list(self.assumptions)
        for lit in assumptions:
            if lit not in current:
                current.append(lit)
        extra = list(self.extra_clauses)
        known = set(extra)
        for clause in clauses:
            if clause not in known:
                extra.append(clause)
                known.add(clause)
        instance = replace(
            self,
            assumptions=tuple(current),
            extra_clauses=tuple(extra),
            extra_vars=self.extra_vars + extra_vars,
            **kwargs,
        )
        instance.check()
        return instance

    def check(self):
        for lit in self.assumptions:
            if lit == 0 or abs(lit) > self.var_count:
                raise InstanceError(f"assumption {lit} out of range [1, {self.var_count}]")
        for clause in self.extra_clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.var_count:
                    raise InstanceError(f"literal {lit} out of range in clause {clause}")

    def folded(self) -> TemplateCnf:
        """Template with the extra clauses and the assumptions as unit clauses."""
        clauses = self.clauses
        seen = set(clauses)
        for lit in self.assumptions:
            if (lit,) not in seen:
                clauses.append((lit,))
                seen.add((lit,))
        return replace(
            self.base, name=self.name, var_count=self.var_count, clauses=clauses
        )

    def write(self, cnf_path: str, map_path: Optional[str] = None) -> Tuple[str, str]:
        comments = [f"instance {self.name}: {len(self.assumptions)} assumption(s)"]
        if self.guessing:
            comments.append(f"guessing bits {self.guessing}")
        return emit_dimacs(self.folded(), cnf_path, map_path=map_path, comments=comments)

    def input_bits(self, model: Model) -> List[int]:
        """Values of the input variables in a model."""
        return [model_value(model, var) for var in self.base.input_vars]

    def output_bits(self, model: Model) -> List[int]:
        return [model_value(model, var) for var in self.base.output_vars]


def resolve_inputs(template: TemplateCnf, refs: Iterable[InputRef]) -> List[int]:
    """Variables of inputs given by name or by DIMACS variable number."""
    inputs = set(template.input_vars)
    by_name = dict(template.inputs)
    result = []
    for ref in refs:
        if isinstance(ref, str) and not ref.lstrip("-").isdigit():
            var = by_name.get(ref)
            if var is None:
                raise InstanceError(f"unknown input '{ref}'")
        else:
            var = int(ref)
            if var not in inputs:
                raise InstanceError(f"variable {var} is not an input variable")
        if var in result:
            raise InstanceError(f"input variable {var} is given twice")
        result.append(var)
    return result


def inversion_instance(
    template: TemplateCnf, output: Sequence[int], label: Optional[str] = None
) -> Instance:
    """Instance whose models restricted to the inputs are the preimages of `output`.

    >>> template = TemplateCnf("and2", 3, [(1, -3), (2, -3), (-1, -2, 3)])
    >>> template.inputs, template.outputs = [("a", 1), ("b", 2)], [("c", 3)]
    >>> inversion_instance(template, [1]).assumptions
    (3,)
    """
    if len(output) != len(template.outputs):
        raise InstanceError(
            f"{template.name} has {len(template.outputs)} output bit(s), "
            f"{len(output)} value(s) given"
        )
    assumptions = [literal(var, bit) for var, bit in zip(template.output_vars, output)]
    instance = Instance(template, tuple(assumptions), label=label or template.name)
    instance.check()
    logger.info("%s: inversion of %d output bit(s)", instance.name, len(output))
    return instance


def fix_guessing_bits(
    instance: Instance, refs: Sequence[InputRef], values: Sequence[int]
) -> Instance:
    """Fix the given input variables (the guessing bits) to known values."""
    variables = resolve_inputs(instance.base, refs)
    if len(variables) != len(values):
        raise InstanceError(f"{len(variables)} guessing bit(s), {len(values)} value(s) given")
    fixed = {abs(x) for x in instance.assumptions}
    for var in variables:
        if var in fixed:
            raise InstanceError(f"input variable {var} is already fixed")
    guessing = instance.guessing + len(variables)
    label = instance.label
    if instance.guessing and label.endswith(str(instance.guessing)):
        label = label[: -len(str(instance.guessing))]
    return instance.extend(
        [literal(var, bit) for var, bit in zip(variables, values)],
        guessing=guessing,
        label=f"{label or instance.base.name}{guessing}",
    )


def select_guessing_bits(
    template: TemplateCnf, count: int, select: str = "last", seed: int = 0
) -> List[int]:
    """Choose `count` input variables: the first ones, the last ones, or at random.

    >>> template = TemplateCnf("t", 4, inputs=[("k[0]", 1), ("k[1]", 2), ("k[2]", 3)])
    >>> select_guessing_bits(template, 2), select_guessing_bits(template, 2, "first")
    ([2, 3], [1, 2])
    """
    variables = template.input_vars
    if not 0 <= count <= len(variables):
        raise InstanceError(f"cannot choose {count} guessing bit(s) among {len(variables)}")
    if select == "first":
        return variables[:count]
    elif select == "last":
        return variables[len(variables) - count :]
    elif select == "random":
        return sorted(random.Random(seed).sample(variables, count))
    raise InstanceError(f"invalid guessing bit selection '{select}'")
