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
"""Collision instances: two copies of a template over disjoint variables.

The first copy keeps the variables of its template; the variables of the second copy are
shifted after them. Inputs, outputs and trace points are prefixed with `1:` and `2:`.
"""
import logging
from dataclasses import replace
from typing import Dict, Iterable, List, Optional, Tuple

from alg2cnf.cnf.clauses import TemplateCnf
from alg2cnf.exceptions import InstanceError
from alg2cnf.execution.base import Override
from alg2cnf.instances.conditions import (
    BUILD_KINDS,
    ConditionLine,
    ConstraintBuilder,
    inject_constraints,
    words_to_bits,
)
from alg2cnf.instances.instance import Instance, Model, model_value
from alg2cnf.lang import ast
from alg2cnf.pipeline import TranslateConfig, translate

logger = logging.getLogger(__name__)

COPIES = (1, 2)


def merge_templates(first: TemplateCnf, second: TemplateCnf, name: str) -> TemplateCnf:
    """Conjunction of two templates over disjoint variables.

    >>> t = TemplateCnf("f", 2, [(-1, 2)], inputs=[("x", 1)], outputs=[("y", 2)])
    >>> merged = merge_templates(t, t, "f2")
    >>> merged.clauses, merged.inputs
    ([(-1, 2), (-3, 4)], [('1:x', 1), ('2:x', 3)])
    """
    offset = first.var_count

    def shift(lit: int) -> int:
        return lit + offset if lit > 0 else lit - offset

    merged = TemplateCnf(name=name, var_count=first.var_count + second.var_count)
    for copy, template, move in ((1, first, int), (2, second, shift)):
        prefix = f"{copy}:"
        merged.clauses += [tuple(move(x) for x in clause) for clause in template.clauses]
        merged.inputs += [(prefix + name, move(var)) for name, var in template.inputs]
        merged.outputs += [(prefix + name, move(var)) for name, var in template.outputs]
        for point, var in template.trace.items():
            merged.trace[replace(point, qualifier=prefix + point.qualifier)] = move(var)
        for point, value in template.trace_constants.items():
            merged.trace_constants[replace(point, qualifier=prefix + point.qualifier)] = value
        for key, shape in template.shapes.items():
            merged.shapes[prefix + key] = shape
    merged.check()
    return merged


def _global_name(program: ast.Program, name: str) -> str:
    names = [decl.name for decl in program.globals]
    if name in names:
        return name
    matches = [x for x in names if x.lower() == name.lower()]
    if len(matches) != 1:
        raise InstanceError(f"'{program.name}' has no global variable '{name}'")
    return matches[0]


def collision_instance(
    program: ast.Program,
    conditions: Iterable[ConditionLine] = (),
    overrides: Optional[Dict[str, Override]] = None,
    config: Optional[TranslateConfig] = None,
    equate_outputs: bool = True,
    distinct_inputs: bool = False,
    label: Optional[str] = None,
) -> Instance:
    """Instance whose models are pairs of inputs with equal outputs.

    `overrides` apply to both copies; the `free`, `set`, `outputs` and `distinct` lines of
    the conditions take precedence, and the other conditions are injected afterwards.
    """
    conditions = list(conditions)
    per_copy = {copy: dict(overrides or {}) for copy in COPIES}
    for item in conditions:
        condition = item.condition
        if condition.kind not in BUILD_KINDS:
            continue
        try:
            if condition.kind in ("free", "set"):
                name = _global_name(program, condition.option)
                value = "free" if condition.kind == "free" else words_to_bits(condition.words)
                for copy in [condition.copy] if condition.copy else COPIES:
                    per_copy[copy][name] = value
            elif condition.kind == "outputs":
                equate_outputs = condition.option == "eq"
            else:
                distinct_inputs = True
        except InstanceError as e:
            raise InstanceError(str(e), filename=item.filename, line=item.line)
    templates = [translate(program, config, per_copy[copy])[1] for copy in COPIES]
    if len(templates[0].outputs) != len(templates[1].outputs):
        raise InstanceError("both copies must have the same number of outputs")
    merged = merge_templates(templates[0], templates[1], program.name)
    meta = {
        "copies": 2,
        "program": program.name,
        "message_width": program.input_width,
        "overrides": per_copy,
    }
    instance = Instance(merged, label=label or f"{program.name}-collision", meta=meta)
    builder = ConstraintBuilder(instance)
    if equate_outputs:
        half = len(merged.outputs) // 2
        for (__, y1), (__, y2) in zip(merged.outputs[:half], merged.outputs[half:]):
            builder.add_clauses([[-y1, y2], [y1, -y2]])
    if distinct_inputs:
        first, second = twin_input_vars(instance)
        width = program.input_width
        builder.distinct(first[:width], second[:width])
    instance = builder.build()
    logger.info(
        "%s: %d variable(s), %d clause(s)%s%s",
        instance.name,
        instance.var_count,
        len(instance.clauses),
        "" if equate_outputs else ", outputs free",
        ", distinct inputs" if distinct_inputs else "",
    )
    constraints = [x for x in conditions if x.condition.kind not in BUILD_KINDS]
    return inject_constraints(instance, constraints)


def twin_input_vars(instance: Instance) -> Tuple[List[int], List[int]]:
    first = [var for name, var in instance.base.inputs if name.startswith("1:")]
    second = [var for name, var in instance.base.inputs if name.startswith("2:")]
    return first, second


def split_model(instance: Instance, model: Model) -> Tuple[List[int], List[int]]:
    """Input bits of both copies (including the freed globals) in a model."""
    first, second = twin_input_vars(instance)
    return (
        [model_value(model, var) for var in first],
        [model_value(model, var) for var in second],
    )
