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
"""Concrete execution over bit-parallel integers.

Each bit value is an integer whose lane `j` holds the bit of the `j`-th input vector, so one
run of the executor evaluates a whole batch of inputs. This evaluation core shares no code
with the formula DAG: it is the reference the translation is checked against.

>>> from alg2cnf.lang.frontend import compile_source
>>> program = compile_source("__in bit a, b; __out bit c; void main() { c = a ^ b; }")
>>> run_batch(program, [[0, 0], [0, 1], [1, 1]]).outputs
[[0], [1], [0]]
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from alg2cnf.exceptions import ExecutionError
from alg2cnf.execution.base import Domain, Executor, Override, TracePoint, flat_size
from alg2cnf.lang import ast


class _Const(int):
    """Lanes of a value known without looking at the inputs."""


class ConcreteDomain(Domain):
    def __init__(self, masks: Sequence[int], width: int):
        self.width = width
        self.full = (1 << width) - 1
        self.FALSE = _Const(0)
        self.TRUE = _Const(self.full)
        self.masks = list(masks)
        self.position = 0

    def constant_value(self, value) -> Optional[int]:
        if isinstance(value, _Const):
            return 1 if value else 0
        return None

    def input(self, label: str):
        if self.position >= len(self.masks):
            raise ExecutionError(f"not enough input values for '{label}'")
        value = self.masks[self.position]
        self.position += 1
        return value

    def _result(self, value: int, *operands):
        if all(isinstance(x, _Const) for x in operands):
            return _Const(value)
        return value

    def not_(self, a):
        return self._result(~a & self.full, a)

    def and_(self, a, b):
        if (isinstance(a, _Const) and not a) or (isinstance(b, _Const) and not b):
            return self.FALSE
        return self._result(a & b, a, b)

    def or_(self, a, b):
        if (isinstance(a, _Const) and a) or (isinstance(b, _Const) and b):
            return self.TRUE
        return self._result(a | b, a, b)

    def xor(self, a, b):
        return self._result(a ^ b, a, b)

    def ite(self, c, t, e):
        if isinstance(c, _Const):
            return t if c else e
        return (c & t) | (~c & self.full & e)


def input_count(program: ast.Program, overrides: Optional[Dict[str, Override]] = None) -> int:
    """Number of input bits of a program once `free` overrides are applied."""
    freed = {name for name, value in (overrides or {}).items() if value == "free"}
    extra = sum(flat_size(x.shape) for x in program.globals if x.name in freed)
    return program.input_width + extra


def to_masks(rows: Sequence[Sequence[int]], count: int) -> List[int]:
    """Transpose input vectors into one lane mask per input bit.

    >>> to_masks([[1, 0], [1, 1], [0, 1]], 2)
    [3, 6]
    """
    masks = [0] * count
    for lane, row in enumerate(rows):
        if len(row) != count:
            raise ExecutionError(f"expected {count} input bit(s), got {len(row)}")
        for index, bit in enumerate(row):
            if bit & 1:
                masks[index] |= 1 << lane
    return masks


def from_masks(masks: Sequence[int], width: int) -> List[List[int]]:
    return [[(x >> lane) & 1 for x in masks] for lane in range(width)]


@dataclass
class BatchResult:
    """Outputs of each input vector, and lane masks of every trace point."""

    outputs: List[List[int]] = field(default_factory=list)
    trace: Dict[TracePoint, int] = field(default_factory=dict)
    output_names: List[str] = field(default_factory=list)

    def trace_bits(self, lane: int = 0) -> Dict[TracePoint, int]:
        return {point: (value >> lane) & 1 for point, value in self.trace.items()}


def run_masks(
    program: ast.Program,
    masks: Sequence[int],
    width: int,
    overrides: Optional[Dict[str, Override]] = None,
    zero_init: bool = False,
    record_trace: bool = False,
):
    """Run a checked program on `width` lanes given as one mask per input bit."""
    domain = ConcreteDomain(masks, width)
    executor = Executor(
        program, domain, zero_init=zero_init, overrides=overrides, record_trace=record_trace
    )
    return executor.run()


def run_batch(
    program: ast.Program,
    rows: Sequence[Sequence[int]],
    overrides: Optional[Dict[str, Override]] = None,
    zero_init: bool = False,
    record_trace: bool = False,
) -> BatchResult:
    """Run a checked program on several input vectors at once."""
    if not rows:
        return BatchResult()
    masks = to_masks(rows, input_count(program, overrides))
    result = run_masks(program, masks, len(rows), overrides, zero_init, record_trace)
    return BatchResult(
        outputs=from_masks([int(x) for __, x in result.outputs], len(rows)),
        trace={point: int(value) for point, value in result.trace.items()},
        output_names=[name for name, __ in result.outputs],
    )
