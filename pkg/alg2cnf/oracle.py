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
"""Concrete reference evaluation of programs and round-trip checks of their templates.

The concrete interpreter runs the same control flow as the symbolic executor, over
bit-parallel integers instead of formula nodes: it is the reference every translation is
checked against.

>>> from alg2cnf.lang.frontend import compile_source
>>> program = compile_source("__in bit a, b; __out bit c; void main() { c = a & b; }")
>>> run_concrete(program, [1, 1]), brute_force_invert(program, [0])
([1], [[0, 0], [0, 1], [1, 0]])
"""
import json
import logging
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from alg2cnf.cnf.clauses import TemplateCnf, literal
from alg2cnf.exceptions import Alg2CnfError, EncodingError
from alg2cnf.execution.base import Override, TracePoint, flat_size
from alg2cnf.execution.concrete import input_count, run_batch, run_masks
from alg2cnf.execution.symbolic import Encoding
from alg2cnf.instances.collision import split_model
from alg2cnf.instances.instance import Instance, Model, inversion_instance
from alg2cnf.lang import ast
from alg2cnf.solving.cdcl import propagate, solve
from alg2cnf.solving.config import SolveConfig, Status
from alg2cnf.solving.external import solve_external
from alg2cnf.utils import bits_to_hex, random_bits

logger = logging.getLogger(__name__)

MAX_BRUTE_FORCE_WIDTH = 24
# lanes evaluated by one concrete run
BATCH_SIZE = 4096


def run_concrete_batch(
    program: ast.Program,
    xs: Sequence[Sequence[int]],
    overrides: Optional[Dict[str, Override]] = None,
    zero_init: bool = False,
) -> List[List[int]]:
    """Outputs of several input vectors, evaluated `BATCH_SIZE` lanes at a time."""
    outputs = []
    for start in range(0, len(xs), BATCH_SIZE):
        chunk = xs[start : start + BATCH_SIZE]
        outputs += run_batch(program, chunk, overrides=overrides, zero_init=zero_init).outputs
    return outputs


def run_concrete(
    program: ast.Program,
    x: Sequence[int],
    overrides: Optional[Dict[str, Override]] = None,
    zero_init: bool = False,
) -> List[int]:
    """Output bits of one input vector, `__out` cells in declaration order."""
    return run_concrete_batch(program, [x], overrides, zero_init)[0]


def concrete_trace(
    program: ast.Program,
    x: Sequence[int],
    overrides: Optional[Dict[str, Override]] = None,
    zero_init: bool = False,
) -> Dict[TracePoint, int]:
    """Value of every trace point for one input vector."""
    result = run_batch(program, [x], overrides, zero_init, record_trace=True)
    return result.trace_bits(0)


def _lane_patterns(bits: int) -> List[int]:
    """Masks of the low bits of the lane numbers 0 .. 2^bits - 1."""
    patterns = []
    for b in range(bits):
        pattern = 0
        for lane in range(1 << bits):
            if (lane >> b) & 1:
                pattern |= 1 << lane
        patterns.append(pattern)
    return patterns


def brute_force_invert(
    program: ast.Program,
    y: Sequence[int],
    overrides: Optional[Dict[str, Override]] = None,
) -> List[List[int]]:
    """All the inputs mapped to `y`, by exhaustive evaluation (in increasing order)."""
    n = input_count(program, overrides)
    if n > MAX_BRUTE_FORCE_WIDTH:
        raise Alg2CnfError(
            f"'{program.name}' has {n} input bit(s), brute force is limited to "
            f"{MAX_BRUTE_FORCE_WIDTH}"
        )
    if len(y) != program.output_width:
        raise Alg2CnfError(
            f"'{program.name}' has {program.output_width} output bit(s), {len(y)} given"
        )
    low = min(n, BATCH_SIZE.bit_length() - 1)
    width = 1 << low
    full = (1 << width) - 1
    patterns = _lane_patterns(low)
    preimages = []
    for start in range(0, 1 << n, width):
        # input bit i is bit n - 1 - i of the input value
        masks = []
        for i in range(n):
            position = n - 1 - i
            if position < low:
                masks.append(patterns[position])
            else:
                masks.append(full if (start >> position) & 1 else 0)
        result = run_masks(program, masks, width, overrides=overrides, record_trace=False)
        match = full
        for (__, value), bit in zip(result.outputs, y):
            match &= int(value) if bit else ~int(value) & full
        while match:
            lane = (match & -match).bit_length() - 1
            match &= match - 1
            value = start + lane
            preimages.append([(value >> (n - 1 - i)) & 1 for i in range(n)])
    return preimages


@dataclass
class Failure:
    trial: int
    input: str
    expected: str
    observed: str
    status: str = "mismatch"


@dataclass
class VerifyReport:
    """Outcome of a verification run; it passes when no trial failed."""

    kind: str
    name: str
    seed: Optional[int] = None
    trials: int = 0
    failures: List[Failure] = field(default_factory=list)
    # trials answered UNSAT or UNKNOWN that do not count as failures
    unsat: int = 0
    unknown: int = 0
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def add_failure(self, failure: Failure):
        self.failures.append(failure)
        logger.warning(
            "%s %s, trial %d: %s on input %s",
            self.kind,
            self.name,
            failure.trial,
            failure.status,
            failure.input,
        )

    def as_dict(self) -> Dict:
        result = asdict(self)
        result["passed"] = self.passed
        return result

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1)

    def lines(self) -> List[str]:
        """Summary as `key=value` lines, then one line per failure.

        >>> VerifyReport("forward", "and2", seed=3, trials=2).lines()
        ['check=forward', 'name=and2', 'seed=3', 'trials=2', 'failures=0', 'passed=yes']
        """
        lines = [f"check={self.kind}", f"name={self.name}"]
        if self.seed is not None:
            lines.append(f"seed={self.seed}")
        lines += [f"trials={self.trials}", f"failures={len(self.failures)}"]
        if self.unsat:
            lines.append(f"unsat={self.unsat}")
        if self.unknown:
            lines.append(f"unknown={self.unknown}")
        lines.append("passed=" + ("yes" if self.passed else "no"))
        for failure in sorted(self.failures, key=lambda x: x.trial):
            lines.append(
                f"failure trial={failure.trial} status={failure.status} "
                f"input={failure.input} expected={failure.expected} observed={failure.observed}"
            )
        return lines

    def finish(self, start: float) -> "VerifyReport":
        self.elapsed = time.monotonic() - start
        self.failures.sort(key=lambda x: x.trial)
        logger.info(
            "%s %s: %d trial(s), %d failure(s) in %.3fs",
            self.kind,
            self.name,
            self.trials,
            len(self.failures),
            self.elapsed,
        )
        return self


def _check_widths(program: ast.Program, template: TemplateCnf, overrides):
    n = input_count(program, overrides)
    if len(template.inputs) != n or len(template.outputs) != program.output_width:
        raise EncodingError(
            f"template {template.name} has {len(template.inputs)} input(s) and "
            f"{len(template.outputs)} output(s), '{program.name}' has {n} and "
            f"{program.output_width}"
        )


def random_inputs(program: ast.Program, trials: int, seed: int, overrides=None):
    rng = random.Random(seed)
    n = input_count(program, overrides)
    return [random_bits(rng, n) for __ in range(trials)]


def verify_forward(
    program: ast.Program,
    template: TemplateCnf,
    trials: int = 100,
    seed: int = 0,
    overrides: Optional[Dict[str, Override]] = None,
) -> VerifyReport:
    """Fix random inputs in the template and compare the propagated outputs to the oracle."""
    start = time.monotonic()
    _check_widths(program, template, overrides)
    report = VerifyReport("forward", template.name, seed=seed, trials=trials)
    xs = random_inputs(program, trials, seed, overrides)
    expected = run_concrete_batch(program, xs, overrides)
    instance = Instance(template)
    for trial, (x, y) in enumerate(zip(xs, expected)):
        assumptions = [literal(var, bit) for var, bit in zip(template.input_vars, x)]
        propagation = propagate(instance, assumptions)
        if propagation.conflict:
            report.add_failure(
                Failure(trial, bits_to_hex(x), bits_to_hex(y), "", status="conflict")
            )
            continue
        observed = [propagation.value(var) for var in template.output_vars]
        if None in observed:
            text = "".join("?" if b is None else str(b) for b in observed)
            report.add_failure(
                Failure(trial, bits_to_hex(x), bits_to_hex(y), text, status="undetermined")
            )
        elif observed != y:
            report.add_failure(
                Failure(trial, bits_to_hex(x), bits_to_hex(y), bits_to_hex(observed))
            )
    return report.finish(start)


def check_agreement(
    program: ast.Program,
    encoding: Encoding,
    trials: int = 100,
    seed: int = 0,
    overrides: Optional[Dict[str, Override]] = None,
) -> VerifyReport:
    """Compare the formula DAG of an encoding with the concrete interpreter."""
    start = time.monotonic()
    report = VerifyReport("agreement", program.name, seed=seed, trials=trials)
    xs = random_inputs(program, trials, seed, overrides)
    expected = run_concrete_batch(program, xs, overrides)
    for trial, (x, y) in enumerate(zip(xs, expected)):
        observed = encoding.eval(x)
        if observed != y:
            report.add_failure(
                Failure(trial, bits_to_hex(x), bits_to_hex(y), bits_to_hex(observed))
            )
    return report.finish(start)


def solve_instance(instance: Instance, config: Optional[SolveConfig] = None):
    config = config or SolveConfig()
    if config.external:
        return solve_external(instance, config.external, config)
    return solve(instance, config)


def verify_inversion(
    program: ast.Program,
    template: TemplateCnf,
    trials: int = 10,
    seed: int = 0,
    config: Optional[SolveConfig] = None,
    overrides: Optional[Dict[str, Override]] = None,
    targets: Optional[Iterable[Sequence[int]]] = None,
) -> VerifyReport:
    """Invert oracle images with the solver and check that every preimage found is one.

    Random inputs give the images to invert, unless `targets` lists them: an UNSAT answer
    is then recorded but is not a failure, since a target may lie outside the range.
    """
    start = time.monotonic()
    _check_widths(program, template, overrides)
    if targets is None:
        xs = random_inputs(program, trials, seed, overrides)
        ys = run_concrete_batch(program, xs, overrides)
    else:
        ys = [list(y) for y in targets]
        xs = [None] * len(ys)
    report = VerifyReport(
        "inversion", template.name, seed=seed if targets is None else None, trials=len(ys)
    )
    for trial, (x, y) in enumerate(zip(xs, ys)):
        instance = inversion_instance(template, y, label=f"{template.name}-{trial}")
        result = solve_instance(instance, config)
        shown = "" if x is None else bits_to_hex(x)
        if result.status is Status.UNKNOWN:
            report.unknown += 1
        elif result.status is Status.UNSAT:
            if x is None:
                report.unsat += 1
            else:
                report.add_failure(Failure(trial, shown, bits_to_hex(y), "", status="unsat"))
        else:
            preimage = instance.input_bits(result.model)
            observed = run_concrete(program, preimage, overrides)
            if observed != y:
                report.add_failure(
                    Failure(trial, bits_to_hex(preimage), bits_to_hex(y), bits_to_hex(observed))
                )
    return report.finish(start)


def _globals_of_copy(
    program: ast.Program, overrides: Dict[str, Override], bits: Sequence[int]
) -> Dict[str, Tuple[int, ...]]:
    """Effective value of every overridden global of one copy of a collision instance."""
    values = {}
    position = program.input_width
    for decl in program.globals:
        value = overrides.get(decl.name)
        if value is None:
            continue
        width = flat_size(decl.shape)
        if value == "free":
            values[decl.name] = tuple(bits[position : position + width])
            position += width
        elif isinstance(value, int):
            values[decl.name] = tuple((value >> i) & 1 for i in range(width))
        else:
            values[decl.name] = tuple(int(x) & 1 for x in value)
    return values


@dataclass
class CollisionCheck:
    first: List[int]
    second: List[int]
    first_output: List[int]
    second_output: List[int]
    # overridden globals (chaining values) of each copy
    first_globals: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    second_globals: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    message_width: int = 0

    @property
    def equal_outputs(self) -> bool:
        return self.first_output == self.second_output

    @property
    def distinct(self) -> bool:
        width = self.message_width
        return (
            self.first[:width] != self.second[:width]
            or self.first_globals != self.second_globals
        )

    @property
    def valid(self) -> bool:
        return self.equal_outputs and self.distinct

    def lines(self) -> List[str]:
        width = self.message_width
        lines = [
            f"message1={bits_to_hex(self.first[:width])}",
            f"message2={bits_to_hex(self.second[:width])}",
        ]
        for copy, values in ((1, self.first_globals), (2, self.second_globals)):
            for name, bits in sorted(values.items()):
                lines.append(f"{name.lower()}{copy}={bits_to_hex(bits)}")
        lines += [
            f"output1={bits_to_hex(self.first_output)}",
            f"output2={bits_to_hex(self.second_output)}",
            "collision=" + ("yes" if self.valid else "no"),
        ]
        return lines


def verify_collision(program: ast.Program, instance: Instance, model: Model) -> CollisionCheck:
    """Run both messages of a collision model through the oracle."""
    overrides = instance.meta.get("overrides")
    if instance.meta.get("copies") != 2 or overrides is None:
        raise Alg2CnfError(f"{instance.name} is not a collision instance")
    first, second = split_model(instance, model)
    check = CollisionCheck(
        first,
        second,
        run_concrete(program, first, overrides[1]),
        run_concrete(program, second, overrides[2]),
        _globals_of_copy(program, overrides[1], first),
        _globals_of_copy(program, overrides[2], second),
        program.input_width,
    )
    if not check.valid:
        logger.warning("%s: the model is not a collision", instance.name)
    return check
