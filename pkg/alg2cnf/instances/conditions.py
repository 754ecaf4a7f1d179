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
"""Bit conditions: constraints on trace points, read from condition files.

One condition per line, `#` starts a comment::

    fix md4.a[0..31]@4 = 0          # every cell of the range
    fixrange md4.x[3][0..7] 1
    eq md4.b[3]@8 md4.b[3]@9
    ne md4.a[6]@1 md4.b[6]@0        # cellwise complement
    xor32 md4.a@4 md4.a@4 0x80000000
    diff32 md5.a@16 md5.a@16 0x80000000
    free IV                         # collision instances only
    set 2:IV 0x67452301 0xefcdab89 0x98badcfe 0x10325476
    outputs free
    distinct inputs

A trace reference is `[1:|2:]qualifier.var[i][j]...[lo..hi]@occurrence`. Missing trailing
indices select whole rows, the last index may be a range, and the occurrence defaults to
the last write of each cell. In collision instances, `1:` and `2:` select a copy; without a
prefix, `fix` applies to both copies while the two references of `eq`, `ne`, `xor32` and
`diff32` default to copy 1 and copy 2.
"""
import difflib
import itertools
import logging
import re
from dataclasses import dataclass
from typing import IO, Iterable, List, Optional, Sequence, Tuple, Union

from alg2cnf.cnf.clauses import literal, make_clause
from alg2cnf.cnf.tseitin import and_clauses, encode_table, xor_clauses
from alg2cnf.exceptions import InstanceError, TraceLookupError
from alg2cnf.execution.base import TracePoint
from alg2cnf.formula import tables
from alg2cnf.instances.instance import Instance

logger = logging.getLogger(__name__)

Index = Union[int, Tuple[int, int]]

WORD_WIDTH = 32
CONSTRAINT_KINDS = {"fix", "eq", "ne", "xor", "diff"}
BUILD_KINDS = {"free", "set", "outputs", "distinct"}
# borrow out of `b - a - borrow_in`, operands (b, a, borrow_in)
BORROW = tables.table_from_function(3, lambda b, a, r: ((1 - b) & a) | ((1 - (b ^ a)) & r))

_REFERENCE = re.compile(
    r"^(?:(?P<copy>[12]):)?(?P<qualifier>[A-Za-z_]\w*)\.(?P<name>[A-Za-z_]\w*)"
    r"(?P<indices>(?:\[[^\[\]]*\])*)(?:@(?P<occurrence>\d+))?$"
)
_INDEX = re.compile(r"\[([^\[\]]*)\]")


@dataclass(frozen=True)
class BitRef:
    """Reference to one or several trace cells.

    >>> ref = BitRef.parse("2:md4.x[3][0..7]@2")
    >>> ref.copy, ref.qualifier, ref.name, ref.indices, ref.occurrence
    (2, 'md4', 'x', (3, (0, 7)), 2)
    >>> str(ref)
    '2:md4.x[3][0..7]@2'
    """

    copy: Optional[int]
    qualifier: str
    name: str
    indices: Tuple[Index, ...] = ()
    occurrence: Optional[int] = None

    def __str__(self):
        text = f"{self.copy}:" if self.copy else ""
        text += f"{self.qualifier}.{self.name}"
        for index in self.indices:
            text += f"[{index[0]}..{index[1]}]" if isinstance(index, tuple) else f"[{index}]"
        if self.occurrence is not None:
            text += f"@{self.occurrence}"
        return text

    @classmethod
    def parse(cls, text: str) -> "BitRef":
        match = _REFERENCE.match(text)
        if not match:
            raise ValueError(f"invalid trace reference '{text}'")
        indices = []
        parts = _INDEX.findall(match.group("indices"))
        for position, part in enumerate(parts):
            try:
                if ".." in part:
                    if position != len(parts) - 1:
                        raise ValueError
                    low, high = part.split("..", 1)
                    low, high = int(low, 0), int(high, 0)
                    if low > high:
                        raise ValueError
                    indices.append((low, high))
                else:
                    indices.append(int(part, 0))
            except ValueError:
                raise ValueError(f"invalid index '[{part}]' in '{text}'")
        copy = match.group("copy")
        occurrence = match.group("occurrence")
        return cls(
            int(copy) if copy else None,
            match.group("qualifier"),
            match.group("name"),
            tuple(indices),
            None if occurrence is None else int(occurrence),
        )

    def with_copy(self, copy: Optional[int]) -> "BitRef":
        if self.copy is not None or copy is None:
            return self
        return BitRef(copy, self.qualifier, self.name, self.indices, self.occurrence)


@dataclass(frozen=True)
class BitCondition:
    """One line of a condition file.

    `kind` is `fix`, `eq`, `ne`, `xor` or `diff` for constraints on trace points, and `free`,
    `set`, `outputs` or `distinct` for the options of collision instances.
    """

    kind: str
    targets: Tuple[BitRef, ...] = ()
    value: int = 0
    option: str = ""
    copy: Optional[int] = None
    words: Tuple[int, ...] = ()

    @property
    def is_constraint(self) -> bool:
        return self.kind in CONSTRAINT_KINDS


@dataclass(frozen=True)
class ConditionLine:
    condition: BitCondition
    filename: str
    line: int


def _number(text: str) -> int:
    return int(text, 0)


def parse_condition(words: Sequence[str]) -> BitCondition:
    """Condition of one split line, :class:`ValueError` when it is malformed.

    >>> parse_condition(["fix", "f.x[0..3]", "=", "1"]).value
    1
    >>> parse_condition(["set", "2:IV", "0x1", "0x2"]).words
    (1, 2)
    """
    keyword, args = words[0].lower(), list(words[1:])
    if keyword in ("fix", "fixrange"):
        if len(args) == 3 and args[1] == "=":
            del args[1]
        if len(args) != 2 or args[1] not in ("0", "1"):
            raise ValueError(f"expected '{keyword} <trace> [=] <0|1>'")
        ref = BitRef.parse(args[0])
        if keyword == "fixrange" and not (ref.indices and isinstance(ref.indices[-1], tuple)):
            raise ValueError(f"'fixrange' needs a range [lo..hi] in '{args[0]}'")
        return BitCondition("fix", (ref,), int(args[1]))
    elif keyword in ("eq", "ne"):
        if len(args) != 2:
            raise ValueError(f"expected '{keyword} <trace> <trace>'")
        return BitCondition(keyword, (BitRef.parse(args[0]), BitRef.parse(args[1])))
    elif keyword in ("xor32", "diff32"):
        if len(args) != 3:
            raise ValueError(f"expected '{keyword} <trace> <trace> 0x<constant>'")
        value = _number(args[2])
        if not 0 <= value < 1 << WORD_WIDTH:
            raise ValueError(f"{args[2]} is not a {WORD_WIDTH}-bit constant")
        refs = (BitRef.parse(args[0]), BitRef.parse(args[1]))
        return BitCondition(keyword[:-2], refs, value)
    elif keyword in ("free", "set"):
        if not args:
            raise ValueError(f"expected '{keyword} [1:|2:]<global>'")
        copy, option = None, args[0]
        if option[:2] in ("1:", "2:"):
            copy, option = int(option[0]), option[2:]
        if keyword == "free":
            if len(args) != 1:
                raise ValueError("expected 'free [1:|2:]<global>'")
            return BitCondition("free", option=option, copy=copy)
        words = tuple(_number(x) for x in args[1:])
        if not words or any(not 0 <= x < 1 << WORD_WIDTH for x in words):
            raise ValueError(f"expected 'set [1:|2:]<global> <{WORD_WIDTH}-bit words>'")
        return BitCondition("set", option=option, copy=copy, words=words)
    elif keyword == "outputs":
        if len(args) != 1 or args[0] not in ("eq", "free"):
            raise ValueError("expected 'outputs eq|free'")
        return BitCondition("outputs", option=args[0])
    elif keyword == "distinct":
        if args != ["inputs"]:
            raise ValueError("expected 'distinct inputs'")
        return BitCondition("distinct", option="inputs")
    raise ValueError(f"unknown condition '{words[0]}'")


def parse_conditions(fd: IO[str], name: str = "<conditions>") -> List[ConditionLine]:
    """All conditions of a file; duplicate lines are kept once."""
    result = []
    seen = set()
    for number, line in enumerate(fd, start=1):
        words = line.split("#", 1)[0].split()
        if not words:
            continue
        try:
            condition = parse_condition(words)
        except ValueError as e:
            raise InstanceError(str(e), filename=name, line=number)
        if condition in seen:
            logger.debug("%s:%d: duplicate condition", name, number)
            continue
        seen.add(condition)
        result.append(ConditionLine(condition, name, number))
    return result


def read_conditions(path: str) -> List[ConditionLine]:
    try:
        with open(path) as fd:
            return parse_conditions(fd, name=path)
    except OSError as e:
        raise InstanceError(f"cannot read {path}: {e.strerror or e}")


def words_to_bits(words: Sequence[int], width: int = WORD_WIDTH) -> List[int]:
    """Cells of consecutive words, least significant bit of each word first.

    >>> words_to_bits([1, 2], 2)
    [1, 0, 0, 1]
    """
    return [(word >> i) & 1 for word in words for i in range(width)]


class ConstraintBuilder:
    """Accumulates the assumptions, clauses and auxiliary variables added to an instance."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.template = instance.base
        self.var_count = instance.var_count
        self.assumptions = []  # type: List[int]
        self.clauses = []  # type: List[Tuple[int, ...]]
        self.constant_var = None  # type: Optional[int]

    @property
    def copies(self) -> int:
        return self.instance.meta.get("copies", 1)

    def new_var(self) -> int:
        self.var_count += 1
        return self.var_count

    def add_clauses(self, groups: Iterable[Sequence[int]]):
        for group in groups:
            clause = make_clause(group)
            if clause is not None:
                self.clauses.append(clause)

    def constant(self, value: int) -> int:
        if self.constant_var is None:
            self.constant_var = self.new_var()
            self.add_clauses([[self.constant_var]])
        return literal(self.constant_var, value)

    def cells(self, ref: BitRef, qualifier: str) -> List[Optional[int]]:
        """Flat indices selected by a reference (None for a scalar)."""
        key = f"{qualifier}.{ref.name}"
        shape = self.template.shapes.get(key)
        if shape is None:
            suggestions = difflib.get_close_matches(key, list(self.template.shapes), n=3)
            raise TraceLookupError(str(ref), suggestions)
        if not shape:
            if ref.indices:
                raise InstanceError(f"'{key}' is not an array")
            return [None]
        if len(ref.indices) > len(shape):
            raise InstanceError(f"'{key}' has {len(shape)} dimension(s)")
        ranges = []
        for position, size in enumerate(shape):
            index = ref.indices[position] if position < len(ref.indices) else (0, size - 1)
            low, high = index if isinstance(index, tuple) else (index, index)
            if not 0 <= low <= high < size:
                raise InstanceError(f"index {low}..{high} of '{key}' out of range [0, {size})")
            ranges.append(range(low, high + 1))
        result = []
        for combination in itertools.product(*ranges):
            flat = 0
            for index, size in zip(combination, shape):
                flat = flat * size + index
            result.append(flat)
        return result

    def lookup(self, ref: BitRef) -> List[int]:
        """Literals of the cells of a reference, cell 0 first."""
        if ref.copy is not None and self.copies == 1:
            raise InstanceError(f"'{ref}': copy prefixes need a collision instance")
        qualifier = f"{ref.copy}:{ref.qualifier}" if ref.copy else ref.qualifier
        template = self.template
        result = []
        for index in self.cells(ref, qualifier):
            occurrence = ref.occurrence
            if occurrence is None:
                occurrence = template.last_occurrence(qualifier, ref.name, index)
            point = TracePoint(qualifier, ref.name, index, occurrence)
            if point in template.trace:
                result.append(template.trace[point])
            elif point in template.trace_constants:
                result.append(self.constant(template.trace_constants[point]))
            else:
                known = [str(x) for x in template.trace]
                suggestions = difflib.get_close_matches(str(point), known, n=3, cutoff=0.6)
                raise TraceLookupError(str(point), suggestions)
        return result

    def fix(self, lits: Sequence[int], value: int):
        self.assumptions += [literal(lit, value) for lit in lits]

    def equal(self, a: Sequence[int], b: Sequence[int], mask: int = 0):
        """`a[i] ^ b[i]` equals bit `i` of `mask`."""
        self._check_widths(a, b)
        for i, (x, y) in enumerate(zip(a, b)):
            y = literal(y, 1 - ((mask >> i) & 1))
            self.add_clauses([[-x, y], [x, -y]])

    def difference(self, a: Sequence[int], b: Sequence[int], value: int):
        """`b - a` equals `value` modulo 2^width, through a ripple-borrow subtractor."""
        self._check_widths(a, b)
        borrow = None
        for i, (x, y) in enumerate(zip(a, b)):
            operands = [y, x] if borrow is None else [y, x, borrow]
            d = self.new_var()
            self.clauses += xor_clauses(d, operands)
            self.assumptions.append(literal(d, (value >> i) & 1))
            if i == len(a) - 1:
                break
            out = self.new_var()
            if borrow is None:
                self.clauses += and_clauses(out, [-y, x])
            else:
                self.clauses += encode_table(out, operands, BORROW)
            borrow = out

    def distinct(self, a: Sequence[int], b: Sequence[int]):
        """At least one position where `a` and `b` differ."""
        self._check_widths(a, b)
        differences = []
        for x, y in zip(a, b):
            d = self.new_var()
            self.clauses += xor_clauses(d, [x, y])
            differences.append(d)
        self.add_clauses([differences])

    @staticmethod
    def _check_widths(a: Sequence[int], b: Sequence[int]):
        if len(a) != len(b):
            raise InstanceError(f"width mismatch: {len(a)} and {len(b)} bit(s)")

    def apply(self, condition: BitCondition):
        kind = condition.kind
        if kind == "fix":
            ref = condition.targets[0]
            copies = [ref.copy] if ref.copy or self.copies == 1 else [1, 2]
            for copy in copies:
                self.fix(self.lookup(ref.with_copy(copy)), condition.value)
            return
        first, second = condition.targets
        if self.copies == 2:
            first, second = first.with_copy(1), second.with_copy(2)
        a, b = self.lookup(first), self.lookup(second)
        if kind in ("xor", "diff") and len(a) != WORD_WIDTH:
            raise InstanceError(f"'{first}' has {len(a)} bit(s), {WORD_WIDTH} expected")
        if kind == "eq":
            self.equal(a, b)
        elif kind == "ne":
            self.equal(a, b, (1 << len(a)) - 1)
        elif kind == "xor":
            self.equal(a, b, condition.value)
        else:
            self.difference(a, b, condition.value)

    def build(self, **kwargs) -> Instance:
        return self.instance.extend(
            self.assumptions,
            self.clauses,
            extra_vars=self.var_count - self.instance.var_count,
            **kwargs,
        )


def inject_constraints(
    instance: Instance, conditions: Union[str, Iterable[ConditionLine]]
) -> Instance:
    """Add the constraints of a condition file (or of parsed lines) to an instance."""
    if isinstance(conditions, str):
        conditions = read_conditions(conditions)
    builder = ConstraintBuilder(instance)
    count = 0
    for item in conditions:
        condition = item.condition
        if not condition.is_constraint:
            raise InstanceError(
                f"'{condition.kind}' is only valid when building a collision instance",
                filename=item.filename,
                line=item.line,
            )
        try:
            builder.apply(condition)
        except InstanceError as e:
            if e.line is not None:
                raise
            raise InstanceError(str(e), filename=item.filename, line=item.line)
        except TraceLookupError as e:
            raise InstanceError(str(e), filename=item.filename, line=item.line)
        count += 1
    if not count:
        return instance
    logger.info(
        "%s: %d condition(s), %d assumption(s), %d clause(s), %d auxiliary variable(s)",
        instance.name,
        count,
        len(builder.assumptions),
        len(builder.clauses),
        builder.var_count - instance.var_count,
    )
    return builder.build()
