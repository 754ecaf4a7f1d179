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
"""Control-flow executor shared by the symbolic translator and the concrete oracle.

The executor interprets a checked program over a :class:`Domain` of bit values. `int` service
variables always hold concrete Python integers: loops are unrolled and int-guarded branches
are decided while executing. Only bit-guarded branches are merged, through a copy-on-write
journal of the cells written in each branch.

Bit vectors are stored least significant bit first: cell 0 of `bit w[32]` is the LSB of the
word, so `w + 1` flips cell 0 and `w << 1` moves cell 0 to cell 1.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from alg2cnf.exceptions import ExecutionError
from alg2cnf.lang import ast
from alg2cnf.lang.ints import int_binary, int_unary

logger = logging.getLogger(__name__)

MAX_LOOP_ITERATIONS = 1 << 24

# values of a global replaced at translation time: fresh inputs, or constant cells
Override = Union[str, int, Sequence[int]]


@dataclass(frozen=True)
class TracePoint:
    """One write of one program bit: `qualifier.name[index]@occurrence`.

    >>> str(TracePoint("md4", "a", 3, 12)), str(TracePoint("main", "t", None, 0))
    ('md4.a[3]@12', 'main.t@0')
    >>> TracePoint.parse("md4.a[3]@12") == TracePoint("md4", "a", 3, 12)
    True
    """

    qualifier: str
    name: str
    index: Optional[int]
    occurrence: int

    def __str__(self):
        index = "" if self.index is None else f"[{self.index}]"
        return f"{self.qualifier}.{self.name}{index}@{self.occurrence}"

    @property
    def cell(self) -> Tuple[str, str, Optional[int]]:
        return self.qualifier, self.name, self.index

    @classmethod
    def parse(cls, text: str) -> "TracePoint":
        text = text.strip()
        try:
            location, occurrence = text.rsplit("@", 1)
            qualifier, variable = location.split(".", 1)
            index = None
            if variable.endswith("]"):
                variable, index_text = variable[:-1].split("[", 1)
                index = int(index_text, 0)
            return cls(qualifier, variable, index, int(occurrence, 0))
        except ValueError:
            raise ValueError(f"invalid trace point '{text}' (expected qualifier.var[i]@n)")


def cell_name(name: str, shape: Tuple[int, ...], index: int) -> str:
    return f"{name}[{index}]" if shape else name


def flat_size(shape: Sequence[int]) -> int:
    return reduce(lambda x, y: x * y, shape, 1)


class Domain:
    """Bit operations of one interpretation of the program."""

    FALSE = 0
    TRUE = 1

    def const(self, bit: int):
        return self.TRUE if bit else self.FALSE

    def constant_value(self, value) -> Optional[int]:
        """0 or 1 when the value is known to be constant, otherwise None."""
        raise NotImplementedError

    def input(self, label: str):
        raise NotImplementedError

    def not_(self, a):
        raise NotImplementedError

    def and_(self, a, b):
        raise NotImplementedError

    def or_(self, a, b):
        raise NotImplementedError

    def xor(self, a, b):
        raise NotImplementedError

    def ite(self, c, t, e):
        raise NotImplementedError

    def merge(self, c, t, e):
        """Value of a cell after a branch on the bit condition `c`."""
        return self.ite(c, t, e)

    def add_bits(self, a, b, c) -> Tuple[Any, Any]:
        """Sum and carry of a full adder."""
        return self.xor(self.xor(a, b), c), self.carry(a, b, c)

    def carry(self, a, b, c):
        return self.or_(self.and_(a, b), self.and_(c, self.or_(a, b)))

    # elementary steps
    def begin(self):
        pass

    def finish(self, values: List, seal: bool = True) -> List:
        return values

    def close(self, values: List) -> List:
        return values


@dataclass
class Vec:
    """Bit values of an expression (or the cells of an int array), row-major."""

    kind: str
    shape: Tuple[int, ...]
    cells: List[Any]

    @property
    def width(self) -> int:
        return len(self.cells)


class Storage:
    """Cells of one declared variable in one frame."""

    __slots__ = ("decl", "qualifier", "shape", "cells", "guard_depth")

    def __init__(self, decl: ast.VarDecl, qualifier: str, cells: List, guard_depth: int):
        self.decl = decl
        self.qualifier = qualifier
        self.shape = decl.shape
        self.cells = cells
        self.guard_depth = guard_depth

    @property
    def is_bit(self) -> bool:
        return self.decl.base_type == "bit"


class _Return(Exception):
    def __init__(self, value):
        super().__init__()
        self.value = value


@dataclass
class ExecutionResult:
    inputs: List[Tuple[str, Any]] = field(default_factory=list)
    outputs: List[Tuple[str, Any]] = field(default_factory=list)
    trace: Dict[TracePoint, Any] = field(default_factory=dict)
    # "qualifier.name" -> shape of every traced variable
    shapes: Dict[str, Tuple[int, ...]] = field(default_factory=dict)


class Executor:
    def __init__(
        self,
        program: ast.Program,
        domain: Domain,
        zero_init: bool = False,
        overrides: Optional[Dict[str, Override]] = None,
        record_trace: bool = True,
    ):
        self.program = program
        self.domain = domain
        self.zero_init = zero_init
        self.overrides = dict(overrides or {})
        self.record_trace = record_trace
        self.globals = {}  # type: Dict[int, Storage]
        self.frames = []  # type: List[Dict[int, Storage]]
        self.functions = []  # type: List[ast.FuncDecl]
        # copy-on-write journals of the enclosing bit-guarded branches, innermost last
        self.journals = []  # type: List[Dict[Tuple[int, int], Tuple[Storage, int, Any]]]
        self.occurrences = {}  # type: Dict[Tuple[str, str, Optional[int]], int]
        self.result = ExecutionResult()

    # errors
    def error(self, message: str, node=None) -> ExecutionError:
        location = getattr(node, "loc", None)
        return ExecutionError(message, location=location, filename=self.program.filename)

    # entry point
    def run(self) -> ExecutionResult:
        self.check_overrides()
        self.create_inputs()
        for decl in self.program.globals:
            if id(decl) not in self.globals:
                self.declare(decl, self.globals)
        main = self.program.function("main")
        self.call_function(main, [], main)
        for decl in self.program.outputs:
            storage = self.globals[id(decl)]
            for index, value in enumerate(storage.cells):
                name = cell_name(decl.name, decl.shape, index)
                if value is None:
                    if not self.zero_init:
                        raise self.error(f"output bit '{name}' is never assigned", decl)
                    value = self.domain.FALSE
                self.result.outputs.append((name, value))
        return self.result

    def check_overrides(self):
        by_name = {decl.name: decl for decl in self.program.globals}
        for name, value in self.overrides.items():
            decl = by_name.get(name)
            if decl is None:
                raise ExecutionError(f"cannot override unknown global '{name}'")
            if decl.base_type != "bit" or decl.attribute is not None:
                raise ExecutionError(
                    f"only plain global bit variables can be overridden ('{name}')"
                )
            if isinstance(value, str) and value != "free":
                raise ExecutionError(f"invalid override '{value}' for '{name}'")
            if not isinstance(value, (str, int)) and len(value) != flat_size(decl.shape):
                raise ExecutionError(
                    f"'{name}' has {flat_size(decl.shape)} bit(s), "
                    f"{len(value)} value(s) given"
                )

    def create_inputs(self):
        """Input variables: the `__in` cells in declaration order, then the freed globals."""
        freed = [
            decl
            for decl in self.program.globals
            if self.overrides.get(decl.name) == "free"
        ]
        for decl in self.program.inputs + freed:
            cells = []
            for index in range(flat_size(decl.shape)):
                name = cell_name(decl.name, decl.shape, index)
                value = self.domain.input(name)
                self.result.inputs.append((name, value))
                cells.append(value)
            storage = self.new_storage(decl, self.globals, cells)
            for index in range(len(cells)):
                self.trace(storage, index)
        for decl in self.program.globals:
            value = self.overrides.get(decl.name)
            if value is None or value == "free":
                continue
            width = flat_size(decl.shape)
            if isinstance(value, int):
                bits = [(value >> i) & 1 for i in range(width)]
            else:
                bits = [int(x) & 1 for x in value]
            storage = self.new_storage(decl, self.globals, [None] * width)
            self.write(storage, 0, [self.domain.const(x) for x in bits])

    # storages
    def qualifier(self, decl: ast.VarDecl) -> str:
        return decl.function or self.program.name

    def new_storage(self, decl: ast.VarDecl, frame: Dict[int, Storage], cells: List) -> Storage:
        qualifier = self.qualifier(decl)
        storage = Storage(decl, qualifier, cells, len(self.journals))
        frame[id(decl)] = storage
        self.result.shapes[f"{qualifier}.{decl.name}"] = decl.shape
        return storage

    def storage(self, decl: ast.VarDecl, node=None) -> Storage:
        frame = self.globals if decl.is_global else self.frames[-1]
        storage = frame.get(id(decl))
        if storage is None:
            raise self.error(f"'{decl.name}' is used before its declaration", node)
        return storage

    def declare(self, decl: ast.VarDecl, frame: Dict[int, Storage]):
        width = flat_size(decl.shape)
        if decl.base_type == "int":
            storage = self.new_storage(decl, frame, [0] * width)
            if decl.init is not None:
                self.write(storage, 0, self.init_cells(decl.init, decl.ty))
            return
        storage = self.new_storage(decl, frame, [None] * width)
        if decl.init is not None:
            self.domain.begin()
            cells = self.init_cells(decl.init, decl.ty)
            self.write(storage, 0, self.domain.finish(cells, seal=decl.is_global))
        elif self.zero_init:
            storage.cells = [self.domain.FALSE] * width

    def trace(self, storage: Storage, index: int):
        if not self.record_trace:
            return
        key = (storage.qualifier, storage.decl.name, index if storage.shape else None)
        occurrence = self.occurrences.get(key, 0)
        self.occurrences[key] = occurrence + 1
        self.result.trace[TracePoint(*key, occurrence)] = storage.cells[index]

    def write(self, storage: Storage, offset: int, values: Sequence):
        depth = len(self.journals)
        if depth and storage.guard_depth < depth:
            if not storage.is_bit:
                raise self.error(
                    f"int variable '{storage.decl.name}' is assigned under a bit condition"
                )
            journal = self.journals[-1]
            for index in range(offset, offset + len(values)):
                key = (id(storage), index)
                if key not in journal:
                    journal[key] = (storage, index, storage.cells[index])
        for index, value in enumerate(values, offset):
            storage.cells[index] = value
            if storage.is_bit:
                self.trace(storage, index)

    def read_cells(self, storage: Storage, offset: int, width: int, node) -> List:
        cells = storage.cells[offset : offset + width]
        if storage.is_bit:
            for index, value in enumerate(cells):
                if value is None:
                    if not self.zero_init:
                        name = cell_name(storage.decl.name, storage.shape, offset + index)
                        raise self.error(f"bit '{name}' is read before being assigned", node)
                    cells[index] = self.domain.FALSE
        return cells

    # values
    def const_cells(self, value: int, width: int) -> List:
        return [self.domain.const((value >> i) & 1) for i in range(width)]

    def to_cells(self, value, ty: ast.ValueType) -> List:
        """Cells stored in a location of type `ty`."""
        if isinstance(value, Vec):
            return list(value.cells)
        if ty.is_int:
            return [value]
        return self.const_cells(value, ty.width)

    def init_cells(self, expr, ty: ast.ValueType) -> List:
        if isinstance(expr, ast.InitList):
            element = ast.ValueType(ty.base, ty.shape[1:])
            cells = []
            for item in expr.items:
                cells += self.init_cells(item, element)
            return cells
        return self.to_cells(self.eval(expr), ty)

    def as_cells(self, value, width: int) -> List:
        return list(value.cells) if isinstance(value, Vec) else self.const_cells(value, width)

    # statements
    def exec_block(self, stmts: Sequence):
        for stmt in stmts:
            self.exec(stmt)

    def exec(self, stmt):
        if isinstance(stmt, ast.DeclStmt):
            for decl in stmt.decls:
                self.declare(decl, self.frames[-1])
        elif isinstance(stmt, ast.Block):
            self.exec_block(stmt.stmts)
        elif isinstance(stmt, ast.Assign):
            self.exec_assign(stmt)
        elif isinstance(stmt, ast.ExprStmt):
            self.eval(stmt.expr)
        elif isinstance(stmt, ast.If):
            self.exec_if(stmt)
        elif isinstance(stmt, ast.For):
            self.exec_for(stmt)
        elif isinstance(stmt, ast.Return):
            self.exec_return(stmt)
        else:
            raise self.error(f"unknown statement {stmt!r}", stmt)

    def exec_assign(self, stmt: ast.Assign):
        storage, offset, shape = self.reference(stmt.target)
        ty = stmt.target.ty
        if storage.is_bit:
            self.domain.begin()
            cells = self.to_cells(self.eval(stmt.value), ty)
            cells = self.domain.finish(cells, seal=storage.decl.is_global)
        else:
            cells = self.to_cells(self.eval(stmt.value), ty)
        self.write(storage, offset, cells)

    def exec_if(self, stmt: ast.If):
        if stmt.cond.ty.is_int:
            if self.eval(stmt.cond):
                self.exec(stmt.then)
            elif stmt.else_ is not None:
                self.exec(stmt.else_)
            return
        self.domain.begin()
        (guard,) = self.domain.finish(self.eval(stmt.cond).cells)
        constant = self.domain.constant_value(guard)
        if constant == 1:
            self.exec(stmt.then)
        elif constant == 0:
            if stmt.else_ is not None:
                self.exec(stmt.else_)
        else:
            self.exec_guarded(guard, stmt.then, stmt.else_)

    def run_branch(self, stmt) -> Dict[Tuple[int, int], Tuple[Storage, int, Any, Any]]:
        """Execute a branch, then undo its writes; return the old and new value of each cell."""
        self.journals.append({})
        try:
            if stmt is not None:
                self.exec(stmt)
        finally:
            journal = self.journals.pop()
        changes = {}
        for key, (storage, index, old) in journal.items():
            changes[key] = (storage, index, old, storage.cells[index])
            storage.cells[index] = old
        return changes

    def exec_guarded(self, guard, then, else_):
        then_changes = self.run_branch(then)
        else_changes = self.run_branch(else_)
        keys = list(then_changes) + [x for x in else_changes if x not in then_changes]
        for key in keys:
            storage, index, old, _ = then_changes.get(key) or else_changes[key]
            then_value = then_changes[key][3] if key in then_changes else old
            else_value = else_changes[key][3] if key in else_changes else old
            if then_value is None or else_value is None:
                if not self.zero_init:
                    name = cell_name(storage.decl.name, storage.shape, index)
                    raise self.error(
                        f"bit '{name}' is assigned in only one branch of a bit condition "
                        f"and has no previous value"
                    )
                then_value = self.domain.FALSE if then_value is None else then_value
                else_value = self.domain.FALSE if else_value is None else else_value
            merged = self.domain.merge(guard, then_value, else_value)
            self.write(storage, index, [merged])

    def exec_for(self, stmt: ast.For):
        if stmt.init is not None:
            self.exec(stmt.init)
        iterations = 0
        while self.eval(stmt.cond):
            iterations += 1
            if iterations > MAX_LOOP_ITERATIONS:
                raise self.error(
                    f"loop exceeds {MAX_LOOP_ITERATIONS} iterations", stmt
                )
            self.exec(stmt.body)
            if stmt.step is not None:
                self.exec(stmt.step)

    def exec_return(self, stmt: ast.Return):
        func = self.functions[-1]
        if stmt.value is None:
            raise _Return(None)
        if not func.ty.is_bit:
            raise _Return(self.eval(stmt.value))
        # closed by `return_value`
        self.domain.begin()
        raise _Return(self.eval(stmt.value))

    # calls
    def call_function(self, func: ast.FuncDecl, args: List, node):
        frame = {}
        for param, cells in zip(func.params, args):
            storage = self.new_storage(param, frame, list(cells))
            if storage.is_bit:
                for index in range(len(cells)):
                    self.trace(storage, index)
        self.frames.append(frame)
        self.functions.append(func)
        try:
            self.exec_block(func.body.stmts)
        except _Return as signal:
            return self.return_value(func, signal.value)
        finally:
            self.frames.pop()
            self.functions.pop()
        if func.return_type != "void":
            raise self.error(f"function '{func.name}' ended without returning a value", node)
        return None

    def return_value(self, func: ast.FuncDecl, value):
        ty = func.ty
        if ty.base == "void":
            return None
        if ty.is_int and not ty.shape:
            return value
        cells = self.to_cells(value, ty)
        if ty.is_bit:
            cells = self.domain.finish(cells)
        return Vec(ty.base, ty.shape, cells)

    def eval_call(self, expr: ast.Call):
        func = expr.decl
        args = []
        for arg, param in zip(expr.args, func.params):
            if param.base_type == "bit":
                self.domain.begin()
                cells = self.domain.finish(self.to_cells(self.eval(arg), param.ty))
            else:
                cells = self.to_cells(self.eval(arg), param.ty)
            args.append(cells)
        return self.call_function(func, args, expr)

    # expressions
    def reference(self, expr) -> Tuple[Storage, int, Tuple[int, ...]]:
        """Storage, flat offset and shape of an lvalue."""
        if isinstance(expr, ast.Name):
            storage = self.storage(expr.decl, expr)
            return storage, 0, storage.shape
        storage, offset, shape = self.reference(expr.base)
        index = self.eval(expr.index)
        if not 0 <= index < shape[0]:
            raise self.error(f"index {index} out of range [0, {shape[0]})", expr)
        stride = flat_size(shape[1:])
        return storage, offset + index * stride, shape[1:]

    def eval(self, expr):
        """Python int for int scalars, :class:`Vec` otherwise."""
        if isinstance(expr, ast.IntLit):
            return expr.value
        elif isinstance(expr, (ast.Name, ast.Index)):
            return self.eval_location(expr)
        elif isinstance(expr, ast.Unary):
            return self.eval_unary(expr)
        elif isinstance(expr, ast.Binary):
            return self.eval_binary(expr)
        elif isinstance(expr, ast.Ternary):
            return self.eval_ternary(expr)
        elif isinstance(expr, ast.Call):
            return self.eval_call(expr)
        raise self.error(f"unexpected expression {expr!r}", expr)

    def eval_location(self, expr):
        root = expr
        while isinstance(root, ast.Index):
            root = root.base
        if isinstance(root, ast.Name):
            storage, offset, shape = self.reference(expr)
            cells = self.read_cells(storage, offset, flat_size(shape), expr)
            if not storage.is_bit and not shape:
                return cells[0]
            return Vec(storage.decl.base_type, shape, cells)
        # indexed call result
        base = self.eval(expr.base)
        index = self.eval(expr.index)
        if not 0 <= index < base.shape[0]:
            raise self.error(f"index {index} out of range [0, {base.shape[0]})", expr)
        stride = flat_size(base.shape[1:])
        cells = base.cells[index * stride : (index + 1) * stride]
        if base.kind == "int" and len(base.shape) == 1:
            return cells[0]
        return Vec(base.kind, base.shape[1:], cells)

    def eval_unary(self, expr: ast.Unary):
        value = self.eval(expr.operand)
        if not isinstance(value, Vec):
            return int_unary(expr.op, value)
        return Vec("bit", value.shape, [self.domain.not_(x) for x in value.cells])

    def eval_binary(self, expr: ast.Binary):
        op = expr.op
        left = self.eval(expr.left)
        if not isinstance(left, Vec) and op in ("&&", "||") and expr.ty.is_int:
            if (op == "&&") != bool(left):
                return int(bool(left))
            return int(bool(self.eval(expr.right)))
        right = self.eval(expr.right)
        if not isinstance(left, Vec) and not isinstance(right, Vec):
            try:
                return int_binary(op, left, right)
            except ZeroDivisionError:
                raise self.error("division by zero", expr)
            except ValueError as e:
                raise self.error(str(e), expr)
        domain = self.domain
        if op in ("<<", ">>", "<<<", ">>>"):
            return self.shift(op, left, right, expr)
        width = left.width if isinstance(left, Vec) else right.width
        shape = left.shape if isinstance(left, Vec) else right.shape
        a, b = self.as_cells(left, width), self.as_cells(right, width)
        if op in ("&", "&&"):
            return Vec("bit", shape, [domain.and_(x, y) for x, y in zip(a, b)])
        elif op in ("|", "||"):
            return Vec("bit", shape, [domain.or_(x, y) for x, y in zip(a, b)])
        elif op == "^":
            return Vec("bit", shape, [domain.xor(x, y) for x, y in zip(a, b)])
        elif op == "+":
            return Vec("bit", shape, self.add(a, b, domain.FALSE))
        elif op == "-":
            return Vec("bit", shape, self.add(a, [domain.not_(y) for y in b], domain.TRUE))
        elif op in ("==", "!="):
            differences = [domain.xor(x, y) for x, y in zip(a, b)]
            different = reduce(domain.or_, differences, domain.FALSE)
            return Vec("bit", (), [different if op == "!=" else domain.not_(different)])
        elif op == "<":
            return Vec("bit", (), [self.less_than(a, b)])
        elif op == ">":
            return Vec("bit", (), [self.less_than(b, a)])
        elif op == "<=":
            return Vec("bit", (), [domain.not_(self.less_than(b, a))])
        elif op == ">=":
            return Vec("bit", (), [domain.not_(self.less_than(a, b))])
        raise self.error(f"'{op}' is not defined on bit vectors", expr)

    def add(self, a: List, b: List, carry) -> List:
        """Ripple-carry addition modulo 2^width."""
        a, b = self.domain.close(a), self.domain.close(b)
        result = []
        for x, y in zip(a, b):
            total, carry = self.domain.add_bits(x, y, carry)
            result.append(total)
        return result

    def less_than(self, a: List, b: List):
        """Unsigned `a < b`: no carry out of `a + ~b + 1`."""
        domain = self.domain
        a, b = domain.close(a), domain.close(b)
        carry = domain.TRUE
        for x, y in zip(a, b):
            carry = domain.carry(x, domain.not_(y), carry)
        return domain.not_(carry)

    def shift(self, op: str, value, amount, expr):
        if isinstance(amount, Vec) or not isinstance(value, Vec):
            raise self.error(f"'{op}' requires a bit vector and an int amount", expr)
        if amount < 0:
            raise self.error(f"negative shift amount {amount}", expr)
        cells = value.cells
        width = len(cells)
        zero = self.domain.FALSE
        if op == "<<":
            result = [cells[i - amount] if i >= amount else zero for i in range(width)]
        elif op == ">>":
            result = [cells[i + amount] if i + amount < width else zero for i in range(width)]
        elif op == "<<<":
            result = [cells[(i - amount) % width] for i in range(width)]
        else:
            result = [cells[(i + amount) % width] for i in range(width)]
        return Vec("bit", value.shape, result)

    def eval_ternary(self, expr: ast.Ternary):
        cond = self.eval(expr.cond)
        if not isinstance(cond, Vec):
            return self.eval(expr.then if cond else expr.else_)
        (guard,) = cond.cells
        constant = self.domain.constant_value(guard)
        if constant is not None:
            return self.eval(expr.then if constant else expr.else_)
        then, else_ = self.eval(expr.then), self.eval(expr.else_)
        ty = expr.ty
        a, b = self.as_cells(then, ty.width), self.as_cells(else_, ty.width)
        cells = [self.domain.ite(guard, x, y) for x, y in zip(a, b)]
        return Vec("bit", ty.shape, cells)
