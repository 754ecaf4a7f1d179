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
"""Semantic checks of resolved programs.

The checker computes the shapes of all declarations, types every expression (`ty` fields)
and reports the violations of the language rules as diagnostics. An accepted program can be
executed with concrete `int` values only: `int` expressions never depend on bit values.
"""
import logging
from typing import Dict, List, Optional, Set

from alg2cnf.checks import Diagnostic, Error, Warning
from alg2cnf.lang import ast
from alg2cnf.lang.ints import int_binary, int_unary

logger = logging.getLogger(__name__)

ARITHMETIC = {"*", "/", "%"}
ADDITIVE = {"+", "-"}
ORDERING = {"<", ">", "<=", ">="}
EQUALITY = {"==", "!="}
SHIFTS = {"<<", ">>"}
ROTATIONS = {"<<<", ">>>"}
BITWISE = {"&", "|", "^"}
LOGICAL = {"&&", "||"}


class Checker:
    def __init__(self, program: ast.Program):
        self.program = program
        self.diagnostics = []  # type: List[Diagnostic]
        self.function = None  # type: Optional[ast.FuncDecl]
        # declarations made inside each enclosing bit-guarded branch, innermost last
        self.guarded = []  # type: List[Set[int]]
        self.returns = 0
        self.calls = {}  # type: Dict[str, List[ast.Call]]

    # reporting
    def error(self, message: str, location):
        self.diagnostics.append(
            Error(message, location=location, filename=self.program.filename)
        )

    def warning(self, message: str, location):
        self.diagnostics.append(
            Warning(message, location=location, filename=self.program.filename)
        )

    def run(self) -> List[Diagnostic]:
        for decl in self.program.globals:
            self.check_global(decl)
        for func in self.program.functions:
            func.return_shape = self.shape_of(func.return_dims)
            if func.return_type == "void" and func.return_dims:
                self.error("'void' functions cannot return arrays", func.loc)
            for param in func.params:
                self.check_param(param)
        for item in self.program.items:
            if isinstance(item, ast.FuncDecl):
                self.check_function(item)
            else:
                for decl in item.decls:
                    if decl.init is not None:
                        self.check_initializer(decl)
        self.check_entry_point()
        self.check_recursion()
        return self.diagnostics

    # constant folding of extents
    def const_eval(self, expr) -> Optional[int]:
        """Value of a constant int expression, or None."""
        if isinstance(expr, ast.IntLit):
            return expr.value
        elif isinstance(expr, ast.Unary):
            value = self.const_eval(expr.operand)
            return None if value is None else int_unary(expr.op, value)
        elif isinstance(expr, ast.Binary):
            left, right = self.const_eval(expr.left), self.const_eval(expr.right)
            if left is None or right is None:
                return None
            try:
                return int_binary(expr.op, left, right)
            except (ZeroDivisionError, ValueError):
                return None
        elif isinstance(expr, ast.Name):
            # global int constants: `int ROUNDS = 64;`
            decl = expr.decl
            if (
                isinstance(decl, ast.VarDecl)
                and decl.is_global
                and decl.base_type == "int"
                and not decl.dims
                and decl.init is not None
                and not isinstance(decl.init, ast.InitList)
            ):
                return self.const_eval(decl.init)
        return None

    def shape_of(self, dims: List[ast.Expr]) -> tuple:
        shape = []
        for dim in dims:
            value = self.const_eval(dim)
            if value is None:
                self.error("array extents must be constant int expressions", dim.loc)
                value = 0
            elif value < 0:
                self.error(f"negative array extent {value}", dim.loc)
                value = 0
            dim.ty = ast.INT
            shape.append(value)
        return tuple(shape)

    # declarations
    def check_global(self, decl: ast.VarDecl):
        decl.shape = self.shape_of(decl.dims)
        if decl.base_type == "void":
            self.error(f"'void' is only allowed as a return type ('{decl.name}')", decl.loc)
        if decl.attribute is not None:
            if decl.base_type != "bit":
                self.error(
                    f"'__{decl.attribute}' is only allowed on bit declarations ('{decl.name}')",
                    decl.loc,
                )
            if decl.init is not None:
                self.error(
                    f"'__{decl.attribute}' variable '{decl.name}' cannot have an initializer",
                    decl.loc,
                )

    def check_param(self, param: ast.VarDecl):
        param.shape = self.shape_of(param.dims)
        if param.base_type == "void":
            self.error(f"'void' is only allowed as a return type ('{param.name}')", param.loc)

    def check_local(self, decl: ast.VarDecl):
        decl.shape = self.shape_of(decl.dims)
        if decl.attribute is not None:
            self.error(
                f"'__{decl.attribute}' is only allowed on global bit declarations "
                f"('{decl.name}')",
                decl.loc,
            )
        if decl.base_type == "void":
            self.error(f"'void' is only allowed as a return type ('{decl.name}')", decl.loc)
        if decl.init is not None:
            self.check_initializer(decl)
        if self.guarded:
            self.guarded[-1].add(id(decl))

    def check_initializer(self, decl: ast.VarDecl):
        self.check_value(decl.ty, decl.init, f"initializer of '{decl.name}'")

    def check_value(self, target: ast.ValueType, expr, what: str):
        """Check that `expr` can be stored in a location of type `target`."""
        if isinstance(expr, ast.InitList):
            expr.ty = target
            if not target.shape:
                self.error(f"{what}: initializer list for a scalar", expr.loc)
                return
            extent = target.shape[0]
            if len(expr.items) != extent:
                self.error(
                    f"{what}: {len(expr.items)} value(s) given for {extent} element(s)",
                    expr.loc,
                )
            element = ast.ValueType(target.base, target.shape[1:])
            for item in expr.items:
                self.check_value(element, item, what)
            return
        ty = self.type_of(expr)
        if ty is None or target.base == "void":
            return
        if not self.assignable(target, ty):
            self.error(f"{what}: cannot store a value of type {ty} in {target}", expr.loc)

    @staticmethod
    def assignable(target: ast.ValueType, ty: ast.ValueType) -> bool:
        if target.is_int:
            return ty.is_int
        if ty.is_int:
            # int constants are spread over words, least significant bit first
            return target.is_word
        return ty == target

    # functions and statements
    def check_function(self, func: ast.FuncDecl):
        self.function = func
        self.returns = 0
        self.calls[func.name] = []
        for stmt in func.body.stmts:
            self.check_statement(stmt)
        if func.return_type != "void" and self.returns == 0:
            self.warning(f"function '{func.name}' has no return statement", func.loc)
        self.function = None

    def check_statement(self, stmt):
        if isinstance(stmt, ast.DeclStmt):
            for decl in stmt.decls:
                self.check_local(decl)
        elif isinstance(stmt, ast.Block):
            for child in stmt.stmts:
                self.check_statement(child)
        elif isinstance(stmt, ast.Assign):
            self.check_assign(stmt)
        elif isinstance(stmt, ast.ExprStmt):
            self.type_of(stmt.expr, allow_void=True)
        elif isinstance(stmt, ast.If):
            self.check_if(stmt)
        elif isinstance(stmt, ast.For):
            self.check_for(stmt)
        elif isinstance(stmt, ast.Return):
            self.check_return(stmt)

    def check_assign(self, stmt: ast.Assign):
        root = self.lvalue_root(stmt.target)
        if root is None:
            self.error("left side of an assignment must be a variable or an array cell", stmt.loc)
            self.type_of(stmt.value)
            return
        target = self.type_of(stmt.target)
        if target is None:
            self.type_of(stmt.value)
            return
        decl = root.decl
        if decl is not None and decl.attribute == "in":
            self.warning(f"assignment to input variable '{decl.name}'", stmt.loc)
        if (
            target.is_int
            and self.guarded
            and decl is not None
            and id(decl) not in self.guarded[-1]
        ):
            self.error(
                f"int variable '{decl.name}' is assigned under a bit condition "
                f"but declared outside of it",
                stmt.loc,
            )
        self.check_value(target, stmt.value, f"assignment to '{root.ident}'")

    @staticmethod
    def lvalue_root(expr) -> Optional[ast.Name]:
        while isinstance(expr, ast.Index):
            expr = expr.base
        return expr if isinstance(expr, ast.Name) else None

    def check_if(self, stmt: ast.If):
        ty = self.type_of(stmt.cond)
        if ty is not None and ty.is_bit and not ty.shape:
            for branch in (stmt.then, stmt.else_):
                if branch is None:
                    continue
                self.guarded.append(set())
                self.check_statement(branch)
                self.guarded.pop()
            return
        if ty is not None and not ty.is_int:
            self.error(f"condition must be an int or a single bit, not {ty}", stmt.cond.loc)
        self.check_statement(stmt.then)
        if stmt.else_ is not None:
            self.check_statement(stmt.else_)

    def check_for(self, stmt: ast.For):
        if stmt.init is not None:
            self.check_statement(stmt.init)
        if stmt.cond is None:
            self.error("loops need a condition to terminate", stmt.loc)
        else:
            ty = self.type_of(stmt.cond)
            if ty is not None and not ty.is_int:
                self.error(
                    f"loop condition must be a constant-evaluable int expression, not {ty}",
                    stmt.cond.loc,
                )
        if stmt.step is not None:
            self.check_statement(stmt.step)
        self.check_statement(stmt.body)

    def check_return(self, stmt: ast.Return):
        self.returns += 1
        func = self.function
        if self.guarded:
            self.error("'return' is not allowed under a bit condition", stmt.loc)
        if func.return_type == "void":
            if stmt.value is not None:
                self.error(f"void function '{func.name}' cannot return a value", stmt.loc)
                self.type_of(stmt.value)
        elif stmt.value is None:
            self.error(f"function '{func.name}' must return a {func.ty} value", stmt.loc)
        else:
            self.check_value(func.ty, stmt.value, f"return value of '{func.name}'")

    def check_entry_point(self):
        main = self.program.function("main")
        if main is None:
            self.error("entry point missing: no function named 'main'", self.program.loc)
        elif main.params:
            self.error("'main' cannot take parameters", main.loc)

    def check_recursion(self):
        graph = {
            name: [c.decl.name for c in calls if c.decl is not None]
            for name, calls in self.calls.items()
        }
        reported = set()
        state = {}  # name -> 1 (on the stack) or 2 (done)

        def visit(name: str, path: List[str]):
            state[name] = 1
            path.append(name)
            for callee in graph.get(name, []):
                if state.get(callee) == 1:
                    cycle = path[path.index(callee) :] + [callee]
                    key = frozenset(cycle)
                    if key not in reported:
                        reported.add(key)
                        func = self.program.function(callee)
                        self.error(
                            "recursion unsupported: " + " -> ".join(cycle), func.loc
                        )
                elif callee not in state:
                    visit(callee, path)
            path.pop()
            state[name] = 2

        for func in self.program.functions:
            if func.name not in state:
                visit(func.name, [])

    # expressions
    def type_of(self, expr, allow_void: bool = False) -> Optional[ast.ValueType]:
        """Type of an expression; None after an error, so that errors do not cascade."""
        ty = self._type_of(expr)
        if ty is not None and ty.base == "void" and not allow_void:
            self.error("void value used in an expression", expr.loc)
            ty = None
        expr.ty = ty
        return ty

    def _type_of(self, expr) -> Optional[ast.ValueType]:
        if isinstance(expr, ast.IntLit):
            return ast.INT
        elif isinstance(expr, ast.Name):
            return expr.decl.ty if expr.decl is not None else None
        elif isinstance(expr, ast.Index):
            return self.type_of_index(expr)
        elif isinstance(expr, ast.Unary):
            return self.type_of_unary(expr)
        elif isinstance(expr, ast.Binary):
            return self.type_of_binary(expr)
        elif isinstance(expr, ast.Ternary):
            return self.type_of_ternary(expr)
        elif isinstance(expr, ast.Call):
            return self.type_of_call(expr)
        elif isinstance(expr, ast.InitList):
            self.error("initializer lists are only allowed in declarations", expr.loc)
        return None

    def type_of_index(self, expr: ast.Index) -> Optional[ast.ValueType]:
        base = self.type_of(expr.base)
        index = self.type_of(expr.index)
        if index is not None and not index.is_int:
            self.error(f"array index must be an int, not {index}", expr.index.loc)
        if base is None:
            return None
        if not base.shape:
            self.error(f"indexed value is not an array ({base})", expr.loc)
            return None
        value = self.const_eval(expr.index)
        if value is not None and not 0 <= value < base.shape[0]:
            self.error(f"index {value} out of range [0, {base.shape[0]})", expr.index.loc)
        return ast.ValueType(base.base, base.shape[1:])

    def type_of_unary(self, expr: ast.Unary) -> Optional[ast.ValueType]:
        ty = self.type_of(expr.operand)
        if ty is None:
            return None
        if expr.op == "-":
            if not ty.is_int:
                self.error("unary '-' requires an int operand", expr.loc)
                return None
            return ty
        elif expr.op == "!":
            if ty.is_int or (ty.is_bit and not ty.shape):
                return ty
            self.error(f"'!' requires an int or a single bit, not {ty}", expr.loc)
            return None
        return ty  # "~"

    def type_of_binary(self, expr: ast.Binary) -> Optional[ast.ValueType]:
        left, right = self.type_of(expr.left), self.type_of(expr.right)
        if left is None or right is None:
            return None
        op = expr.op
        if left.is_int and right.is_int:
            if op in ROTATIONS:
                self.error(f"'{op}' rotates bit vectors, not ints", expr.loc)
                return None
            return ast.INT
        if op in ARITHMETIC:
            self.error(f"'{op}' requires int operands (got {left} and {right})", expr.loc)
            return None
        if op in SHIFTS or op in ROTATIONS:
            if not right.is_int:
                self.error(f"shift amount must be an int, not {right}", expr.right.loc)
                return None
            if not left.is_word or (op in ROTATIONS and not left.shape):
                self.error(f"'{op}' requires a bit vector, not {left}", expr.loc)
                return None
            return left
        if op in LOGICAL:
            if left.is_bit and right.is_bit and not left.shape and not right.shape:
                return ast.BIT
            self.error(
                f"operands of '{op}' must both be ints or both be single bits "
                f"(got {left} and {right})",
                expr.loc,
            )
            return None
        word = self.common_word(left, right, op, expr)
        if word is None:
            return None
        if op in ORDERING or op in EQUALITY:
            return ast.BIT
        return word

    def common_word(self, left, right, op, expr) -> Optional[ast.ValueType]:
        if left.is_int:
            left, right = right, left
        if right.is_int:
            # int constants are converted to the width of the bit word
            if left.is_word:
                return left
            self.error(f"'{op}' cannot mix {left} and int", expr.loc)
            return None
        if left != right:
            self.error(f"operands of '{op}' have different types ({left} and {right})", expr.loc)
            return None
        if (op in ADDITIVE or op in ORDERING) and not left.is_word:
            self.error(f"'{op}' requires words, not {left}", expr.loc)
            return None
        return left

    def type_of_ternary(self, expr: ast.Ternary) -> Optional[ast.ValueType]:
        cond = self.type_of(expr.cond)
        then, else_ = self.type_of(expr.then), self.type_of(expr.else_)
        if cond is None or then is None or else_ is None:
            return None
        if cond.is_bit and cond.shape:
            self.error(f"condition must be an int or a single bit, not {cond}", expr.cond.loc)
            return None
        if cond.is_bit and (self.has_call(expr.then) or self.has_call(expr.else_)):
            self.error(
                "the branches of a bit-selected '?:' cannot call functions", expr.loc
            )
            return None
        if then == else_:
            if cond.is_bit and then.is_int:
                self.error("int values cannot be selected by a bit condition", expr.loc)
                return None
            return then
        if then.is_int and else_.is_word:
            return else_
        if else_.is_int and then.is_word:
            return then
        self.error(f"branches have different types ({then} and {else_})", expr.loc)
        return None

    @classmethod
    def has_call(cls, expr) -> bool:
        if isinstance(expr, ast.Call):
            return True
        children = {
            ast.Index: lambda x: (x.base, x.index),
            ast.Unary: lambda x: (x.operand,),
            ast.Binary: lambda x: (x.left, x.right),
            ast.Ternary: lambda x: (x.cond, x.then, x.else_),
        }.get(type(expr))
        return children is not None and any(cls.has_call(x) for x in children(expr))

    def type_of_call(self, expr: ast.Call) -> Optional[ast.ValueType]:
        func = expr.decl
        if self.function is not None:
            self.calls.setdefault(self.function.name, []).append(expr)
        if func is None:
            for arg in expr.args:
                self.type_of(arg)
            return None
        if len(expr.args) != len(func.params):
            self.error(
                f"'{func.name}' takes {len(func.params)} argument(s), "
                f"{len(expr.args)} given",
                expr.loc,
            )
        for arg, param in zip(expr.args, func.params):
            self.check_value(param.ty, arg, f"argument '{param.name}' of '{func.name}'")
        for arg in expr.args[len(func.params) :]:
            self.type_of(arg)
        return func.ty


def check(program: ast.Program) -> List[Diagnostic]:
    """Type the resolved program; return the errors and warnings."""
    diagnostics = Checker(program).run()
    program.warnings = [x for x in diagnostics if not x.is_error()]
    for warning in program.warnings:
        logger.warning(str(warning))
    return diagnostics
