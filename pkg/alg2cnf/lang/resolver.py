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
"""Bind every identifier to its declaration.

Globals and functions live in the global scope and may be used before their declaration.
Each function body and each nested block opens a new scope; the innermost declaration wins.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from alg2cnf.checks import Diagnostic, Error
from alg2cnf.lang import ast


@dataclass
class Scope:
    kind: str
    owner: Optional[str] = None
    parent: Optional["Scope"] = field(default=None, repr=False)
    symbols: Dict[str, Union[ast.VarDecl, ast.FuncDecl]] = field(default_factory=dict)
    children: List["Scope"] = field(default_factory=list, repr=False)

    def child(self, kind: str) -> "Scope":
        scope = Scope(kind, owner=self.owner, parent=self)
        self.children.append(scope)
        return scope

    def lookup(self, name: str):
        scope = self
        while scope is not None:
            if name in scope.symbols:
                return scope.symbols[name]
            scope = scope.parent
        return None

    def depth(self) -> int:
        return 1 + max((x.depth() for x in self.children), default=0)


class Resolver:
    def __init__(self, program: ast.Program):
        self.program = program
        self.diagnostics = []  # type: List[Diagnostic]
        self.root = Scope("global")

    def error(self, message: str, location):
        self.diagnostics.append(
            Error(message, location=location, filename=self.program.filename)
        )

    def declare(self, scope: Scope, name: str, decl, location):
        if name in scope.symbols:
            self.error(f"duplicate declaration of '{name}' in the same scope", location)
            return
        scope.symbols[name] = decl

    def run(self) -> List[Diagnostic]:
        for item in self.program.items:
            if isinstance(item, ast.FuncDecl):
                self.declare(self.root, item.name, item, item.loc)
            else:
                for decl in item.decls:
                    decl.function = None
                    self.declare(self.root, decl.name, decl, decl.loc)
        for item in self.program.items:
            if isinstance(item, ast.FuncDecl):
                self.resolve_function(item)
            else:
                for decl in item.decls:
                    for dim in decl.dims:
                        self.resolve_expression(dim, self.root)
                    if decl.init is not None:
                        self.resolve_expression(decl.init, self.root)
        self.program.scope_tree = self.root
        return self.diagnostics

    def resolve_function(self, func: ast.FuncDecl):
        scope = self.root.child("function")
        scope.owner = func.name
        for dim in func.return_dims:
            self.resolve_expression(dim, self.root)
        for param in func.params:
            param.function = func.name
            for dim in param.dims:
                self.resolve_expression(dim, self.root)
            self.declare(scope, param.name, param, param.loc)
        for stmt in func.body.stmts:
            self.resolve_statement(stmt, scope)

    def resolve_declaration(self, stmt: ast.DeclStmt, scope: Scope):
        for decl in stmt.decls:
            decl.function = scope.owner
            for dim in decl.dims:
                self.resolve_expression(dim, scope)
            if decl.init is not None:
                self.resolve_expression(decl.init, scope)
            self.declare(scope, decl.name, decl, decl.loc)

    def resolve_statement(self, stmt, scope: Scope):
        if isinstance(stmt, ast.DeclStmt):
            self.resolve_declaration(stmt, scope)
        elif isinstance(stmt, ast.Block):
            inner = scope.child("block")
            for child in stmt.stmts:
                self.resolve_statement(child, inner)
        elif isinstance(stmt, ast.Assign):
            self.resolve_expression(stmt.target, scope)
            self.resolve_expression(stmt.value, scope)
        elif isinstance(stmt, ast.ExprStmt):
            self.resolve_expression(stmt.expr, scope)
        elif isinstance(stmt, ast.If):
            self.resolve_expression(stmt.cond, scope)
            self.resolve_branch(stmt.then, scope)
            if stmt.else_ is not None:
                self.resolve_branch(stmt.else_, scope)
        elif isinstance(stmt, ast.For):
            inner = scope.child("for")
            if isinstance(stmt.init, ast.DeclStmt):
                self.resolve_declaration(stmt.init, inner)
            elif stmt.init is not None:
                self.resolve_statement(stmt.init, inner)
            if stmt.cond is not None:
                self.resolve_expression(stmt.cond, inner)
            if stmt.step is not None:
                self.resolve_statement(stmt.step, inner)
            self.resolve_branch(stmt.body, inner)
        elif isinstance(stmt, ast.Return):
            if stmt.value is not None:
                self.resolve_expression(stmt.value, scope)

    def resolve_branch(self, stmt, scope: Scope):
        """A non-block branch holding a declaration still gets its own scope."""
        if isinstance(stmt, ast.DeclStmt):
            self.resolve_statement(stmt, scope.child("block"))
        else:
            self.resolve_statement(stmt, scope)

    def resolve_expression(self, expr, scope: Scope):
        if isinstance(expr, ast.Name):
            decl = scope.lookup(expr.ident)
            if decl is None:
                self.error(f"undeclared identifier '{expr.ident}'", expr.loc)
            elif isinstance(decl, ast.FuncDecl):
                self.error(f"function '{expr.ident}' used as a value", expr.loc)
            else:
                expr.decl = decl
        elif isinstance(expr, ast.Call):
            decl = self.root.symbols.get(expr.func)
            if decl is None:
                self.error(f"undeclared function '{expr.func}'", expr.loc)
            elif not isinstance(decl, ast.FuncDecl):
                self.error(f"'{expr.func}' is not a function", expr.loc)
            else:
                expr.decl = decl
            for arg in expr.args:
                self.resolve_expression(arg, scope)
        elif isinstance(expr, ast.Index):
            self.resolve_expression(expr.base, scope)
            self.resolve_expression(expr.index, scope)
        elif isinstance(expr, ast.Unary):
            self.resolve_expression(expr.operand, scope)
        elif isinstance(expr, ast.Binary):
            self.resolve_expression(expr.left, scope)
            self.resolve_expression(expr.right, scope)
        elif isinstance(expr, ast.Ternary):
            self.resolve_expression(expr.cond, scope)
            self.resolve_expression(expr.then, scope)
            self.resolve_expression(expr.else_, scope)
        elif isinstance(expr, ast.InitList):
            for item in expr.items:
                self.resolve_expression(item, scope)


def resolve(program: ast.Program) -> List[Diagnostic]:
    """Annotate `Name.decl`, `Call.decl` and `VarDecl.function`; return the diagnostics."""
    return Resolver(program).run()
