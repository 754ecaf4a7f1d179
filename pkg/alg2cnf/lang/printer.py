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
"""Pretty printer producing canonical source text.

Parsing the printed text gives back an equal syntax tree.

>>> from alg2cnf.lang.parser import parse_source
>>> print(format_program(parse_source("__in bit a,b;__out bit c;void main(){c=a&b;}")), end="")
__in bit a, b;
__out bit c;
<BLANKLINE>
void main() {
    c = a & b;
}
"""
from typing import List

from alg2cnf.lang import ast

INDENT = "    "


def format_expression(expr: ast.Expr) -> str:
    if isinstance(expr, ast.IntLit):
        return expr.text or str(expr.value)
    elif isinstance(expr, ast.Name):
        return expr.ident
    elif isinstance(expr, ast.Index):
        base = format_expression(expr.base)
        if not isinstance(expr.base, (ast.Name, ast.Index, ast.Call)):
            base = f"({base})"
        return f"{base}[{format_expression(expr.index)}]"
    elif isinstance(expr, ast.Unary):
        operand = format_expression(expr.operand)
        if isinstance(expr.operand, (ast.Binary, ast.Ternary, ast.Unary)):
            operand = f"({operand})"
        return f"{expr.op}{operand}"
    elif isinstance(expr, ast.Binary):
        return f"{_operand(expr.left)} {expr.op} {_operand(expr.right)}"
    elif isinstance(expr, ast.Ternary):
        return f"{_operand(expr.cond)} ? {_operand(expr.then)} : {_operand(expr.else_)}"
    elif isinstance(expr, ast.Call):
        return f"{expr.func}({', '.join(format_expression(x) for x in expr.args)})"
    elif isinstance(expr, ast.InitList):
        return "{" + ", ".join(format_expression(x) for x in expr.items) + "}"
    raise TypeError(f"not an expression: {expr!r}")


def _operand(expr: ast.Expr) -> str:
    text = format_expression(expr)
    if isinstance(expr, (ast.Binary, ast.Ternary)):
        return f"({text})"
    return text


def _dims(dims: List[ast.Expr]) -> str:
    return "".join(f"[{format_expression(x)}]" for x in dims)


def format_declaration(stmt: ast.DeclStmt) -> str:
    first = stmt.decls[0]
    prefix = f"__{first.attribute} " if first.attribute else ""
    declarators = []
    for decl in stmt.decls:
        text = decl.name + _dims(decl.dims)
        if decl.init is not None:
            text += " = " + format_expression(decl.init)
        declarators.append(text)
    return f"{prefix}{first.base_type} {', '.join(declarators)}"


def _simple(stmt) -> str:
    if isinstance(stmt, ast.DeclStmt):
        return format_declaration(stmt)
    elif isinstance(stmt, ast.Assign):
        return f"{format_expression(stmt.target)} = {format_expression(stmt.value)}"
    raise TypeError(f"not a simple statement: {stmt!r}")


def _body(stmt, level: int, lines: List[str]):
    if isinstance(stmt, ast.Block):
        lines[-1] += " {"
        for child in stmt.stmts:
            lines += format_statement(child, level + 1)
        lines.append(INDENT * level + "}")
    else:
        lines += format_statement(stmt, level + 1)


def format_statement(stmt, level: int = 0) -> List[str]:
    pad = INDENT * level
    if isinstance(stmt, ast.Block):
        lines = [pad + "{"]
        for child in stmt.stmts:
            lines += format_statement(child, level + 1)
        lines.append(pad + "}")
        return lines
    elif isinstance(stmt, (ast.DeclStmt, ast.Assign)):
        return [pad + _simple(stmt) + ";"]
    elif isinstance(stmt, ast.ExprStmt):
        return [pad + format_expression(stmt.expr) + ";"]
    elif isinstance(stmt, ast.Return):
        if stmt.value is None:
            return [pad + "return;"]
        return [pad + f"return {format_expression(stmt.value)};"]
    elif isinstance(stmt, ast.If):
        lines = [pad + f"if ({format_expression(stmt.cond)})"]
        _body(stmt.then, level, lines)
        if stmt.else_ is not None:
            lines.append(pad + "else")
            _body(stmt.else_, level, lines)
        return lines
    elif isinstance(stmt, ast.For):
        init = _simple(stmt.init) if stmt.init is not None else ""
        cond = format_expression(stmt.cond) if stmt.cond is not None else ""
        step = _simple(stmt.step) if stmt.step is not None else ""
        lines = [pad + f"for ({init}; {cond}; {step})"]
        _body(stmt.body, level, lines)
        return lines
    raise TypeError(f"not a statement: {stmt!r}")


def format_function(func: ast.FuncDecl) -> List[str]:
    params = ", ".join(
        f"{p.base_type} {p.name}{_dims(p.dims)}" for p in func.params
    )
    lines = [f"{func.return_type}{_dims(func.return_dims)} {func.name}({params})"]
    _body(func.body, 0, lines)
    return lines


def format_program(program: ast.Program) -> str:
    lines = []
    previous = None
    for item in program.items:
        if isinstance(item, ast.FuncDecl):
            if previous is not None:
                lines.append("")
            lines += format_function(item)
        else:
            if isinstance(previous, ast.FuncDecl):
                lines.append("")
            lines.append(format_declaration(item) + ";")
        previous = item
    return "\n".join(lines) + "\n"
