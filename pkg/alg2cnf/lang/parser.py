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
"""Recursive-descent parser with statement-level error recovery.

Increments and compound assignments are desugared: `x++` becomes `x = x + 1` and `x ^= e`
becomes `x = x ^ e`.

>>> program, diagnostics = parse(tokenize("__in bit a, b; __out bit c; void main() { c = a & b; }"))
>>> diagnostics, [d.name for d in program.globals], program.functions[0].name
([], ['a', 'b', 'c'], 'main')
"""
import logging
from typing import List, Optional, Tuple

from alg2cnf.checks import Diagnostic, Error
from alg2cnf.lang import ast
from alg2cnf.lang.tokens import (
    ATTRIBUTE_KEYWORDS,
    TYPE_KEYWORDS,
    Token,
    TokenKind,
    parse_integer,
    tokenize,
)

logger = logging.getLogger(__name__)

BINARY_LEVELS = [
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("<<", ">>", "<<<", ">>>"),
    ("+", "-"),
    ("*", "/", "%"),
]
UNARY_OPERATORS = ("!", "~", "-")
COMPOUND_ASSIGNMENTS = {"+=": "+", "-=": "-", "^=": "^", "&=": "&", "|=": "|"}


class ParseError(Exception):
    def __init__(self, message: str, location):
        super().__init__(message)
        self.message = message
        self.location = location


class Parser:
    def __init__(self, tokens: List[Token], filename: Optional[str] = None):
        # lexical errors are reported by the lexer
        self.tokens = [t for t in tokens if t.kind is not TokenKind.ERROR]
        self.filename = filename
        self.pos = 0
        self.diagnostics = []  # type: List[Diagnostic]
        if self.tokens:
            line, column = self.tokens[-1].location
            self.end_location = (line, column + len(self.tokens[-1].lexeme))
        else:
            self.end_location = (1, 1)

    # token helpers
    def peek(self, offset: int = 0) -> Optional[Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    @property
    def location(self):
        token = self.peek()
        return token.location if token else self.end_location

    def at(self, *lexemes: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token is not None and token.lexeme in lexemes

    def advance(self) -> Token:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of file", self.end_location)
        self.pos += 1
        return token

    def accept(self, *lexemes: str) -> Optional[Token]:
        if self.at(*lexemes):
            return self.advance()
        return None

    def expect(self, lexeme: str) -> Token:
        token = self.peek()
        if token is None:
            raise ParseError(f"expected '{lexeme}' before end of file", self.end_location)
        elif token.lexeme != lexeme:
            raise ParseError(f"expected '{lexeme}' before '{token.lexeme}'", token.location)
        return self.advance()

    def expect_identifier(self) -> Token:
        token = self.peek()
        if token is None or token.kind is not TokenKind.IDENT:
            found = f"'{token.lexeme}'" if token else "end of file"
            raise ParseError(f"expected identifier before {found}", self.location)
        return self.advance()

    def error(self, error: ParseError):
        self.diagnostics.append(
            Error(error.message, location=error.location, filename=self.filename)
        )

    def at_line_start(self) -> bool:
        """The current token opens a line and can start a statement."""
        token = self.peek()
        if token is None or self.pos == 0:
            return False
        if self.tokens[self.pos - 1].location[0] >= token.location[0]:
            return False
        return token.kind in (TokenKind.IDENT, TokenKind.KEYWORD)

    def synchronize(self):
        """Skip to the next statement: after a `;`, before a `}`, or before a new line
        that starts a statement (recovery from a missing `;`)."""
        depth = 0
        while self.peek() is not None:
            if depth == 0 and self.at_line_start():
                return
            if self.at("{"):
                depth += 1
            elif self.at("}"):
                if depth == 0:
                    return
                depth -= 1
                if depth == 0:
                    self.advance()
                    return
            elif self.at(";") and depth == 0:
                self.advance()
                return
            self.advance()

    # top level
    def parse_program(self) -> ast.Program:
        items = []
        while self.peek() is not None:
            start = self.pos
            try:
                items.append(self.parse_top_level())
            except ParseError as e:
                self.error(e)
                self.synchronize()
                if self.pos == start:
                    self.advance()
        return ast.Program((1, 1), items)

    def starts_declaration(self) -> bool:
        token = self.peek()
        return token is not None and token.kind is TokenKind.KEYWORD and (
            token.lexeme in TYPE_KEYWORDS or token.lexeme in ATTRIBUTE_KEYWORDS
        )

    def parse_top_level(self):
        location = self.location
        if not self.starts_declaration():
            token = self.peek()
            raise ParseError(
                f"expected a declaration or a function before '{token.lexeme}'", location
            )
        attribute = self.parse_attribute()
        base_type, type_dims = self.parse_type()
        name = self.expect_identifier()
        if attribute is None and self.at("("):
            return self.parse_function(location, base_type, type_dims, name)
        return self.parse_declaration_rest(location, attribute, base_type, type_dims, name)

    def parse_attribute(self) -> Optional[str]:
        token = self.accept(*ATTRIBUTE_KEYWORDS)
        return token.lexeme[2:] if token else None

    def parse_type(self) -> Tuple[str, List[ast.Expr]]:
        token = self.peek()
        if token is None or token.lexeme not in TYPE_KEYWORDS:
            found = f"'{token.lexeme}'" if token else "end of file"
            raise ParseError(f"expected a type before {found}", self.location)
        self.advance()
        return token.lexeme, self.parse_dims()

    def parse_dims(self) -> List[ast.Expr]:
        dims = []
        while self.accept("["):
            dims.append(self.parse_expression())
            self.expect("]")
        return dims

    def parse_function(self, location, base_type, type_dims, name: Token):
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                param_location = self.location
                param_type, param_type_dims = self.parse_type()
                param_name = self.expect_identifier()
                dims = self.parse_dims() + param_type_dims
                params.append(
                    ast.VarDecl(param_location, param_name.lexeme, param_type, dims)
                )
                if not self.accept(","):
                    break
        self.expect(")")
        body = self.parse_block()
        return ast.FuncDecl(location, name.lexeme, base_type, type_dims, params, body)

    def parse_declaration_rest(
        self, location, attribute, base_type, type_dims, name: Token, terminated=True
    ) -> ast.DeclStmt:
        decls = []
        while True:
            dims = self.parse_dims() + list(type_dims)
            init = None
            if self.accept("="):
                init = self.parse_initializer()
            decls.append(
                ast.VarDecl(name.location, name.lexeme, base_type, dims, attribute, init)
            )
            if not self.accept(","):
                break
            name = self.expect_identifier()
        if terminated:
            self.expect(";")
        return ast.DeclStmt(location, decls)

    def parse_declaration(self, terminated=True) -> ast.DeclStmt:
        location = self.location
        attribute = self.parse_attribute()
        base_type, type_dims = self.parse_type()
        name = self.expect_identifier()
        return self.parse_declaration_rest(
            location, attribute, base_type, type_dims, name, terminated=terminated
        )

    def parse_initializer(self) -> ast.Expr:
        if self.at("{"):
            location = self.advance().location
            items = []
            if not self.at("}"):
                while True:
                    items.append(self.parse_initializer())
                    if not self.accept(","):
                        break
                    if self.at("}"):
                        break
            self.expect("}")
            return ast.InitList(location, items)
        return self.parse_expression()

    # statements
    def parse_block(self) -> ast.Block:
        location = self.expect("{").location
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise ParseError("expected '}' before end of file", self.end_location)
            start = self.pos
            try:
                stmts.append(self.parse_statement())
            except ParseError as e:
                self.error(e)
                self.synchronize()
                if self.pos == start:
                    self.advance()
        self.expect("}")
        return ast.Block(location, stmts)

    def parse_statement(self):
        location = self.location
        if self.at("{"):
            return self.parse_block()
        elif self.accept("if"):
            self.expect("(")
            cond = self.parse_expression()
            self.expect(")")
            then = self.parse_statement()
            else_ = self.parse_statement() if self.accept("else") else None
            return ast.If(location, cond, then, else_)
        elif self.accept("for"):
            return self.parse_for(location)
        elif self.at("while"):
            raise ParseError("'while' loops are not supported, use 'for'", location)
        elif self.accept("return"):
            value = None if self.at(";") else self.parse_expression()
            self.expect(";")
            return ast.Return(location, value)
        elif self.starts_declaration():
            return self.parse_declaration()
        stmt = self.parse_simple_statement()
        self.expect(";")
        return stmt

    def parse_for(self, location) -> ast.For:
        self.expect("(")
        init = None
        if self.starts_declaration():
            init = self.parse_declaration(terminated=False)
        elif not self.at(";"):
            init = self.parse_assignment()
        self.expect(";")
        cond = None if self.at(";") else self.parse_expression()
        self.expect(";")
        step = None if self.at(")") else self.parse_assignment()
        self.expect(")")
        body = self.parse_statement()
        return ast.For(location, init, cond, step, body)

    def parse_assignment(self) -> ast.Assign:
        stmt = self.parse_simple_statement()
        if not isinstance(stmt, ast.Assign):
            raise ParseError("expected an assignment", stmt.loc)
        return stmt

    def parse_simple_statement(self):
        location = self.location
        target = self.parse_expression()
        if self.accept("="):
            return ast.Assign(location, target, self.parse_expression())
        token = self.accept(*COMPOUND_ASSIGNMENTS)
        if token:
            value = self.parse_expression()
            op = COMPOUND_ASSIGNMENTS[token.lexeme]
            return ast.Assign(location, target, ast.Binary(token.location, op, target, value))
        token = self.accept("++", "--")
        if token:
            one = ast.IntLit(token.location, 1, "1")
            op = token.lexeme[0]
            return ast.Assign(location, target, ast.Binary(token.location, op, target, one))
        if isinstance(target, ast.Call):
            return ast.ExprStmt(location, target)
        raise ParseError("expression statement has no effect", location)

    # expressions
    def parse_expression(self) -> ast.Expr:
        location = self.location
        cond = self.parse_binary(0)
        if self.accept("?"):
            then = self.parse_expression()
            self.expect(":")
            else_ = self.parse_expression()
            return ast.Ternary(location, cond, then, else_)
        return cond

    def parse_binary(self, level: int) -> ast.Expr:
        if level == len(BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        while True:
            token = self.peek()
            if token is None or token.kind is not TokenKind.OPERATOR:
                return left
            if token.lexeme not in BINARY_LEVELS[level]:
                return left
            self.advance()
            right = self.parse_binary(level + 1)
            left = ast.Binary(token.location, token.lexeme, left, right)

    def parse_unary(self) -> ast.Expr:
        token = self.peek()
        if token is not None and token.kind is TokenKind.OPERATOR and token.lexeme in UNARY_OPERATORS:
            self.advance()
            return ast.Unary(token.location, token.lexeme, self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self) -> ast.Expr:
        expr = self.parse_primary()
        while self.at("["):
            location = self.advance().location
            index = self.parse_expression()
            self.expect("]")
            expr = ast.Index(location, expr, index)
        return expr

    def parse_primary(self) -> ast.Expr:
        token = self.peek()
        if token is None:
            raise ParseError("expected an expression before end of file", self.end_location)
        if token.kind is TokenKind.INTEGER:
            self.advance()
            return ast.IntLit(token.location, parse_integer(token.lexeme), token.lexeme)
        elif token.kind is TokenKind.IDENT:
            self.advance()
            if self.accept("("):
                args = []
                if not self.at(")"):
                    while True:
                        args.append(self.parse_expression())
                        if not self.accept(","):
                            break
                self.expect(")")
                return ast.Call(token.location, token.lexeme, args)
            return ast.Name(token.location, token.lexeme)
        elif self.accept("("):
            expr = self.parse_expression()
            self.expect(")")
            return expr
        raise ParseError(f"expected an expression before '{token.lexeme}'", token.location)


def parse(
    tokens: List[Token], filename: Optional[str] = None
) -> Tuple[ast.Program, List[Diagnostic]]:
    """Build the syntax tree; syntax errors are returned as diagnostics."""
    parser = Parser(tokens, filename=filename)
    program = parser.parse_program()
    program.filename = filename
    return program, parser.diagnostics


def parse_source(source: str, filename: Optional[str] = None) -> ast.Program:
    """Parse a source text, ignoring diagnostics (for tests and the pretty printer)."""
    return parse(tokenize(source), filename=filename)[0]
