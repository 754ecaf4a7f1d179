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
"""Syntax tree of programs.

Locations, resolved declarations and computed types are excluded from comparisons, so two trees
are equal when they have the same structure.
"""
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple, Union

Location = Tuple[int, int]


@dataclass(frozen=True)
class ValueType:
    """Type of an expression: `base` is "bit", "int" or "void"; `shape` lists array extents."""

    base: str
    shape: Tuple[int, ...] = ()

    @property
    def is_bit(self) -> bool:
        return self.base == "bit"

    @property
    def is_int(self) -> bool:
        return self.base == "int"

    @property
    def is_word(self) -> bool:
        """Scalar bit or one-dimensional bit vector."""
        return self.is_bit and len(self.shape) <= 1

    @property
    def width(self) -> int:
        result = 1
        for extent in self.shape:
            result *= extent
        return result

    def __str__(self):
        return self.base + "".join(f"[{x}]" for x in self.shape)


INT = ValueType("int")
BIT = ValueType("bit")
VOID = ValueType("void")


class Node:
    loc: Location


@dataclass(eq=True)
class IntLit(Node):
    loc: Location = field(compare=False)
    value: int
    text: Optional[str] = field(default=None, compare=False)
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Name(Node):
    loc: Location = field(compare=False)
    ident: str
    decl: Any = field(default=None, compare=False, repr=False)
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Index(Node):
    loc: Location = field(compare=False)
    base: "Expr"
    index: "Expr"
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Unary(Node):
    loc: Location = field(compare=False)
    op: str
    operand: "Expr"
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Binary(Node):
    loc: Location = field(compare=False)
    op: str
    left: "Expr"
    right: "Expr"
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Ternary(Node):
    loc: Location = field(compare=False)
    cond: "Expr"
    then: "Expr"
    else_: "Expr"
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class Call(Node):
    loc: Location = field(compare=False)
    func: str
    args: List["Expr"]
    decl: Any = field(default=None, compare=False, repr=False)
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


@dataclass(eq=True)
class InitList(Node):
    loc: Location = field(compare=False)
    items: List["Expr"]
    ty: Optional[ValueType] = field(default=None, compare=False, repr=False)


Expr = Union[IntLit, Name, Index, Unary, Binary, Ternary, Call, InitList]


@dataclass(eq=True)
class VarDecl(Node):
    """One declared variable; `dims` are the declarator extents followed by the type extents."""

    loc: Location = field(compare=False)
    name: str
    base_type: str
    dims: List[Expr]
    attribute: Optional[str] = None
    init: Optional[Expr] = None
    shape: Tuple[int, ...] = field(default=(), compare=False, repr=False)
    # name of the declaring function, None for globals
    function: Optional[str] = field(default=None, compare=False, repr=False)

    @property
    def is_global(self) -> bool:
        return self.function is None

    @property
    def ty(self) -> ValueType:
        return ValueType(self.base_type, self.shape)


@dataclass(eq=True)
class DeclStmt(Node):
    loc: Location = field(compare=False)
    decls: List[VarDecl]


@dataclass(eq=True)
class Block(Node):
    loc: Location = field(compare=False)
    stmts: List["Stmt"]


@dataclass(eq=True)
class Assign(Node):
    loc: Location = field(compare=False)
    target: Expr
    value: Expr


@dataclass(eq=True)
class ExprStmt(Node):
    loc: Location = field(compare=False)
    expr: Expr


@dataclass(eq=True)
class If(Node):
    loc: Location = field(compare=False)
    cond: Expr
    then: "Stmt"
    else_: Optional["Stmt"] = None


@dataclass(eq=True)
class For(Node):
    loc: Location = field(compare=False)
    init: Optional[Union[DeclStmt, Assign]]
    cond: Optional[Expr]
    step: Optional[Assign]
    body: "Stmt"


@dataclass(eq=True)
class Return(Node):
    loc: Location = field(compare=False)
    value: Optional[Expr] = None


Stmt = Union[DeclStmt, Block, Assign, ExprStmt, If, For, Return]


@dataclass(eq=True)
class FuncDecl(Node):
    loc: Location = field(compare=False)
    name: str
    return_type: str
    return_dims: List[Expr]
    params: List[VarDecl]
    body: Block
    return_shape: Tuple[int, ...] = field(default=(), compare=False, repr=False)

    @property
    def ty(self) -> ValueType:
        return ValueType(self.return_type, self.return_shape)


@dataclass(eq=True)
class Program(Node):
    """A whole source file: global declarations and functions, in source order."""

    loc: Location = field(compare=False)
    items: List[Union[DeclStmt, FuncDecl]]
    name: str = field(default="program", compare=False)
    filename: Optional[str] = field(default=None, compare=False)
    scope_tree: Any = field(default=None, compare=False, repr=False)
    warnings: List[Any] = field(default_factory=list, compare=False, repr=False)

    @property
    def functions(self) -> List[FuncDecl]:
        return [x for x in self.items if isinstance(x, FuncDecl)]

    @property
    def globals(self) -> List[VarDecl]:
        return [d for x in self.items if isinstance(x, DeclStmt) for d in x.decls]

    def function(self, name: str) -> Optional[FuncDecl]:
        for func in self.functions:
            if func.name == name:
                return func
        return None

    @property
    def inputs(self) -> List[VarDecl]:
        return [x for x in self.globals if x.attribute == "in"]

    @property
    def outputs(self) -> List[VarDecl]:
        return [x for x in self.globals if x.attribute == "out"]

    @property
    def input_width(self) -> int:
        return sum(x.ty.width for x in self.inputs)

    @property
    def output_width(self) -> int:
        return sum(x.ty.width for x in self.outputs)
