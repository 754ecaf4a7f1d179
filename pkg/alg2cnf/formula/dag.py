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
"""Hash-consed Boolean formula DAG with local rewrites.

Nodes are numbered densely in creation order, so operands always have smaller ids than the
gates using them. Constants 0 and 1 are always nodes 0 and 1.

>>> dag = FormulaDag()
>>> a, b = dag.mk_input(), dag.mk_input()
>>> g = dag.mk_and([a, b])
>>> g == dag.mk_and([b, a]), dag.mk_not(dag.mk_not(g)) == g
(True, True)
>>> dag.eval([g], [1, 1]), dag.eval([g], [1, 0])
([1], [0])
>>> dag.stats()["nodes"]
6
"""
import enum
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from alg2cnf.exceptions import FormulaError
from alg2cnf.formula import tables

logger = logging.getLogger(__name__)


class Op(enum.Enum):
    CONST = "CONST"
    INPUT = "INPUT"
    NOT = "NOT"
    AND = "AND"
    OR = "OR"
    XOR = "XOR"
    ITE = "ITE"
    TABLE = "TABLE"


GATE_OPS = {Op.NOT, Op.AND, Op.OR, Op.XOR, Op.ITE, Op.TABLE}


@dataclass(frozen=True)
class BoolNode:
    """One node. `param` is the constant value, the input index or the truth table."""

    id: int
    op: Op
    operands: Tuple[int, ...] = ()
    param: int = 0

    @property
    def is_gate(self) -> bool:
        return self.op in GATE_OPS

    @property
    def table(self) -> int:
        if self.op is not Op.TABLE:
            raise FormulaError(f"node {self.id} is not a TABLE node")
        return self.param

    def describe(self) -> str:
        """One line of the DAG dump.

        >>> BoolNode(7, Op.TABLE, (2, 3, 4), 0xE8).describe()
        '7 TABLE 0xe8 2 3 4'
        >>> BoolNode(2, Op.INPUT, (), 0).describe()
        '2 INPUT 0'
        """
        words = [str(self.id), self.op.value]
        if self.op is Op.TABLE:
            words.append(hex(self.param))
        elif not self.is_gate:
            words.append(str(self.param))
        words += [str(x) for x in self.operands]
        return " ".join(words)


class FormulaDag:
    """Append-only arena of Boolean nodes with structural hashing.

    With `simplify=False`, gates are only hash-consed (no rewrite); this is used to check that
    the rewrites preserve the evaluation.
    """

    FALSE = 0
    TRUE = 1

    def __init__(self, simplify: bool = True):
        self.simplify = simplify
        self.nodes = []  # type: List[BoolNode]
        self.cons_table = {}  # type: Dict[Tuple[Op, Tuple[int, ...], int], int]
        self.input_count = 0
        # nodes that must stay visible as leaves of fused truth tables
        self.sealed = set()  # type: Set[int]
        self.nodes.append(BoolNode(0, Op.CONST, (), 0))
        self.nodes.append(BoolNode(1, Op.CONST, (), 1))

    def __len__(self):
        return len(self.nodes)

    def node(self, node_id: int) -> BoolNode:
        if not isinstance(node_id, int) or not 0 <= node_id < len(self.nodes):
            raise FormulaError(f"unknown node id {node_id!r}")
        return self.nodes[node_id]

    def _cons(self, op: Op, operands: Tuple[int, ...], param: int = 0) -> int:
        key = (op, operands, param)
        node_id = self.cons_table.get(key)
        if node_id is None:
            node_id = len(self.nodes)
            self.nodes.append(BoolNode(node_id, op, operands, param))
            self.cons_table[key] = node_id
        return node_id

    def is_const(self, node_id: int) -> bool:
        return node_id in (self.FALSE, self.TRUE)

    def seal(self, node_id: int) -> int:
        if node_id > self.TRUE:
            self.sealed.add(node_id)
        return node_id

    def mk_const(self, value: int) -> int:
        return self.TRUE if value else self.FALSE

    def mk_input(self) -> int:
        index = self.input_count
        self.input_count += 1
        return self._cons(Op.INPUT, (), index)

    def mk_gate(
        self, op: Op, operands: Sequence[int], table: Optional[int] = None
    ) -> int:
        """Create (or find) a gate, after local rewrites when `simplify` is set."""
        operands = tuple(operands)
        for operand in operands:
            self.node(operand)
        arity = len(operands)
        if op is Op.NOT and arity != 1:
            raise FormulaError(f"NOT expects 1 operand, got {arity}")
        elif op is Op.ITE and arity != 3:
            raise FormulaError(f"ITE expects 3 operands, got {arity}")
        elif op in (Op.AND, Op.OR, Op.XOR) and arity < 2:
            raise FormulaError(f"{op.value} expects at least 2 operands, got {arity}")
        elif op is Op.TABLE:
            if table is None:
                raise FormulaError("TABLE requires a truth table")
            if arity > tables.MAX_TABLE_ARITY:
                raise FormulaError(
                    f"TABLE arity {arity} exceeds {tables.MAX_TABLE_ARITY}"
                )
            if table < 0 or table >> (1 << arity):
                raise FormulaError(f"truth table {table:#x} has more than 2^{arity} rows")
        elif op not in GATE_OPS:
            raise FormulaError(f"{op.value} is not a gate")
        if not self.simplify:
            if op in (Op.AND, Op.OR, Op.XOR):
                operands = tuple(sorted(operands))
            return self._cons(op, operands, table if op is Op.TABLE else 0)
        if op is Op.NOT:
            return self.mk_not(operands[0])
        elif op is Op.AND:
            return self.mk_and(operands)
        elif op is Op.OR:
            return self.mk_or(operands)
        elif op is Op.XOR:
            return self.mk_xor(operands)
        elif op is Op.ITE:
            return self.mk_ite(*operands)
        return self.mk_table(operands, table)

    def mk_not(self, a: int) -> int:
        if not self.simplify:
            return self._cons(Op.NOT, (self.node(a).id,))
        if self.is_const(a):
            return self.TRUE - a
        node = self.node(a)
        if node.op is Op.NOT:
            return node.operands[0]
        return self._cons(Op.NOT, (a,))

    def _mk_and_or(self, op: Op, operands: Iterable[int]) -> int:
        identity = self.TRUE if op is Op.AND else self.FALSE
        absorbing = self.TRUE - identity
        kept = set()
        for operand in operands:
            self.node(operand)
            if operand == absorbing:
                return absorbing
            elif operand != identity:
                kept.add(operand)
        for operand in kept:
            node = self.nodes[operand]
            if node.op is Op.NOT and node.operands[0] in kept:
                return absorbing
        if not kept:
            return identity
        elif len(kept) == 1:
            return kept.pop()
        return self._cons(op, tuple(sorted(kept)))

    def mk_and(self, operands: Iterable[int]) -> int:
        if not self.simplify:
            return self.mk_gate(Op.AND, list(operands))
        return self._mk_and_or(Op.AND, operands)

    def mk_or(self, operands: Iterable[int]) -> int:
        if not self.simplify:
            return self.mk_gate(Op.OR, list(operands))
        return self._mk_and_or(Op.OR, operands)

    def mk_xor(self, operands: Iterable[int]) -> int:
        if not self.simplify:
            return self.mk_gate(Op.XOR, list(operands))
        parity = 0
        kept = set()
        for operand in operands:
            node = self.node(operand)
            if node.op is Op.CONST:
                parity ^= node.param
                continue
            if node.op is Op.NOT:
                parity ^= 1
                operand = node.operands[0]
            kept ^= {operand}
        if not kept:
            return self.mk_const(parity)
        elif len(kept) == 1:
            result = kept.pop()
        else:
            result = self._cons(Op.XOR, tuple(sorted(kept)))
        return self.mk_not(result) if parity else result

    def mk_ite(self, c: int, t: int, e: int) -> int:
        """If-then-else `c ? t : e`."""
        if not self.simplify:
            return self.mk_gate(Op.ITE, [c, t, e])
        for operand in (c, t, e):
            self.node(operand)
        if self.is_const(c):
            return t if c == self.TRUE else e
        if t == e:
            return t
        node = self.nodes[c]
        if node.op is Op.NOT:
            c, t, e = node.operands[0], e, t
        if t == self.TRUE and e == self.FALSE:
            return c
        elif t == self.FALSE and e == self.TRUE:
            return self.mk_not(c)
        elif t == self.TRUE or c == t:
            return self.mk_or([c, e])
        elif e == self.FALSE or c == e:
            return self.mk_and([c, t])
        elif t == self.FALSE:
            return self.mk_and([self.mk_not(c), e])
        elif e == self.TRUE:
            return self.mk_or([self.mk_not(c), t])
        return self._cons(Op.ITE, (c, t, e))

    def mk_table(self, operands: Sequence[int], table: int) -> int:
        """Gate defined by a truth table; returns a simpler node whenever possible."""
        if not self.simplify:
            return self.mk_gate(Op.TABLE, operands, table)
        operands = list(operands)
        k = len(operands)
        if k > tables.MAX_TABLE_ARITY:
            raise FormulaError(f"TABLE arity {k} exceeds {tables.MAX_TABLE_ARITY}")
        if table < 0 or table >> (1 << k):
            raise FormulaError(f"truth table {table:#x} has more than 2^{k} rows")
        for operand in operands:
            self.node(operand)
        i = 0
        while i < k:
            operand = operands[i]
            duplicate = operands.index(operand)
            if self.is_const(operand):
                table = tables.cofactor(table, k, i, operand)
            elif duplicate < i:
                table = tables.merge_operands(table, k, duplicate, i)
            else:
                i += 1
                continue
            del operands[i]
            k -= 1
        i = 0
        while i < k:
            if tables.depends_on(table, k, i):
                i += 1
                continue
            table = tables.cofactor(table, k, i, 0)
            del operands[i]
            k -= 1
        order = sorted(range(k), key=operands.__getitem__)
        table = tables.permute(table, k, order)
        operands = [operands[j] for j in order]
        if k == 0:
            return self.mk_const(table & 1)
        elif k == 1:
            return operands[0] if table == 0b10 else self.mk_not(operands[0])
        elif k == 2 and table == tables.AND2:
            return self.mk_and(operands)
        elif k == 2 and table == tables.OR2:
            return self.mk_or(operands)
        elif k == 2 and table == tables.XOR2:
            return self.mk_xor(operands)
        return self._cons(Op.TABLE, tuple(operands), table)

    def cone(self, roots: Iterable[int]) -> List[int]:
        """Ids of all nodes reachable from the roots, in increasing order."""
        seen = set()
        stack = [self.node(root).id for root in roots]
        while stack:
            node_id = stack.pop()
            if node_id in seen:
                continue
            seen.add(node_id)
            stack.extend(self.nodes[node_id].operands)
        return sorted(seen)

    def eval_masks(
        self, roots: Sequence[int], masks: Sequence[int], width: int
    ) -> List[int]:
        """Bit-parallel evaluation: `masks[i]` holds the values of input `i` in `width` lanes."""
        if len(masks) != self.input_count:
            raise FormulaError(
                f"expected {self.input_count} input values, got {len(masks)}"
            )
        full = (1 << width) - 1
        values = {}
        for node_id in self.cone(roots):
            node = self.nodes[node_id]
            if node.op is Op.INPUT:
                values[node_id] = masks[node.param] & full
            else:
                values[node_id] = self.apply(node, [values[x] for x in node.operands], full)
        return [values[root] for root in roots]

    @staticmethod
    def apply(node: BoolNode, args: Sequence[int], full: int) -> int:
        """Value of a non-input node given the bit-parallel values of its operands."""
        op = node.op
        if op is Op.CONST:
            return full if node.param else 0
        elif op is Op.NOT:
            return full ^ args[0]
        elif op is Op.AND:
            value = full
            for arg in args:
                value &= arg
            return value
        elif op is Op.OR:
            value = 0
            for arg in args:
                value |= arg
            return value
        elif op is Op.XOR:
            value = 0
            for arg in args:
                value ^= arg
            return value
        elif op is Op.ITE:
            return (args[0] & args[1]) | ((full ^ args[0]) & args[2])
        elif op is Op.TABLE:
            return tables.eval_table_masks(node.param, len(args), list(args), full.bit_length())
        raise FormulaError(f"cannot evaluate {op.value} node {node.id}")

    def eval(self, roots: Sequence[int], bits: Sequence[int]) -> List[int]:
        """Value of each root for one assignment of the inputs."""
        return self.eval_masks(roots, [b & 1 for b in bits], 1)

    def depth(self, roots: Optional[Iterable[int]] = None) -> int:
        ids = range(len(self.nodes)) if roots is None else self.cone(roots)
        levels = {}
        result = 0
        for node_id in ids:
            node = self.nodes[node_id]
            level = 1 + max((levels[x] for x in node.operands), default=-1)
            if not node.is_gate:
                level = 0
            levels[node_id] = level
            result = max(result, level)
        return result

    def stats(self) -> Dict:
        """Node counts by op and depth.

        >>> FormulaDag().stats()
        {'nodes': 2, 'inputs': 0, 'by_op': {'CONST': 2}, 'depth': 0}
        """
        by_op = {}
        for node in self.nodes:
            by_op[node.op.value] = by_op.get(node.op.value, 0) + 1
        return {
            "nodes": len(self.nodes),
            "inputs": self.input_count,
            "by_op": by_op,
            "depth": self.depth(),
        }

    def dump(self, roots: Optional[Iterable[int]] = None) -> str:
        """Text dump, one line per node: `id op operands...`."""
        ids = range(len(self.nodes)) if roots is None else self.cone(roots)
        return "".join(self.nodes[x].describe() + "\n" for x in ids)
