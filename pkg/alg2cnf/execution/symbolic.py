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
"""Symbolic execution: programs to formula DAGs.

Every elementary step (assignment, initializer, argument, return value or bit condition)
collapses the expression cone it created into truth-table nodes over at most `fuse_limit`
leaves. Leaves are the nodes that existed before the step, the inputs and the sealed nodes
(results of previous steps and full adders). Results stored in local variables stay open: they
are not leaves, so the next step that reads them fuses through them. Parities of more than
`PARITY_LIMIT` leaves are split into 3-leaf parities. Wider cones are split: while a gate
depends on too many leaves, its operand with the largest support is collapsed first.

>>> from alg2cnf.lang.frontend import compile_source
>>> program = compile_source("__in bit a, b; __out bit c; void main() { c = a & b; }")
>>> encoding = execute(program)
>>> [name for name, node in encoding.inputs], encoding.dag.node(encoding.outputs[0][1]).op.value
(['a', 'b'], 'AND')
>>> encoding.eval([1, 1]), encoding.eval([0, 1])
([1], [0])
"""
import difflib
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from alg2cnf.exceptions import FormulaError, TraceLookupError
from alg2cnf.execution.base import Domain, Executor, Override, TracePoint
from alg2cnf.formula import tables
from alg2cnf.formula.dag import FormulaDag, Op
from alg2cnf.lang import ast

logger = logging.getLogger(__name__)
# parities over more operands are split into sealed 3-operand parities
PARITY_LIMIT = 5


class SymbolicDomain(Domain):
    def __init__(self, dag: FormulaDag, fuse_limit: int = 6):
        self.dag = dag
        self.fuse_limit = fuse_limit
        self.FALSE, self.TRUE = dag.FALSE, dag.TRUE
        # first node id of each open step, innermost last
        self.watermarks = []  # type: List[int]
        self.supports = []  # type: List[Dict[int, Tuple[int, ...]]]
        self.replacements = {}  # type: Dict[int, int]
        # unsealed step results, fused into the steps that read them
        self.open = set()  # type: Set[int]

    def constant_value(self, value) -> Optional[int]:
        return value if self.dag.is_const(value) else None

    def input(self, label: str):
        return self.dag.mk_input()

    def not_(self, a):
        return self.dag.mk_not(a)

    def and_(self, a, b):
        return self.dag.mk_and([a, b])

    def or_(self, a, b):
        return self.dag.mk_or([a, b])

    def xor(self, a, b):
        return self.dag.mk_xor([a, b])

    def ite(self, c, t, e):
        return self.dag.mk_ite(c, t, e)

    def merge(self, c, t, e):
        return self.dag.seal(self.dag.mk_ite(c, t, e))

    def add_bits(self, a, b, c):
        operands = self.close([a, b, c])
        total = self.dag.seal(self.dag.mk_table(operands, tables.XOR3))
        return total, self.dag.seal(self.dag.mk_table(operands, tables.MAJ3))

    def carry(self, a, b, c):
        return self.dag.seal(self.dag.mk_table(self.close([a, b, c]), tables.MAJ3))

    # gate fusion
    def begin(self):
        self.watermarks.append(len(self.dag))
        self.supports.append({})

    def finish(self, values: List, seal: bool = True) -> List:
        result = self.close(values, seal)
        if self.watermarks:
            self.watermarks.pop()
            self.supports.pop()
        return result

    def close(self, values: List, seal: bool = True) -> List:
        """Collapse the cones of the values created in the current step; seal the results
        unless `seal` is false."""
        if not self.fuse_limit:
            return list(values)
        return [self._close(x, seal) for x in values]

    @property
    def watermark(self) -> int:
        return self.watermarks[-1] if self.watermarks else 0

    def _is_leaf(self, node_id: int) -> bool:
        if node_id in self.dag.sealed:
            return True
        if node_id in self.open:
            return False
        return (
            node_id < self.watermark
            or self.dag.nodes[node_id].op in (Op.CONST, Op.INPUT)
        )

    def _close(self, node_id: int, seal: bool = True) -> int:
        node_id = self.replacements.get(node_id, node_id)
        if self._is_leaf(node_id):
            return node_id
        support = self._support(node_id)
        if len(support) > tables.MAX_TABLE_ARITY:
            return self._seal(node_id)
        table = self._table(node_id, support)
        if len(support) > PARITY_LIMIT:
            support, table = self._split_parity(support, table)
        result = self.dag.mk_table(support, table)
        self.replacements[node_id] = result
        if seal:
            return self._seal(result)
        node = self.dag.nodes[result]
        if result not in self.dag.sealed and node.op not in (Op.CONST, Op.INPUT):
            self.open.add(result)
        return result

    def _seal(self, node_id: int) -> int:
        self.open.discard(node_id)
        return self.dag.seal(node_id)

    def _split_parity(self, support: Sequence[int], table: int) -> Tuple[Sequence[int], int]:
        k = len(support)
        parity = tables.parity_table(k)
        if table == parity:
            complement = 0
        elif table == parity ^ tables.full_table(k):
            complement = 1
        else:
            return support, table
        leaves = list(support)
        while len(leaves) > PARITY_LIMIT:
            group = self.dag.mk_table(leaves[:3], tables.XOR3)
            leaves = leaves[3:] + [self._seal(group)]
        k = len(leaves)
        return leaves, tables.parity_table(k) ^ (tables.full_table(k) if complement else 0)

    def _children(self, node_id: int) -> List[int]:
        return [self.replacements.get(x, x) for x in self.dag.nodes[node_id].operands]

    def _leaf_support(self, node_id: int) -> Tuple[int, ...]:
        if self.dag.is_const(node_id):
            return ()
        return (node_id,)

    def _support(self, node_id: int) -> Tuple[int, ...]:
        memo = self.supports[-1] if self.supports else {}
        if node_id in memo:
            return memo[node_id]
        children = self._children(node_id)

        def child_support(child):
            return self._leaf_support(child) if self._is_leaf(child) else self._support(child)

        support = set()
        for child in children:
            support.update(child_support(child))
        while len(support) > self.fuse_limit:
            candidates = [x for x in set(children) if not self._is_leaf(x)]
            if not candidates:
                break
            widest = max(candidates, key=lambda x: (len(child_support(x)), -x))
            self._close(widest)
            children = self._children(node_id)
            support = set()
            for child in children:
                support.update(child_support(child))
        result = tuple(sorted(support))
        memo[node_id] = result
        return result

    def _table(self, root: int, support: Sequence[int]) -> int:
        """Truth table of `root` over its support, by bit-parallel evaluation of the cone."""
        k = len(support)
        full = tables.full_table(k)
        values = {leaf: tables.var_table(i, k) for i, leaf in enumerate(support)}
        stack = [root]
        while stack:
            node_id = stack[-1]
            if node_id in values:
                stack.pop()
                continue
            node = self.dag.nodes[node_id]
            children = self._children(node_id)
            pending = [x for x in children if x not in values and not self.dag.is_const(x)]
            if pending:
                stack.extend(pending)
                continue
            args = [
                values[x] if x in values else (full if x == self.TRUE else 0)
                for x in children
            ]
            values[node_id] = self.dag.apply(node, args, full)
            stack.pop()
        return values[root]


@dataclass
class Encoding:
    """Result of the symbolic execution of a program."""

    program_name: str
    dag: FormulaDag
    inputs: List[Tuple[str, int]] = field(default_factory=list)
    outputs: List[Tuple[str, int]] = field(default_factory=list)
    trace: Dict[TracePoint, int] = field(default_factory=dict)
    shapes: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    _last: Optional[Dict] = field(default=None, init=False, repr=False, compare=False)

    @property
    def input_nodes(self) -> List[int]:
        return [x for __, x in self.inputs]

    @property
    def output_nodes(self) -> List[int]:
        return [x for __, x in self.outputs]

    def eval(self, bits: Sequence[int]) -> List[int]:
        """Output bits for one input vector (in input order)."""
        return self.dag.eval(self.output_nodes, bits)

    def eval_masks(self, masks: Sequence[int], width: int) -> List[int]:
        return self.dag.eval_masks(self.output_nodes, masks, width)

    def last_occurrence(self, qualifier: str, name: str, index: Optional[int]) -> int:
        """Occurrence of the last write of a cell, -1 if it is never written."""
        if self._last is None:
            self._last = {}
            for point in self.trace:
                self._last[point.cell] = max(self._last.get(point.cell, -1), point.occurrence)
        return self._last.get((qualifier, name, index), -1)

    def stats(self) -> Dict:
        cone = self.dag.cone(self.output_nodes)
        return {
            "inputs": len(self.inputs),
            "outputs": len(self.outputs),
            "trace_points": len(self.trace),
            "nodes": len(self.dag),
            "cone": len(cone),
            "depth": self.dag.depth(self.output_nodes),
        }


def execute(
    program: ast.Program,
    fuse_limit: int = 6,
    zero_init: bool = False,
    overrides: Optional[Dict[str, Override]] = None,
) -> Encoding:
    """Symbolically execute a checked program."""
    dag = FormulaDag()
    domain = SymbolicDomain(dag, fuse_limit=fuse_limit)
    executor = Executor(program, domain, zero_init=zero_init, overrides=overrides)
    result = executor.run()
    encoding = Encoding(
        program.name,
        dag,
        inputs=result.inputs,
        outputs=result.outputs,
        trace=result.trace,
        shapes=result.shapes,
    )
    logger.info(
        "%s: %d input(s), %d output(s), %d node(s), %d trace point(s)",
        program.name,
        len(encoding.inputs),
        len(encoding.outputs),
        len(dag),
        len(encoding.trace),
    )
    return encoding


def encode_conditional(
    dag: FormulaDag,
    guard: int,
    then: Optional[int],
    else_: Optional[int],
    old: int,
) -> int:
    """Value of a cell after `if (guard)`: the missing branch keeps the old value.

    >>> dag = FormulaDag()
    >>> g, t, x = dag.mk_input(), dag.mk_input(), dag.mk_input()
    >>> dag.node(encode_conditional(dag, g, t, None, x)).operands == (g, t, x)
    True
    >>> encode_conditional(dag, dag.TRUE, t, None, x) == t
    True
    """
    if then is None and else_ is None:
        raise FormulaError("a conditional assignment needs at least one branch")
    return dag.mk_ite(guard, old if then is None else then, old if else_ is None else else_)


def trace_lookup(encoding: Encoding, point: Union[TracePoint, str]) -> int:
    """Node written at a trace point."""
    if isinstance(point, str):
        try:
            point = TracePoint.parse(point)
        except ValueError:
            raise TraceLookupError(point)
    node = encoding.trace.get(point)
    if node is None:
        known = [str(x) for x in encoding.trace]
        suggestions = difflib.get_close_matches(str(point), known, n=3, cutoff=0.6)
        raise TraceLookupError(str(point), suggestions)
    return node
