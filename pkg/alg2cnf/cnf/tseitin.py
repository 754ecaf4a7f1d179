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
"""Tseitin transformation of formula DAGs into template CNFs.

Input variables are numbered first, in input order, then one auxiliary variable per encoded
gate in increasing node order.

>>> and_clauses(3, [1, 2])
[(1, -3), (2, -3), (-1, -2, 3)]
>>> not_clauses(2, 1)
[(1, 2), (-1, -2)]
"""
import itertools
import logging
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence

from alg2cnf.cnf.clauses import Clause, TemplateCnf, literal, make_clause
from alg2cnf.cnf.minimize import DEFAULT_EXACT_LIMIT, covers
from alg2cnf.exceptions import EncodingError
from alg2cnf.formula import tables
from alg2cnf.formula.dag import Op

if TYPE_CHECKING:
    from alg2cnf.execution.symbolic import Encoding
    from alg2cnf.pipeline import TranslateConfig

logger = logging.getLogger(__name__)


def _clauses(groups: Sequence[Sequence[int]]) -> List[Clause]:
    result = []
    for group in groups:
        clause = make_clause(group)
        if clause is not None:
            result.append(clause)
    return result


def not_clauses(v: int, u: int) -> List[Clause]:
    return _clauses([[v, u], [-v, -u]])


def and_clauses(v: int, operands: Sequence[int]) -> List[Clause]:
    """`v <-> u1 & ... & uk`: k + 1 clauses."""
    return _clauses([[-v, u] for u in operands] + [[v] + [-u for u in operands]])


def or_clauses(v: int, operands: Sequence[int]) -> List[Clause]:
    """`v <-> u1 | ... | uk`: k + 1 clauses."""
    return _clauses([[v, -u] for u in operands] + [[-v] + list(operands)])


def xor_clauses(v: int, operands: Sequence[int]) -> List[Clause]:
    """`v <-> u1 ^ ... ^ uk`: one clause per forbidden assignment, 2^k in total."""
    variables = [v] + list(operands)
    groups = []
    for values in itertools.product((0, 1), repeat=len(variables)):
        if sum(values) % 2 == 1:
            groups.append([literal(x, 1 - b) for x, b in zip(variables, values)])
    return _clauses(groups)


def ite_clauses(v: int, c: int, t: int, e: int, extra: bool = False) -> List[Clause]:
    """`v <-> (c ? t : e)`: 4 clauses, plus 2 redundant ones with `extra`."""
    groups = [[-c, -t, v], [-c, t, -v], [c, -e, v], [c, e, -v]]
    if extra:
        groups += [[-t, -e, v], [t, e, -v]]
    return _clauses(groups)


def encode_table(
    v: int, operands: Sequence[int], table: int, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> List[Clause]:
    """`v <-> table(operands)` from the minimized ON-set and OFF-set covers.

    Each ON cube gives the clause `cube -> v`, each OFF cube the clause `cube -> ~v`.

    >>> len(encode_table(4, [1, 2, 3], tables.MAJ3))
    6
    >>> encode_table(3, [1, 2], 0)
    [(-3,)]
    """
    k = len(operands)
    if not 1 <= k <= tables.MAX_TABLE_ARITY:
        raise EncodingError(
            f"truth tables need 1 to {tables.MAX_TABLE_ARITY} operands, got {k}"
        )
    on_cover, off_cover = covers(table, k, exact_limit)
    groups = []
    for cover, head in ((on_cover, v), (off_cover, -v)):
        for mask, value in cover.cubes:
            body = [
                literal(operands[i], 1 - ((value >> i) & 1))
                for i in range(k)
                if (mask >> i) & 1
            ]
            groups.append(body + [head])
    return _clauses(groups)


class TseitinEncoder:
    def __init__(self, encoding: "Encoding", config: "TranslateConfig"):
        self.encoding = encoding
        self.dag = encoding.dag
        self.config = config
        self.template = TemplateCnf(name=encoding.program_name)
        self.variables = {}  # type: Dict[int, int]
        self.constant_var = None  # type: Optional[int]

    def run(self) -> TemplateCnf:
        template = self.template
        template.shapes = dict(self.encoding.shapes)
        for name, node_id in self.encoding.inputs:
            var = template.new_var()
            self.variables[node_id] = var
            template.inputs.append((name, var))
            template.provenance[var] = node_id
        if self.config.prune:
            nodes = self.dag.cone(self.encoding.output_nodes)
        else:
            nodes = range(len(self.dag))
        for node_id in nodes:
            node = self.dag.nodes[node_id]
            if node.is_gate:
                self.encode_gate(node)
        for name, node_id in self.encoding.outputs:
            template.outputs.append((name, self.output_var(node_id)))
        for point, node_id in self.encoding.trace.items():
            if self.dag.is_const(node_id):
                template.trace_constants[point] = node_id
            elif node_id in self.variables:
                template.trace[point] = self.variables[node_id]
        logger.info(
            "%s: %d variable(s), %d clause(s)",
            template.name,
            template.var_count,
            len(template.clauses),
        )
        return template

    def operand(self, node_id: int) -> int:
        """Literal of an already encoded node."""
        if self.dag.is_const(node_id):
            return self.constant(node_id)
        var = self.variables.get(node_id)
        if var is None:
            raise EncodingError(f"node {node_id} is used before being encoded")
        return var

    def constant(self, value: int) -> int:
        if self.constant_var is None:
            self.constant_var = self.template.new_var()
            self.template.provenance[self.constant_var] = self.dag.TRUE
            self.template.add_clause([self.constant_var])
        return self.constant_var if value else -self.constant_var

    def encode_gate(self, node):
        template = self.template
        operands = [self.operand(x) for x in node.operands]
        v = template.new_var()
        self.variables[node.id] = v
        template.provenance[v] = node.id
        if node.op is Op.NOT:
            clauses = not_clauses(v, operands[0])
        elif node.op is Op.AND:
            clauses = and_clauses(v, operands)
        elif node.op is Op.OR:
            clauses = or_clauses(v, operands)
        elif node.op is Op.XOR:
            clauses = xor_clauses(v, operands)
        elif node.op is Op.ITE:
            clauses = ite_clauses(v, *operands, extra=self.config.ite_extra)
        elif node.op is Op.TABLE:
            clauses = encode_table(v, operands, node.table, self.config.exact_limit)
        else:
            raise EncodingError(f"cannot encode {node.op.value} node {node.id}")
        template.clauses += clauses

    def output_var(self, node_id: int) -> int:
        """Variable of an output; inputs and constants get a dedicated auxiliary variable."""
        node = self.dag.nodes[node_id]
        if node.is_gate:
            return self.variables[node_id]
        v = self.template.new_var()
        self.template.provenance[v] = node_id
        if node.op is Op.CONST:
            self.template.add_clause([literal(v, node.param)])
        else:
            self.template.clauses += not_clauses(v, -self.variables[node_id])
        return v


def tseitinize(encoding: "Encoding", config: Optional["TranslateConfig"] = None) -> TemplateCnf:
    """Template CNF of an encoding."""
    if config is None:
        from alg2cnf.pipeline import TranslateConfig

        config = TranslateConfig()
    return TseitinEncoder(encoding, config).run()
