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
import itertools
from unittest import TestCase

from hypothesis import given, settings
from hypothesis.strategies import integers, lists

from alg2cnf.exceptions import ExecutionError, FormulaError, TraceLookupError
from alg2cnf.execution import (
    TracePoint,
    encode_conditional,
    execute,
    run_batch,
    trace_lookup,
)
from alg2cnf.formula import tables
from alg2cnf.formula.dag import FormulaDag, Op
from alg2cnf.lang.frontend import compile_source

MIXER = """
__in bit k[16];
__in bit c;
__out bit z[16];
__out bit flags[3];
int ROUNDS = 3;

bit[16] mix(bit x[16], bit y[16]) {
    return (x + y) <<< 3 ^ (x & y);
}

void main() {
    bit s[16] = k;
    for (int i = 0; i < ROUNDS; i++) {
        s = mix(s, k);
        if (s[0]) s[1] = ~s[1];
        else {
            s[2] ^= s[3];
        }
    }
    if (c) { s = s - k; }
    z = s[15] ? s : k >> 2;
    flags[0] = s < k;
    flags[1] = s == k;
    flags[2] = (s >= 5) ^ c;
}
"""

ARITHMETIC = """
__in bit a[8], b[8];
__out bit s[8], d[8];
__out bit lt, ge;
void main() {
    s = a + b;
    d = a - b;
    lt = a < b;
    ge = a >= b;
}
"""


def word_bits(value, width):
    return [(value >> i) & 1 for i in range(width)]


class TestAgreement(TestCase):
    """The formula DAG and the concrete lanes compute the same function."""

    program = compile_source(MIXER, name="mixer")

    @settings(max_examples=30, deadline=None)
    @given(lists(lists(integers(0, 1), min_size=17, max_size=17), min_size=1, max_size=8))
    def test_mixer(self, rows):
        expected = run_batch(self.program, rows).outputs
        for fuse_limit in (0, 3, 6):
            encoding = execute(self.program, fuse_limit=fuse_limit)
            self.assertEqual(expected, [encoding.eval(row) for row in rows])

    @settings(max_examples=100, deadline=None)
    @given(integers(0, 255), integers(0, 255))
    def test_arithmetic(self, x, y):
        program = compile_source(ARITHMETIC)
        row = word_bits(x, 8) + word_bits(y, 8)
        expected = (
            word_bits((x + y) % 256, 8)
            + word_bits((x - y) % 256, 8)
            + [int(x < y), int(x >= y)]
        )
        self.assertEqual(expected, execute(program).eval(row))
        self.assertEqual([expected], run_batch(program, [row]).outputs)

    def test_sizes(self):
        encoding = execute(self.program)
        self.assertEqual(17, len(encoding.inputs))
        self.assertEqual(19, len(encoding.outputs))
        self.assertEqual("k[0]", encoding.inputs[0][0])
        self.assertEqual("flags[2]", encoding.outputs[-1][0])

    def test_determinism(self):
        first, second = execute(self.program), execute(self.program)
        self.assertEqual(first.dag.nodes, second.dag.nodes)
        self.assertEqual(first.trace, second.trace)


class TestBranches(TestCase):
    def assertSameFunction(self, left, right, width):
        left, right = execute(compile_source(left)), execute(compile_source(right))
        for row in itertools.product((0, 1), repeat=width):
            self.assertEqual(right.eval(row), left.eval(row), row)

    def test_if_else(self):
        self.assertSameFunction(
            "__in bit c, a, b; __out bit o;"
            "void main() { if (c) { o = a; } else { o = b; } }",
            "__in bit c, a, b; __out bit o; void main() { o = (c & a) | (~c & b); }",
            3,
        )

    def test_one_sided(self):
        self.assertSameFunction(
            "__in bit c, a, b; __out bit o; void main() { o = b; if (c) o = a; }",
            "__in bit c, a, b; __out bit o; void main() { o = c ? a : b; }",
            3,
        )

    def test_nested(self):
        self.assertSameFunction(
            "__in bit c, e, a, b; __out bit o;"
            "void main() { o = b; if (c) { if (e) { o = a; } else { o = ~a; } } }",
            "__in bit c, e, a, b; __out bit o;"
            "void main() { o = (c & ~(e ^ a)) | (~c & b); }",
            4,
        )

    def test_constant_guard(self):
        encoding = execute(
            compile_source(
                "__in bit a; __out bit o; void main() { bit t = 1; if (t) o = a; else o = ~a; }"
            )
        )
        self.assertEqual(encoding.inputs[0][1], encoding.outputs[0][1])

    def test_one_branch_without_value(self):
        source = "__in bit c, a; __out bit o; void main() { if (c) { o = a; } }"
        with self.assertRaises(ExecutionError):
            execute(compile_source(source))
        encoding = execute(compile_source(source), zero_init=True)
        self.assertEqual([1], encoding.eval([1, 1]))
        self.assertEqual([0], encoding.eval([0, 1]))


class TestEncodeConditional(TestCase):
    def setUp(self):
        self.dag = FormulaDag()
        self.g, self.t, self.e, self.x = [self.dag.mk_input() for __ in range(4)]

    def test_both_branches(self):
        node = encode_conditional(self.dag, self.g, self.t, self.e, self.x)
        for g, t, e in itertools.product((0, 1), repeat=3):
            self.assertEqual(
                [(g & t) | ((1 - g) & e)], self.dag.eval([node], [g, t, e, 0])
            )

    def test_missing_branches(self):
        then_only = encode_conditional(self.dag, self.g, self.t, None, self.x)
        else_only = encode_conditional(self.dag, self.g, None, self.e, self.x)
        for g, t, e, x in itertools.product((0, 1), repeat=4):
            row = [g, t, e, x]
            self.assertEqual([t if g else x], self.dag.eval([then_only], row))
            self.assertEqual([x if g else e], self.dag.eval([else_only], row))
        with self.assertRaises(FormulaError):
            encode_conditional(self.dag, self.g, None, None, self.x)

    def test_constant_guard(self):
        self.assertEqual(
            self.t, encode_conditional(self.dag, self.dag.TRUE, self.t, self.e, self.x)
        )


class TestTrace(TestCase):
    source = """
    __in bit a[2];
    __out bit o;
    void main() {
        bit t = a[0];
        t = t ^ a[1];
        o = t;
    }
    """

    def setUp(self):
        self.program = compile_source(self.source)
        self.encoding = execute(self.program)

    def test_points(self):
        self.assertEqual(
            {"program.a[0]@0", "program.a[1]@0", "main.t@0", "main.t@1", "program.o@0"},
            {str(x) for x in self.encoding.trace},
        )
        self.assertEqual(1, self.encoding.last_occurrence("main", "t", None))
        self.assertEqual(-1, self.encoding.last_occurrence("main", "u", None))
        self.assertEqual((2,), self.encoding.shapes["program.a"])

    def test_lookup(self):
        self.assertEqual(
            self.encoding.inputs[1][1], trace_lookup(self.encoding, "program.a[1]@0")
        )
        self.assertEqual(
            self.encoding.outputs[0][1],
            trace_lookup(self.encoding, TracePoint("main", "t", None, 1)),
        )

    def test_suggestions(self):
        with self.assertRaises(TraceLookupError) as context:
            trace_lookup(self.encoding, "main.tt@1")
        self.assertIn("main.t@1", context.exception.suggestions)
        self.assertIn("did you mean", str(context.exception))
        with self.assertRaises(TraceLookupError):
            trace_lookup(self.encoding, "no trace point")

    def test_concrete_trace(self):
        rows = [list(x) for x in itertools.product((0, 1), repeat=2)]
        result = run_batch(self.program, rows, record_trace=True)
        self.assertEqual(set(self.encoding.trace), set(result.trace))
        for lane, row in enumerate(rows):
            for point, bit in result.trace_bits(lane).items():
                node = self.encoding.trace[point]
                self.assertEqual([bit], self.encoding.dag.eval([node], row))


class TestFusion(TestCase):
    source = (
        "__in bit x[6]; __out bit o;"
        "void main() { o = (x[0] & x[1]) ^ (x[2] | x[3]) ^ (x[4] & ~x[5]); }"
    )

    def check_function(self, encoding):
        for row in itertools.product((0, 1), repeat=6):
            x = row
            expected = (x[0] & x[1]) ^ (x[2] | x[3]) ^ (x[4] & (1 - x[5]))
            self.assertEqual([expected], encoding.eval(row))

    def test_single_table(self):
        encoding = execute(compile_source(self.source), fuse_limit=6)
        node = encoding.dag.node(encoding.outputs[0][1])
        self.assertEqual(Op.TABLE, node.op)
        self.assertEqual(tuple(encoding.input_nodes), node.operands)
        self.check_function(encoding)

    def test_split(self):
        encoding = execute(compile_source(self.source), fuse_limit=3)
        for node_id in encoding.dag.cone(encoding.output_nodes):
            self.assertLessEqual(len(encoding.dag.node(node_id).operands), 3)
        self.check_function(encoding)

    def test_disabled(self):
        encoding = execute(compile_source(self.source), fuse_limit=0)
        self.assertEqual(Op.XOR, encoding.dag.node(encoding.outputs[0][1]).op)
        self.check_function(encoding)

    chain = "t = x[0] & x[1]; u = t ^ x[2]; o = u | x[3];"

    def test_locals_stay_open(self):
        source = "__in bit x[4]; __out bit o; void main() { bit t, u; %s }" % self.chain
        encoding = execute(compile_source(source), fuse_limit=6)
        node = encoding.dag.node(encoding.outputs[0][1])
        self.assertEqual(Op.TABLE, node.op)
        self.assertEqual(tuple(encoding.input_nodes), node.operands)
        self.assertEqual(set(encoding.input_nodes) | {node.id}, set(encoding.dag.cone([node.id])))
        for row in itertools.product((0, 1), repeat=4):
            expected = ((row[0] & row[1]) ^ row[2]) | row[3]
            self.assertEqual([expected], encoding.eval(row))
            for point, node_id in encoding.trace.items():
                if point.name == "t":
                    self.assertEqual([row[0] & row[1]], encoding.dag.eval([node_id], row))

    def test_globals_are_sealed(self):
        source = "__in bit x[4]; __out bit o; bit t, u; void main() { %s }" % self.chain
        encoding = execute(compile_source(source), fuse_limit=6)
        node = encoding.dag.node(encoding.outputs[0][1])
        self.assertEqual(Op.OR, node.op)
        self.assertNotEqual(tuple(encoding.input_nodes), node.operands)

    def test_wide_parity_is_split(self):
        parity = "x[0] ^ x[1] ^ x[2] ^ x[3] ^ x[4] ^ x[5]"
        for expression, complement in ((parity, 0), ("~(%s)" % parity, 1)):
            source = "__in bit x[6]; __out bit o; void main() { o = %s; }" % expression
            encoding = execute(compile_source(source), fuse_limit=6)
            node = encoding.dag.node(encoding.outputs[0][1])
            self.assertEqual(4, len(node.operands))
            group = [x for x in node.operands if x not in encoding.input_nodes]
            self.assertEqual(1, len(group))
            self.assertEqual(Op.TABLE, encoding.dag.node(group[0]).op)
            self.assertEqual(tables.XOR3, encoding.dag.node(group[0]).param)
            for row in itertools.product((0, 1), repeat=6):
                self.assertEqual([sum(row) % 2 ^ complement], encoding.eval(row))

    def test_open_chain_is_split(self):
        steps = ["t = t ^ (x[%d] & x[%d]);" % (i, i + 1) for i in range(7)]
        body = "bit t = x[0];" + "".join(steps)
        source = "__in bit x[8]; __out bit o; void main() { %s o = t; }" % body
        encoding = execute(compile_source(source), fuse_limit=3)
        for node_id in encoding.dag.cone(encoding.output_nodes):
            self.assertLessEqual(len(encoding.dag.node(node_id).operands), 3)
        for seed in range(16):
            row = [(seed * 2654435761 >> i) & 1 for i in range(8)]
            expected = row[0]
            for i in range(7):
                expected ^= row[i] & row[i + 1]
            self.assertEqual([expected], encoding.eval(row))


class TestOverrides(TestCase):
    source = "__in bit m[4]; __out bit h[4]; bit IV[4] = 5; void main() { h = IV ^ m; }"

    def setUp(self):
        self.program = compile_source(self.source)

    def test_default(self):
        self.assertEqual([1, 0, 1, 0], execute(self.program).eval([0] * 4))

    def test_constant(self):
        encoding = execute(self.program, overrides={"IV": 3})
        self.assertEqual([1, 1, 0, 0], encoding.eval([0] * 4))
        encoding = execute(self.program, overrides={"IV": [0, 0, 0, 1]})
        self.assertEqual([1, 0, 0, 1], encoding.eval([1, 0, 0, 0]))

    def test_free(self):
        encoding = execute(self.program, overrides={"IV": "free"})
        self.assertEqual(8, len(encoding.inputs))
        self.assertEqual("IV[0]", encoding.inputs[4][0])
        self.assertEqual([0, 1, 1, 0], encoding.eval([0] * 4 + [0, 1, 1, 0]))
        rows = [[0] * 4 + [0, 1, 1, 0]]
        self.assertEqual(
            [[0, 1, 1, 0]], run_batch(self.program, rows, overrides={"IV": "free"}).outputs
        )

    def test_invalid(self):
        for overrides in ({"W": 1}, {"m": 1}, {"IV": [1, 0]}, {"IV": "fixed"}):
            with self.assertRaises(ExecutionError):
                execute(self.program, overrides=overrides)


class TestRuntimeErrors(TestCase):
    def test_uninitialized(self):
        source = "__in bit a; __out bit o; void main() { bit t; o = t ^ a; }"
        with self.assertRaises(ExecutionError) as context:
            execute(compile_source(source))
        self.assertIn("bit 't' is read before being assigned", str(context.exception))
        encoding = execute(compile_source(source), zero_init=True)
        self.assertEqual(encoding.inputs[0][1], encoding.outputs[0][1])

    def test_unassigned_output(self):
        with self.assertRaises(ExecutionError) as context:
            execute(compile_source("__in bit a; __out bit o[2]; void main() { o[0] = a; }"))
        self.assertIn("output bit 'o[1]' is never assigned", str(context.exception))

    def test_index_out_of_range(self):
        source = (
            "__in bit a[4]; __out bit o;"
            "void main() { o = 0; for (int i = 0; i < 5; i++) { o ^= a[i]; } }"
        )
        with self.assertRaises(ExecutionError) as context:
            execute(compile_source(source))
        self.assertIn("index 4 out of range [0, 4)", str(context.exception))
