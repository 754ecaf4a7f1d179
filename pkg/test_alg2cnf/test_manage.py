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
import io
import os
import shutil
import tempfile
from typing import Dict, Tuple
from unittest import TestCase

from alg2cnf.corpus import corpus_root
from alg2cnf.manage import COMMANDS, get_merger, manage, usage
from test_alg2cnf.test_instances import MASKED
from test_alg2cnf.test_values_providers import EnvPatch

AND2 = "__in bit a, b;\n__out bit c;\nvoid main() {\n    c = a & b;\n}\n"


def run(*args: str) -> Tuple[int, str, str]:
    stdout, stderr = io.StringIO(), io.StringIO()
    code = manage(["alg2cnf", *args], stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def values(output: str) -> Dict[str, str]:
    result = {}
    for line in output.splitlines():
        key, sep, value = line.partition("=")
        if sep:
            result[key] = value
    return result


class TestGetMerger(TestCase):
    def test_providers(self):
        merger = get_merger()
        self.assertEqual(5, len(merger.providers))
        merger = get_merger("custom.ini", values={"VERIFY_TRIALS": 3})
        self.assertEqual(6, len(merger.providers))

    def test_environment(self):
        with EnvPatch(ALG2CNF_SOLVER_SEED="7"):
            merger = get_merger()
            merger.process()
        self.assertEqual(7, merger.settings["SOLVER_SEED"])


class TestDispatch(TestCase):
    def test_usage(self):
        code, out, __ = run("help")
        self.assertEqual(0, code)
        self.assertEqual(usage(), out)
        for command in COMMANDS:
            self.assertIn(command, out)

    def test_no_command(self):
        code, out, err = run()
        self.assertEqual(1, code)
        self.assertEqual("", out)
        self.assertTrue(err.startswith("usage: alg2cnf"))

    def test_unknown_command(self):
        code, __, err = run("solv")
        self.assertEqual(1, code)
        self.assertIn("did you mean solve", err)

    def test_version(self):
        from alg2cnf import __version__

        code, out, __ = run("--version")
        self.assertEqual(0, code)
        self.assertEqual(__version__, out.strip())


class CommandTestCase(TestCase):
    def setUp(self):
        self.dirname = tempfile.mkdtemp()
        self.program = self.write("and2.alg", AND2)

    def tearDown(self):
        shutil.rmtree(self.dirname)

    def path(self, name: str) -> str:
        return os.path.join(self.dirname, name)

    def write(self, name: str, content: str) -> str:
        path = self.path(name)
        with open(path, "w") as fd:
            fd.write(content)
        return path

    def check(self, expected_code: int, *args: str) -> Dict[str, str]:
        code, out, err = run(*args)
        self.assertEqual(expected_code, code, out + err)
        return values(out)

    def template(self) -> str:
        self.check(0, "translate", self.program, "-o", self.path("and2.cnf"))
        return self.path("and2.cnf")


class TestTranslate(CommandTestCase):
    def test_translate(self):
        result = self.check(0, "translate", self.program, "-o", self.path("out/and2.cnf"))
        self.assertEqual("and2", result["name"])
        self.assertEqual("3", result["variables"])
        self.assertEqual("3", result["clauses"])
        self.assertEqual(self.path("out/and2.cnf"), result["cnf"])
        self.assertTrue(os.path.isfile(result["map"]))

    def test_dump(self):
        self.check(
            0, "translate", self.program, "-o", self.path("t.cnf"), "--dump-dag", self.path("dag")
        )
        with open(self.path("dag")) as fd:
            self.assertTrue(fd.read().strip())

    def test_stats(self):
        result = self.check(0, "stats", self.template())
        self.assertEqual("7", result["literals"])
        self.assertEqual("2", result["clauses_2"])
        self.assertEqual("1", result["clauses_3"])
        self.assertEqual("2", result["inputs"])
        self.assertNotIn("published_variables", result)

    def test_compile_error(self):
        path = self.write("bad.alg", "__out bit c;\nvoid main() { c = x; }\n")
        code, out, err = run("translate", path, "-o", self.path("bad.cnf"))
        self.assertEqual(1, code)
        self.assertIn("bad.alg", err)
        self.assertFalse(os.path.exists(self.path("bad.cnf")))

    def test_missing_file(self):
        code, __, err = run("translate", self.path("missing.alg"))
        self.assertEqual(1, code)
        self.assertIn("missing.alg", err)

    def test_bad_option(self):
        code, __, err = run("translate", self.program, "--bogus")
        self.assertEqual(1, code)
        self.assertIn("usage:", err)

    def test_fuse_limit(self):
        code, __, err = run("translate", self.program, "--fuse-limit", "2")
        self.assertEqual(1, code)
        self.assertIn("--fuse-limit", err)

    def test_invalid_configuration(self):
        config = self.write("settings.ini", "[translate]\nfuse_limit = 2\n")
        code, __, err = run(
            "translate", self.program, "-o", self.path("t.cnf"), "--config", config
        )
        self.assertEqual(1, code)
        self.assertIn("fuse_limit", err)

    def test_missing_configuration(self):
        code, __, err = run("stats", self.program, "--config", self.path("none.ini"))
        self.assertEqual(1, code)
        self.assertIn("none.ini", err)


class TestInstances(CommandTestCase):
    def encode(self, value: str = "1") -> str:
        output = self.path("inverse.cnf")
        result = self.check(
            0, "encode", self.template(), "--output-hex", value, "-o", output
        )
        self.assertEqual("1", result["fixed"])
        return output

    def test_solve(self):
        result = self.check(10, "solve", self.encode(), "--model", self.path("model.txt"))
        self.assertEqual("SAT", result["status"])
        self.assertEqual("3", result["input"])
        self.assertEqual("1", result["output"])
        with open(self.path("model.txt")) as fd:
            self.assertEqual("s SATISFIABLE", fd.readline().strip())

    def test_output_file(self):
        self.write("y.txt", "0  # expected output\n")
        output = self.path("inverse.cnf")
        self.check(
            0, "encode", self.template(), "--output-file", self.path("y.txt"), "-o", output
        )
        result = self.check(10, "solve", output)
        self.assertNotEqual("3", result["input"])

    def test_output_too_wide(self):
        code, __, err = run("encode", self.template(), "--output-hex", "2", "-o", self.path("x"))
        self.assertEqual(1, code)
        self.assertIn("output value", err)

    def test_guess(self):
        instance = self.encode()
        output = self.path("guessed.cnf")
        result = self.check(
            0,
            "guess",
            instance,
            "--bits",
            "1",
            "--key-hex",
            "0",
            "--select",
            "first",
            "-o",
            output,
        )
        self.assertEqual("1", result["guessing"])
        self.assertEqual("1", result["guessed"])
        self.assertEqual("UNSAT", self.check(20, "solve", output)["status"])
        self.check(
            0, "guess", instance, "--bits", "2", "--key-hex", "3", "-o", output
        )
        self.assertEqual("SAT", self.check(10, "solve", output)["status"])

    def test_partition(self):
        instance = self.encode()
        decomposition = self.write("set.txt", "a b  # both inputs\n")
        result = self.check(
            0, "partition", instance, "--set", decomposition, "--count-only"
        )
        self.assertEqual("2", result["variables"])
        self.assertEqual("4", result["cubes"])
        self.assertNotIn("written", result)
        cubes = self.path("cubes.icnf")
        result = self.check(0, "partition", instance, "--set", decomposition, "-o", cubes)
        self.assertEqual("4", result["written"])
        result = self.check(10, "solve", instance, "--cubes", cubes)
        self.assertEqual("SAT", result["status"])
        self.assertEqual("1 2", result["cube"])
        self.assertEqual("3", result["input"])

    def test_partition_errors(self):
        instance = self.encode()
        decomposition = self.write("set.txt", "a b\n")
        self.check(1, "partition", instance, "--set", decomposition, "--mode", "sample")
        self.check(1, "partition", instance, "--set", decomposition)
        self.check(1, "partition", instance, "--set", self.path("none.txt"), "--count-only")
        self.check(
            1, "partition", instance, "--set", self.write("c.txt", "c\n"), "--count-only"
        )

    def test_inject(self):
        conditions = self.write("conditions.txt", "fix and2.a 1\nfix and2.b = 1\n")
        output = self.path("injected.cnf")
        result = self.check(
            0, "inject", self.template(), "--conditions", conditions, "-o", output
        )
        self.assertEqual("2", result["added_assumptions"])
        result = self.check(10, "solve", output)
        self.assertEqual("1", result["output"])

    def test_inject_unknown(self):
        conditions = self.write("conditions.txt", "fix and2.d 1\n")
        code, __, err = run(
            "inject", self.template(), "--conditions", conditions, "-o", self.path("x.cnf")
        )
        self.assertEqual(1, code)
        self.assertIn("and2.d", err)


class TestVerify(CommandTestCase):
    def test_forward(self):
        result = self.check(
            0, "verify", self.program, self.template(), "--trials", "8", "--seed", "2"
        )
        self.assertEqual("yes", result["passed"])
        self.assertEqual("8", result["trials"])

    def test_inversion(self):
        result = self.check(
            0, "verify", self.program, self.template(), "--trials", "3", "--inversion"
        )
        self.assertEqual("inversion", result["check"])
        self.assertEqual("yes", result["passed"])

    def test_json(self):
        code, out, __ = run("verify", self.program, self.template(), "--trials", "2", "--json")
        self.assertEqual(0, code)
        self.assertIn('"passed": true', out)

    def test_wrong_template(self):
        other = self.write("or2.alg", AND2.replace("&", "|"))
        result = self.check(1, "verify", other, self.template(), "--trials", "20")
        self.assertEqual("no", result["passed"])


class TestCollide(CommandTestCase):
    def test_collision(self):
        program = self.write("pair.alg", MASKED)
        output = self.path("pair.cnf")
        result = self.check(
            10, "collide", program, "--distinct", "--solve", "-o", output
        )
        self.assertEqual("yes", result["collision"])
        self.assertEqual(output, result["cnf"])
        self.assertTrue(os.path.isfile(output))

    def test_no_solve(self):
        program = self.write("pair.alg", MASKED)
        result = self.check(0, "collide", program)
        self.assertEqual("0", result["assumptions"])
        self.assertNotIn("status", result)


class TestCorpus(CommandTestCase):
    def test_list(self):
        code, out, __ = run("corpus", "list")
        self.assertEqual(0, code)
        self.assertTrue(out.startswith("geffe96"))
        self.assertIn("and2        2 -> 1", out)

    def test_build(self):
        result = self.check(0, "corpus", "build", "and2", "-o", self.dirname)
        self.assertEqual("3", result["variables"])
        self.assertTrue(os.path.isfile(self.path("and2.cnf")))
        self.check(1, "corpus", "build")
        self.check(1, "corpus", "build", "and3")

    def test_configured_directory(self):
        root = self.path("corpus")
        shutil.copytree(os.path.join(corpus_root(), "and2"), os.path.join(root, "and2"))
        config = self.write("settings.ini", f"[corpus]\ndirectory = {root}\n")
        code, out, __ = run("corpus", "list", "--config", config)
        self.assertEqual(0, code)
        self.assertEqual(1, len(out.splitlines()))
        result = self.check(0, "corpus", "validate", "--trials", "4", "--config", config)
        self.assertEqual("yes", result["passed"])
        vectors = self.path("vectors.txt")
        result = self.check(
            0, "corpus", "vectors", "and2", "--count", "3", "-o", vectors, "--config", config
        )
        self.assertEqual(vectors, result["vectors"])
        with open(os.path.join(root, "and2", "vectors.txt"), "w") as fd:
            fd.write("3 0\n")
        result = self.check(1, "corpus", "validate", "--trials", "1", "--config", config)
        self.assertEqual("no", result["passed"])