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
"""Registry of the corpus programs shipped with the package.

Each entry lives in its own directory `<root>/<name>/`: the program `<name>.alg`, the
reference vectors `vectors.txt` (one `<input hex> <output hex>` pair per line, MSB-first),
the attack profile `profile.txt` (`.ini` syntax, section `[attack]`), and optionally
`conditions/*.txt` and a decomposition set.

>>> entry = get("and2")
>>> entry.input_width, entry.output_width, len(entry.vectors)
(2, 1, 4)
"""
import configparser
import difflib
import logging
import os
import random
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from alg2cnf.cnf.clauses import TemplateCnf
from alg2cnf.corpus.reference import REFERENCES, md_pad
from alg2cnf.exceptions import Alg2CnfError, CorpusError
from alg2cnf.instances.instance import InputRef
from alg2cnf.instances.partition import read_decomposition
from alg2cnf.lang import ast
from alg2cnf.lang.frontend import compile_file
from alg2cnf.oracle import Failure, VerifyReport, run_concrete_batch
from alg2cnf.utils import bits_to_hex, ensure_dir, hex_to_bits, random_bits

logger = logging.getLogger(__name__)

NAMES = ["geffe96", "bivium", "trivium", "grain", "a5_1", "md4", "md5", "lfsr16", "and2", "maj3"]
# entries small enough for exhaustive checks
TOY_NAMES = {"lfsr16", "and2", "maj3"}
# (variables, clauses) of the published template CNFs
PUBLISHED_SIZES = {
    "bivium": (442, 7960),
    "trivium": (1587, 22176),
    "grain": (1785, 34165),
    "md4": (19363, 184689),
    "md5": (35477, 304728),
}
# the hash sizes count the collision encoding: two copies with equal digests
COLLISION_SIZES = {"md4", "md5"}
# bit 32w + k of the IV is bit k of the little-endian word w of the digest
CHAINING_WORDS = 4
Vector = Tuple[List[int], List[int]]


def corpus_root(root: Optional[str] = None) -> str:
    """Directory of the corpus: `root` when given, the packaged data otherwise."""
    if root:
        return root
    return os.path.dirname(os.path.abspath(__file__))


@dataclass
class AttackProfile:
    description: str = ""
    guessing_bits: int = 0
    select: str = "first"
    decomposition: Optional[str] = None
    conditions: List[str] = field(default_factory=list)


def read_profile(path: str) -> AttackProfile:
    if not os.path.isfile(path):
        return AttackProfile()
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as e:
        raise CorpusError(f"{path}: {e}") from e
    if not parser.has_section("attack"):
        return AttackProfile()
    section = parser["attack"]
    try:
        guessing_bits = section.getint("guessing_bits", fallback=0)
    except ValueError as e:
        raise CorpusError(f"{path}: invalid guessing_bits: {e}") from e
    select = section.get("select", "first").strip()
    if select not in ("first", "last", "random"):
        raise CorpusError(f"{path}: invalid guessing-bit selection '{select}'")
    conditions = [x.strip() for x in section.get("conditions", "").split(",") if x.strip()]
    return AttackProfile(
        description=section.get("description", "").strip(),
        guessing_bits=guessing_bits,
        select=select,
        decomposition=section.get("decomposition", None),
        conditions=conditions,
    )


def read_vectors(path: str, input_width: int, output_width: int) -> List[Vector]:
    vectors = []
    if not os.path.isfile(path):
        return vectors
    with open(path, encoding="utf-8") as fd:
        for line_number, line in enumerate(fd, start=1):
            line = line.partition("#")[0].strip()
            if not line:
                continue
            words = line.split()
            if len(words) != 2:
                raise CorpusError(f"{path}:{line_number}: expected '<input hex> <output hex>'")
            try:
                x = hex_to_bits(words[0], input_width)
                y = hex_to_bits(words[1], output_width)
            except ValueError as e:
                raise CorpusError(f"{path}:{line_number}: {e}") from e
            vectors.append((x, y))
    return vectors


@dataclass
class CorpusEntry:
    name: str
    directory: str
    profile: AttackProfile
    vectors: List[Vector] = field(default_factory=list)

    @property
    def path(self) -> str:
        return os.path.join(self.directory, f"{self.name}.alg")

    @cached_property
    def program(self) -> ast.Program:
        return compile_file(self.path, name=self.name)

    @property
    def input_width(self) -> int:
        return self.program.input_width

    @property
    def output_width(self) -> int:
        return self.program.output_width

    @property
    def vectors_path(self) -> str:
        return os.path.join(self.directory, "vectors.txt")

    @property
    def conditions(self) -> List[str]:
        return [os.path.join(self.directory, "conditions", x) for x in self.profile.conditions]

    def decomposition(self) -> List[InputRef]:
        if not self.profile.decomposition:
            return []
        path = os.path.join(self.directory, self.profile.decomposition)
        try:
            with open(path, encoding="utf-8") as fd:
                return read_decomposition(fd)
        except OSError as e:
            raise CorpusError(f"cannot read decomposition set {path}: {e}") from e

    @property
    def published_size(self) -> Optional[Tuple[int, int]]:
        return PUBLISHED_SIZES.get(self.name)

    def measured_size(self, template: TemplateCnf) -> Tuple[int, int]:
        """(variables, clauses) of `template` comparable with :attr:`published_size`.

        For the hash functions, two copies of the template and two clauses per equated
        output bit.
        """
        variables, clauses = template.var_count, len(template.clauses)
        if self.name in COLLISION_SIZES:
            return 2 * variables, 2 * clauses + 2 * len(template.outputs)
        return variables, clauses

    def check_vectors(self) -> List[Failure]:
        """Vectors whose output differs from the concrete evaluation of the program."""
        if not self.vectors:
            return []
        outputs = run_concrete_batch(self.program, [x for x, __ in self.vectors])
        failures = []
        for trial, ((x, y), observed) in enumerate(zip(self.vectors, outputs)):
            if observed != y:
                failures.append(
                    Failure(
                        trial,
                        bits_to_hex(x),
                        bits_to_hex(y),
                        bits_to_hex(observed),
                        status=f"{self.name}:vector",
                    )
                )
        return failures


def _unknown(name: str) -> CorpusError:
    message = f"unknown corpus entry '{name}'"
    suggestions = difflib.get_close_matches(name, NAMES, n=3)
    if suggestions:
        message += "; did you mean " + ", ".join(suggestions) + "?"
    return CorpusError(message)


def get(name: str, root: Optional[str] = None, validate: bool = True) -> CorpusEntry:
    """Load a corpus entry and check its vectors against its program."""
    if name not in NAMES:
        raise _unknown(name)
    directory = os.path.join(corpus_root(root), name)
    if not os.path.isfile(os.path.join(directory, f"{name}.alg")):
        raise CorpusError(f"corpus entry '{name}' has no program in {directory}")
    entry = CorpusEntry(name, directory, read_profile(os.path.join(directory, "profile.txt")))
    entry.vectors = read_vectors(entry.vectors_path, entry.input_width, entry.output_width)
    if validate:
        failures = entry.check_vectors()
        if failures:
            first = failures[0]
            raise CorpusError(
                f"{entry.vectors_path}: {len(failures)} vector(s) disagree with {entry.path}, "
                f"first on input {first.input}: expected {first.expected}, "
                f"got {first.observed}"
            )
    logger.debug("corpus entry %s: %d vector(s)", name, len(entry.vectors))
    return entry


def available(root: Optional[str] = None) -> List[str]:
    base = corpus_root(root)
    return [x for x in NAMES if os.path.isfile(os.path.join(base, x, f"{x}.alg"))]


def validate_all(
    root: Optional[str] = None, random_trials: int = 10, seed: int = 0
) -> VerifyReport:
    """Check every vector file, then compare random evaluations with the reference functions."""
    start = time.monotonic()
    report = VerifyReport("corpus", "all", seed=seed)
    rng = random.Random(seed)
    trial = 0
    for name in available(root):
        try:
            entry = get(name, root=root, validate=False)
            failures = entry.check_vectors()
        except Alg2CnfError as e:
            report.add_failure(Failure(trial, "", "", str(e), status=f"{name}:load"))
            trial += 1
            continue
        for failure in failures:
            failure.trial = trial
            trial += 1
            report.add_failure(failure)
        report.trials += len(entry.vectors)
        reference = REFERENCES[name]
        xs = [random_bits(rng, entry.input_width) for __ in range(random_trials)]
        for x, observed in zip(xs, run_concrete_batch(entry.program, xs)):
            expected = reference(x)
            if observed != expected:
                report.add_failure(
                    Failure(
                        trial,
                        bits_to_hex(x),
                        bits_to_hex(expected),
                        bits_to_hex(observed),
                        status=f"{name}:reference",
                    )
                )
            trial += 1
        report.trials += random_trials
    return report.finish(start)


def write_vectors(
    name: str, count: int = 4, seed: int = 0, root: Optional[str] = None, path: Optional[str] = None
) -> str:
    """Write `count` random vectors computed by the reference function of an entry."""
    entry = get(name, root=root, validate=False)
    rng = random.Random(seed)
    path = path or entry.vectors_path
    lines = [f"# {name}: input, output of the reference implementation (seed {seed})"]
    for __ in range(count):
        x = random_bits(rng, entry.input_width)
        lines.append(f"{bits_to_hex(x)} {bits_to_hex(REFERENCES[name](x))}")
    with open(ensure_dir(path), "w", encoding="utf-8") as fd:
        fd.write("\n".join(lines) + "\n")
    logger.info("%d vector(s) written to %s", count, path)
    return path


def block_bits(block: bytes) -> List[int]:
    return [(byte >> (7 - i)) & 1 for byte in block for i in range(8)]


def chaining_value(digest_bits: List[int]) -> List[int]:
    """IV cells of the next block from the digest bits of the previous one."""
    cells = []
    for w in range(CHAINING_WORDS):
        for k in range(32):
            cells.append(digest_bits[32 * w + 8 * (k // 8) + 7 - k % 8])
    return cells


def md_digest(name: str, message: bytes, root: Optional[str] = None) -> bytes:
    """Hash a whole message by chaining the compression program through its `IV` global.

    >>> md_digest("md5", b"").hex()
    'd41d8cd98f00b204e9800998ecf8427e'
    """
    if name not in ("md4", "md5"):
        raise CorpusError(f"'{name}' is not an iterated hash function")
    program = get(name, root=root, validate=False).program
    overrides = None
    output = []
    for block in md_pad(message):
        output = run_concrete_batch(program, [block_bits(block)], overrides)[0]
        overrides = {"IV": chaining_value(output)}
    return bytes(int("".join(map(str, output[i : i + 8])), 2) for i in range(0, len(output), 8))
