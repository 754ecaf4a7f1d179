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
"""Partitionings of an instance by the assignments of a decomposition set.

Each cube assigns every variable of the decomposition set; together with the instance it
forms an independent sub-instance, and the sub-instances of all cubes cover the instance.
"""
import logging
import random
from typing import IO, Iterable, Iterator, List, Optional, Sequence, Tuple

from alg2cnf.cnf.clauses import literal
from alg2cnf.exceptions import InstanceError
from alg2cnf.instances.instance import Instance, InputRef, resolve_inputs
from alg2cnf.utils import ensure_dir

logger = logging.getLogger(__name__)

Cube = Tuple[int, ...]

MAX_ENUMERATED_VARIABLES = 40


class CubeStream:
    """Lazy sequence of cubes over a decomposition set.

    In `enumerate` mode, the cubes come in lexicographic order of their values (the last
    variable changes first). In `sample` mode, `count` distinct cubes are drawn from a
    generator seeded with `seed`.

    >>> [list(x) for x in CubeStream([4, 7])]
    [[-4, -7], [-4, 7], [4, -7], [4, 7]]
    >>> CubeStream(list(range(1, 32))).count
    2147483648
    """

    def __init__(
        self,
        variables: Sequence[int],
        mode: str = "enumerate",
        count: Optional[int] = None,
        seed: int = 0,
    ):
        self.variables = list(variables)
        self.mode = mode
        self.seed = seed
        size = len(self.variables)
        if len(set(self.variables)) != size:
            raise InstanceError("the variables of a decomposition set must be distinct")
        if mode == "enumerate":
            if size > MAX_ENUMERATED_VARIABLES:
                raise InstanceError(
                    f"cannot enumerate the cubes of {size} variables "
                    f"(at most {MAX_ENUMERATED_VARIABLES})"
                )
            self.count = 1 << size
        elif mode == "sample":
            if count is None or not 0 <= count <= 1 << size:
                raise InstanceError(f"cannot sample {count} cube(s) over {size} variable(s)")
            self.count = count
        else:
            raise InstanceError(f"invalid partitioning mode '{mode}'")

    def __len__(self):
        return self.count

    def cube(self, value: int) -> Cube:
        """Cube of an assignment, the first variable being the most significant bit."""
        size = len(self.variables)
        return tuple(
            literal(var, (value >> (size - 1 - i)) & 1) for i, var in enumerate(self.variables)
        )

    def values(self) -> Iterator[int]:
        if self.mode == "enumerate":
            return iter(range(self.count))
        rng = random.Random(self.seed)
        size = len(self.variables)
        if size < 32 and 2 * self.count > 1 << size:
            return iter(rng.sample(range(1 << size), self.count))
        return self.draw(rng, size)

    def draw(self, rng: random.Random, size: int) -> Iterator[int]:
        """Distinct random values of `size` bits, for sparse samples of large sets."""
        seen = set()
        while len(seen) < self.count:
            value = rng.getrandbits(size)
            if value not in seen:
                seen.add(value)
                yield value

    def __iter__(self) -> Iterator[Cube]:
        for value in self.values():
            yield self.cube(value)


def partition(
    instance: Instance,
    refs: Sequence[InputRef],
    mode: str = "enumerate",
    count: Optional[int] = None,
    seed: int = 0,
) -> CubeStream:
    """Cubes over the decomposition set `refs` (input names or variable numbers)."""
    variables = resolve_inputs(instance.base, refs)
    fixed = {abs(x) for x in instance.assumptions}
    overlap = [x for x in variables if x in fixed]
    if overlap:
        logger.warning(
            "%s: %d decomposition variable(s) are already fixed", instance.name, len(overlap)
        )
    stream = CubeStream(variables, mode=mode, count=count, seed=seed)
    logger.info(
        "%s: %d cube(s) over %d variable(s)", instance.name, stream.count, len(variables)
    )
    return stream


def cube_instance(instance: Instance, cube: Sequence[int]) -> Instance:
    """The sub-instance of one cube."""
    return instance.extend(cube)


def read_decomposition(fd: IO[str]) -> List[InputRef]:
    """Input names or variable numbers separated by blanks; `#` starts a comment.

    >>> import io
    >>> read_decomposition(io.StringIO("1 2  # first\\nk[3]\\n"))
    [1, 2, 'k[3]']
    """
    refs = []
    for line in fd:
        for word in line.split("#", 1)[0].split():
            refs.append(int(word) if word.isdigit() else word)
    return refs


def write_cubes(cubes: Iterable, path: str) -> int:
    """Write cubes as iCNF `a <lits> 0` lines, return the number of cubes."""
    count = 0
    with open(ensure_dir(path), "w") as fd:
        for cube in cubes:
            fd.write("a " + " ".join(str(x) for x in cube) + " 0\n")
            count += 1
    return count


def parse_cubes(fd: IO[str], name: str = "<cubes>") -> List[Cube]:
    cubes = []
    for number, line in enumerate(fd, start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        words = line.split()
        if words[0] != "a" or words[-1] != "0":
            raise InstanceError(f"invalid cube line '{line}'", filename=name, line=number)
        try:
            cubes.append(tuple(int(x) for x in words[1:-1]))
        except ValueError:
            raise InstanceError(f"invalid cube line '{line}'", filename=name, line=number)
    return cubes


def read_cubes(path: str) -> List[Cube]:
    try:
        with open(path) as fd:
            return parse_cubes(fd, name=path)
    except OSError as e:
        raise InstanceError(f"cannot read {path}: {e.strerror or e}")
