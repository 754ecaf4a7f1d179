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
"""Two-level minimization of truth tables.

Tables up to `exact_limit` operands get a minimum cover: Quine-McCluskey prime implicants and
an exact branch-and-bound cover selection. Wider tables get a greedy cover of expanded cubes.

A cube is a pair `(mask, value)`: operand `i` is fixed to bit `i` of `value` when bit `i` of
`mask` is set, and free otherwise.

>>> str(minimize_cover(0xE8, 3))
'11- 1-1 -11'
>>> str(minimize_cover(0x6, 2))
'10 01'
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from alg2cnf.exceptions import EncodingError
from alg2cnf.formula import tables

logger = logging.getLogger(__name__)

Cube = Tuple[int, int]

DEFAULT_EXACT_LIMIT = 8
# nodes of the exact cover search before settling for the best cover found so far
SEARCH_BUDGET = 200000


@dataclass
class Cover:
    """Sum of cubes over `k` operands, equal to the table (polarity 1) or its complement."""

    k: int
    cubes: List[Cube] = field(default_factory=list)
    polarity: int = 1
    exact: bool = True

    def __str__(self):
        return " ".join(cube_str(cube, self.k) for cube in self.cubes)

    @property
    def literal_count(self) -> int:
        return sum(bin(mask).count("1") for mask, __ in self.cubes)

    def table(self) -> int:
        """Truth table of the sum of cubes (before applying the polarity)."""
        result = 0
        for cube in self.cubes:
            result |= cube_rows(cube, self.k)
        return result


def cube_str(cube: Cube, k: int) -> str:
    """One character per operand, operand 0 first.

    >>> cube_str((0b011, 0b001), 3)
    '10-'
    """
    mask, value = cube
    return "".join(
        "-" if not (mask >> i) & 1 else str((value >> i) & 1) for i in range(k)
    )


def _cube_key(cube: Cube) -> Tuple[int, int, int]:
    return bin(cube[0]).count("1"), cube[0], cube[1]


@lru_cache(maxsize=4096)
def cube_rows(cube: Cube, k: int) -> int:
    """Table of the rows covered by a cube."""
    mask, value = cube
    full = tables.full_table(k)
    rows = full
    for i in range(k):
        if (mask >> i) & 1:
            selector = tables.var_table(i, k)
            rows &= selector if (value >> i) & 1 else full ^ selector
    return rows


def prime_implicants(table: int, k: int) -> List[Cube]:
    """All prime implicants of the table (Quine-McCluskey)."""
    full_mask = (1 << k) - 1
    current = {(full_mask, row) for row in tables.ones(table, k)}
    primes = set()
    while current:
        merged = set()
        used = set()
        for mask, value in current:
            for i in range(k):
                bit = 1 << i
                if not mask & bit or value & bit:
                    continue
                partner = (mask, value | bit)
                if partner in current:
                    merged.add((mask & ~bit, value))
                    used.add((mask, value))
                    used.add(partner)
        primes |= current - used
        current = merged
    return sorted(primes, key=_cube_key)


def exact_cover(table: int, k: int, primes: List[Cube]) -> Tuple[List[Cube], bool]:
    """Minimum number of primes covering the table, fewest literals on ties.

    Returns the cover and whether the search completed within :data:`SEARCH_BUDGET`.
    """
    rows = {cube: cube_rows(cube, k) for cube in primes}
    best = [None]  # type: List[Optional[List[Cube]]]
    budget = [SEARCH_BUDGET]

    def cost(cover: List[Cube]) -> Tuple[int, int]:
        return len(cover), sum(bin(mask).count("1") for mask, __ in cover)

    def search(uncovered: int, candidates: List[Cube], chosen: List[Cube]):
        budget[0] -= 1
        if uncovered == 0:
            if best[0] is None or cost(chosen) < cost(best[0]):
                best[0] = list(chosen)
            return
        if best[0] is not None and len(chosen) + 1 > len(best[0]):
            return
        if budget[0] < 0 and best[0] is not None:
            return
        # row covered by the fewest candidates
        covering = None
        remaining = uncovered
        while remaining:
            row = remaining & -remaining
            remaining ^= row
            options = [cube for cube in candidates if rows[cube] & row]
            if covering is None or len(options) < len(covering):
                covering = options
                if len(options) <= 1:
                    break
        if not covering:
            return
        covering.sort(
            key=lambda cube: (-bin(rows[cube] & uncovered).count("1"), _cube_key(cube))
        )
        for cube in covering:
            others = [x for x in candidates if x != cube and rows[x] & uncovered & ~rows[cube]]
            chosen.append(cube)
            search(uncovered & ~rows[cube], others, chosen)
            chosen.pop()

    search(table, list(primes), [])
    return sorted(best[0] or [], key=_cube_key), budget[0] >= 0


def greedy_cover(table: int, k: int) -> List[Cube]:
    """Cover by cubes expanded from uncovered rows, then made irredundant."""
    full_mask = (1 << k) - 1
    uncovered = table
    cubes = []
    while uncovered:
        row = (uncovered & -uncovered).bit_length() - 1
        cube = (full_mask, row)
        for i in range(k):
            bit = 1 << i
            candidate = (cube[0] & ~bit, cube[1] & ~bit)
            if cube_rows(candidate, k) & ~table == 0:
                cube = candidate
        cubes.append(cube)
        uncovered &= ~cube_rows(cube, k)
    kept = list(cubes)
    for cube in sorted(cubes, key=lambda x: -bin(x[0]).count("1")):
        others = 0
        for other in kept:
            if other != cube:
                others |= cube_rows(other, k)
        if cube_rows(cube, k) & ~others == 0:
            kept.remove(cube)
    return sorted(kept, key=_cube_key)


def minimize_cover(
    table: int, k: int, exact_limit: int = DEFAULT_EXACT_LIMIT, polarity: int = 1
) -> Cover:
    """Cover of the table (polarity 1) or of its complement (polarity 0)."""
    if not 0 <= k <= tables.MAX_TABLE_ARITY:
        raise EncodingError(f"cannot minimize a table over {k} operands")
    if polarity == 0:
        table ^= tables.full_table(k)
    if table == 0:
        return Cover(k, [], polarity, exact=k <= exact_limit)
    if k <= exact_limit:
        cubes, exact = exact_cover(table, k, prime_implicants(table, k))
        if not exact:
            logger.debug("cover search of %#x over %d operands stopped early", table, k)
    else:
        cubes, exact = greedy_cover(table, k), False
    return Cover(k, cubes, polarity, exact)


def covers(table: int, k: int, exact_limit: int = DEFAULT_EXACT_LIMIT) -> Tuple[Cover, Cover]:
    """ON-set and OFF-set covers of a table."""
    return (
        minimize_cover(table, k, exact_limit, polarity=1),
        minimize_cover(table, k, exact_limit, polarity=0),
    )


def cover_summary(items: Iterable[Cover]) -> Dict[str, int]:
    items = list(items)
    return {
        "covers": len(items),
        "cubes": sum(len(x.cubes) for x in items),
        "inexact": sum(1 for x in items if not x.exact),
    }
