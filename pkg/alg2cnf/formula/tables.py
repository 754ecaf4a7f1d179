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
"""Truth tables of Boolean functions, stored as Python integers.

Bit `r` of the table over `k` operands is the value of the function on the row where operand
`i` equals bit `i` of `r`.

>>> format(var_table(0, 2), "04b"), format(var_table(1, 2), "04b")
('1010', '1100')
>>> hex(MAJ3), hex(XOR3)
('0xe8', '0x96')
"""
from functools import lru_cache
from typing import Callable, List, Sequence

MAX_TABLE_ARITY = 16

AND2 = 0x8
OR2 = 0xE
XOR2 = 0x6
XOR3 = 0x96
MAJ3 = 0xE8


def full_table(k: int) -> int:
    """Table of the constant-1 function over `k` operands."""
    return (1 << (1 << k)) - 1


@lru_cache(maxsize=None)
def var_table(i: int, k: int) -> int:
    """Table of the projection on operand `i` among `k`."""
    period = 1 << (i + 1)
    block = ((1 << (1 << i)) - 1) << (1 << i)
    result = 0
    for start in range(0, 1 << k, period):
        result |= block << start
    return result


def table_from_function(k: int, function: Callable[..., int]) -> int:
    """Tabulate a Python function of `k` bits.

    >>> hex(table_from_function(3, lambda a, b, c: (a & b) | (a & c) | (b & c)))
    '0xe8'
    """
    table = 0
    for row in range(1 << k):
        if function(*[(row >> i) & 1 for i in range(k)]) & 1:
            table |= 1 << row
    return table


def table_value(table: int, row_bits: Sequence[int]) -> int:
    """Value of the table on one row, given as a list of operand values."""
    row = 0
    for i, bit in enumerate(row_bits):
        row |= (bit & 1) << i
    return (table >> row) & 1


def _insert_bit(row: int, position: int, bit: int) -> int:
    low = row & ((1 << position) - 1)
    return low | (bit << position) | ((row >> position) << (position + 1))


def cofactor(table: int, k: int, i: int, value: int) -> int:
    """Fix operand `i` to `value`; the result is a table over the `k - 1` other operands.

    >>> cofactor(AND2, 2, 0, 1), cofactor(AND2, 2, 0, 0)
    (2, 0)
    """
    result = 0
    for row in range(1 << (k - 1)):
        if (table >> _insert_bit(row, i, value)) & 1:
            result |= 1 << row
    return result


def depends_on(table: int, k: int, i: int) -> bool:
    """Return True if the function changes with operand `i`.

    >>> depends_on(0b1100, 2, 0), depends_on(0b1100, 2, 1)
    (False, True)
    """
    return cofactor(table, k, i, 0) != cofactor(table, k, i, 1)


def merge_operands(table: int, k: int, i: int, j: int) -> int:
    """Table over `k - 1` operands when operand `j` is known to equal operand `i` (`i < j`)."""
    result = 0
    for row in range(1 << (k - 1)):
        bit = (row >> i) & 1
        if (table >> _insert_bit(row, j, bit)) & 1:
            result |= 1 << row
    return result


def permute(table: int, k: int, order: Sequence[int]) -> int:
    """Reorder operands: new operand `j` is the old operand `order[j]`.

    >>> permute(0b0010, 2, [1, 0])
    4
    """
    result = 0
    for new_row in range(1 << k):
        old_row = 0
        for j, old in enumerate(order):
            old_row |= ((new_row >> j) & 1) << old
        if (table >> old_row) & 1:
            result |= 1 << new_row
    return result


def eval_table_masks(table: int, k: int, masks: List[int], width: int) -> int:
    """Evaluate a table on bit-parallel operand values (one lane per bit of the masks).

    >>> eval_table_masks(MAJ3, 3, [0b1100, 0b1010, 0b0110], 4)
    14
    """
    full = (1 << width) - 1
    return _shannon(table, k, masks, full)


def _shannon(table: int, k: int, masks: List[int], full: int) -> int:
    if table == 0:
        return 0
    if table == full_table(k):
        return full
    half = 1 << (k - 1)
    low = table & ((1 << half) - 1)
    high = table >> half
    selector = masks[k - 1]
    return (selector & _shannon(high, k - 1, masks, full)) | (
        (full ^ selector) & _shannon(low, k - 1, masks, full)
    )


def ones(table: int, k: int) -> List[int]:
    """Rows where the function is 1."""
    return [row for row in range(1 << k) if (table >> row) & 1]


@lru_cache(maxsize=None)
def parity_table(k: int) -> int:
    """Table of the XOR of `k` operands.

    >>> parity_table(3) == XOR3, parity_table(1) == var_table(0, 1)
    (True, True)
    """
    table = 0
    for i in range(k):
        table ^= var_table(i, k)
    return table
