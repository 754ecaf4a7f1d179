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
"""Some utility functions."""
import argparse
import os
import random
from typing import List, Sequence, Set


def ensure_dir(path, parent=True):
    """Ensure that the given directory exists.

    :param path: the path to check
    :param parent: only ensure the existence of the parent directory

    """
    dirname = os.path.dirname(path) if parent else path
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    return path


def remove_arguments_from_help(parser: argparse.ArgumentParser, arguments: Set[str]):
    """Remove the arguments from help message."""
    # noinspection PyProtectedMember
    for action in parser._actions:
        if arguments & set(action.option_strings):
            action.help = argparse.SUPPRESS


def bits_to_int(bits: Sequence[int]) -> int:
    """Read a bit vector as an integer, the first bit being the most significant one.

    >>> bits_to_int([1, 0, 1])
    5
    """
    value = 0
    for bit in bits:
        value = (value << 1) | (bit & 1)
    return value


def int_to_bits(value: int, width: int) -> List[int]:
    """Inverse of :func:`bits_to_int`.

    >>> int_to_bits(5, 4)
    [0, 1, 0, 1]
    """
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


def bits_to_hex(bits: Sequence[int]) -> str:
    """Write a bit vector as MSB-first hexadecimal, right-aligned on ceil(n/4) digits.

    >>> bits_to_hex([1] + [0] * 15)
    '8000'
    >>> bits_to_hex([1, 1, 0])
    '6'
    >>> bits_to_hex([])
    ''
    """
    if not bits:
        return ""
    digits = (len(bits) + 3) // 4
    return format(bits_to_int(bits), "0%dx" % digits)


def hex_to_bits(text: str, width: int) -> List[int]:
    """Read a MSB-first hexadecimal value as a bit vector of the given width.

    >>> hex_to_bits("8000", 16)[:2]
    [1, 0]
    >>> hex_to_bits("0x6", 3)
    [1, 1, 0]
    """
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    text = text.replace("_", "")
    if not text:
        raise ValueError("empty hexadecimal value")
    value = int(text, 16)
    if value >> width:
        raise ValueError(f"value 0x{text} does not fit in {width} bits")
    return int_to_bits(value, width)


def random_bits(rng: random.Random, width: int) -> List[int]:
    """Draw a random bit vector."""
    if width == 0:
        return []
    return int_to_bits(rng.getrandbits(width), width)
