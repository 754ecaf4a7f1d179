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
"""Arithmetic of `int` service variables: 64-bit signed, wrapping, C division.

>>> int_binary("/", -7, 2), int_binary("%", -7, 2)
(-3, -1)
>>> int_binary("+", INT_MAX, 1) == INT_MIN
True
>>> int_binary("<", 1, 2), int_unary("!", 5)
(1, 0)
"""

INT_BITS = 64
INT_MAX = (1 << (INT_BITS - 1)) - 1
INT_MIN = -(1 << (INT_BITS - 1))
_MASK = (1 << INT_BITS) - 1


def wrap(value: int) -> int:
    value &= _MASK
    return value - (1 << INT_BITS) if value > INT_MAX else value


def c_div(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero")
    quotient = abs(a) // abs(b)
    return quotient if (a < 0) == (b < 0) else -quotient


def c_mod(a: int, b: int) -> int:
    return a - b * c_div(a, b)


def int_unary(op: str, a: int) -> int:
    if op == "-":
        return wrap(-a)
    elif op == "~":
        return wrap(~a)
    elif op == "!":
        return int(a == 0)
    raise ValueError(f"unknown unary operator '{op}'")


def int_binary(op: str, a: int, b: int) -> int:
    """Raise `ZeroDivisionError` or `ValueError` (negative shift) like a C compiler would warn."""
    if op == "+":
        return wrap(a + b)
    elif op == "-":
        return wrap(a - b)
    elif op == "*":
        return wrap(a * b)
    elif op == "/":
        return wrap(c_div(a, b))
    elif op == "%":
        return wrap(c_mod(a, b))
    elif op in ("<<", ">>"):
        if b < 0:
            raise ValueError(f"negative shift amount {b}")
        if op == "<<":
            return wrap(a << min(b, INT_BITS))
        return a >> min(b, INT_BITS)
    elif op == "&":
        return wrap(a & b)
    elif op == "|":
        return wrap(a | b)
    elif op == "^":
        return wrap(a ^ b)
    elif op == "&&":
        return int(bool(a) and bool(b))
    elif op == "||":
        return int(bool(a) or bool(b))
    elif op == "==":
        return int(a == b)
    elif op == "!=":
        return int(a != b)
    elif op == "<":
        return int(a < b)
    elif op == ">":
        return int(a > b)
    elif op == "<=":
        return int(a <= b)
    elif op == ">=":
        return int(a >= b)
    raise ValueError(f"unknown binary operator '{op}'")
