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
"""Lexer of the algorithm description language.

>>> [t.lexeme for t in tokenize("__in bit x;")]
['__in', 'bit', 'x', ';']
>>> [t.kind.name for t in tokenize("x = a & b;")]
['IDENT', 'OPERATOR', 'IDENT', 'OPERATOR', 'IDENT', 'PUNCT']
"""
import enum
import re
from dataclasses import dataclass
from typing import List, Tuple

from alg2cnf.checks import Error


class TokenKind(enum.Enum):
    IDENT = "identifier"
    KEYWORD = "keyword"
    INTEGER = "integer literal"
    OPERATOR = "operator"
    PUNCT = "punctuation"
    ERROR = "invalid character"


KEYWORDS = frozenset(
    {"bit", "int", "void", "if", "else", "for", "return", "__in", "__out", "while"}
)
TYPE_KEYWORDS = frozenset({"bit", "int", "void"})
ATTRIBUTE_KEYWORDS = frozenset({"__in", "__out"})
# longest first
OPERATORS = (
    "<<<", ">>>",
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "++", "--", "+=", "-=", "^=", "&=", "|=",
    "!", "~", "&", "|", "^", "+", "-", "*", "/", "%", "<", ">", "=", "?", ":",
)  # fmt: skip
PUNCTUATION = frozenset("(){}[];,")

_integer = re.compile(r"0[xX][0-9a-fA-F]+|0[bB][01]+|[0-9]+")
_identifier = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_space = re.compile(r"[ \t\r\f\v]+")


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    location: Tuple[int, int]

    def is_(self, *lexemes: str) -> bool:
        return self.kind is not TokenKind.ERROR and self.lexeme in lexemes


def parse_integer(lexeme: str) -> int:
    """Value of an integer literal.

    >>> parse_integer("0x1f"), parse_integer("0b101"), parse_integer("12")
    (31, 5, 12)
    """
    lowered = lexeme.lower()
    if lowered.startswith("0x"):
        return int(lowered[2:], 16)
    elif lowered.startswith("0b"):
        return int(lowered[2:], 2)
    return int(lowered, 10)


def tokenize(source: str) -> List[Token]:
    """Split the source into tokens; comments and blanks are dropped.

    Unknown characters and unterminated comments produce `ERROR` tokens; lexing never stops.
    """
    tokens = []
    line, line_start, pos = 1, 0, 0
    size = len(source)
    while pos < size:
        char = source[pos]
        column = pos - line_start + 1
        if char == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        match = _space.match(source, pos)
        if match:
            pos = match.end()
            continue
        if source.startswith("//", pos):
            end = source.find("\n", pos)
            pos = size if end < 0 else end
            continue
        if source.startswith("/*", pos):
            end = source.find("*/", pos + 2)
            if end < 0:
                tokens.append(Token(TokenKind.ERROR, source[pos : pos + 2], (line, column)))
                break
            comment = source[pos : end + 2]
            newlines = comment.count("\n")
            if newlines:
                line += newlines
                line_start = pos + comment.rfind("\n") + 1
            pos = end + 2
            continue
        match = _integer.match(source, pos)
        if match:
            end = match.end()
            if end < size and (source[end].isalnum() or source[end] == "_"):
                # like "12ab" or "0x"
                bad = _identifier.match(source, end)
                end = bad.end() if bad else end + 1
                tokens.append(Token(TokenKind.ERROR, source[pos:end], (line, column)))
            else:
                tokens.append(Token(TokenKind.INTEGER, match.group(), (line, column)))
            pos = end
            continue
        match = _identifier.match(source, pos)
        if match:
            word = match.group()
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, word, (line, column)))
            pos = match.end()
            continue
        if char in PUNCTUATION:
            tokens.append(Token(TokenKind.PUNCT, char, (line, column)))
            pos += 1
            continue
        for operator in OPERATORS:
            if source.startswith(operator, pos):
                tokens.append(Token(TokenKind.OPERATOR, operator, (line, column)))
                pos += len(operator)
                break
        else:
            tokens.append(Token(TokenKind.ERROR, char, (line, column)))
            pos += 1
    return tokens


def lexical_diagnostics(tokens: List[Token], filename: str = None) -> List[Error]:
    """One error per invalid token."""
    result = []
    for token in tokens:
        if token.kind is not TokenKind.ERROR:
            continue
        if token.lexeme == "/*":
            message = "unterminated comment"
        elif token.lexeme[:1].isdigit():
            message = f"invalid integer literal '{token.lexeme}'"
        else:
            message = f"invalid character '{token.lexeme}'"
        result.append(Error(message, location=token.location, filename=filename))
    return result
