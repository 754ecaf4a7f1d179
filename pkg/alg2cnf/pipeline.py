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
"""From a program to its template CNF.

>>> from alg2cnf.lang.frontend import compile_source
>>> program = compile_source("__in bit a, b; __out bit c; void main() { c = a & b; }")
>>> encoding, template = translate(program)
>>> template.var_count, template.clauses
(3, [(1, -3), (2, -3), (-1, -2, 3)])
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from alg2cnf.cnf.clauses import TemplateCnf
from alg2cnf.cnf.tseitin import tseitinize
from alg2cnf.execution.base import Override
from alg2cnf.execution.symbolic import Encoding, execute
from alg2cnf.lang import ast
from alg2cnf.lang.frontend import compile_file

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TranslateConfig:
    fuse_limit: int = 6
    zero_init: bool = False
    prune: bool = True
    ite_extra: bool = False
    exact_limit: int = 8

    @classmethod
    def from_settings(cls, settings: Dict) -> "TranslateConfig":
        return cls(
            fuse_limit=settings.get("TRANSLATE_FUSE_LIMIT", cls.fuse_limit),
            zero_init=settings.get("TRANSLATE_ZERO_INIT", cls.zero_init),
            prune=settings.get("TRANSLATE_PRUNE", cls.prune),
            ite_extra=settings.get("TRANSLATE_ITE_EXTRA", cls.ite_extra),
            exact_limit=settings.get("MINIMIZE_EXACT_LIMIT", cls.exact_limit),
        )


def translate(
    program: ast.Program,
    config: Optional[TranslateConfig] = None,
    overrides: Optional[Dict[str, Override]] = None,
) -> Tuple[Encoding, TemplateCnf]:
    config = config or TranslateConfig()
    encoding = execute(
        program,
        fuse_limit=config.fuse_limit,
        zero_init=config.zero_init,
        overrides=overrides,
    )
    return encoding, tseitinize(encoding, config)


def translate_file(
    path: str,
    config: Optional[TranslateConfig] = None,
    overrides: Optional[Dict[str, Override]] = None,
    name: Optional[str] = None,
) -> Tuple[ast.Program, Encoding, TemplateCnf]:
    program = compile_file(path, name=name)
    encoding, template = translate(program, config, overrides)
    return program, encoding, template
