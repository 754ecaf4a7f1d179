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
"""Corpus of programs: the keystream generators and hash functions of the attacks, plus toys."""
from alg2cnf.corpus.registry import (
    NAMES,
    AttackProfile,
    CorpusEntry,
    corpus_root,
    get,
    md_digest,
    validate_all,
    write_vectors,
)

__all__ = [
    "NAMES",
    "AttackProfile",
    "CorpusEntry",
    "corpus_root",
    "get",
    "md_digest",
    "validate_all",
    "write_vectors",
]
