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
"""DIMACS files and their JSON variable maps.

The CNF header lists the inputs and outputs as comments (`c in <name> <var>` and
`c out <name> <var>`), so a DIMACS file can be decoded even without its map.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import IO, List, Optional, Tuple

from alg2cnf.cnf.clauses import Clause, TemplateCnf
from alg2cnf.exceptions import EncodingError
from alg2cnf.execution.base import TracePoint
from alg2cnf.utils import ensure_dir

logger = logging.getLogger(__name__)


def map_path_for(cnf_path: str) -> str:
    """Default path of the variable map of a DIMACS file.

    >>> map_path_for("out/t.cnf")
    'out/t.map'
    """
    return os.path.splitext(cnf_path)[0] + ".map"


def dimacs_text(template: TemplateCnf, comments: Optional[List[str]] = None) -> str:
    """DIMACS body with its header comments.

    >>> template = TemplateCnf("and2", 3, [(1, -3), (2, -3), (-1, -2, 3)])
    >>> template.inputs, template.outputs = [("a", 1), ("b", 2)], [("c", 3)]
    >>> print(dimacs_text(template), end="")
    c alg2cnf template and2
    c in a 1
    c in b 2
    c out c 3
    p cnf 3 3
    1 -3 0
    2 -3 0
    -1 -2 3 0
    """
    lines = [f"c alg2cnf template {template.name}"]
    lines += [f"c {x}" for x in comments or []]
    lines += [f"c in {name} {var}" for name, var in template.inputs]
    lines += [f"c out {name} {var}" for name, var in template.outputs]
    lines.append(f"p cnf {template.var_count} {len(template.clauses)}")
    lines += [" ".join(str(x) for x in clause) + " 0" for clause in template.clauses]
    return "\n".join(lines) + "\n"


def variable_map(template: TemplateCnf) -> dict:
    return {
        "name": template.name,
        "var_count": template.var_count,
        "clause_count": len(template.clauses),
        "inputs": dict(template.inputs),
        "outputs": dict(template.outputs),
        "trace": {str(point): var for point, var in template.trace.items()},
        "trace_constants": {
            str(point): value for point, value in template.trace_constants.items()
        },
        "shapes": {name: list(shape) for name, shape in template.shapes.items()},
    }


def emit_dimacs(
    template: TemplateCnf,
    cnf_path: str,
    map_path: Optional[str] = None,
    comments: Optional[List[str]] = None,
) -> Tuple[str, str]:
    """Write the DIMACS file and its variable map; return both paths."""
    map_path = map_path or map_path_for(cnf_path)
    try:
        with open(ensure_dir(cnf_path), "w") as fd:
            fd.write(dimacs_text(template, comments))
        with open(ensure_dir(map_path), "w") as fd:
            json.dump(variable_map(template), fd, indent=1)
            fd.write("\n")
    except OSError as e:
        raise EncodingError(f"cannot write {cnf_path}: {e}")
    logger.info("%s and %s written", cnf_path, map_path)
    return cnf_path, map_path


@dataclass
class DimacsFile:
    var_count: int = 0
    clauses: List[Clause] = field(default_factory=list)
    comments: List[str] = field(default_factory=list)


def parse_dimacs(fd: IO[str], name: str = "<dimacs>") -> DimacsFile:
    result = DimacsFile()
    header = None
    current = []
    for number, line in enumerate(fd, start=1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            result.comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            words = line.split()
            if len(words) != 4 or words[1] != "cnf":
                raise EncodingError(f"{name}:{number}: invalid problem line '{line}'")
            try:
                header = int(words[2]), int(words[3])
            except ValueError:
                raise EncodingError(f"{name}:{number}: invalid problem line '{line}'")
            continue
        if header is None:
            raise EncodingError(f"{name}:{number}: clause before the problem line")
        for word in line.split():
            try:
                lit = int(word)
            except ValueError:
                raise EncodingError(f"{name}:{number}: invalid literal '{word}'")
            if lit == 0:
                result.clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise EncodingError(f"{name}:{number}: variable {abs(lit)} out of range")
            else:
                current.append(lit)
    if header is None:
        raise EncodingError(f"{name}: missing problem line")
    if current:
        result.clauses.append(tuple(current))
    result.var_count = header[0]
    if len(result.clauses) != header[1]:
        logger.warning(
            "%s: %d clause(s) announced, %d found", name, header[1], len(result.clauses)
        )
    return result


def read_dimacs(path: str) -> DimacsFile:
    try:
        with open(path) as fd:
            return parse_dimacs(fd, name=path)
    except OSError as e:
        raise EncodingError(f"cannot read {path}: {e}")


def load_template(cnf_path: str, map_path: Optional[str] = None) -> TemplateCnf:
    """Read a DIMACS file back, with the variables of its map or of its header comments."""
    dimacs = read_dimacs(cnf_path)
    name = os.path.splitext(os.path.basename(cnf_path))[0]
    template = TemplateCnf(name=name, var_count=dimacs.var_count, clauses=dimacs.clauses)
    if map_path is None and os.path.isfile(map_path_for(cnf_path)):
        map_path = map_path_for(cnf_path)
    if map_path is not None:
        try:
            with open(map_path) as fd:
                content = json.load(fd)
        except (OSError, ValueError) as e:
            raise EncodingError(f"cannot read {map_path}: {e}")
        template.name = content.get("name", name)
        template.inputs = list(content.get("inputs", {}).items())
        template.outputs = list(content.get("outputs", {}).items())
        template.shapes = {k: tuple(v) for k, v in content.get("shapes", {}).items()}
        try:
            template.trace = {
                TracePoint.parse(k): v for k, v in content.get("trace", {}).items()
            }
            template.trace_constants = {
                TracePoint.parse(k): v for k, v in content.get("trace_constants", {}).items()
            }
        except ValueError as e:
            raise EncodingError(f"{map_path}: {e}")
    else:
        for comment in dimacs.comments:
            words = comment.split()
            if len(words) == 3 and words[0] in ("in", "out"):
                target = template.inputs if words[0] == "in" else template.outputs
                target.append((words[1], int(words[2])))
            elif len(words) == 3 and words[:2] == ["alg2cnf", "template"]:
                template.name = words[2]
    template.check()
    return template
