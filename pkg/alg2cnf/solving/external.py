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
"""External solvers: DIMACS solver commands and in-process PySAT solvers.

A command is split like a shell command line; the path of the DIMACS file replaces a `{}`
argument or is appended. `pysat:<name>` (for example `pysat:cadical153`) runs the PySAT
solver of that name in process, with the assumptions of the instance.
"""
import logging
import os
import shlex
import subprocess
import tempfile
import threading
import time
from typing import List, Optional, Tuple

from alg2cnf.cnf.dimacs import dimacs_text
from alg2cnf.exceptions import SolverError
from alg2cnf.solving.config import (
    EXIT_SAT,
    EXIT_UNSAT,
    SolveConfig,
    SolveResult,
    Status,
    check_model,
    complete_model,
)

logger = logging.getLogger(__name__)

PYSAT_PREFIX = "pysat:"
POLL_INTERVAL = 0.1


def parse_solver_output(text: str) -> Tuple[Optional[Status], List[int]]:
    """Status and model literals from SAT competition output.

    >>> parse_solver_output("c hello\\ns SATISFIABLE\\nv 1 -2\\nv 3 0\\n")
    (<Status.SAT: 'SATISFIABLE'>, [1, -2, 3])
    """
    status = None
    literals = []
    for line in text.splitlines():
        words = line.split()
        if not words:
            continue
        if words[0] == "s" and len(words) > 1:
            status = {
                "SATISFIABLE": Status.SAT,
                "UNSATISFIABLE": Status.UNSAT,
                "UNKNOWN": Status.UNKNOWN,
            }.get(words[1].upper())
        elif words[0] == "v":
            for word in words[1:]:
                try:
                    lit = int(word)
                except ValueError:
                    continue
                if lit:
                    literals.append(lit)
    return status, literals


def command_arguments(command: str, path: str) -> List[str]:
    """
    >>> command_arguments("kissat -q", "a.cnf"), command_arguments("s {} --x", "a.cnf")
    (['kissat', '-q', 'a.cnf'], ['s', 'a.cnf', '--x'])
    """
    arguments = shlex.split(command)
    if not arguments:
        raise SolverError("empty solver command")
    if "{}" in arguments:
        return [path if x == "{}" else x for x in arguments]
    return arguments + [path]


def run_command(
    arguments: List[str], time_limit: Optional[float] = None, stop_event=None
) -> Tuple[Optional[subprocess.CompletedProcess], str]:
    """Run a solver command, killed after `time_limit` seconds or once `stop_event` is set.

    Returns the finished process, or `None` and the reason it was killed.
    """
    deadline = time.monotonic() + time_limit if time_limit else None
    process = subprocess.Popen(
        arguments, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True
    )
    with process:
        while True:
            try:
                stdout, stderr = process.communicate(timeout=POLL_INTERVAL)
            except subprocess.TimeoutExpired:
                pass
            else:
                return (
                    subprocess.CompletedProcess(arguments, process.returncode, stdout, stderr),
                    "",
                )
            if stop_event is not None and stop_event.is_set():
                reason = "interrupted"
            elif deadline is not None and time.monotonic() >= deadline:
                reason = "timeout"
            else:
                continue
            process.kill()
            process.communicate()
            return None, reason


def solve_external(
    instance, command: str, config: Optional[SolveConfig] = None, stop_event=None
) -> SolveResult:
    """Run an external solver on the instance (assumptions folded as unit clauses).

    A set `stop_event` kills the solver process, as in the workers of a partitioning.
    """
    config = config or SolveConfig()
    if command.startswith(PYSAT_PREFIX):
        return solve_pysat(instance, command[len(PYSAT_PREFIX) :], config, stop_event)
    start = time.monotonic()
    with tempfile.TemporaryDirectory(prefix="alg2cnf-") as dirname:
        path = os.path.join(dirname, "instance.cnf")
        with open(path, "w") as fd:
            fd.write(dimacs_text(instance.folded()))
        arguments = command_arguments(command, path)
        logger.info("running %s", " ".join(arguments))
        try:
            process, reason = run_command(arguments, config.time_limit, stop_event)
        except OSError as e:
            raise SolverError(f"cannot run '{command}': {e.strerror or e}")
    if process is None:
        return SolveResult(
            Status.UNKNOWN,
            reason=reason,
            stats={"wall_time": time.monotonic() - start},
            solver=command,
        )
    stats = {"wall_time": time.monotonic() - start, "exit_code": process.returncode}
    status, literals = parse_solver_output(process.stdout)
    if status is None and process.returncode == EXIT_UNSAT:
        status = Status.UNSAT
    if status is None or status is Status.UNKNOWN:
        if process.stderr:
            logger.warning("%s: %s", command, process.stderr.strip().splitlines()[-1])
        reason = "unknown" if status is Status.UNKNOWN else "external-failure"
        return SolveResult(Status.UNKNOWN, reason=reason, stats=stats, solver=command)
    if status is Status.UNSAT:
        return SolveResult(Status.UNSAT, stats=stats, solver=command)
    if process.returncode not in (0, EXIT_SAT):
        logger.warning("%s: SAT answer with exit code %d", command, process.returncode)
    model = complete_model(literals, instance.var_count)
    check_model(instance, model, solver=command)
    return SolveResult(Status.SAT, model, stats=stats, solver=command)


def watch(solver, time_limit: Optional[float], stop_event, done: threading.Event):
    """Interrupt `solver` after the time limit or once `stop_event` is set."""
    deadline = time.monotonic() + time_limit if time_limit else None
    while not done.wait(POLL_INTERVAL):
        expired = deadline is not None and time.monotonic() >= deadline
        if expired or (stop_event is not None and stop_event.is_set()):
            solver.interrupt()
            return


def solve_pysat(
    instance, name: str, config: Optional[SolveConfig] = None, stop_event=None
) -> SolveResult:
    """Run a PySAT solver, interrupted after the time limit or by `stop_event`."""
    from pysat.solvers import Solver

    config = config or SolveConfig()
    start = time.monotonic()
    try:
        solver = Solver(name=name, bootstrap_with=instance.clauses)
    except (NotImplementedError, ValueError) as e:
        raise SolverError(f"cannot create the PySAT solver '{name}': {e}")
    done = threading.Event()
    watcher = None
    try:
        if config.time_limit or stop_event is not None:
            watcher = threading.Thread(
                target=watch, args=(solver, config.time_limit, stop_event, done), daemon=True
            )
            watcher.start()
        answer = solver.solve_limited(
            assumptions=list(instance.assumptions), expect_interrupt=True
        )
        literals = solver.get_model() if answer else None
        core = solver.get_core() if answer is False else None
        accumulated = solver.accum_stats() or {}
    finally:
        done.set()
        if watcher is not None:
            watcher.join()
        solver.delete()
    stats = {
        key: accumulated.get(key, 0)
        for key in ("conflicts", "decisions", "propagations", "restarts")
    }
    stats["wall_time"] = time.monotonic() - start
    label = PYSAT_PREFIX + name
    if answer is None:
        reason = "interrupted" if stop_event is not None and stop_event.is_set() else "timeout"
        return SolveResult(Status.UNKNOWN, reason=reason, stats=stats, solver=label)
    if not answer:
        return SolveResult(Status.UNSAT, stats=stats, core=list(core or []), solver=label)
    model = complete_model(literals or [], instance.var_count)
    check_model(instance, model, solver=label)
    return SolveResult(Status.SAT, model, stats=stats, solver=label)
