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
"""Solving the sub-instances of a partitioning, sequentially or in a process pool.

The first SAT cube stops the search: the pending cubes are cancelled and the running workers
see the shared stop event at their next poll.
"""
import logging
import multiprocessing
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from alg2cnf.instances.instance import Instance
from alg2cnf.instances.partition import cube_instance
from alg2cnf.solving.cdcl import solve
from alg2cnf.solving.config import EXIT_SAT, EXIT_UNSAT, SolveConfig, SolveResult, Status
from alg2cnf.solving.external import solve_external

logger = logging.getLogger(__name__)

# set in every worker process by :func:`_init_worker`
_worker = {}  # type: Dict


@dataclass
class CubeReport:
    """Outcome of a partitioning: the first SAT cube, or the counts of every status.

    Only the counts and the first SAT cube are kept, so arbitrarily long cube streams run
    in constant memory.
    """

    status: Status
    result: Optional[SolveResult] = None
    cube: Optional[Tuple[int, ...]] = None
    counts: Dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def exit_code(self) -> int:
        return {Status.SAT: EXIT_SAT, Status.UNSAT: EXIT_UNSAT}.get(self.status, 0)

    @property
    def solved(self) -> int:
        """Number of cubes with a result."""
        return sum(self.counts.values())

    def record(self, cube: Tuple[int, ...], result: SolveResult):
        self.counts[result.status.name] = self.counts.get(result.status.name, 0) + 1
        if result.status is Status.SAT and self.result is None:
            self.cube, self.result = cube, result

    def finish(self, start: float) -> "CubeReport":
        if self.result is not None:
            self.status = Status.SAT
        elif self.counts and set(self.counts) == {Status.UNSAT.name}:
            self.status = Status.UNSAT
        else:
            self.status = Status.UNKNOWN
        self.wall_time = time.monotonic() - start
        return self

    def stat_lines(self) -> List[str]:
        lines = [f"status={self.status.name}"]
        lines += [f"cubes_{key.lower()}={value}" for key, value in sorted(self.counts.items())]
        lines.append(f"wall_time={self.wall_time:.3f}")
        if self.cube is not None:
            lines.append("cube=" + " ".join(str(x) for x in self.cube))
        return lines


def solve_one(
    instance: Instance, cube: Sequence[int], config: SolveConfig, stop_event=None
) -> SolveResult:
    sub_instance = cube_instance(instance, cube)
    if config.external:
        return solve_external(sub_instance, config.external, config, stop_event=stop_event)
    return solve(sub_instance, config, stop_event=stop_event)


def _init_worker(instance: Instance, config: SolveConfig, stop_event):
    _worker.update(instance=instance, config=config, stop_event=stop_event)


def _solve_in_worker(cube: Tuple[int, ...]) -> Tuple[Tuple[int, ...], SolveResult]:
    stop_event = _worker["stop_event"]
    if stop_event.is_set():
        return cube, SolveResult(Status.UNKNOWN, reason="interrupted")
    result = solve_one(_worker["instance"], cube, _worker["config"], stop_event)
    return cube, result


def solve_cubes(
    instance: Instance,
    cubes: Iterable[Sequence[int]],
    config: Optional[SolveConfig] = None,
    jobs: Optional[int] = None,
    on_result: Optional[Callable[[Tuple[int, ...], SolveResult], None]] = None,
) -> CubeReport:
    """Solve the sub-instance of every cube until one is SAT.

    The partitioning is UNSAT when every cube is UNSAT. `on_result` is called with each
    cube and its result, as they arrive.
    """
    config = config or SolveConfig()
    jobs = jobs or config.jobs
    start = time.monotonic()
    report = CubeReport(Status.UNKNOWN)

    def record(cube, result):
        report.record(cube, result)
        if on_result is not None:
            on_result(cube, result)

    if jobs == 1:
        for cube in cubes:
            cube = tuple(cube)
            result = solve_one(instance, cube, config)
            record(cube, result)
            logger.debug("cube %s: %s", " ".join(str(x) for x in cube), result)
            if result.status is Status.SAT:
                break
        return report.finish(start)
    with multiprocessing.Manager() as manager:
        stop_event = manager.Event()
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(instance, config, stop_event),
        ) as executor:
            pending = set()
            iterator = iter(cubes)
            exhausted = False
            while True:
                while not exhausted and len(pending) < 2 * jobs:
                    cube = next(iterator, None)
                    if cube is None:
                        exhausted = True
                    else:
                        pending.add(executor.submit(_solve_in_worker, tuple(cube)))
                if not pending:
                    break
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in done:
                    if future.cancelled():
                        continue
                    cube, result = future.result()
                    record(cube, result)
                    if result.status is Status.SAT and not stop_event.is_set():
                        stop_event.set()
                        exhausted = True
                        for other in pending:
                            other.cancel()
    report.finish(start)
    logger.info(
        "%s: %s after %d cube(s) with %d job(s)",
        instance.name,
        report.status.name,
        report.solved,
        jobs,
    )
    return report
