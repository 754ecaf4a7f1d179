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
"""Embedded CDCL solver.

Two watched literals per clause, first-UIP learning with local minimization, activity-based
decisions (ties broken by the lowest variable), phase saving, Luby restarts and periodic
removal of half of the learnt clauses. Assumptions are decided first, in order; an UNSAT
answer under assumptions reports the failed ones.

Internally, variable `v` (DIMACS) has index `v - 1` and the literals `2 * (v - 1)` (true)
and `2 * (v - 1) + 1` (false).
"""
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from alg2cnf.solving.config import SolveConfig, SolveResult, Status, check_model

logger = logging.getLogger(__name__)

UNDEF = 2
TRUE = 1
FALSE = 0


def to_lit(dimacs: int) -> int:
    return 2 * (abs(dimacs) - 1) + (1 if dimacs < 0 else 0)


def to_dimacs(lit: int) -> int:
    var = (lit >> 1) + 1
    return -var if lit & 1 else var


def luby(y: float, x: int) -> float:
    """Term `x` of the Luby sequence with base `y`.

    >>> [int(luby(2, i)) for i in range(7)]
    [1, 1, 2, 1, 1, 2, 4]
    """
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x = x % size
    return y**seq


class _Clause:
    __slots__ = ("lits", "learnt", "activity", "removed")

    def __init__(self, lits: List[int], learnt: bool = False):
        self.lits = lits
        self.learnt = learnt
        self.activity = 0.0
        self.removed = False


class _VarOrder:
    """Binary heap of variables: input tier first, then highest activity, then lowest index."""

    def __init__(self, solver: "CdclSolver"):
        self.solver = solver
        self.heap = []  # type: List[int]
        self.index = [-1] * solver.var_count

    def __len__(self):
        return len(self.heap)

    def __contains__(self, v: int):
        return self.index[v] >= 0

    def less(self, x: int, y: int) -> bool:
        tier, activity = self.solver.tier, self.solver.activity
        if tier[x] != tier[y]:
            return tier[x] > tier[y]
        if activity[x] != activity[y]:
            return activity[x] > activity[y]
        return x < y

    def push(self, v: int):
        if self.index[v] < 0:
            self.index[v] = len(self.heap)
            self.heap.append(v)
            self.up(self.index[v])

    def pop(self) -> int:
        heap = self.heap
        top = heap[0]
        last = heap.pop()
        self.index[top] = -1
        if heap:
            heap[0] = last
            self.index[last] = 0
            self.down(0)
        return top

    def increased(self, v: int):
        if self.index[v] >= 0:
            self.up(self.index[v])

    def up(self, i: int):
        heap, index = self.heap, self.index
        v = heap[i]
        while i > 0:
            parent = (i - 1) >> 1
            if not self.less(v, heap[parent]):
                break
            heap[i] = heap[parent]
            index[heap[i]] = i
            i = parent
        heap[i] = v
        index[v] = i

    def down(self, i: int):
        heap, index = self.heap, self.index
        v = heap[i]
        size = len(heap)
        while True:
            child = 2 * i + 1
            if child >= size:
                break
            if child + 1 < size and self.less(heap[child + 1], heap[child]):
                child += 1
            if not self.less(heap[child], v):
                break
            heap[i] = heap[child]
            index[heap[i]] = i
            i = child
        heap[i] = v
        index[v] = i


@dataclass
class Propagation:
    """Fixpoint of unit propagation: the derived values, or a conflict."""

    conflict: bool
    # DIMACS variable -> value, for every assigned variable
    values: Dict[int, int] = field(default_factory=dict)

    def value(self, var: int) -> Optional[int]:
        return self.values.get(var)


class CdclSolver:
    def __init__(
        self,
        var_count: int,
        config: Optional[SolveConfig] = None,
        inputs: Iterable[int] = (),
        stop_event=None,
    ):
        self.config = config = config or SolveConfig()
        self.var_count = var_count
        self.stop_event = stop_event
        self.assigns = [UNDEF] * var_count
        # value of each literal
        self.vals = [UNDEF] * (2 * var_count)
        self.level = [0] * var_count
        self.reason = [None] * var_count  # type: List[Optional[_Clause]]
        self.activity = [0.0] * var_count
        self.tier = [0] * var_count
        self.is_input = [False] * var_count
        self.seen = [False] * var_count
        if config.seed:
            rng = random.Random(config.seed)
            self.phase = [rng.randint(0, 1) for __ in range(var_count)]
        else:
            self.phase = [FALSE] * var_count
        self.watches = [[] for __ in range(2 * var_count)]  # type: List[List[_Clause]]
        self.clauses = []  # type: List[_Clause]
        self.learnts = []  # type: List[_Clause]
        self.trail = []  # type: List[int]
        self.trail_lim = []  # type: List[int]
        self.qhead = 0
        self.ok = True
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.max_learnts = 0.0
        self.deadline = None  # type: Optional[float]
        self.stopped = ""
        self.assumptions = []  # type: List[int]
        self.next_poll = 0
        self.core = []  # type: List[int]
        self.decision_log = []  # type: List[int]
        self.stats = {
            "conflicts": 0,
            "decisions": 0,
            "propagations": 0,
            "restarts": 0,
            "learnts": 0,
        }
        for dimacs in inputs:
            v = dimacs - 1
            self.is_input[v] = True
            self.activity[v] = config.input_priority - 1.0
            if config.input_priority >= 2:
                self.tier[v] = 1
        self.order = _VarOrder(self)
        for v in range(var_count):
            self.order.push(v)

    # values
    def value(self, lit: int) -> int:
        return self.vals[lit]

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    def enqueue(self, lit: int, reason: Optional[_Clause] = None):
        v = lit >> 1
        self.assigns[v] = 1 ^ (lit & 1)
        self.vals[lit] = TRUE
        self.vals[lit ^ 1] = FALSE
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    # clauses
    def add_clause(self, dimacs: Iterable[int]) -> bool:
        """Add a clause at level 0; return False once the clauses are known to be UNSAT."""
        if not self.ok:
            return False
        lits = sorted({to_lit(x) for x in dimacs})
        kept = []
        for lit in lits:
            if lit ^ 1 in lits:
                return True
            value = self.value(lit)
            if value == TRUE:
                return True
            elif value == UNDEF:
                kept.append(lit)
        if not kept:
            self.ok = False
        elif len(kept) == 1:
            self.enqueue(kept[0])
            self.ok = self.propagate() is None
        else:
            clause = _Clause(kept)
            self.clauses.append(clause)
            self.attach(clause)
        return self.ok

    def attach(self, clause: _Clause):
        self.watches[clause.lits[0] ^ 1].append(clause)
        self.watches[clause.lits[1] ^ 1].append(clause)

    def locked(self, clause: _Clause) -> bool:
        first = clause.lits[0]
        return self.reason[first >> 1] is clause and self.value(first) == TRUE

    # activities
    def bump_var(self, v: int):
        self.activity[v] += self.var_inc * (
            self.config.input_priority if self.is_input[v] else 1.0
        )
        if self.activity[v] > 1e100:
            self.activity = [x * 1e-100 for x in self.activity]
            self.var_inc *= 1e-100
        self.order.increased(v)

    def bump_clause(self, clause: _Clause):
        clause.activity += self.cla_inc
        if clause.activity > 1e20:
            for learnt in self.learnts:
                learnt.activity *= 1e-20
            self.cla_inc *= 1e-20

    def decay(self):
        self.var_inc /= self.config.var_decay
        self.cla_inc /= self.config.clause_decay

    # search
    def propagate(self) -> Optional[_Clause]:
        conflict = None
        trail, watches, vals = self.trail, self.watches, self.vals
        assigns, level, reason = self.assigns, self.level, self.reason
        depth = len(self.trail_lim)
        start = self.qhead
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            false_lit = lit ^ 1
            ws = watches[lit]
            i = j = 0
            end = len(ws)
            while i < end:
                clause = ws[i]
                i += 1
                if clause.removed:
                    continue
                lits = clause.lits
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], false_lit
                first = lits[0]
                if vals[first] == TRUE:
                    ws[j] = clause
                    j += 1
                    continue
                for k in range(2, len(lits)):
                    if vals[lits[k]] != FALSE:
                        lits[1], lits[k] = lits[k], false_lit
                        watches[lits[1] ^ 1].append(clause)
                        break
                else:
                    ws[j] = clause
                    j += 1
                    if vals[first] == FALSE:
                        conflict = clause
                        self.qhead = len(trail)
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                    else:
                        v = first >> 1
                        assigns[v] = 1 ^ (first & 1)
                        vals[first] = TRUE
                        vals[first ^ 1] = FALSE
                        level[v] = depth
                        reason[v] = clause
                        trail.append(first)
            del ws[j:]
        self.stats["propagations"] += self.qhead - start
        return conflict

    def analyze(self, conflict: _Clause):
        """First-UIP learnt clause (asserting literal first) and its backjump level."""
        seen, level = self.seen, self.level
        current = self.decision_level
        learnt = [-1]
        pending = 0
        lit = -1
        index = len(self.trail) - 1
        clause = conflict
        while True:
            if clause.learnt:
                self.bump_clause(clause)
            for q in clause.lits[0 if lit < 0 else 1 :]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    self.bump_var(v)
                    seen[v] = True
                    if level[v] >= current:
                        pending += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[index] >> 1]:
                index -= 1
            lit = self.trail[index]
            index -= 1
            clause = self.reason[lit >> 1]
            seen[lit >> 1] = False
            pending -= 1
            if pending <= 0:
                break
        learnt[0] = lit ^ 1
        minimized = [learnt[0]]
        for q in learnt[1:]:
            reason = self.reason[q >> 1]
            if reason is None or any(
                not seen[x >> 1] and level[x >> 1] > 0 for x in reason.lits[1:]
            ):
                minimized.append(q)
        for q in learnt:
            seen[q >> 1] = False
        if len(minimized) == 1:
            return minimized, 0
        best = max(range(1, len(minimized)), key=lambda i: level[minimized[i] >> 1])
        minimized[1], minimized[best] = minimized[best], minimized[1]
        return minimized, level[minimized[1] >> 1]

    def analyze_final(self, lit: int) -> List[int]:
        """Assumptions responsible for the assumption `lit` being false."""
        core = [lit]
        if not self.trail_lim:
            return core
        seen = self.seen
        seen[lit >> 1] = True
        for i in range(len(self.trail) - 1, self.trail_lim[0] - 1, -1):
            q = self.trail[i]
            v = q >> 1
            if seen[v]:
                reason = self.reason[v]
                if reason is None:
                    core.append(q)
                else:
                    for x in reason.lits[1:]:
                        if self.level[x >> 1] > 0:
                            seen[x >> 1] = True
                seen[v] = False
        seen[lit >> 1] = False
        return core

    def cancel_until(self, level: int):
        if self.decision_level <= level:
            return
        start = self.trail_lim[level]
        for lit in reversed(self.trail[start:]):
            v = lit >> 1
            if self.config.phase_saving:
                self.phase[v] = self.assigns[v]
            self.assigns[v] = UNDEF
            self.vals[lit] = self.vals[lit ^ 1] = UNDEF
            self.reason[v] = None
            self.order.push(v)
        del self.trail[start:]
        del self.trail_lim[level:]
        self.qhead = start

    def pick_branch(self) -> Optional[int]:
        while len(self.order):
            v = self.order.pop()
            if self.assigns[v] == UNDEF:
                return 2 * v + (0 if self.phase[v] == TRUE else 1)
        return None

    def reduce_db(self):
        limit = self.cla_inc / max(len(self.learnts), 1)
        self.learnts.sort(key=lambda c: c.activity)
        half = len(self.learnts) // 2
        kept = []
        for i, clause in enumerate(self.learnts):
            if (
                len(clause.lits) > 2
                and not self.locked(clause)
                and (i < half or clause.activity < limit)
            ):
                clause.removed = True
            else:
                kept.append(clause)
        logger.debug("%d learnt clause(s) removed", len(self.learnts) - len(kept))
        self.learnts = kept

    def within_budget(self) -> bool:
        config = self.config
        if config.conflict_limit and self.stats["conflicts"] >= config.conflict_limit:
            self.stopped = "conflict-limit"
        elif self.deadline is not None and time.monotonic() >= self.deadline:
            self.stopped = "time-limit"
        elif self.stop_event is not None and self.stats["conflicts"] >= self.next_poll:
            # the event may live in another process
            self.next_poll = self.stats["conflicts"] + 64
            if self.stop_event.is_set():
                self.stopped = "interrupted"
        return not self.stopped

    def search(self, max_conflicts: int) -> int:
        conflicts = 0
        while True:
            conflict = self.propagate()
            if conflict is not None:
                self.stats["conflicts"] += 1
                conflicts += 1
                if not self.trail_lim:
                    return FALSE
                learnt, backjump = self.analyze(conflict)
                self.cancel_until(backjump)
                if len(learnt) == 1:
                    self.enqueue(learnt[0])
                else:
                    clause = _Clause(learnt, learnt=True)
                    self.learnts.append(clause)
                    self.stats["learnts"] += 1
                    self.attach(clause)
                    self.bump_clause(clause)
                    self.enqueue(learnt[0], clause)
                self.decay()
                continue
            if conflicts >= max_conflicts or not self.within_budget():
                self.cancel_until(0)
                return UNDEF
            if len(self.learnts) - len(self.trail) >= self.max_learnts:
                self.reduce_db()
            decision = None
            while self.decision_level < len(self.assumptions):
                lit = self.assumptions[self.decision_level]
                value = self.value(lit)
                if value == TRUE:
                    self.trail_lim.append(len(self.trail))
                elif value == FALSE:
                    self.core = self.analyze_final(lit)
                    return FALSE
                else:
                    decision = lit
                    break
            if decision is None:
                decision = self.pick_branch()
                if decision is None:
                    return TRUE
                self.stats["decisions"] += 1
                if len(self.decision_log) < self.config.decision_log:
                    self.decision_log.append(to_dimacs(decision))
            self.trail_lim.append(len(self.trail))
            self.enqueue(decision)

    def solve(self, assumptions: Sequence[int] = ()) -> SolveResult:
        start = time.monotonic()
        config = self.config
        self.assumptions = [to_lit(x) for x in assumptions]
        self.core = []
        self.stopped = ""
        self.deadline = start + config.time_limit if config.time_limit else None
        self.max_learnts = max(len(self.clauses) / 3.0, 100.0)
        status = FALSE if not self.ok else UNDEF
        restarts = 0
        while status == UNDEF:
            status = self.search(int(luby(2, restarts) * config.restart_base))
            if self.stopped:
                break
            restarts += 1
            self.max_learnts *= 1.1
        self.stats["restarts"] = restarts
        stats = dict(self.stats, wall_time=time.monotonic() - start)
        model = None
        if status == TRUE:
            model = [v + 1 if self.assigns[v] == TRUE else -(v + 1) for v in range(self.var_count)]
        self.cancel_until(0)
        if status == TRUE:
            return SolveResult(Status.SAT, model, stats=stats, decisions=self.decision_log)
        elif status == FALSE:
            core = [to_dimacs(x) for x in self.core]
            return SolveResult(Status.UNSAT, stats=stats, decisions=self.decision_log, core=core)
        return SolveResult(
            Status.UNKNOWN, reason=self.stopped, stats=stats, decisions=self.decision_log
        )


def load(instance, config: Optional[SolveConfig] = None, stop_event=None) -> CdclSolver:
    solver = CdclSolver(
        instance.var_count, config, inputs=instance.base.input_vars, stop_event=stop_event
    )
    for clause in instance.clauses:
        if not solver.add_clause(clause):
            break
    return solver


def solve(instance, config: Optional[SolveConfig] = None, stop_event=None) -> SolveResult:
    """Decide an instance under its assumptions; SAT models are checked before returning."""
    solver = load(instance, config, stop_event)
    result = solver.solve(instance.assumptions)
    if result.model is not None:
        check_model(instance, result.model, solver="cdcl")
    logger.info(
        "%s: %s after %d conflict(s), %d decision(s)",
        instance.name,
        result,
        result.stats["conflicts"],
        result.stats["decisions"],
    )
    return result


def propagate(instance, assumptions: Optional[Sequence[int]] = None) -> Propagation:
    """Unit propagation of the clauses and the assumptions, without any decision.

    The instance's own assumptions are used unless others are given.
    """
    solver = load(instance)
    if assumptions is None:
        assumptions = instance.assumptions
    conflict = not solver.ok
    for dimacs in assumptions:
        if conflict:
            break
        lit = to_lit(dimacs)
        value = solver.value(lit)
        if value == FALSE:
            conflict = True
        elif value == UNDEF:
            solver.trail_lim.append(len(solver.trail))
            solver.enqueue(lit)
            conflict = solver.propagate() is not None
    values = {(lit >> 1) + 1: 1 ^ (lit & 1) for lit in solver.trail}
    return Propagation(conflict, values)
