"""Exact brute-force deciders for landmark and order properties.

Every decider reduces a universally quantified statement over action
sequences to a finite reachability search, sometimes over states tagged with
one or two monotone flags.  The reductions:

* landmark: L is a landmark iff the goal is unreachable inside the subspace
  of states not containing L (a goal-reaching path in that subspace is
  exactly a solution on which L is never true).
* necessary order: holds iff lp is not initial and every reachable
  transition into a state containing lp starts from a state containing l
  (prefixes of sequences are sequences, so per-transition checking covers
  every quantified sequence).
* greedy necessary order: same check restricted to transitions leaving the
  "lp never true yet" subspace (paths with lp false everywhere are exactly
  the first-achievement prefixes).
* reasonable order: the achieved-before set S is found inside the l-free
  subspace as targets of lp-adding transitions; the aftermath is refuted by
  a goal-reaching path from some s in S carrying flags (l seen at step >= 1,
  lp seen at-or-after the first l); the deletion requirement is refuted by
  reaching l from some s in S using only actions that never delete lp.
* inconsistency: no enumerated state contains both facts.

Caps are hard: exceeding one raises CapExceeded rather than truncating.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import PlanningError, Task, bits

DEFAULT_STATE_CAP = 200_000


class CapExceeded(PlanningError):
    def __init__(self, cap: int):
        super().__init__(f"state cap of {cap} exceeded")
        self.cap = cap


@dataclass(frozen=True)
class StateSpace:
    """Reachable states (deduplicated) plus every transition among them."""

    states: tuple[int, ...]
    transitions: tuple[tuple[int, int, int], ...]  # (state, action id, state)
    cap: int

    def __len__(self) -> int:
        return len(self.states)


def _closure(task: Task, start: int, cap: int, forbid_bit: int = 0,
             action_ok=None) -> dict[int, None]:
    """BFS closure of ``start``; states containing ``forbid_bit`` are never
    entered (the start must not contain it), actions failing ``action_ok``
    are never applied.  Returns states in discovery order."""
    if start & forbid_bit:
        raise PlanningError("start state violates the subspace restriction")
    acts = [(a.id, a.pre, a.add, a.delete) for a in task.actions
            if action_ok is None or action_ok(a)]
    seen: dict[int, None] = {start: None}
    frontier = [start]
    while frontier:
        nxt: list[int] = []
        for s in frontier:
            for _, pre, add, dele in acts:
                if s & pre != pre:
                    continue
                t = (s | add) & ~dele
                if t & forbid_bit or t in seen:
                    continue
                if len(seen) >= cap:
                    raise CapExceeded(cap)
                seen[t] = None
                nxt.append(t)
        frontier = nxt
    return seen


def enumerate_states(task: Task, cap: int = DEFAULT_STATE_CAP) -> StateSpace:
    """Full reachable state space with transitions."""
    seen = _closure(task, task.init, cap)
    acts = [(a.id, a.pre, a.add, a.delete) for a in task.actions]
    transitions = []
    for s in seen:
        for aid, pre, add, dele in acts:
            if s & pre == pre:
                transitions.append((s, aid, (s | add) & ~dele))
    return StateSpace(tuple(seen), tuple(transitions), cap)


def co_occurrence(space: StateSpace, num_facts: int) -> list[int]:
    """per-fact mask of facts that co-occur with it in some state."""
    co = [0] * num_facts
    for s in space.states:
        for f in bits(s):
            co[f] |= s
    return co


def task_solvable(task: Task, cap: int = DEFAULT_STATE_CAP,
                  space: Optional[StateSpace] = None) -> bool:
    goal = task.goal
    if space is not None:
        return any(s & goal == goal for s in space.states)
    seen = _closure(task, task.init, cap)
    return any(s & goal == goal for s in seen)


# ---------------------------------------------------------------------------
# Landmarks and necessary orders
# ---------------------------------------------------------------------------

def oracle_landmark(task: Task, fact_id: int, cap: int = DEFAULT_STATE_CAP,
                    space: Optional[StateSpace] = None) -> bool:
    """Exact landmark test; on an unsolvable task every fact qualifies (the
    quantification is over no solutions), reported with a warning."""
    if not task_solvable(task, cap, space):
        warnings.warn("task is unsolvable: every fact is vacuously a landmark")
        return True
    fbit = 1 << fact_id
    if (task.init | task.goal) & fbit:
        return True
    goal = task.goal
    seen = _closure(task, task.init, cap, forbid_bit=fbit)
    return not any(s & goal == goal for s in seen)


def oracle_n(task: Task, l: int, lp: int, cap: int = DEFAULT_STATE_CAP,
             space: Optional[StateSpace] = None) -> bool:
    if task.init >> lp & 1:
        return False
    if space is None:
        space = enumerate_states(task, cap)
    lbit, lpbit = 1 << l, 1 << lp
    return all(s & lbit for s, _, t in space.transitions if t & lpbit)


def first_achiever_pre_mask(task: Task, lp: int, cap: int = DEFAULT_STATE_CAP) -> int:
    """AND over the source states of every first-achieving transition of lp.

    All-ones when lp can never be newly achieved (vacuous case)."""
    lpbit = 1 << lp
    universe = (1 << task.num_facts) - 1
    if task.init & lpbit:
        raise PlanningError("fact is initially true; no first achievement")
    seen = _closure(task, task.init, cap, forbid_bit=lpbit)
    acts = [(a.pre, a.add, a.delete) for a in task.actions]
    acc = universe
    for s in seen:
        for pre, add, dele in acts:
            if s & pre == pre and ((s | add) & ~dele) & lpbit:
                acc &= s
    return acc


def oracle_gn(task: Task, l: int, lp: int, cap: int = DEFAULT_STATE_CAP) -> bool:
    if task.init >> lp & 1:
        return False
    return bool(first_achiever_pre_mask(task, lp, cap) >> l & 1)


# ---------------------------------------------------------------------------
# Reasonable orders
# ---------------------------------------------------------------------------

class ReasonableReport(NamedTuple):
    holds: bool
    vacuous: bool  # no state achieves lp before l; both conditions empty


def _achieved_before_states(task: Task, l: int, lp: int, cap: int) -> list[int]:
    """States whose generating path never had l true and whose last action
    added lp (the quantification base of the reasonable-order test)."""
    lbit, lpbit = 1 << l, 1 << lp
    if task.init & lbit:
        return []
    seen = _closure(task, task.init, cap, forbid_bit=lbit)
    acts = [(a.pre, a.add, a.delete) for a in task.actions]
    out: dict[int, None] = {}
    for s in seen:
        for pre, add, dele in acts:
            if s & pre != pre or not add & lpbit:
                continue
            t = (s | add) & ~dele
            if not t & lbit:
                out[t] = None
    return list(out)


def _aftermath_violated_from(task: Task, start: int, l: int, lp: int, cap: int) -> bool:
    """Search for a solution from ``start`` on which it is not the case that
    l holds at some step i >= 1 and lp at some step j >= i."""
    lbit, lpbit = 1 << l, 1 << lp
    goal = task.goal
    acts = [(a.pre, a.add, a.delete) for a in task.actions]
    # flags: l seen at step >= 1; lp seen at-or-after the first such l
    init_node = (start, False, False)
    if start & goal == goal:
        return True  # empty solution plan: nothing achieves l at i >= 1
    seen = {init_node}
    frontier = [init_node]
    while frontier:
        nxt = []
        for s, seen_l, satisfied in frontier:
            for pre, add, dele in acts:
                if s & pre != pre:
                    continue
                t = (s | add) & ~dele
                n_l = seen_l or bool(t & lbit)
                n_sat = satisfied or (bool(t & lpbit) and n_l)
                node = (t, n_l, n_sat)
                if node in seen:
                    continue
                if len(seen) >= 3 * cap:
                    raise CapExceeded(cap)
                if t & goal == goal and not n_sat:
                    return True
                seen.add(node)
                nxt.append(node)
        frontier = nxt
    return False


def _deletion_violated_from(task: Task, start: int, l: int, lp: int, cap: int) -> bool:
    """Search for a path from ``start`` that reaches l without ever using an
    action whose delete list mentions lp."""
    lbit, lpbit = 1 << l, 1 << lp
    if start & lbit:
        return True  # the empty sequence already has l true, deleting nothing
    keeps_lp = lambda a: not a.delete & lpbit
    seen = _closure(task, start, cap, action_ok=keeps_lp)
    return any(s & lbit for s in seen)


def oracle_reasonable_report(task: Task, l: int, lp: int,
                             cap: int = DEFAULT_STATE_CAP) -> ReasonableReport:
    starts = _achieved_before_states(task, l, lp, cap)
    if not starts:
        return ReasonableReport(holds=True, vacuous=True)
    for s in starts:
        if _aftermath_violated_from(task, s, l, lp, cap):
            return ReasonableReport(False, False)
        if _deletion_violated_from(task, s, l, lp, cap):
            return ReasonableReport(False, False)
    return ReasonableReport(True, False)


def oracle_reasonable(task: Task, l: int, lp: int, cap: int = DEFAULT_STATE_CAP) -> bool:
    return oracle_reasonable_report(task, l, lp, cap).holds


# ---------------------------------------------------------------------------
# Inconsistency
# ---------------------------------------------------------------------------

def oracle_inconsistent(task: Task, x: int, y: int, cap: int = DEFAULT_STATE_CAP,
                        space: Optional[StateSpace] = None) -> bool:
    both = (1 << x) | (1 << y)
    if x == y:
        return False
    if space is not None:
        return not any(s & both == both for s in space.states)
    seen = _closure(task, task.init, cap)
    return not any(s & both == both for s in seen)


# ---------------------------------------------------------------------------
# Plan enumeration (for tiny fixture checks)
# ---------------------------------------------------------------------------

def count_solutions_of_length(task: Task, length: int, limit: int = 10_000_000) -> int:
    """Number of action sequences of exactly ``length`` steps that solve the
    task, by exhaustive applicable-prefix enumeration."""
    goal = task.goal
    acts = [(a.pre, a.add, a.delete) for a in task.actions]
    count = 0
    explored = 0
    stack = [(task.init, 0)]
    while stack:
        s, depth = stack.pop()
        explored += 1
        if explored > limit:
            raise CapExceeded(limit)
        if depth == length:
            if s & goal == goal:
                count += 1
            continue
        for pre, add, dele in acts:
            if s & pre == pre:
                stack.append(((s | add) & ~dele, depth + 1))
    return count
