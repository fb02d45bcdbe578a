"""Grounded STRIPS primitives: facts, actions, tasks, and plan semantics.

States and fact sets are plain Python ints used as bitmasks over a task's
fact universe, so membership, union, and difference are single big-int
operations.  All types are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class PlanningError(Exception):
    """Base class for faults raised by this package."""


def parse_fact_name(text: str) -> tuple[str, tuple[str, ...]]:
    """Parse a fact display name "(predicate arg1 arg2)" into its parts.

    A bare symbol (no parentheses) is accepted as a zero-argument predicate.
    """
    text = text.strip().lower()
    if text.startswith("(") and text.endswith(")"):
        parts = text[1:-1].split()
    else:
        parts = text.split()
    if not parts or any(("(" in p or ")" in p) for p in parts):
        raise PlanningError(f"malformed fact name: {text!r}")
    return parts[0], tuple(parts[1:])


def format_atom(predicate: str, args: Sequence[str]) -> str:
    return "(" + " ".join([predicate, *args]) + ")"


@dataclass(frozen=True)
class Fact:
    """One grounded atom, interned to a dense id within its task."""

    id: int
    predicate: str
    args: tuple[str, ...]

    @property
    def name(self) -> str:
        return format_atom(self.predicate, self.args)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Action:
    """One grounded action; pre/add/delete are fact-id bitmasks."""

    id: int
    name: str
    pre: int
    add: int
    delete: int


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


class Task:
    """A grounded planning task: fact universe, actions, initial state, goal.

    Fact and action ids are dense and contiguous; the display name of a fact
    or action round-trips through the task's name indexes.
    """

    def __init__(
        self,
        facts: Sequence[Fact],
        actions: Sequence[Action],
        init: int,
        goal: int,
        name: str = "task",
        pruned_actions: tuple[str, ...] = (),
        provably_unsolvable: bool = False,
    ):
        self.facts = tuple(facts)
        self.actions = tuple(actions)
        self.init = init
        self.goal = goal
        self.name = name
        self.pruned_actions = pruned_actions
        self.provably_unsolvable = provably_unsolvable

        self._fact_index = {f.name: f.id for f in self.facts}
        self._action_index = {a.name: a.id for a in self.actions}
        universe = (1 << len(self.facts)) - 1
        for i, f in enumerate(self.facts):
            if f.id != i:
                raise PlanningError(f"non-contiguous fact id {f.id} at {i}")
        for i, a in enumerate(self.actions):
            if a.id != i:
                raise PlanningError(f"non-contiguous action id {a.id} at {i}")
            if (a.pre | a.add | a.delete) & ~universe:
                raise PlanningError(f"action {a.name} references unknown facts")
        if (init | goal) & ~universe:
            raise PlanningError("init/goal reference unknown facts")
        # adders[f] = ids of actions with f in their add list
        adders: list[list[int]] = [[] for _ in self.facts]
        for a in self.actions:
            for f in bits(a.add):
                adders[f].append(a.id)
        self.adders = tuple(tuple(v) for v in adders)

    @property
    def num_facts(self) -> int:
        return len(self.facts)

    def fact_named(self, name: str) -> Fact:
        pred, args = parse_fact_name(name)
        key = format_atom(pred, args)
        if key not in self._fact_index:
            raise PlanningError(f"unknown fact {key}")
        return self.facts[self._fact_index[key]]

    def has_fact(self, name: str) -> bool:
        pred, args = parse_fact_name(name)
        return format_atom(pred, args) in self._fact_index

    def action_named(self, name: str) -> Action:
        name = name.strip().lower()
        if name not in self._action_index:
            raise PlanningError(f"unknown action {name}")
        return self.actions[self._action_index[name]]

    def mask(self, names: Iterable[str]) -> int:
        return mask_of(self.fact_named(n).id for n in names)

    def facts_in(self, mask: int) -> tuple[Fact, ...]:
        return tuple(self.facts[i] for i in bits(mask))

    def fact_names(self, mask: int) -> tuple[str, ...]:
        return tuple(f.name for f in self.facts_in(mask))

    def __repr__(self) -> str:
        return (
            f"Task({self.name!r}, facts={len(self.facts)}, "
            f"actions={len(self.actions)})"
        )


def make_task(
    actions: Sequence[tuple[str, Iterable[str], Iterable[str], Iterable[str]]],
    init: Iterable[str],
    goal: Iterable[str],
    facts: Optional[Sequence[str]] = None,
    name: str = "task",
) -> Task:
    """Build a task from fact/action names; handy for hand-written instances.

    ``actions`` entries are (name, pre, add, delete) with fact display names.
    When ``facts`` is omitted the universe is the sorted set of all names
    mentioned anywhere.
    """
    mentioned: set[str] = set()
    canon = lambda n: format_atom(*parse_fact_name(n))
    spec = []
    for aname, pre, add, dele in actions:
        pre, add, dele = [tuple(canon(x) for x in part) for part in (pre, add, dele)]
        spec.append((aname.strip().lower(), pre, add, dele))
        mentioned.update(pre + add + dele)
    init = tuple(canon(x) for x in init)
    goal = tuple(canon(x) for x in goal)
    mentioned.update(init)
    mentioned.update(goal)
    if facts is None:
        universe = sorted(mentioned)
    else:
        universe = [canon(f) for f in facts]
        missing = mentioned - set(universe)
        if missing:
            raise PlanningError(f"facts not in declared universe: {sorted(missing)}")
    fact_objs = []
    index = {}
    for i, fname in enumerate(universe):
        pred, args = parse_fact_name(fname)
        fact_objs.append(Fact(i, pred, args))
        index[fname] = i
    m = lambda names: mask_of(index[n] for n in names)
    action_objs = [
        Action(i, aname, m(pre), m(add), m(dele))
        for i, (aname, pre, add, dele) in enumerate(spec)
    ]
    return Task(fact_objs, action_objs, m(init), m(goal), name=name)


# ---------------------------------------------------------------------------
# Plan semantics
# ---------------------------------------------------------------------------

def apply_action(state: int, action: Action) -> Optional[int]:
    """Apply one action; returns None (undefined) when preconditions unmet.

    Effects are add-before-delete: an action that adds and deletes the same
    fact nets to deletion.
    """
    if state & action.pre != action.pre:
        return None
    return (state | action.add) & ~action.delete


def _check_plan_ids(task: Task, plan: Sequence[int]) -> None:
    n = len(task.actions)
    for aid in plan:
        if not 0 <= aid < n:
            raise PlanningError(f"foreign action id {aid}")


def result_state(task: Task, plan: Sequence[int], state: Optional[int] = None) -> Optional[int]:
    """Left-fold of apply_action over a plan; None (undefined) is absorbing."""
    _check_plan_ids(task, plan)
    s = task.init if state is None else state
    for aid in plan:
        s = apply_action(s, task.actions[aid])
        if s is None:
            return None
    return s


def validate_plan(task: Task, plan: Sequence[int], state: Optional[int] = None) -> bool:
    """True iff the plan is applicable and its final state contains the goal."""
    s = result_state(task, plan, state)
    return s is not None and s & task.goal == task.goal


def _fact_id(x) -> int:
    return x.id if isinstance(x, Fact) else int(x)


def plan_obeys_order(task: Task, plan: Sequence[int], first, second) -> bool:
    """Whether ``plan`` achieves ``first`` strictly before ``second``.

    Holds when ``first`` is initially true, when ``second`` is never added,
    or when the earliest add of ``first`` precedes the earliest add of
    ``second``.  Simultaneous first achievement by one action does not count
    as obeying.
    """
    l, lp = _fact_id(first), _fact_id(second)
    _check_plan_ids(task, plan)
    if task.init >> l & 1:
        return True
    lbit, lpbit = 1 << l, 1 << lp
    first_l = first_lp = None
    for i, aid in enumerate(plan):
        add = task.actions[aid].add
        if first_l is None and add & lbit:
            first_l = i
        if first_lp is None and add & lpbit:
            first_lp = i
    if first_lp is None:
        return True
    return first_l is not None and first_l < first_lp


def format_plan(task: Task, plan: Sequence[int]) -> str:
    """One grounded action name per line."""
    return "\n".join(task.actions[aid].name for aid in plan)
