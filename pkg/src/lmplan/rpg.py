"""Relaxed planning graph: layered delete-free reachability over a task.

The graph alternates proposition and action layers built from a start state
with all delete lists ignored; the level of a fact/action is the index of
the first layer containing it.  Two stopping rules are supported: stop the
first time the goals are all present (the default for landmark extraction),
or run to the reachability fixpoint (used for heuristic evaluation and
relaxed solvability).
"""

from __future__ import annotations

from typing import Iterable, Optional

from .core import Action, Task, bits

GOALS_FIRST = "goals-first"
FIXPOINT = "fixpoint"

INF = float("inf")


class RPG:
    """Layered relaxed reachability structure.

    prop_layers[i] / action_layers[i] are bitmasks over fact / action ids;
    layers are monotone (each contains its predecessor).  ``goal_reached``
    is False when the fixpoint was hit before the goals appeared, i.e. the
    relaxed task is unsolvable from the start state.
    """

    def __init__(self, task: Task, state: int, mode: str):
        if mode not in (GOALS_FIRST, FIXPOINT):
            raise ValueError(f"unknown build mode {mode!r}")
        self.task = task
        self.mode = mode
        self.fact_level: list = [INF] * task.num_facts
        self.action_level: list = [INF] * len(task.actions)
        for f in bits(state):
            self.fact_level[f] = 0
        self.prop_layers: list[int] = [state]
        self.action_layers: list[int] = []
        self.goal_reached = False

        goal = task.goal
        cur = state
        while True:
            if mode == GOALS_FIRST and cur & goal == goal:
                self.goal_reached = True
                break
            layer_idx = len(self.action_layers)
            acts = 0
            nxt = cur
            for a in task.actions:
                if cur & a.pre == a.pre:
                    acts |= 1 << a.id
                    if self.action_level[a.id] is INF:
                        self.action_level[a.id] = layer_idx
                    nxt |= a.add
            if nxt == cur:
                # fixpoint: no new facts can ever appear
                self.goal_reached = cur & goal == goal
                break
            self.action_layers.append(acts)
            self.prop_layers.append(nxt)
            for f in bits(nxt & ~cur):
                self.fact_level[f] = layer_idx + 1
            cur = nxt

    @property
    def top_layer(self) -> int:
        """Index m of the last proposition layer."""
        return len(self.prop_layers) - 1

    @property
    def reachable(self) -> int:
        """All facts present in the last layer."""
        return self.prop_layers[-1]

    def earliest_achievers(self, fact_id: int) -> list[int]:
        """Action ids adding ``fact_id`` at the layer right below its level."""
        level = self.fact_level[fact_id]
        if level is INF or level == 0:
            return []
        return [a for a in self.task.adders[fact_id] if self.action_level[a] == level - 1]


def build_rpg(task: Task, mode: str = GOALS_FIRST, state: Optional[int] = None) -> RPG:
    """Build the relaxed planning graph from ``state`` (default: the init)."""
    return RPG(task, task.init if state is None else state, mode)


def relaxed_solvable(actions: Iterable[Action], init: int, goal: int) -> bool:
    """Delete-free reachability of ``goal`` from ``init`` over ``actions``."""
    acts = [(a.pre, a.add) for a in actions]
    cur = init
    while cur & goal != goal:
        nxt = cur
        remaining = []
        for pre, add in acts:
            if cur & pre == pre:
                nxt |= add
            else:
                remaining.append((pre, add))
        if nxt == cur:
            return False
        acts = remaining
        cur = nxt
    return True


def extract_relaxed_plan(rpg: RPG, goal: int):
    """Length of a relaxed plan for ``goal`` extracted by backchaining.

    Requires a fixpoint-mode graph.  Each subgoal fact picks one achiever at
    the layer below its level (lowest action id breaks ties); the achiever's
    preconditions are queued as subgoals at their own levels.  Returns the
    number of distinct selected actions, or INF when the goal is unreachable.
    """
    if rpg.mode != FIXPOINT:
        raise ValueError("relaxed plan extraction needs a fixpoint-mode graph")
    if rpg.reachable & goal != goal:
        return INF
    level = rpg.fact_level
    by_layer: dict[int, int] = {}
    for f in bits(goal):
        if level[f] > 0:
            by_layer[level[f]] = by_layer.get(level[f], 0) | (1 << f)
    selected: set[int] = set()
    seen_subgoals = goal
    for l in range(rpg.top_layer, 0, -1):
        for f in bits(by_layer.get(l, 0)):
            achievers = rpg.earliest_achievers(f)
            aid = min(achievers)
            selected.add(aid)
            for p in bits(rpg.task.actions[aid].pre & ~seen_subgoals):
                seen_subgoals |= 1 << p
                pl = level[p]
                if pl > 0:
                    if pl >= l:
                        # achiever sits below layer l, so its preconditions do too
                        raise AssertionError("level-1 rule violated")
                    by_layer[pl] = by_layer.get(pl, 0) | (1 << p)
    return len(selected)
