"""End-to-end landmark graph construction with switchable stages."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import PlanningError, Task
from .landmarks import LGG, generate_candidates, lookahead_extend, verify_landmarks
from .orders import (
    InconsistencyTable,
    add_obedient_orders,
    add_reasonable_orders,
    compute_mutexes,
    remove_cycles,
)
from .rpg import GOALS_FIRST, build_rpg


@dataclass(frozen=True)
class PipelineConfig:
    level_test: bool = True
    lookahead: bool = True
    reasonable: bool = True
    obedient: bool = True


def build_landmark_graph(task: Task, config: PipelineConfig = PipelineConfig(),
                         table: Optional[InconsistencyTable] = None) -> LGG:
    """Candidates, lookahead, verification, order insertion, cycle removal."""
    if task.provably_unsolvable:
        raise PlanningError("goal is relaxed-unreachable; no landmark graph")
    rpg = build_rpg(task, GOALS_FIRST)
    if not rpg.goal_reached:
        raise PlanningError("goal is relaxed-unreachable; no landmark graph")
    g = generate_candidates(task, rpg, use_level_test=config.level_test)
    if config.lookahead:
        g = lookahead_extend(task, rpg, g, use_level_test=config.level_test)
    g = verify_landmarks(task, g)
    if config.reasonable or config.obedient:
        if table is None:
            table = compute_mutexes(task)
        if config.reasonable:
            g = add_reasonable_orders(task, g, table)
        if config.obedient:
            g = add_obedient_orders(task, g, table)
    return remove_cycles(g)
