#!/usr/bin/env python3
"""Driving a base planner through the landmark decomposition.

Each iteration hands the current leaf landmarks to the base planner as a
disjunctive goal (compiled away with one artificial action per disjunct),
executes the returned fragment, and drops the achieved leaves.
"""

from lmplan.control import ControlConfig, run_control
from lmplan.core import format_plan, validate_plan
from lmplan.instances import blocksworld_demo_task, logistics_two_planes_task
from lmplan.pipeline import build_landmark_graph
from lmplan.planners import bfs_plan


def show(task):
    print(f"== {task.name} ==")
    graph = build_landmark_graph(task)
    trace = run_control(task, graph, bfs_plan, ControlConfig())
    for i, rec in enumerate(trace.iterations):
        disj = " | ".join(task.facts[f].name for f in rec.disjuncts)
        frag = ", ".join(task.actions[a].name for a in rec.subplan) or "(nothing to do)"
        done = " ".join(task.facts[f].name for f in rec.removed)
        print(f"  iteration {i}: goal any-of {{{disj}}}")
        print(f"    fragment: {frag}")
        print(f"    achieved: {done}")
    print(f"  outcome: {trace.outcome.value}, plan valid: "
          f"{validate_plan(task, trace.plan)}")
    print("  final plan:")
    for line in format_plan(task, trace.plan).splitlines():
        print(f"    {line}")
    print()


show(blocksworld_demo_task())
show(logistics_two_planes_task())
