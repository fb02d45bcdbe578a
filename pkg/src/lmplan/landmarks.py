"""Landmark graph construction: backchaining candidates, lookahead, verification.

The graph's nodes are fact ids, its edges carry one of four order kinds:

  gn  - every earliest achiever of the target shares the source as precondition
  ln  - the source is shared two steps below the target, through a
        same-predicate intermediate fact set
  r   - achieving the source from a state where the target was just reached
        forces deleting and re-achieving the target
  rO  - like r, but only relative to the already committed r orders

gn/ln edges come out of this module; r/rO edges are added by lmplan.orders.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import Iterable, Optional

from .core import PlanningError, Task, bits, mask_of
from .rpg import INF, RPG, relaxed_solvable


class EdgeKind(str, Enum):
    GREEDY_NECESSARY = "gn"
    LOOKAHEAD = "ln"
    REASONABLE = "r"
    OBEDIENT_REASONABLE = "rO"


GN = EdgeKind.GREEDY_NECESSARY
LN = EdgeKind.LOOKAHEAD
R = EdgeKind.REASONABLE
RO = EdgeKind.OBEDIENT_REASONABLE


class LGG:
    """Directed multigraph over landmark fact ids with typed edges."""

    def __init__(self):
        self._verified: dict[int, bool] = {}
        self._edges: set[tuple[int, int, EdgeKind]] = set()
        self._out: dict[int, set[tuple[int, int, EdgeKind]]] = {}
        self._in: dict[int, set[tuple[int, int, EdgeKind]]] = {}

    # -- nodes --------------------------------------------------------------

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self._verified))

    def __len__(self) -> int:
        return len(self._verified)

    def __contains__(self, fact_id: int) -> bool:
        return fact_id in self._verified

    def add_node(self, fact_id: int, verified: bool = False) -> None:
        if fact_id not in self._verified:
            self._verified[fact_id] = verified
            self._out[fact_id] = set()
            self._in[fact_id] = set()

    def verified(self, fact_id: int) -> bool:
        return self._verified[fact_id]

    def set_verified(self, fact_id: int, flag: bool = True) -> None:
        if fact_id not in self._verified:
            raise PlanningError(f"not a node: {fact_id}")
        self._verified[fact_id] = flag

    def remove_node(self, fact_id: int) -> None:
        """Drop a node together with its incident edges."""
        for e in list(self._out[fact_id]) + list(self._in[fact_id]):
            self.remove_edge(*e)
        del self._verified[fact_id]
        del self._out[fact_id]
        del self._in[fact_id]

    # -- edges --------------------------------------------------------------

    @property
    def edges(self) -> tuple[tuple[int, int, EdgeKind], ...]:
        return tuple(sorted(self._edges, key=lambda e: (e[0], e[1], e[2].value)))

    def add_edge(self, src: int, dst: int, kind: EdgeKind) -> None:
        if src == dst:
            raise PlanningError(f"self-edge on {src}")
        if src not in self._verified or dst not in self._verified:
            raise PlanningError("edge endpoints must be nodes")
        e = (src, dst, kind)
        if e not in self._edges:
            self._edges.add(e)
            self._out[src].add(e)
            self._in[dst].add(e)

    def remove_edge(self, src: int, dst: int, kind: EdgeKind) -> None:
        e = (src, dst, kind)
        self._edges.discard(e)
        self._out[src].discard(e)
        self._in[dst].discard(e)

    def has_edge(self, src: int, dst: int, kind: Optional[EdgeKind] = None) -> bool:
        if kind is not None:
            return (src, dst, kind) in self._edges
        return any((src, dst, k) in self._edges for k in EdgeKind)

    def out_edges(self, fact_id: int):
        return sorted(self._out[fact_id], key=lambda e: (e[1], e[2].value))

    def in_edges(self, fact_id: int):
        return sorted(self._in[fact_id], key=lambda e: (e[0], e[2].value))

    def successors(self, fact_id: int, kinds: Iterable[EdgeKind]) -> list[int]:
        ks = set(kinds)
        return sorted({d for _, d, k in self._out[fact_id] if k in ks})

    def predecessors(self, fact_id: int, kinds: Iterable[EdgeKind]) -> list[int]:
        ks = set(kinds)
        return sorted({s for s, _, k in self._in[fact_id] if k in ks})

    def leaves(self) -> tuple[int, ...]:
        return tuple(n for n in self.nodes if not self._in[n])

    def copy(self) -> "LGG":
        g = LGG()
        g._verified = dict(self._verified)
        g._edges = set(self._edges)
        g._out = {n: set(v) for n, v in self._out.items()}
        g._in = {n: set(v) for n, v in self._in.items()}
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, LGG):
            return NotImplemented
        return self._verified == other._verified and self._edges == other._edges

    def __repr__(self) -> str:
        return f"LGG(nodes={len(self._verified)}, edges={len(self._edges)})"


# ---------------------------------------------------------------------------
# Candidate generation
# ---------------------------------------------------------------------------

def _achievers(task: Task, rpg: RPG, fact_id: int, use_level_test: bool) -> list[int]:
    if use_level_test:
        return rpg.earliest_achievers(fact_id)
    return list(task.adders[fact_id])


def _expand_candidates(task: Task, rpg: RPG, g: LGG, seeds: Iterable[int],
                       use_level_test: bool) -> list[int]:
    """Backchain from ``seeds``: shared preconditions of each open candidate's
    achievers become nodes with gn edges.  Returns every node added."""
    added: list[int] = []
    open_set = sorted(set(seeds))
    while open_set:
        next_open: list[int] = []
        for lp in open_set:
            if rpg.fact_level[lp] == 0:
                continue
            achievers = _achievers(task, rpg, lp, use_level_test)
            if not achievers:
                continue
            shared = task.actions[achievers[0]].pre
            for aid in achievers[1:]:
                shared &= task.actions[aid].pre
            for l in bits(shared):
                if l not in g:
                    g.add_node(l)
                    next_open.append(l)
                    added.append(l)
                g.add_edge(l, lp, GN)
        open_set = sorted(next_open)
    return added


def generate_candidates(task: Task, rpg: RPG, use_level_test: bool = True) -> LGG:
    """Seed the graph with the goals and backchain shared preconditions.

    With the level test on, only achievers at the layer right below the
    candidate are intersected, which keeps every gn edge strictly
    level-decreasing; without it all achievers are intersected (the safe
    variant: a precondition shared by every achiever provably holds right
    before each fresh achievement of the candidate).
    """
    g = LGG()
    goals = sorted(bits(task.goal))
    for f in goals:
        g.add_node(f)
    _expand_candidates(task, rpg, g, goals, use_level_test)
    return g


# ---------------------------------------------------------------------------
# Lookahead
# ---------------------------------------------------------------------------

def lookahead_extend(task: Task, rpg: RPG, g: LGG, use_level_test: bool = True) -> LGG:
    """Add two-step orders through same-predicate intermediate fact sets.

    For a node whose earliest achievers share no precondition, each predicate
    that contributes at least one precondition to every achiever induces an
    intermediate fact set; a fact required by all earliest achievers of all
    set members is ordered below the node with an ln edge.  New facts are fed
    back through the backchaining loop, and nodes found that way get the same
    lookahead treatment.
    """
    out = g.copy()
    pending = deque(sorted(out.nodes))
    queued = set(pending)
    while pending:
        lp = pending.popleft()
        if lp not in out:
            continue
        level = rpg.fact_level[lp]
        if level == 0 or level is INF:
            continue
        achievers = rpg.earliest_achievers(lp)
        if not achievers:
            continue
        pre_masks = [task.actions[a].pre for a in achievers]
        by_pred: dict[str, set[int]] = {}
        for m in pre_masks:
            for f in bits(m):
                by_pred.setdefault(task.facts[f].predicate, set()).add(f)
        new_nodes: list[int] = []
        for pred in sorted(by_pred):
            members = by_pred[pred]
            member_mask = mask_of(members)
            if not all(m & member_mask for m in pre_masks):
                continue  # some achiever has no precondition on this predicate
            if len(members) == 1:
                continue  # a plain shared precondition; gn already covers it
            if any(rpg.fact_level[f] == 0 for f in members):
                continue  # disjunction already true initially
            two_step: list[int] = []
            ok = True
            for f in sorted(members):
                step = rpg.earliest_achievers(f)
                if not step:
                    ok = False
                    break
                two_step.extend(step)
            if not ok:
                continue
            shared = task.actions[two_step[0]].pre
            for aid in two_step[1:]:
                shared &= task.actions[aid].pre
            for l in bits(shared):
                if rpg.fact_level[l] == 0:
                    continue
                if l not in out:
                    out.add_node(l)
                    new_nodes.append(l)
                if not out.has_edge(l, lp, GN):
                    out.add_edge(l, lp, LN)
        if new_nodes:
            grown = _expand_candidates(task, rpg, out, new_nodes, use_level_test)
            for n in new_nodes + grown:
                if n not in queued:
                    queued.add(n)
                    pending.append(n)
    return out


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def verify_landmarks(task: Task, g: LGG) -> LGG:
    """Keep only nodes that are provably landmarks.

    Goal and initial facts are landmarks by definition.  Any other node L is
    kept iff the goal is unreachable in the delete relaxation once every
    L-adding action is removed; otherwise L and its incident edges go.
    Every surviving node is flagged verified.
    """
    out = g.copy()
    trivial = task.init | task.goal
    for l in out.nodes:
        if trivial >> l & 1:
            out.set_verified(l)
            continue
        lbit = 1 << l
        pruned = [a for a in task.actions if not a.add & lbit]
        if relaxed_solvable(pruned, task.init, task.goal):
            out.remove_node(l)
        else:
            out.set_verified(l)
    return out
