"""Order approximation: fact mutexes, interference, r/rO edges, cycle removal.

The inconsistency table is the complement of a pair-reachability fixpoint:
starting from the initial state, an action fires once its preconditions are
singleton- and pairwise-reachable; firing marks add-add pairs reachable and
lets facts that the action does not delete persist alongside its adds,
provided they were co-reachable with all preconditions.  Any pair never
marked is mutex, which is sound: every reachable state's fact pairs are
pairwise marked by induction over its generating action sequence.
"""

from __future__ import annotations

from typing import Iterable

from .core import PlanningError, Task, bits
from .landmarks import GN, LN, R, RO, EdgeKind, LGG


class CycleError(PlanningError):
    """Cycles survived both removal phases (a level-test violation upstream)."""


class InconsistencyTable:
    """Symmetric sound mutex relation over fact pairs."""

    def __init__(self, co: list[int]):
        self._co = co  # co[f] = facts co-reachable with f (self-inclusive)

    def query(self, x: int, y: int) -> bool:
        """True only if no reachable state can contain both facts."""
        if x == y:
            return False
        return not self._co[x] >> y & 1

    def mutex_mask(self, x: int) -> int:
        """All facts inconsistent with ``x`` as a bitmask."""
        n = len(self._co)
        return ((1 << n) - 1) & ~self._co[x] & ~(1 << x)

    def pairs(self) -> list[tuple[int, int]]:
        n = len(self._co)
        return [(x, y) for x in range(n) for y in range(x + 1, n) if self.query(x, y)]


def compute_mutexes(task: Task) -> InconsistencyTable:
    co = [0] * task.num_facts
    reached = task.init
    for f in bits(reached):
        co[f] = reached
    acts = [(a.pre, a.add, a.delete) for a in task.actions]
    changed = True
    while changed:
        changed = False
        for pre, add, dele in acts:
            if pre & ~reached:
                continue
            if any(pre & ~co[r] for r in bits(pre)):
                continue  # some precondition pair is still mutex
            persist = reached & ~dele
            for r in bits(pre):
                persist &= co[r]
            with_adds = add | persist
            for p in bits(add):
                grow = (with_adds | 1 << p) & ~co[p]
                if grow:
                    co[p] |= grow
                    changed = True
            for q in bits(persist):
                if add & ~co[q]:
                    co[q] |= add
                    changed = True
            if add & ~reached:
                new = add & ~reached
                reached |= new
                changed = True
    return InconsistencyTable(co)


# ---------------------------------------------------------------------------
# Interference
# ---------------------------------------------------------------------------

def interference_conditions(task: Task, table: InconsistencyTable, g: LGG,
                            l: int, lp: int) -> tuple[bool, bool, bool, bool]:
    """The four sufficient conditions for achieving ``l`` to delete ``lp``.

    1. l and lp are mutex;
    2. every l-adder also adds some x != l mutex with lp;
    3. every l-adder deletes lp;
    4. some graph node x mutex with lp has a gn edge into l.

    Conditions 2 and 3 are vacuously false when l has no adders (such an l
    is unreachable and the pair irrelevant).
    """
    c1 = table.query(l, lp)
    adders = task.adders[l]
    c2 = c3 = False
    if adders:
        shared_add = task.actions[adders[0]].add
        shared_del = task.actions[adders[0]].delete
        for aid in adders[1:]:
            shared_add &= task.actions[aid].add
            shared_del &= task.actions[aid].delete
        c2 = bool(shared_add & ~(1 << l) & table.mutex_mask(lp))
        c3 = bool(shared_del >> lp & 1)
    c4 = any(table.query(x, lp) for x in g.predecessors(l, (GN,)))
    return c1, c2, c3, c4


def interferes(task: Task, table: InconsistencyTable, g: LGG, l: int, lp: int) -> bool:
    return any(interference_conditions(task, table, g, l, lp))


# ---------------------------------------------------------------------------
# Reasonable / obedient-reasonable order insertion
# ---------------------------------------------------------------------------

def _backward_closure(g: LGG, starts: Iterable[int], kinds: tuple[EdgeKind, ...]) -> set[int]:
    """Nodes with a (possibly empty) path over ``kinds`` edges into ``starts``."""
    seen = set(starts)
    stack = list(seen)
    while stack:
        n = stack.pop()
        for p in g.predecessors(n, kinds):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def _short_gn_path(g: LGG, l: int, lp: int) -> bool:
    """gn path of length 1 or 2 from l to lp (such an r edge would be moot)."""
    succ = g.successors(l, (GN,))
    if lp in succ:
        return True
    return any(lp in g.successors(m, (GN,)) for m in succ)


def _aftermath_sources(g: LGG, lp: int, step_kinds: tuple[EdgeKind, ...],
                       path_kinds: tuple[EdgeKind, ...]) -> set[int]:
    """Nodes L such that lp is (approximately) in the aftermath of L, for a
    non-goal lp: L reaches, over ``path_kinds`` edges, some Ln != lp whose
    ``step_kinds`` successor is also a strict-gn successor of lp."""
    shared_targets = set(g.successors(lp, (GN,)))
    lns = set()
    for ln1 in shared_targets:
        for ln in g.predecessors(ln1, step_kinds):
            if ln != lp:
                lns.add(ln)
    if not lns:
        return set()
    return _backward_closure(g, lns, path_kinds)


def add_reasonable_orders(task: Task, g: LGG, table: InconsistencyTable) -> LGG:
    """Insert r edges for interfering pairs licensed by the aftermath test.

    A goal node is in the aftermath of every other node.  A non-goal node lp
    is in the aftermath of L when L has a (possibly empty) gn/ln path to some
    Ln that shares a strict-gn successor with lp.  Pairs connected by a gn
    path of length one or two are skipped.
    """
    out = g.copy()
    goal = task.goal
    for lp in out.nodes:
        if goal >> lp & 1:
            sources = set(out.nodes)
        else:
            sources = _aftermath_sources(out, lp, (GN, LN), (GN, LN))
        for l in sorted(sources):
            if l == lp or _short_gn_path(out, l, lp):
                continue
            if interferes(task, table, out, l, lp):
                out.add_edge(l, lp, R)
    return out


def add_obedient_orders(task: Task, g: LGG, table: InconsistencyTable) -> LGG:
    """Insert rO edges: the aftermath test additionally rides the committed r
    edges, goal targets are skipped (already handled), the interference test
    is unchanged, and new rO edges are not fed back into the conditions."""
    out = g.copy()
    goal = task.goal
    committed = g  # conditions read the input graph, never the new edges
    for lp in committed.nodes:
        if goal >> lp & 1:
            continue
        sources = _aftermath_sources(committed, lp, (GN, LN, R), (GN, LN, R))
        for l in sorted(sources):
            if l == lp:
                continue
            if interferes(task, table, committed, l, lp):
                out.add_edge(l, lp, RO)
    return out


# ---------------------------------------------------------------------------
# Cycle removal
# ---------------------------------------------------------------------------

def _sccs(nodes: tuple[int, ...], succ: dict[int, set[int]]) -> dict[int, int]:
    """Map node -> strongly connected component id (iterative Tarjan)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp: dict[int, int] = {}
    counter = [0]
    ncomp = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(succ.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
    return comp


def _cyclic_edges(g: LGG, kind: EdgeKind) -> list[tuple[int, int, EdgeKind]]:
    succ: dict[int, set[int]] = {n: set() for n in g.nodes}
    for s, d, _ in g.edges:
        succ[s].add(d)
    comp = _sccs(g.nodes, succ)
    return [e for e in g.edges if e[2] is kind and comp[e[0]] == comp[e[1]]]


def remove_cycles(g: LGG) -> LGG:
    """Break cycles by dropping rO edges on cycles, then r edges on cycles.

    gn/ln edges are never removed; if a cycle survives both phases the input
    violated the level-decreasing property and a CycleError is raised.
    """
    out = g.copy()
    for e in _cyclic_edges(out, RO):
        out.remove_edge(*e)
    for e in _cyclic_edges(out, R):
        out.remove_edge(*e)
    leftovers = [e for k in (GN, LN, R, RO) for e in _cyclic_edges(out, k)]
    if leftovers:
        raise CycleError(f"cycles remain after removal: {leftovers}")
    return out
