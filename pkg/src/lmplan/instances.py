"""Built-in domains and hand-written micro-instances.

The PDDL texts double as generator templates (lmplan.bench) and as canned
demonstration inputs; the make_task instances are tiny synthetic tasks whose
full state spaces fit in a screenful, used throughout the oracle tests and
the demos.
"""

from __future__ import annotations

from .core import Task, make_task
from .pddl import ground_files

BLOCKSWORLD_ARM_DOMAIN = """\
(define (domain blocksworld-arm)
  (:requirements :strips :typing)
  (:types block)
  (:predicates (on ?x - block ?y - block)
               (on-table ?x - block)
               (clear ?x - block)
               (holding ?x - block)
               (arm-empty))
  (:action pick-up
    :parameters (?x - block)
    :precondition (and (clear ?x) (on-table ?x) (arm-empty))
    :effect (and (holding ?x)
                 (not (on-table ?x)) (not (clear ?x)) (not (arm-empty))))
  (:action put-down
    :parameters (?x - block)
    :precondition (and (holding ?x))
    :effect (and (on-table ?x) (clear ?x) (arm-empty)
                 (not (holding ?x))))
  (:action stack
    :parameters (?x - block ?y - block)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (on ?x ?y) (clear ?x) (arm-empty)
                 (not (holding ?x)) (not (clear ?y))))
  (:action unstack
    :parameters (?x - block ?y - block)
    :precondition (and (on ?x ?y) (clear ?x) (arm-empty))
    :effect (and (holding ?x) (clear ?y)
                 (not (on ?x ?y)) (not (clear ?x)) (not (arm-empty))))
)
"""

BLOCKSWORLD_NO_ARM_DOMAIN = """\
(define (domain blocksworld-no-arm)
  (:requirements :strips :typing)
  (:types block)
  (:predicates (on ?x - block ?y - block)
               (on-table ?x - block)
               (clear ?x - block))
  (:action move-b-to-b
    :parameters (?b - block ?from - block ?to - block)
    :precondition (and (clear ?b) (clear ?to) (on ?b ?from))
    :effect (and (on ?b ?to) (clear ?from)
                 (not (on ?b ?from)) (not (clear ?to))))
  (:action move-b-to-t
    :parameters (?b - block ?from - block)
    :precondition (and (clear ?b) (on ?b ?from))
    :effect (and (on-table ?b) (clear ?from)
                 (not (on ?b ?from))))
  (:action move-t-to-b
    :parameters (?b - block ?to - block)
    :precondition (and (clear ?b) (clear ?to) (on-table ?b))
    :effect (and (on ?b ?to)
                 (not (on-table ?b)) (not (clear ?to))))
)
"""

# Untyped on purpose: a flat type list cannot say that airports are
# locations, so vehicle/place kinds are static unary predicates instead.
LOGISTICS_DOMAIN = """\
(define (domain logistics)
  (:requirements :strips)
  (:predicates (package ?p) (truck ?t) (airplane ?a)
               (location ?l) (airport ?l) (city ?c)
               (at ?x ?l) (in ?p ?v) (in-city ?l ?c))
  (:action load-truck
    :parameters (?p ?t ?l)
    :precondition (and (package ?p) (truck ?t) (location ?l)
                       (at ?t ?l) (at ?p ?l))
    :effect (and (in ?p ?t) (not (at ?p ?l))))
  (:action unload-truck
    :parameters (?p ?t ?l)
    :precondition (and (package ?p) (truck ?t) (location ?l)
                       (at ?t ?l) (in ?p ?t))
    :effect (and (at ?p ?l) (not (in ?p ?t))))
  (:action load-airplane
    :parameters (?p ?a ?l)
    :precondition (and (package ?p) (airplane ?a) (airport ?l)
                       (at ?a ?l) (at ?p ?l))
    :effect (and (in ?p ?a) (not (at ?p ?l))))
  (:action unload-airplane
    :parameters (?p ?a ?l)
    :precondition (and (package ?p) (airplane ?a) (airport ?l)
                       (at ?a ?l) (in ?p ?a))
    :effect (and (at ?p ?l) (not (in ?p ?a))))
  (:action drive-truck
    :parameters (?t ?from ?to ?c)
    :precondition (and (truck ?t) (location ?from) (location ?to) (city ?c)
                       (at ?t ?from) (in-city ?from ?c) (in-city ?to ?c))
    :effect (and (at ?t ?to) (not (at ?t ?from))))
  (:action fly-airplane
    :parameters (?a ?from ?to)
    :precondition (and (airplane ?a) (airport ?from) (airport ?to)
                       (at ?a ?from))
    :effect (and (at ?a ?to) (not (at ?a ?from))))
)
"""

# Four blocks; D sits on C, everything else on the table; C must end up on A
# and B on D, so C's tower has to come apart before B commits to D.
BLOCKSWORLD_DEMO_PROBLEM = """\
(define (problem four-block-demo)
  (:domain blocksworld-arm)
  (:objects a b c d - block)
  (:init (on-table a) (on-table b) (on-table c) (on d c)
         (clear a) (clear b) (clear d) (arm-empty))
  (:goal (and (on c a) (on b d)))
)
"""

# Five places, roads a-b, b-c, c-d, a-e, e-d; start at a, get to d.  The
# operators are pre-grounded so the map itself never shows up as facts.
ROADMAP_DOMAIN = """\
(define (domain roadmap)
  (:requirements :strips)
  (:predicates (at ?x))
  (:action move-a-b :parameters () :precondition (at a) :effect (and (at b) (not (at a))))
  (:action move-b-a :parameters () :precondition (at b) :effect (and (at a) (not (at b))))
  (:action move-b-c :parameters () :precondition (at b) :effect (and (at c) (not (at b))))
  (:action move-c-b :parameters () :precondition (at c) :effect (and (at b) (not (at c))))
  (:action move-c-d :parameters () :precondition (at c) :effect (and (at d) (not (at c))))
  (:action move-d-c :parameters () :precondition (at d) :effect (and (at c) (not (at d))))
  (:action move-a-e :parameters () :precondition (at a) :effect (and (at e) (not (at a))))
  (:action move-e-a :parameters () :precondition (at e) :effect (and (at a) (not (at e))))
  (:action move-e-d :parameters () :precondition (at e) :effect (and (at d) (not (at e))))
  (:action move-d-e :parameters () :precondition (at d) :effect (and (at e) (not (at d))))
)
"""

ROADMAP_PROBLEM = """\
(define (problem roadmap-a-to-d)
  (:domain roadmap)
  (:objects a b c d e)
  (:init (at a))
  (:goal (at d))
)
"""

# One package, two airplanes, two cities with two locations each; the
# package's unload at the destination airport can come off either plane.
LOGISTICS_TWO_PLANES_PROBLEM = """\
(define (problem two-planes)
  (:domain logistics)
  (:objects pack1 la-truck boston-truck plane1 plane2
            la-po la-airport boston-po boston-airport la boston)
  (:init (package pack1) (truck la-truck) (truck boston-truck)
         (airplane plane1) (airplane plane2)
         (location la-po) (location la-airport)
         (location boston-po) (location boston-airport)
         (airport la-airport) (airport boston-airport)
         (city la) (city boston)
         (in-city la-po la) (in-city la-airport la)
         (in-city boston-po boston) (in-city boston-airport boston)
         (at pack1 la-po) (at la-truck la-po) (at boston-truck boston-po)
         (at plane1 la-airport) (at plane2 la-airport))
  (:goal (at pack1 boston-po))
)
"""


def blocksworld_demo_task() -> Task:
    return ground_files(BLOCKSWORLD_ARM_DOMAIN, BLOCKSWORLD_DEMO_PROBLEM)


def roadmap_task() -> Task:
    return ground_files(ROADMAP_DOMAIN, ROADMAP_PROBLEM)


def logistics_two_planes_task() -> Task:
    return ground_files(LOGISTICS_DOMAIN, LOGISTICS_TWO_PLANES_PROBLEM)


def twin_goal_task() -> Task:
    """Seven facts, two goals, exactly two length-3 solutions; each solution
    achieves, deletes, and re-achieves one of the goals, so each goal is
    reasonably ordered before the other."""
    return make_task(
        actions=[
            ("(make-l-first)", ["p1"], ["l", "p2"], ["p1"]),
            ("(make-lp-first)", ["p1"], ["lp", "p2p"], ["p1"]),
            ("(swap-to-l)", ["p2p"], ["l", "p3"], ["lp", "p2p"]),
            ("(swap-to-lp)", ["p2"], ["lp", "p3p"], ["l", "p2"]),
            ("(redo-l)", ["p3p"], ["l"], ["p3p"]),
            ("(redo-lp)", ["p3"], ["lp"], ["p3"]),
        ],
        init=["p1"],
        goal=["l", "lp"],
        facts=["l", "lp", "p1", "p2", "p2p", "p3", "p3p"],
        name="twin-goal",
    )


def shared_add_task() -> Task:
    """Six facts; both ways of achieving l add a companion fact x that can
    never sit in a state together with lp, and that companion is the only
    detectable reason why achieving l forces deleting lp."""
    return make_task(
        actions=[
            ("(do-lp)", ["pp"], ["lp"], ["x"]),
            ("(open-1)", ["pp"], ["p1"], ["lp", "pp"]),
            ("(open-2)", ["pp"], ["p2"], ["lp", "pp"]),
            ("(do-l-1)", ["p1"], ["l", "x", "pp"], ["p1"]),
            ("(do-l-2)", ["p2"], ["l", "x", "pp"], ["p2"]),
        ],
        init=["pp"],
        goal=["l", "lp"],
        facts=["l", "lp", "x", "p1", "p2", "pp"],
        name="shared-add",
    )


def committed_chain_task() -> Task:
    """Ten facts, two disjoint routes to the goals; the a-route is the only
    one achieving l2 before l, and committing to the order l before l2 makes
    achieving lp before l unreasonable even though it is fine otherwise."""
    return make_task(
        actions=[
            ("(pick-a)", ["p"], ["a1"], ["p"]),
            ("(pick-b)", ["p"], ["b1"], ["p"]),
            ("(a-step-1)", ["a1"], ["lp", "l2", "a2"], ["a1"]),
            ("(a-step-2)", ["a2"], ["l", "a3"], ["l2", "a2"]),
            ("(a-step-3)", ["a3"], ["l2"], ["a3"]),
            ("(b-step-1)", ["b1"], ["lp", "b2"], ["b1"]),
            ("(b-step-2)", ["b2"], ["l", "b3"], ["lp", "b2"]),
            ("(b-step-3)", ["b3"], ["lp", "l2"], ["b3"]),
        ],
        init=["p"],
        goal=["l", "lp", "l2"],
        facts=["l", "lp", "l2", "p", "a1", "a2", "a3", "b1", "b2", "b3"],
        name="committed-chain",
    )


def obedient_witness_task() -> Task:
    """Tiny task where lp is not reasonably ordered after l outright, but is
    once the order l before l2 is committed: the only l-adder kills lp, and
    any sequence obeying the commitment must re-achieve lp afterwards."""
    return make_task(
        actions=[
            ("(get-lp)", ["s0"], ["lp"], ["l"]),
            ("(get-l2)", ["lp"], ["l2"], []),
            ("(get-l)", ["s0"], ["l"], ["lp"]),
        ],
        init=["s0"],
        goal=["l2"],
        facts=["l", "lp", "l2", "s0"],
        name="obedient-witness",
    )
