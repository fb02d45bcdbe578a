import pytest

from lmplan.core import PlanningError
from lmplan.instances import BLOCKSWORLD_ARM_DOMAIN, LOGISTICS_DOMAIN
from lmplan.oracles import enumerate_states
from lmplan.pddl import (
    ParseError,
    ground,
    ground_files,
    grounded_domain_pddl,
    grounded_problem_pddl,
    mangle_action_name,
    parse_domain,
    parse_plan_text,
    parse_problem,
)


def bw_problem(objects, init, goal, name="p"):
    return (
        f"(define (problem {name}) (:domain blocksworld-arm)\n"
        f"  (:objects {objects} - block)\n"
        f"  (:init {init})\n"
        f"  (:goal (and {goal})))"
    )


def test_domain_parses_four_schemas():
    d = parse_domain(BLOCKSWORLD_ARM_DOMAIN)
    assert d.name == "blocksworld-arm"
    assert [s.name for s in d.schemas] == ["pick-up", "put-down", "stack", "unstack"]
    assert d.predicates["on"] == 2
    assert d.predicates["arm-empty"] == 0


def test_empty_domain_is_valid():
    d = parse_domain("(define (domain nothing) (:predicates))")
    assert d.schemas == () and d.predicates == {}


def test_undeclared_predicate_rejected():
    text = """(define (domain bad) (:predicates (p ?x))
      (:action a :parameters (?x) :precondition (and (q ?x)) :effect (and (p ?x))))"""
    with pytest.raises(ParseError) as err:
        parse_domain(text)
    assert "undeclared predicate" in str(err.value)
    assert err.value.line == 2


def test_arity_mismatch_rejected():
    text = """(define (domain bad) (:predicates (p ?x))
      (:action a :parameters (?x ?y) :precondition (and (p ?x ?y)) :effect (and (p ?x))))"""
    with pytest.raises(ParseError) as err:
        parse_domain(text)
    assert "arity" in str(err.value)


def test_unknown_requirement_rejected():
    with pytest.raises(ParseError) as err:
        parse_domain("(define (domain bad) (:requirements :adl) (:predicates))")
    assert "requirement" in str(err.value)


def test_unbalanced_parens_report_position():
    with pytest.raises(ParseError):
        parse_domain("(define (domain bad) (:predicates)")


def test_problem_parses_demo_counts():
    d = parse_domain(BLOCKSWORLD_ARM_DOMAIN)
    text = bw_problem(
        "a b c d",
        "(on-table a) (on-table b) (on-table c) (on d c) (clear a) (clear b) (clear d) (arm-empty)",
        "(on c a) (on b d)",
    )
    p = parse_problem(text, d)
    assert len(p.init) == 8 and len(p.goal) == 2


def test_empty_goal_is_valid():
    d = parse_domain(BLOCKSWORLD_ARM_DOMAIN)
    p = parse_problem("(define (problem e) (:domain blocksworld-arm) (:objects a - block) (:init (clear a)) (:goal (and)))", d)
    assert p.goal == ()


def test_goal_with_unknown_object_rejected():
    d = parse_domain(BLOCKSWORLD_ARM_DOMAIN)
    text = "(define (problem e) (:domain blocksworld-arm) (:objects a - block) (:init) (:goal (clear zz)))"
    with pytest.raises(ParseError) as err:
        parse_problem(text, d)
    assert "unknown object" in str(err.value)


def test_two_block_grounding_yields_eight_actions():
    # hand enumeration over distinct bindings: 2 pick-up, 2 put-down,
    # 2 stack, 2 unstack
    t = ground_files(
        BLOCKSWORLD_ARM_DOMAIN,
        bw_problem("a b", "(on-table a) (on-table b) (clear a) (clear b) (arm-empty)", "(on a b)"),
    )
    assert len(t.actions) == 8
    names = {a.name for a in t.actions}
    assert names == {
        "(pick-up a)", "(pick-up b)", "(put-down a)", "(put-down b)",
        "(stack a b)", "(stack b a)", "(unstack a b)", "(unstack b a)",
    }


def test_grounding_is_deterministic():
    d = parse_domain(LOGISTICS_DOMAIN)
    from lmplan.instances import LOGISTICS_TWO_PLANES_PROBLEM

    p = parse_problem(LOGISTICS_TWO_PLANES_PROBLEM, d)
    t1, t2 = ground(d, p), ground(d, p)
    assert [f.name for f in t1.facts] == [f.name for f in t2.facts]
    assert [a.name for a in t1.actions] == [a.name for a in t2.actions]


def test_zero_object_problem_grounds_to_zero_actions():
    d = parse_domain(BLOCKSWORLD_ARM_DOMAIN)
    p = parse_problem("(define (problem z) (:domain blocksworld-arm) (:objects) (:init) (:goal (and)))", d)
    t = ground(d, p)
    assert len(t.actions) == 0


def test_relaxed_unreachable_goal_flags_unsolvable():
    t = ground_files(
        BLOCKSWORLD_ARM_DOMAIN,
        bw_problem("a b", "(on-table a) (on-table b) (clear a) (clear b)", "(on a b)"),
    )  # arm never empty: nothing can ever be picked up
    assert t.provably_unsolvable


def test_pruning_drops_relaxed_unreachable_actions(two_planes):
    # cross-city drives are type-consistent but never applicable
    assert "(drive-truck la-truck la-po boston-po la)" in two_planes.pruned_actions
    kept = {a.name for a in two_planes.actions}
    assert "(drive-truck la-truck la-po la-airport la)" in kept


@pytest.mark.parametrize("size,seed", [(3, 0), (3, 1), (4, 2), (4, 3)])
def test_pruning_is_sound_on_micro_instances(size, seed):
    # every action ever applicable in the exact space survives pruning
    from lmplan.bench import DOMAIN_TEXTS, gen_blocksworld

    d = parse_domain(DOMAIN_TEXTS["blocksworld-arm"])
    p = parse_problem(gen_blocksworld(size, "arm", seed), d)
    pruned_task = ground(d, p, prune=True)
    full_task = ground(d, p, prune=False)
    space = enumerate_states(full_task)
    used = {full_task.actions[aid].name for _, aid, _ in space.transitions}
    assert used <= {a.name for a in pruned_task.actions}


def test_grounded_pddl_round_trip(roadmap):
    text_d = grounded_domain_pddl(roadmap)
    text_p = grounded_problem_pddl(roadmap)
    t2 = ground_files(text_d, text_p)
    assert {mangle_action_name(a.name) for a in roadmap.actions} == \
        {a.name.strip("()") for a in t2.actions}
    assert sorted(roadmap.fact_names(roadmap.init)) == sorted(t2.fact_names(t2.init))
    assert sorted(roadmap.fact_names(roadmap.goal)) == sorted(t2.fact_names(t2.goal))


def test_plan_text_accepts_both_spellings(demo_bw):
    plan = parse_plan_text(demo_bw, "(unstack d c)\n; comment\n(put-down_d)\n(pick-up_c)\n")
    names = [demo_bw.actions[a].name for a in plan]
    assert names == ["(unstack d c)", "(put-down d)", "(pick-up c)"]


def test_constants_in_action_atoms_resolve(roadmap):
    assert roadmap.fact_named("(at a)").id in range(roadmap.num_facts)
    with pytest.raises(PlanningError):
        roadmap.fact_named("(at zz)")


def test_comments_and_case_are_normalized():
    d = parse_domain(
        "; a commented domain\n"
        "(define (domain CaseTest) ; trailing\n"
        "  (:predicates (P ?X))\n"
        "  (:action Move :parameters (?X) ; comment inside\n"
        "    :precondition (and (p ?x)) :effect (and (not (P ?X)))))\n"
    )
    assert d.name == "casetest"
    assert d.schemas[0].name == "move"
    p = parse_problem(
        "(define (problem UP) (:domain CaseTest) (:objects A B)\n"
        "  (:init (P A)) (:goal (and)))", d)
    assert p.objects == (("a", None), ("b", None))
    assert p.init[0].args == ("a",)


def test_mixed_typed_and_untyped_objects_rejected():
    d = parse_domain(BLOCKSWORLD_ARM_DOMAIN)
    with pytest.raises(ParseError) as err:
        parse_problem(
            "(define (problem m) (:domain blocksworld-arm)"
            " (:objects a - block b) (:init) (:goal (and)))", d)
    assert "mixed" in str(err.value)
