from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridexplore.core import Cell
from gridexplore.env import replay, reset, step
from gridexplore.metric import (
    Attribution,
    Case,
    CaseContractError,
    NoProgressSegment,
    advance_segment,
    classify_case,
    evaluate_states,
    evaluate_trajectory,
    gain,
    walk_readouts,
)

from helpers import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    brute_stale,
    brute_verdicts,
    make_env,
    node,
    play,
    table_episode,
)
from stale_tables import TABLES


@pytest.mark.parametrize("name", sorted(TABLES))
def test_stale_tables_on_raw_walks(name):
    rows = TABLES[name]
    walk = [Cell(*r[0]) for r in rows]
    expected = [tuple(r[1:]) for r in rows]
    assert walk_readouts(walk) == expected
    assert [brute_stale(walk[: i + 1]) for i in range(len(walk))] == expected


@pytest.mark.parametrize("name", sorted(TABLES))
def test_stale_tables_through_full_evaluation(name):
    rows = TABLES[name]
    env, rec, off = table_episode(rows)
    report = evaluate_trajectory(env, rec)
    scored = report.verdicts[off:]
    assert scored[0].progress_event
    assert [v.readout for v in scored] == [tuple(r[1:]) for r in rows]
    for v in scored[1:]:
        assert not v.progress_event
        assert v.case.case is Case.EXPLORE


def test_noop_only_touches_the_visit_count():
    seg = NoProgressSegment.fresh(Cell(0, 0))
    seg = advance_segment(seg, Cell(0, 0), Cell(0, 0), False)
    seg = advance_segment(seg, Cell(0, 0), Cell(0, 0), False)
    assert seg.readout == (0, 0, 1, 1)
    seg = advance_segment(seg, Cell(0, 0), Cell(1, 0), True)
    assert seg.readout == (0, 0, 0, 0)


def corridor(width, start_x=0):
    return ["".join("S" if x == start_x else "." for x in range(width))]


def test_case_classification_examples():
    env = make_env(corridor(4, 1), [node("A", 0, 0), node("G", 3, 0, "A", goal=True)])
    state, _ = reset(env)
    tc = classify_case(state)
    assert tc.case is Case.EXPLORE and tc.target_cells == {Cell(0, 0), Cell(2, 0)}
    state, _ = step(state, RIGHT)
    state, _ = step(state, RIGHT)
    state, _ = step(state, LEFT)
    state, _ = step(state, LEFT)
    state, _ = step(state, LEFT)
    tc = classify_case(state)
    # goal discovered earlier, A now achieved: goal pending takes precedence
    assert tc.case is Case.GOAL and tc.target_cells == {Cell(3, 0)}


def test_case_three_and_four():
    env = make_env(corridor(4, 1), [node("B", 0, 0, "A"), node("A", 2, 0), node("G", 3, 0, "B", goal=True)])
    state, _ = reset(env)
    state, _ = step(state, LEFT)
    state, _ = step(state, RIGHT)
    state, _ = step(state, RIGHT)
    tc = classify_case(state)
    assert tc.case is Case.EITHER and tc.target_cells == {Cell(3, 0), Cell(0, 0)}
    state, _ = step(state, RIGHT)
    tc = classify_case(state)
    # map now fully observed, B still pending
    assert tc.case is Case.EXPLOIT and tc.target_cells == {Cell(0, 0)}


def test_classify_refuses_finished_episode():
    env = make_env(corridor(2), [node("G", 1, 0, goal=True)])
    state, _ = reset(env)
    state, _ = step(state, RIGHT)
    with pytest.raises(CaseContractError):
        classify_case(state)


def test_gain_examples():
    env = make_env(["....", "S..."], [node("G", 3, 1, goal=True)])
    state, _ = reset(env)
    assert gain(state, Cell(1, 0), {Cell(1, 0)}) == 1
    assert gain(state, Cell(0, 0), {Cell(1, 0)}) == 0
    assert gain(state, Cell(0, 1), {Cell(3, 0)}) == 0
    assert gain(state, Cell(0, 1), {Cell(3, 0), Cell(3, 1)}) == 1


def test_eight_step_fixture():
    env = make_env(
        ["...S...."],
        [node("G", 4, 0, "A", goal=True), node("A", 5, 0)],
        budget=8,
    )
    rec = play(env, [RIGHT, None, None, RIGHT, RIGHT, LEFT, RIGHT, LEFT])
    report = evaluate_trajectory(env, rec)
    assert [v.err for v in report.verdicts] == [0, 1, 1, 0, 0, 0, 1, 0]
    assert report.case_counts == {1: 4, 2: 4, 3: 0, 4: 0}
    assert report.exploration_error == Fraction(1, 2)
    # the last step raises S but has a single target, so it is not charged
    assert report.verdicts[-1].stale_after > report.verdicts[-1].stale_before
    assert report.exploitation_error == Fraction(1, 4)
    assert report.terminal == "budget_exhausted"


PLUS = ["#..#", "....", "S...", "#..#"]


def test_case_four_loop_is_blamed_on_both():
    rows = list(PLUS)
    rows[2] = ".S.."
    env = make_env(rows, [node("B", 0, 1, "A"), node("A", 0, 2), node("G", 3, 2, "B", goal=True)])
    walk = [LEFT, RIGHT, UP, LEFT, RIGHT, RIGHT, DOWN, LEFT, UP, RIGHT, DOWN]
    report = evaluate_trajectory(env, play(env, walk))
    tail = report.verdicts[-4:]
    assert tail[0].position == Cell(2, 1)
    assert all(v.case.case is Case.EITHER for v in tail)
    assert [v.gain for v in tail] == [1, 1, 1, 1]
    assert [v.stale_after for v in tail] == [0, 0, 0, 1]
    assert [v.err for v in tail] == [0, 0, 0, 1]
    assert tail[-1].attribution is Attribution.BOTH
    assert tail[-1].readout == (1, 0, 0, 1)


def test_null_denominators():
    env = make_env(corridor(2), [node("G", 1, 0, goal=True)])
    report = evaluate_trajectory(env, play(env, []))
    assert report.exploration_error is None and report.exploitation_error is None
    summary = report.summary()
    assert summary["exploration_error"] is None
    report = evaluate_trajectory(env, play(env, [RIGHT]))
    assert report.exploration_error == 0 and report.exploitation_error is None


ROWS = ["....", ".#..", "S...", "..#."]
NODES = [
    node("A", 3, 0),
    node("B", 0, 3, "A"),
    node("C", 3, 3, "A", "B", any_of=True),
    node("G", 2, 2, "B", "C", goal=True),
]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from([UP, DOWN, LEFT, RIGHT, None]), min_size=1, max_size=50))
def test_evaluation_matches_definitional_oracle(actions):
    env = make_env(ROWS, NODES, budget=50)
    rec = play(env, actions)
    states = replay(env, rec)
    report = evaluate_states(states)
    ref = brute_verdicts(states)
    assert [(int(v.case.case), v.gain, v.err) for v in report.verdicts] == ref
    for v in report.verdicts:
        if v.err == 0:
            assert v.attribution is Attribution.NONE
        elif v.case.case is Case.EXPLORE:
            assert v.attribution is Attribution.EXPLORATION
        elif v.case.case is Case.EITHER:
            assert v.attribution is Attribution.BOTH
        else:
            assert v.attribution is Attribution.EXPLOITATION
        if v.progress_event:
            assert v.err == 0
    explore = [v for v in report.verdicts if v.case.case.needs_exploration]
    if explore:
        assert report.exploration_error == Fraction(sum(v.err for v in explore), len(explore))
    else:
        assert report.exploration_error is None
