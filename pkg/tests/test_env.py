import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridexplore.core import Cell, Direction
from gridexplore.env import (
    WITH_SUMMARY,
    CellState,
    EpisodeOverError,
    NodeStatus,
    Observation,
    ReplayDivergence,
    Terminal,
    TrajectoryFormatError,
    TrajectoryRecord,
    format_prerequisites,
    pending_set,
    render_observation,
    replay,
    reset,
    step,
)

from helpers import DOWN, LEFT, RIGHT, UP, brute_sets, fixpoint_achieved, make_env, node, play


def corridor(width, start_x=0):
    return ["".join("S" if x == start_x else "." for x in range(width))]


def test_reset_reveals_start_and_neighbours():
    env = make_env(["...", ".S.", "..."], [node("G", 0, 0, goal=True)])
    state, obs = reset(env)
    assert state.observed == {Cell(1, 1)}
    assert state.unobserved == {Cell(1, 0), Cell(1, 2), Cell(0, 1), Cell(2, 1)}
    assert state.cell_state(Cell(0, 0)) is CellState.UNKNOWN
    assert obs.admissible == (UP, DOWN, LEFT, RIGHT)
    assert state.t == 0 and state.running


def test_reset_in_corridor_has_two_unobserved():
    env = make_env(corridor(5, 2), [node("G", 4, 0, goal=True)])
    state, _ = reset(env)
    assert state.unobserved == {Cell(1, 0), Cell(3, 0)}


def test_source_node_is_achieved_on_arrival():
    env = make_env(corridor(4), [node("A", 1, 0), node("G", 3, 0, "A", goal=True)])
    state, _ = reset(env)
    state, obs = step(state, RIGHT)
    assert state.status("A") is NodeStatus.ACHIEVED
    assert obs.discovery.activated and obs.discovery.first_visit
    assert state.last_events == ("discovered:A", "achieved:A")


def test_blocked_node_activates_on_a_later_visit():
    env = make_env(corridor(4, 1), [node("B", 0, 0, "A"), node("A", 2, 0), node("G", 3, 0, "B", goal=True)])
    state, _ = reset(env)
    state, obs = step(state, LEFT)
    assert state.status("B") is NodeStatus.DISCOVERED and not obs.discovery.activated
    assert pending_set(state) == frozenset()
    state, _ = step(state, RIGHT)
    state, _ = step(state, RIGHT)
    assert pending_set(state) == {"B"}
    state, _ = step(state, LEFT)
    state, obs = step(state, LEFT)
    assert state.status("B") is NodeStatus.ACHIEVED
    assert not obs.discovery.first_visit and obs.discovery.activated
    assert render_observation(obs).startswith("OBSERVATION: You are at [0, 0]. You activated state B!")


def test_standing_still_does_not_activate():
    env = make_env(corridor(3), [node("A", 0, 0), node("G", 2, 0, "A", goal=True)])
    # A sits on the start cell; arrival never happened, so nothing is discovered
    state, _ = reset(env)
    state, _ = step(state, None)
    assert state.status("A") is NodeStatus.UNDISCOVERED


def test_noop_and_blocked_move_consume_time():
    env = make_env(corridor(3), [node("G", 2, 0, goal=True)], budget=5)
    state, _ = reset(env)
    state, _ = step(state, None)
    state, obs = step(state, DOWN)
    assert state.position == Cell(0, 0)
    assert state.t == 2 and state.steps_remaining == 3 and obs.steps_spent == 2


def test_budget_one_exhausts_and_then_refuses():
    env = make_env(corridor(3), [node("G", 2, 0, goal=True)], budget=1)
    state, _ = reset(env)
    state, _ = step(state, RIGHT)
    assert state.terminal is Terminal.BUDGET_EXHAUSTED
    with pytest.raises(EpisodeOverError):
        step(state, RIGHT)


def test_goal_on_last_step_counts_as_success():
    env = make_env(corridor(2), [node("G", 1, 0, goal=True)], budget=1)
    state, _ = reset(env)
    state, _ = step(state, RIGHT)
    assert state.terminal is Terminal.SUCCESS


def test_pending_examples():
    env = make_env(
        corridor(5, 2),
        [node("A", 0, 0), node("B", 1, 0, "A"), node("C", 3, 0), node("G", 4, 0, "B", "C", goal=True)],
    )
    state, _ = reset(env)
    state, _ = step(state, LEFT)
    assert state.status("B") is NodeStatus.DISCOVERED
    assert pending_set(state) == frozenset()
    state, _ = step(state, LEFT)
    assert pending_set(state) == {"B"}


def test_observation_text_nothing_here():
    obs = Observation(Cell(7, 0), (UP,), 3)
    assert render_observation(obs) == "OBSERVATION: You are at [7, 0]. You found nothing here.\nAvailable directions: up"


def test_observation_text_discovery():
    env = make_env(
        ["..", "..", "S."],
        [
            node("U_02", 0, 1),
            node("R_01", 1, 1, "U_02"),
            node("G_00", 1, 2, "U_02", "R_01", goal=True),
        ],
    )
    state, _ = reset(env)
    state, obs = step(state, UP)
    assert render_observation(obs) == (
        "OBSERVATION: You are at [0, 1]. You discovered state U_02. U_02 has no prerequisites and is "
        "immediately activated! U_02 has ancestors: R_01, G_00.\nAvailable directions: up, down, right"
    )


def test_observation_text_requirements():
    pre = (("A",), ("B", "C"))
    assert format_prerequisites(pre) == "A or (B and C)"
    env = make_env(corridor(3), [node("A", 2, 0), node("G", 1, 0, "A", goal=True)])
    state, _ = reset(env)
    state, obs = step(state, RIGHT)
    assert render_observation(obs) == (
        "OBSERVATION: You are at [1, 0]. You discovered state G. G requires A. G is not activated yet. "
        "G is the goal state.\nAvailable directions: left, right"
    )
    assert render_observation(obs, WITH_SUMMARY) == (
        "OBSERVATION: You are at [1, 0]. You found G which is not activated yet. "
        "To activate it, you should find A first. G is the goal state. "
        "Your available action is left or right. You spent 1 steps."
    )


def test_trajectory_round_trip_and_replay(tmp_path):
    env = make_env(corridor(4), [node("A", 1, 0), node("G", 3, 0, "A", goal=True)])
    rec = play(env, [RIGHT, None, RIGHT, RIGHT])
    assert rec.terminal == "success"
    path = rec.save(tmp_path / "t.jsonl")
    back = TrajectoryRecord.load(path)
    assert back.dumps() == rec.dumps()
    states = replay(env, back)
    assert [s.position for s in states] == [Cell(0, 0), Cell(1, 0), Cell(1, 0), Cell(2, 0), Cell(3, 0)]


def test_replay_divergence_reports_line():
    env = make_env(corridor(4), [node("G", 3, 0, goal=True)])
    rec = play(env, [RIGHT, RIGHT])
    rec.turns[2]["position"] = [0, 0]
    with pytest.raises(ReplayDivergence) as err:
        replay(env, rec)
    assert err.value.index == 3


def test_bad_trajectory_text_rejected():
    with pytest.raises(TrajectoryFormatError):
        TrajectoryRecord.loads('{"type": "turn"}\n')
    with pytest.raises(TrajectoryFormatError):
        TrajectoryRecord.loads("not json\n")


ROWS = ["....", ".#..", "S...", "..#."]
NODES = [
    node("A", 3, 0),
    node("B", 0, 3, "A"),
    node("C", 3, 3, "A", "B", any_of=True),
    node("G", 2, 2, "B", "C", goal=True),
]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from([UP, DOWN, LEFT, RIGHT, None]), max_size=60))
def test_state_invariants_under_random_actions(actions):
    env = make_env(ROWS, NODES, budget=60)
    state, _ = reset(env)
    positions = [state.position]
    prev_achieved = set()
    for a in actions:
        if not state.running:
            break
        state, _ = step(state, a)
        positions.append(state.position)
        pending, unobserved = brute_sets(state)
        assert set(pending_set(state)) == pending
        assert set(state.unobserved) == unobserved
        assert not (state.observed & state.unobserved)
        assert all(c in env.grid.traversable for c in state.observed | state.unobserved)
        assert prev_achieved <= state.achieved
        prev_achieved = set(state.achieved)
        assert state.achieved == fixpoint_achieved(env, positions)
