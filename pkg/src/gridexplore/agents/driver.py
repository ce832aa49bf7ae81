"""Run one agent through one episode and record the trajectory."""

from __future__ import annotations

import logging

from ..env.state import Terminal, reset, step
from ..env.text import join_or
from ..env.trajectory import TrajectoryRecord, action_to_str, turn_record
from ..gen.environment import Environment
from .chat import AdapterError
from .knowledge import AgentKnowledge
from .policies import Agent

log = logging.getLogger(__name__)

MAX_REPROMPTS = 3


def reprompt_text(proposal, admissible) -> str:
    said = proposal.value if proposal is not None else "nothing valid"
    moves = join_or([d.value for d in admissible])
    return f"Your action {said} is not available here. Your available action is {moves}. Reply with one JSON object."


def run_episode(env: Environment, agent: Agent, seed: int = 0, max_reprompts: int = MAX_REPROMPTS) -> TrajectoryRecord:
    """Drive ``agent`` until the episode ends.

    Rejected answers are re-prompted without spending a timestep; after
    ``max_reprompts`` rejections the turn is a no-op. An adapter failure
    stops the episode with terminal ``aborted``.
    """
    agent.begin(env, seed)
    state, obs = reset(env)
    knowledge = AgentKnowledge().observe(obs)
    rec = TrajectoryRecord(environment=env, seed=seed, agent=agent.describe())
    rec.turns.append(turn_record(state, obs, None))
    while state.running:
        text = agent.prompt_text(obs, knowledge)
        action = None
        try:
            for attempt in range(max_reprompts + 1):
                proposal = agent.act(obs, text, knowledge)
                if proposal in obs.admissible:
                    action = proposal
                    break
                log.info("t=%d rejected %r (attempt %d)", state.t, proposal, attempt)
                text = reprompt_text(proposal, obs.admissible)
        except AdapterError as exc:
            rec.terminal = Terminal.ABORTED.value
            rec.error = str(exc)
            break
        state, obs = step(state, action)
        knowledge = knowledge.observe(obs)
        rec.turns.append(turn_record(state, obs, action_to_str(action)))
    else:
        rec.terminal = state.terminal.value
    return rec
