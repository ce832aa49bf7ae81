from .chat import (
    AdapterError,
    ChatAdapterConfig,
    ChatModelAgent,
    ReplyParseError,
    extract_action,
    query_chat_model,
)
from .driver import MAX_REPROMPTS, reprompt_text, run_episode
from .knowledge import AgentKnowledge, NodeRecord, build_memory_summary, fold_observations
from .policies import (
    AGENT_KINDS,
    Agent,
    FrontierExplorer,
    OracleAgent,
    PlannerOracle,
    PolicyStuckError,
    RandomAgent,
    first_step,
    frontier_explorer_policy,
    make_agent,
    plan_next_node,
)
from .prompts import BALANCE, BASE, EXPLOITATION, EXPLORATION, STRATEGY, VARIANTS, PromptVariant, build_system_prompt

__all__ = [
    "AGENT_KINDS",
    "BALANCE",
    "BASE",
    "EXPLOITATION",
    "EXPLORATION",
    "MAX_REPROMPTS",
    "STRATEGY",
    "VARIANTS",
    "AdapterError",
    "Agent",
    "AgentKnowledge",
    "ChatAdapterConfig",
    "ChatModelAgent",
    "FrontierExplorer",
    "NodeRecord",
    "OracleAgent",
    "PlannerOracle",
    "PolicyStuckError",
    "PromptVariant",
    "RandomAgent",
    "ReplyParseError",
    "build_memory_summary",
    "build_system_prompt",
    "extract_action",
    "first_step",
    "fold_observations",
    "frontier_explorer_policy",
    "make_agent",
    "plan_next_node",
    "query_chat_model",
    "reprompt_text",
    "run_episode",
]
