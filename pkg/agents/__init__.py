# Agents: decision policies, Random/scripted/Arcane/meta agents, bundle files
from .agents import Agent, ArcaneAgent, MetaAgent, RandomAgent, ScriptedAgent
from .bundle import AgentBundle, ModelEntry, agent_from_file, build_agent, load_bundle
from .policies import (
    DEFAULT_SIGMA,
    DecisionPolicy,
    act_deterministic,
    act_stochastic,
    random_action,
    sample_index,
    softmax_probs,
)

__all__ = [
    'Agent', 'ArcaneAgent', 'MetaAgent', 'RandomAgent', 'ScriptedAgent',
    'AgentBundle', 'ModelEntry', 'agent_from_file', 'build_agent', 'load_bundle',
    'DEFAULT_SIGMA', 'DecisionPolicy', 'act_deterministic', 'act_stochastic',
    'random_action', 'sample_index', 'softmax_probs',
]
