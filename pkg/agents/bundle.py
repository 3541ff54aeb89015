"""
Agent bundle files

A bundle is a small JSON document naming an agent and what it plays with:
  {"name": "Arcane", "kind": "arcane", "policy": "stoch", "sigma": 10,
   "models": [{"game": "golddigger", "path": "models/golddigger.bin"}]}
Model paths are resolved relative to the bundle file. A bundle without "sigma" uses the
caller's default (ARENA_SIGMA for the CLI and the API).
"""

import logging
from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from arena_errors import AgentBundleError, ArenaError
from games import GAME_IDS
from grid_core import TileCatalog
from neural import DUAL, GLOBAL_ONLY, load_params

from .agents import Agent, ArcaneAgent, MetaAgent, RandomAgent, ScriptedAgent
from .policies import DEFAULT_SIGMA, DecisionPolicy

logger = logging.getLogger(__name__)


class ModelEntry(BaseModel):
    game: str
    path: str

    @model_validator(mode="after")
    def _known_game(self):
        if self.game not in GAME_IDS:
            raise ValueError(f"unknown game '{self.game}'")
        return self


class AgentBundle(BaseModel):
    name: str = Field(min_length=1)
    kind: Literal["arcane", "global_only", "random", "scripted"]
    policy: Literal["det", "stoch"] = "det"
    sigma: Optional[float] = Field(None, gt=0)
    models: List[ModelEntry] = Field(default_factory=list)
    actions: List[str] = Field(default_factory=list)
    repeat: bool = True

    @model_validator(mode="after")
    def _kind_fields(self):
        if self.kind in ("arcane", "global_only") and not self.models:
            raise ValueError(f"'{self.kind}' bundles need at least one model")
        if self.kind == "scripted" and not self.actions:
            raise ValueError("scripted bundles need an action list")
        return self


def load_bundle(path: Union[str, Path]) -> AgentBundle:
    path = Path(path)
    try:
        return AgentBundle.model_validate_json(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise AgentBundleError(f"bundle file not found: {path}") from e
    except ValidationError as e:
        raise AgentBundleError(f"invalid bundle {path}: {e}") from e


def build_agent(bundle: AgentBundle, base_dir: Union[str, Path] = ".",
                catalog: Optional[TileCatalog] = None, default_sigma: float = DEFAULT_SIGMA) -> Agent:
    if bundle.kind == "random":
        return RandomAgent(bundle.name)
    if bundle.kind == "scripted":
        try:
            return ScriptedAgent(bundle.name, bundle.actions, repeat=bundle.repeat)
        except KeyError as e:
            raise AgentBundleError(f"bundle '{bundle.name}' names an unknown action {e}") from e

    variant = DUAL if bundle.kind == "arcane" else GLOBAL_ONLY
    policy = DecisionPolicy(bundle.policy, default_sigma if bundle.sigma is None else bundle.sigma)
    meta = MetaAgent(bundle.name)
    for entry in bundle.models:
        model_path = Path(base_dir) / entry.path
        try:
            net = load_params(model_path, expected_variant=variant)
            agent = ArcaneAgent(f"{bundle.name}/{entry.game}", entry.game, net, policy, catalog)
            meta.register(agent.screen_size, agent)
        except FileNotFoundError as e:
            raise AgentBundleError(f"model file not found: {model_path}") from e
        except ArenaError as e:
            raise AgentBundleError(f"bundle '{bundle.name}', model {model_path}: {e}") from e
    logger.info(f"🤖 Built {bundle.kind} agent '{bundle.name}' with {len(meta.table)} models, policy {policy.describe()}")
    return meta


def agent_from_file(path: Union[str, Path], catalog: Optional[TileCatalog] = None,
                    default_sigma: float = DEFAULT_SIGMA) -> Agent:
    path = Path(path)
    return build_agent(load_bundle(path), path.parent, catalog, default_sigma)
