"""
🤖 AGENTS
Everything the arena can put on a level: the Random baseline, scripted players,
single-game Arcane agents (dual or global-only nets) and the meta-agent that
picks a per-game agent from the screen size.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from arena_errors import DuplicateScreenError, ShapeMismatchError
from games import Action, legal_actions
from grid_core import TILE_SIZE, TileCatalog, default_catalog
from neural import ArcaneNet, NetConfig
from observation import observe

from .policies import DecisionPolicy, random_action

logger = logging.getLogger(__name__)

ScreenSize = Tuple[int, int]


class Agent:
    """An agent sees RGB screens and answers with one of the legal actions"""

    name = "agent"

    def begin_episode(self):
        """Called before every episode"""

    def act(self, screen: np.ndarray, actions: Sequence[Action], rng: np.random.Generator) -> Action:
        raise NotImplementedError


class RandomAgent(Agent):
    def __init__(self, name: str = "Random"):
        self.name = name

    def act(self, screen, actions, rng) -> Action:
        return actions[random_action(len(actions), rng)]


class ScriptedAgent(Agent):
    """Plays a fixed action list; repeats it when repeat=True, otherwise idles with NIL"""

    def __init__(self, name: str, actions: Sequence[str], repeat: bool = True):
        if not actions:
            raise ValueError("scripted agent needs at least one action")
        self.name = name
        self.script: List[Action] = [Action[a] if isinstance(a, str) else Action(a) for a in actions]
        self.repeat = repeat
        self._cursor = 0

    def begin_episode(self):
        self._cursor = 0

    def act(self, screen, actions, rng) -> Action:
        if self._cursor >= len(self.script) and not self.repeat:
            return Action.NIL
        action = self.script[self._cursor % len(self.script)]
        self._cursor += 1
        return action


class ArcaneAgent(Agent):
    """One trained net for one game; Q index i maps to the game's i-th legal action"""

    def __init__(self, name: str, game_id: str, net: ArcaneNet, policy: Optional[DecisionPolicy] = None,
                 catalog: Optional[TileCatalog] = None):
        self.name = name
        self.game_id = game_id
        self.net = net
        self.policy = policy or DecisionPolicy()
        self.catalog = catalog or default_catalog()
        self.game_actions = legal_actions(game_id)
        self._check_net(net.config)

    def _check_net(self, config: NetConfig):
        if config.n_actions != len(self.game_actions):
            raise ShapeMismatchError(
                f"net emits {config.n_actions} Q-values but {self.game_id} has {len(self.game_actions)} actions"
            )

    @property
    def screen_size(self) -> ScreenSize:
        """Pixel size of the screens the net was built for"""
        gh, gw = self.net.config.global_shape
        return (gh + 1) // 2 * TILE_SIZE, (gw + 1) // 2 * TILE_SIZE

    def q_values(self, screen: np.ndarray) -> np.ndarray:
        return self.net.forward(observe(screen, self.catalog))

    def act(self, screen, actions, rng) -> Action:
        return self.game_actions[self.policy.choose(self.q_values(screen), rng)]


class MetaAgent(Agent):
    """Dispatches on screen size (pixel height, width); unknown sizes go to the fallback"""

    def __init__(self, name: str, fallback: Optional[Agent] = None):
        self.name = name
        self.fallback = fallback or RandomAgent()
        self.table: Dict[ScreenSize, Agent] = {}

    def register(self, screen_size: ScreenSize, agent: Agent):
        screen_size = tuple(int(v) for v in screen_size)
        if screen_size in self.table:
            raise DuplicateScreenError(screen_size)
        self.table[screen_size] = agent

    def resolve(self, screen: np.ndarray) -> Agent:
        return self.table.get(tuple(screen.shape[:2]), self.fallback)

    def begin_episode(self):
        for agent in self.table.values():
            agent.begin_episode()
        self.fallback.begin_episode()

    def act(self, screen, actions, rng) -> Action:
        return self.resolve(screen).act(screen, actions, rng)
