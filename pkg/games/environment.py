"""
Game environment: a game plus the tile catalog, with a screen-in / action-out loop
"""

import logging
from typing import Dict, List, Optional, Type

import numpy as np

from arena_errors import UnknownGameError
from grid_core import Level, TileCatalog, default_catalog, render

from .config import GAME_IDS, load_game_config
from .engine import Action, Game, GameState, StepResult
from .gold_digger import GoldDigger
from .transcript import EpisodeTranscript
from .treasure_keeper import TreasureKeeper
from .water_puzzle import WaterPuzzle

logger = logging.getLogger(__name__)

GAME_CLASSES: Dict[str, Type[Game]] = {
    GoldDigger.game_id: GoldDigger,
    TreasureKeeper.game_id: TreasureKeeper,
    WaterPuzzle.game_id: WaterPuzzle,
}


def make_game(game_id: str, catalog: Optional[TileCatalog] = None) -> Game:
    if game_id not in GAME_CLASSES:
        raise UnknownGameError(game_id)
    return GAME_CLASSES[game_id](load_game_config(game_id), catalog or default_catalog())


def legal_actions(game_id: str) -> List[Action]:
    if game_id not in GAME_IDS:
        raise UnknownGameError(game_id)
    return [Action[name] for name in load_game_config(game_id).actions]


class GameEnv:
    """One episode at a time; Q-value index i maps to legal_actions[i]"""

    def __init__(self, game_id: str, catalog: Optional[TileCatalog] = None, record_transcript: bool = False):
        self.catalog = catalog or default_catalog()
        self.game = make_game(game_id, self.catalog)
        self.record_transcript = record_transcript
        self.state: Optional[GameState] = None
        self.transcript: Optional[EpisodeTranscript] = None

    @property
    def game_id(self) -> str:
        return self.game.game_id

    @property
    def legal_actions(self) -> List[Action]:
        return self.game.legal_actions

    def reset(self, level: Level, seed: int) -> np.ndarray:
        self.state = self.game.reset(level, seed)
        self.transcript = EpisodeTranscript() if self.record_transcript else None
        return render(self.state.grid, self.catalog)

    def step(self, action) -> StepResult:
        result = self.game.step(self.state, action)
        if self.transcript is not None:
            self.transcript.record(self.state, action, result.reward)
        return result

    def step_index(self, index: int) -> StepResult:
        return self.step(self.legal_actions[index])
