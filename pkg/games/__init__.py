# Game engine: GoldDigger, TreasureKeeper, WaterPuzzle
from .config import GAME_IDS, GameConfig, load_game_config, load_level, shipped_levels
from .engine import Action, Avatar, GameState, Sprite, Status, StepResult
from .environment import GAME_CLASSES, GameEnv, legal_actions, make_game
from .transcript import EpisodeTranscript

__all__ = [
    'GAME_IDS', 'GameConfig', 'load_game_config', 'load_level', 'shipped_levels',
    'Action', 'Avatar', 'GameState', 'Sprite', 'Status', 'StepResult',
    'GAME_CLASSES', 'GameEnv', 'legal_actions', 'make_game', 'EpisodeTranscript',
]
