"""
Game configuration files and shipped level lookup
"""

from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from arena_errors import UnknownGameError
from grid_core import Legend, Level, TileCatalog, default_catalog, read_level

CONFIG_DIR = Path(__file__).parent / "configs"
LEVELS_DIR = Path(__file__).parent / "levels"

GAME_IDS = ("golddigger", "treasurekeeper", "waterpuzzle")

STATUS_NAMES = ("PLAYER_WINS", "PLAYER_LOSES", "NO_WINNER")
ACTION_NAMES = ("NIL", "UP", "DOWN", "LEFT", "RIGHT", "USE")


class GameConfig(BaseModel):
    id: str
    name: str
    screen: Tuple[int, int]
    max_ticks: int = Field(gt=0)
    timeout_status: str
    actions: List[str]
    legend: Dict[str, str]
    avatar_char: str
    solid_tiles: List[str]
    scores: Dict[str, int]

    @field_validator("timeout_status")
    @classmethod
    def _known_status(cls, value: str) -> str:
        if value not in STATUS_NAMES:
            raise ValueError(f"timeout_status must be one of {STATUS_NAMES}")
        return value

    @field_validator("actions")
    @classmethod
    def _known_actions(cls, value: List[str]) -> List[str]:
        unknown = [name for name in value if name not in ACTION_NAMES]
        if unknown:
            raise ValueError(f"unknown actions {unknown}")
        return value

    @property
    def screen_pixels(self) -> Tuple[int, int]:
        """Screen size in pixels (height, width)"""
        return self.screen[0] * 10, self.screen[1] * 10

    def legend_for(self, catalog: TileCatalog) -> Legend:
        chars = {char: catalog.code(tile) for char, tile in self.legend.items()}
        return Legend(game=self.id, chars=chars, avatar_char=self.avatar_char, screen=tuple(self.screen))


@lru_cache(maxsize=None)
def load_game_config(game_id: str) -> GameConfig:
    if game_id not in GAME_IDS:
        raise UnknownGameError(game_id)
    path = CONFIG_DIR / f"{game_id}.json"
    return GameConfig.model_validate_json(path.read_text(encoding="utf-8"))


def game_of_level_file(path: Union[str, Path]) -> str:
    """Level files are named '<game>-<tag>.txt'"""
    game_id = Path(path).stem.split("-")[0].lower()
    if game_id not in GAME_IDS:
        raise UnknownGameError(game_id)
    return game_id


def load_level(
    path_or_name: Union[str, Path],
    game_id: Optional[str] = None,
    catalog: Optional[TileCatalog] = None,
    enforce_screen: Optional[bool] = None,
) -> Level:
    """Load a level file, or a shipped level by name ('golddigger-0', 'golddigger-mini-corridor')"""
    path = Path(path_or_name)
    if not path.suffix and not path.exists():
        path = LEVELS_DIR / f"{path_or_name}.txt"
    game_id = game_id or game_of_level_file(path)
    if enforce_screen is None:
        enforce_screen = "-mini-" not in path.stem
    config = load_game_config(game_id)
    legend = config.legend_for(catalog or default_catalog())
    return read_level(path, legend, enforce_screen=enforce_screen)


def shipped_levels(game_id: str, include_mini: bool = False) -> List[Path]:
    load_game_config(game_id)
    paths = sorted(LEVELS_DIR.glob(f"{game_id}-*.txt"))
    if not include_mini:
        paths = [p for p in paths if "-mini-" not in p.stem]
    return paths
