"""
🧩 LEVEL OPERATORS
Test-level derivation (single/multi-tile change, half-map combination) and mirroring.
"""

from dataclasses import dataclass
from typing import Dict, List, Literal, Sequence, Tuple

import numpy as np

from arena_errors import GameMismatchError, LevelEditError
from games import load_game_config
from grid_core import Level


@dataclass(frozen=True)
class TileEdit:
    row: int
    col: int
    code: int

    @property
    def pos(self) -> Tuple[int, int]:
        return self.row, self.col


def tile_codes(level: Level) -> Dict[str, int]:
    """Tile name -> code for the level's game, read through the level's own legend"""
    config = load_game_config(level.game)
    return {name: level.legend.chars[char] for char, name in config.legend.items()}


def _apply(level: Level, edits: Sequence[TileEdit]) -> np.ndarray:
    grid = level.grid.copy()
    height, width = grid.shape
    seen = set()
    for edit in edits:
        if not (0 <= edit.row < height and 0 <= edit.col < width):
            raise LevelEditError(f"edit at {edit.pos} is outside the {height}x{width} level")
        if edit.pos in seen:
            raise LevelEditError(f"two edits target cell {edit.pos}")
        if not level.legend.allows(edit.code):
            raise LevelEditError(f"tile code {edit.code} is not part of the {level.game} legend")
        seen.add(edit.pos)
        grid[edit.pos] = edit.code

    avatars = int((grid == level.legend.avatar_code).sum())
    if avatars != 1:
        raise LevelEditError(f"edits would leave {avatars} avatars in '{level.name}'")
    return grid


def single_tile_change(level: Level, edit: TileEdit, name: str = "") -> Level:
    return level.with_grid(_apply(level, [edit]), name=name or f"{level.name}~1", notes=())


def multi_tile_change(level: Level, edits: Sequence[TileEdit], name: str = "") -> Level:
    return level.with_grid(_apply(level, list(edits)), name=name or f"{level.name}~{len(edits)}", notes=())


def place_single_avatar(grid: np.ndarray, codes: Dict[str, int]) -> np.ndarray:
    """Replace every avatar with floor, then put one on the first (row-major) floor cell"""
    grid = grid.copy()
    grid[grid == codes["avatar"]] = codes["floor"]
    floor_cells = np.argwhere(grid == codes["floor"])
    if len(floor_cells) == 0:
        raise LevelEditError("no floor cell left for the avatar")
    grid[tuple(floor_cells[0])] = codes["avatar"]
    return grid


def combine(top: Level, bottom: Level, name: str = "") -> Level:
    """Top ceil(H/2) rows from the first level, the rest from the second"""
    if top.game != bottom.game:
        raise GameMismatchError(f"cannot combine a {top.game} level with a {bottom.game} level")
    if top.shape != bottom.shape:
        raise LevelEditError(f"cannot combine {top.shape} with {bottom.shape} levels")

    split = (top.shape[0] + 1) // 2
    grid = np.vstack([top.grid[:split], bottom.grid[split:]])
    codes = tile_codes(top)
    if int((grid == codes["avatar"]).sum()) != 1:
        grid = place_single_avatar(grid, codes)
    return top.with_grid(grid, name=name or f"{top.name}+{bottom.name}", notes=())


def mirror(level: Level, axis: Literal["horizontal", "vertical"]) -> Level:
    """horizontal flips columns (left <-> right), vertical flips rows"""
    if axis == "horizontal":
        grid = level.grid[:, ::-1]
    elif axis == "vertical":
        grid = level.grid[::-1, :]
    else:
        raise ValueError(f"unknown mirror axis '{axis}'")
    return level.with_grid(grid, name=f"{level.name}-{axis[0]}", notes=())


def hamming(a: Level, b: Level) -> int:
    if a.shape != b.shape:
        raise LevelEditError("levels differ in size")
    return int((a.grid != b.grid).sum())


def edits_between(a: Level, b: Level) -> List[TileEdit]:
    """Edits turning a into b"""
    if a.shape != b.shape:
        raise LevelEditError("levels differ in size")
    return [TileEdit(int(r), int(c), int(b.grid[r, c])) for r, c in np.argwhere(a.grid != b.grid)]
