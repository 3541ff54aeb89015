"""
Training-set augmentation ("+DA" agents)

GoldDigger / TreasureKeeper: the training levels, their horizontal and vertical
mirrors, and window-pasted levels sampled from those. WaterPuzzle: the training
levels plus two key/door placements on one maze from each generator.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from arena_errors import GameMismatchError, LevelEditError
from grid_core import Level, TileCatalog

from .mazes import ALGORITHMS, gen_maze, maze_to_waterpuzzle
from .operators import mirror
from .repair import repair

logger = logging.getLogger(__name__)

LEVELS_PER_MAZE = 2


def window_augment(
    sources: Sequence[Level],
    window: Tuple[int, int],
    target: Tuple[int, int],
    rng: np.random.Generator,
    name: str = "",
) -> Level:
    """
    Fill a target-sized level with windows cut from random sources, then repair it

    The target is tiled by non-overlapping windows in row-major order; each window
    comes from a uniformly chosen source at a uniformly chosen in-bounds offset.
    """
    if not sources:
        raise LevelEditError("window augmentation needs at least one source level")
    games = {level.game for level in sources}
    if len(games) > 1:
        raise GameMismatchError(f"window sources mix games: {sorted(games)}")
    wh, ww = window
    th, tw = target
    if wh <= 0 or ww <= 0 or th % wh or tw % ww:
        raise LevelEditError(f"{wh}x{ww} windows do not tile a {th}x{tw} level")
    for level in sources:
        if level.shape[0] < wh or level.shape[1] < ww:
            raise LevelEditError(f"{wh}x{ww} window does not fit in '{level.name}' {level.shape}")

    grid = np.zeros((th, tw), dtype=np.int64)
    for top in range(0, th, wh):
        for left in range(0, tw, ww):
            source = sources[int(rng.integers(len(sources)))]
            r0 = int(rng.integers(source.shape[0] - wh + 1))
            c0 = int(rng.integers(source.shape[1] - ww + 1))
            grid[top:top + wh, left:left + ww] = source.grid[r0:r0 + wh, c0:c0 + ww]

    base = sources[0]
    draft = Level(grid=grid, game=base.game, legend=base.legend, name=name or f"{base.game}-window")
    repaired, report = repair(draft)
    if not report.is_empty:
        logger.debug(f"🔧 {draft.name} repaired: {'; '.join(report.fixes)}")
    return repaired


def default_window(shape: Tuple[int, int]) -> Tuple[int, int]:
    """Largest divisor of each side that is at most half of it"""
    def side(n: int) -> int:
        return max([d for d in range(1, n // 2 + 1) if n % d == 0] or [n])
    return side(shape[0]), side(shape[1])


def augment_levels(
    game_id: str,
    levels: Sequence[Level],
    rng: np.random.Generator,
    n_windows: int = 4,
    window: Optional[Tuple[int, int]] = None,
    catalog: Optional[TileCatalog] = None,
) -> List[Level]:
    levels = list(levels)
    if not levels:
        raise LevelEditError("nothing to augment")
    for level in levels:
        if level.game != game_id:
            raise GameMismatchError(f"level '{level.name}' belongs to {level.game}, not {game_id}")

    if game_id == "waterpuzzle":
        height, width = levels[0].shape
        augmented = list(levels)
        for algorithm in ALGORITHMS:
            maze = gen_maze((height - 1) // 2, (width - 1) // 2, algorithm, rng)
            for index in range(LEVELS_PER_MAZE):
                augmented.append(
                    maze_to_waterpuzzle(maze, rng, catalog, name=f"waterpuzzle-{algorithm}-{index}")
                )
    else:
        augmented = []
        for level in levels:
            augmented.extend([level, mirror(level, "horizontal"), mirror(level, "vertical")])
        shape = levels[0].shape
        window = window or default_window(shape)
        sources = list(augmented)
        for index in range(n_windows):
            augmented.append(window_augment(sources, window, shape, rng, name=f"{game_id}-window-{index}"))

    logger.info(f"🧩 Augmented {len(levels)} {game_id} levels to {len(augmented)}")
    return augmented
