# Level tools: derivation operators, repair, maze generators, augmentation
from .augment import augment_levels, default_window, window_augment
from .mazes import ALGORITHMS, Maze, gen_maze, maze_to_waterpuzzle
from .operators import (
    TileEdit,
    combine,
    edits_between,
    hamming,
    mirror,
    multi_tile_change,
    single_tile_change,
    tile_codes,
)
from .repair import RepairReport, bfs_order, is_valid, repair

__all__ = [
    'augment_levels', 'default_window', 'window_augment',
    'ALGORITHMS', 'Maze', 'gen_maze', 'maze_to_waterpuzzle',
    'TileEdit', 'combine', 'edits_between', 'hamming', 'mirror', 'multi_tile_change',
    'single_tile_change', 'tile_codes', 'RepairReport', 'bfs_order', 'is_valid', 'repair',
]
