"""
🔧 LEVEL REPAIR
Rule-based check-and-fix for generated levels. Rules run in a fixed order:
border walls, orphan tiles, avatar count, WaterPuzzle key/door, GoldDigger jewel,
TreasureKeeper box. A level that passes every rule comes back unchanged with an
empty report.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, List, Set, Tuple

import numpy as np

from arena_errors import UnrepairableLevelError
from games import load_game_config
from grid_core import Level

from .operators import tile_codes

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))


@dataclass
class RepairReport:
    violations: List[str] = field(default_factory=list)
    fixes: List[str] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.violations and not self.fixes

    def add(self, violation: str, fix: str):
        self.violations.append(violation)
        self.fixes.append(fix)

    def lines(self) -> List[str]:
        if self.is_empty:
            return ["level is valid, nothing repaired"]
        return [f"- {v}: {f}" for v, f in zip(self.violations, self.fixes)]


def bfs_order(grid: np.ndarray, start: Cell, blocked: Set[int]) -> List[Cell]:
    """Cells reachable from start without entering a blocked code, in BFS order (start first)"""
    height, width = grid.shape
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        row, col = queue.popleft()
        for dr, dc in STEPS:
            nxt = (row + dr, col + dc)
            if nxt in seen or not (0 <= nxt[0] < height and 0 <= nxt[1] < width):
                continue
            if int(grid[nxt]) in blocked:
                continue
            seen.add(nxt)
            order.append(nxt)
            queue.append(nxt)
    return order


def _cells(grid: np.ndarray, code: int) -> List[Cell]:
    return [(int(r), int(c)) for r, c in np.argwhere(grid == code)]


def _touches(cell: Cell, region: Set[Cell]) -> bool:
    return any((cell[0] + dr, cell[1] + dc) in region for dr, dc in STEPS)


class LevelRepairer:
    def __init__(self, level: Level):
        self.level = level
        self.game = level.game
        self.codes = tile_codes(level)
        self.solid = {self.codes[name] for name in load_game_config(level.game).solid_tiles}
        self.grid = level.grid.copy()
        self.report = RepairReport()

    @property
    def avatar(self) -> Cell:
        return _cells(self.grid, self.codes["avatar"])[0]

    def _empty_floor(self, order: Iterable[Cell]) -> List[Cell]:
        return [cell for cell in order if int(self.grid[cell]) == self.codes["floor"]]

    # rules

    def fix_border(self):
        wall = self.codes["wall"]
        border = np.ones(self.grid.shape, dtype=bool)
        border[1:-1, 1:-1] = False
        broken = border & (self.grid != wall)
        if broken.any():
            self.grid[broken] = wall
            self.report.add(f"{int(broken.sum())} border cells are not walls", "walled the border")

    def fix_orphans(self):
        allowed = set(self.codes.values())
        orphans = ~np.isin(self.grid, list(allowed))
        if orphans.any():
            self.grid[orphans] = self.codes["floor"]
            self.report.add(f"{int(orphans.sum())} tiles outside the {self.game} legend", "turned them into floor")

    def fix_avatar(self):
        avatar, floor = self.codes["avatar"], self.codes["floor"]
        cells = _cells(self.grid, avatar)
        if len(cells) > 1:
            for cell in cells[1:]:
                self.grid[cell] = floor
            self.report.add(f"{len(cells)} avatars", f"kept the avatar at {cells[0]}")
        elif not cells:
            free = _cells(self.grid, floor)
            if not free:
                raise UnrepairableLevelError(f"'{self.level.name}' has no floor cell for the avatar")
            self.grid[free[0]] = avatar
            self.report.add("no avatar", f"placed the avatar at {free[0]}")

    def _keep_first(self, kind: str):
        cells = _cells(self.grid, self.codes[kind])
        for cell in cells[1:]:
            self.grid[cell] = self.codes["floor"]
        if len(cells) > 1:
            self.report.add(f"{len(cells)} {kind}s", f"kept the {kind} at {cells[0]}")

    def fix_key_and_door(self):
        key, door, floor = self.codes["key"], self.codes["door"], self.codes["floor"]
        self._keep_first("key")
        self._keep_first("door")

        # key must be reachable without passing through the door
        order = bfs_order(self.grid, self.avatar, self.solid | {door})
        keys = _cells(self.grid, key)
        if not keys or keys[0] not in set(order):
            candidates = self._empty_floor(order[1:])
            if not candidates:
                raise UnrepairableLevelError(f"'{self.level.name}' has no reachable cell for the key")
            if keys:
                self.grid[keys[0]] = floor
            self.grid[candidates[0]] = key
            problem = "key unreachable" if keys else "no key"
            self.report.add(problem, f"placed the key at {candidates[0]}")

        doors = _cells(self.grid, door)
        reachable = set(bfs_order(self.grid, self.avatar, self.solid | {door}))
        if doors and _touches(doors[0], reachable):
            return
        if doors:
            self.grid[doors[0]] = floor
        key_cell = _cells(self.grid, key)[0]
        for cell in self._empty_floor(bfs_order(self.grid, self.avatar, self.solid | {door})[1:]):
            self.grid[cell] = door
            if key_cell in set(bfs_order(self.grid, self.avatar, self.solid | {door})):
                problem = "door unreachable" if doors else "no door"
                self.report.add(problem, f"placed the door at {cell}")
                return
            self.grid[cell] = floor
        raise UnrepairableLevelError(f"'{self.level.name}' has no cell for a door that keeps the key reachable")

    def ensure_one(self, kind: str):
        """At least one sprite of this kind; a missing one goes to the farthest reachable floor cell"""
        if _cells(self.grid, self.codes[kind]):
            return
        candidates = self._empty_floor(bfs_order(self.grid, self.avatar, self.solid)[1:])
        if not candidates:
            raise UnrepairableLevelError(f"'{self.level.name}' has no reachable cell for a {kind}")
        self.grid[candidates[-1]] = self.codes[kind]
        self.report.add(f"no {kind}", f"placed a {kind} at {candidates[-1]}")

    def run(self) -> Tuple[Level, RepairReport]:
        self.fix_border()
        self.fix_orphans()
        self.fix_avatar()
        if self.game == "waterpuzzle":
            self.fix_key_and_door()
        elif self.game == "golddigger":
            self.ensure_one("jewel")
        elif self.game == "treasurekeeper":
            self.ensure_one("box")
        if self.report.is_empty:
            return self.level, self.report
        return self.level.with_grid(self.grid), self.report


def repair(level: Level) -> Tuple[Level, RepairReport]:
    """
    Check a level against the validity rules and fix what fails

    Returns:
        (repaired level, report); the report is empty iff the level was already valid
    """
    return LevelRepairer(level).run()


def is_valid(level: Level) -> bool:
    return repair(level)[1].is_empty
