"""
Perfect-maze generators for WaterPuzzle levels: randomized Prim, recursive
division, union-find (Kruskal) and recursive backtracking

A maze of H x W cells becomes a (2H+1) x (2W+1) tile grid: cell (i, j) sits on
tile (2i+1, 2j+1) and every passage opens the wall tile between its two cells.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from arena_errors import LevelEditError
from games import load_game_config
from grid_core import Level, TileCatalog, default_catalog

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
Edge = Tuple[Cell, Cell]
STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))
ALGORITHMS = ("prim", "division", "unionfind", "backtrack")


def edge(a: Cell, b: Cell) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Maze:
    height: int
    width: int
    passages: FrozenSet[Edge]
    algorithm: str = ""

    @property
    def cells(self) -> List[Cell]:
        return [(r, c) for r in range(self.height) for c in range(self.width)]

    def neighbours(self, cell: Cell) -> List[Cell]:
        result = []
        for dr, dc in STEPS:
            other = (cell[0] + dr, cell[1] + dc)
            if edge(cell, other) in self.passages:
                result.append(other)
        return result

    def path(self, start: Cell, goal: Cell) -> List[Cell]:
        """The cell path from start to goal (unique in a perfect maze)"""
        parents: Dict[Cell, Optional[Cell]] = {start: None}
        stack = [start]
        while stack:
            cell = stack.pop()
            if cell == goal:
                break
            for other in self.neighbours(cell):
                if other not in parents:
                    parents[other] = cell
                    stack.append(other)
        if goal not in parents:
            return []
        route = [goal]
        while parents[route[-1]] is not None:
            route.append(parents[route[-1]])
        return route[::-1]

    def is_perfect(self) -> bool:
        """Connected and acyclic, i.e. the passages form a spanning tree"""
        if len(self.passages) != self.height * self.width - 1:
            return False
        seen = {(0, 0)}
        stack = [(0, 0)]
        while stack:
            for other in self.neighbours(stack.pop()):
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        return len(seen) == self.height * self.width

    def to_tiles(self) -> np.ndarray:
        """Boolean wall mask of the (2H+1) x (2W+1) tile grid"""
        walls = np.ones((2 * self.height + 1, 2 * self.width + 1), dtype=bool)
        walls[1::2, 1::2] = False
        for (r1, c1), (r2, c2) in self.passages:
            walls[r1 + r2 + 1, c1 + c2 + 1] = False
        return walls


def _in_grid(cell: Cell, height: int, width: int) -> bool:
    return 0 <= cell[0] < height and 0 <= cell[1] < width


def _grid_edges(height: int, width: int) -> List[Edge]:
    edges = []
    for r in range(height):
        for c in range(width):
            if r + 1 < height:
                edges.append(((r, c), (r + 1, c)))
            if c + 1 < width:
                edges.append(((r, c), (r, c + 1)))
    return edges


def prim(height: int, width: int, rng: np.random.Generator) -> Set[Edge]:
    """Randomized Prim: grow a tree by a uniformly chosen frontier edge"""
    start = (int(rng.integers(height)), int(rng.integers(width)))
    tree = {start}
    frontier: List[Edge] = []
    passages: Set[Edge] = set()

    def expand(cell: Cell):
        for dr, dc in STEPS:
            other = (cell[0] + dr, cell[1] + dc)
            if _in_grid(other, height, width) and other not in tree:
                frontier.append((cell, other))

    expand(start)
    while frontier:
        index = int(rng.integers(len(frontier)))
        frontier[index], frontier[-1] = frontier[-1], frontier[index]
        inside, outside = frontier.pop()
        if outside in tree:
            continue
        tree.add(outside)
        passages.add(edge(inside, outside))
        expand(outside)
    return passages


def division(height: int, width: int, rng: np.random.Generator) -> Set[Edge]:
    """Recursive division (iterative): split chambers by a wall with one gap"""
    passages = set(_grid_edges(height, width))
    chambers = [(0, 0, height, width)]
    while chambers:
        top, left, h, w = chambers.pop()
        if h < 2 and w < 2:
            continue
        if h > w or (h == w and rng.random() < 0.5):
            split = top + int(rng.integers(h - 1))
            gap = left + int(rng.integers(w))
            for c in range(left, left + w):
                if c != gap:
                    passages.discard(((split, c), (split + 1, c)))
            chambers.append((top, left, split - top + 1, w))
            chambers.append((split + 1, left, top + h - split - 1, w))
        else:
            split = left + int(rng.integers(w - 1))
            gap = top + int(rng.integers(h))
            for r in range(top, top + h):
                if r != gap:
                    passages.discard(((r, split), (r, split + 1)))
            chambers.append((top, left, h, split - left + 1))
            chambers.append((top, split + 1, h, left + w - split - 1))
    return passages


def unionfind(height: int, width: int, rng: np.random.Generator) -> Set[Edge]:
    """Kruskal-style: remove walls in random order when they join two disjoint sets"""
    parent = {cell: cell for cell in ((r, c) for r in range(height) for c in range(width))}

    def find(cell: Cell) -> Cell:
        while parent[cell] != cell:
            parent[cell] = parent[parent[cell]]
            cell = parent[cell]
        return cell

    walls = _grid_edges(height, width)
    passages: Set[Edge] = set()
    for index in rng.permutation(len(walls)):
        a, b = walls[int(index)]
        root_a, root_b = find(a), find(b)
        if root_a != root_b:
            parent[root_a] = root_b
            passages.add((a, b))
    return passages


def backtrack(height: int, width: int, rng: np.random.Generator) -> Set[Edge]:
    """Recursive backtracker (iterative depth-first carving)"""
    start = (int(rng.integers(height)), int(rng.integers(width)))
    visited = {start}
    stack = [start]
    passages: Set[Edge] = set()
    while stack:
        cell = stack[-1]
        options = [
            (cell[0] + dr, cell[1] + dc)
            for dr, dc in STEPS
            if _in_grid((cell[0] + dr, cell[1] + dc), height, width) and (cell[0] + dr, cell[1] + dc) not in visited
        ]
        if not options:
            stack.pop()
            continue
        other = options[int(rng.integers(len(options)))]
        visited.add(other)
        passages.add(edge(cell, other))
        stack.append(other)
    return passages


GENERATORS: Dict[str, Callable[[int, int, np.random.Generator], Set[Edge]]] = {
    "prim": prim,
    "division": division,
    "unionfind": unionfind,
    "backtrack": backtrack,
}


def gen_maze(height: int, width: int, algorithm: str, rng: np.random.Generator) -> Maze:
    if height < 1 or width < 1:
        raise ValueError("maze needs at least one cell")
    if algorithm not in GENERATORS:
        raise ValueError(f"unknown maze algorithm '{algorithm}', choose from {ALGORITHMS}")
    passages = GENERATORS[algorithm](height, width, rng)
    return Maze(height, width, frozenset(edge(a, b) for a, b in passages), algorithm)


def _tile(cell: Cell) -> Cell:
    return 2 * cell[0] + 1, 2 * cell[1] + 1


def maze_to_waterpuzzle(maze: Maze, rng: np.random.Generator, catalog: Optional[TileCatalog] = None,
                        name: str = "", max_draws: int = 1000) -> Level:
    """
    Place avatar, key and door on three distinct random cells

    Draws are repeated until the door is off the avatar-to-key path, so the key can
    be fetched before the door is ever touched.
    """
    cells = maze.cells
    if len(cells) < 3:
        raise LevelEditError("a WaterPuzzle maze needs at least 3 cells")

    config = load_game_config("waterpuzzle")
    legend = config.legend_for(catalog or default_catalog())
    codes = {name_: legend.chars[char] for char, name_ in config.legend.items()}

    for _ in range(max_draws):
        avatar, key, door = (cells[int(i)] for i in rng.choice(len(cells), size=3, replace=False))
        if door not in maze.path(avatar, key):
            break
    else:
        raise LevelEditError(f"no valid key/door placement found in {max_draws} draws")

    grid = np.where(maze.to_tiles(), codes["wall"], codes["floor"]).astype(np.int64)
    grid[_tile(avatar)] = codes["avatar"]
    grid[_tile(key)] = codes["key"]
    grid[_tile(door)] = codes["door"]
    return Level(grid=grid, game="waterpuzzle", legend=legend, name=name or f"waterpuzzle-{maze.algorithm}")
