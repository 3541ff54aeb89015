"""
Grid Game Engine
Shared episode state machine for the three competition games: sprites on a static
floor layer, seeded monsters, tick accounting and termination
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, List, Optional, Tuple

import numpy as np

from arena_errors import EpisodeTerminatedError, GameMismatchError, IllegalActionError
from grid_core import Level, TileCatalog, render

from .config import GameConfig

Position = Tuple[int, int]


class Action(IntEnum):
    NIL = 0
    UP = 1
    DOWN = 2
    LEFT = 3
    RIGHT = 4
    USE = 5


class Status(str, Enum):
    PLAYER_WINS = "PLAYER_WINS"
    PLAYER_LOSES = "PLAYER_LOSES"
    NO_WINNER = "NO_WINNER"
    RUNNING = "RUNNING"


DIRECTIONS: Dict[Action, Position] = {
    Action.UP: (-1, 0),
    Action.DOWN: (1, 0),
    Action.LEFT: (0, -1),
    Action.RIGHT: (0, 1),
}

# Layer order when composing the grid; later kinds are drawn on top
SPRITE_KINDS = ("jewel", "box", "key", "door", "monster")
STATIC_TILES = ("floor", "wall", "obstacle")


def offset(pos: Position, action: Action) -> Position:
    dr, dc = DIRECTIONS[action]
    return pos[0] + dr, pos[1] + dc


@dataclass
class Sprite:
    kind: str
    pos: Position


@dataclass
class Avatar:
    pos: Position
    facing: Action = Action.DOWN
    has_key: bool = False


@dataclass
class GameState:
    game: str
    level_name: str
    floor: np.ndarray
    sprites: List[Sprite]
    avatar: Avatar
    rng: np.random.Generator
    params: Dict[str, int]
    codes: Dict[str, int]
    tick: int = 0
    score: int = 0
    status: Status = Status.RUNNING
    kills: int = 0
    collected: int = 0

    @property
    def running(self) -> bool:
        return self.status is Status.RUNNING

    @property
    def grid(self) -> np.ndarray:
        """Tile codes as drawn on screen (topmost sprite per cell, avatar on top)"""
        grid = self.floor.copy()
        for kind in SPRITE_KINDS:
            code = self.codes.get(kind)
            for sprite in self.sprites:
                if sprite.kind == kind:
                    grid[sprite.pos] = code
        grid[self.avatar.pos] = self.codes["avatar"]
        return grid

    def of_kind(self, kind: str) -> List[Sprite]:
        return [sprite for sprite in self.sprites if sprite.kind == kind]

    def at(self, pos: Position, kind: Optional[str] = None) -> List[Sprite]:
        return [s for s in self.sprites if s.pos == pos and (kind is None or s.kind == kind)]

    def in_bounds(self, pos: Position) -> bool:
        return 0 <= pos[0] < self.floor.shape[0] and 0 <= pos[1] < self.floor.shape[1]

    def snapshot(self) -> dict:
        """Everything that defines the state, in comparable form"""
        return {
            "game": self.game,
            "grid": self.grid.tolist(),
            "sprites": [(s.kind, s.pos) for s in self.sprites],
            "avatar": (self.avatar.pos, int(self.avatar.facing), self.avatar.has_key),
            "tick": self.tick,
            "score": self.score,
            "status": self.status.value,
            "rng": self.rng.bit_generator.state,
        }


@dataclass
class StepResult:
    screen: np.ndarray
    reward: int
    status: Status
    tick: int = 0
    score: int = 0
    info: Dict[str, int] = field(default_factory=dict)

    @property
    def done(self) -> bool:
        return self.status is not Status.RUNNING


class Game:
    """Base rules: avatar phase, monster phase, termination; subclasses fill in the phases"""

    game_id = ""

    def __init__(self, config: GameConfig, catalog: TileCatalog):
        if config.id != self.game_id:
            raise GameMismatchError(f"{type(self).__name__} cannot run the '{config.id}' config")
        self.config = config
        self.catalog = catalog
        self.legend = config.legend_for(catalog)
        self.legal_actions: List[Action] = [Action[name] for name in config.actions]
        self._codes = {name: catalog.code(name) for name in catalog.names}
        self._solid = {catalog.code(name) for name in config.solid_tiles}
        self._static = {catalog.code(name) for name in STATIC_TILES}

    @property
    def max_ticks(self) -> int:
        return self.config.max_ticks

    def reset(self, level: Level, seed: int) -> GameState:
        if level.game != self.game_id:
            raise GameMismatchError(f"level '{level.name}' belongs to {level.game}, not {self.game_id}")

        floor_code = self._codes["floor"]
        floor = np.full(level.grid.shape, floor_code, dtype=np.int64)
        sprites: List[Sprite] = []
        avatar: Optional[Avatar] = None

        for (row, col), code in np.ndenumerate(level.grid):
            code = int(code)
            name = self.catalog.name(code)
            if code in self._static:
                floor[row, col] = code
            elif name == "avatar":
                avatar = Avatar(pos=(row, col))
            else:
                sprites.append(Sprite(kind=name, pos=(row, col)))

        if avatar is None:
            raise GameMismatchError(f"level '{level.name}' has no avatar")

        params = dict(self.config.scores)
        params.update(level.scores)
        return GameState(
            game=self.game_id,
            level_name=level.name,
            floor=floor,
            sprites=sprites,
            avatar=avatar,
            rng=np.random.default_rng(seed),
            params=params,
            codes=dict(self._codes),
        )

    def step(self, state: GameState, action) -> StepResult:
        before = (state.kills, state.collected)
        reward = self.advance(state, action)
        return StepResult(
            screen=render(state.grid, self.catalog),
            reward=reward,
            status=state.status,
            tick=state.tick,
            score=state.score,
            info={"kills": state.kills - before[0], "collected": state.collected - before[1]},
        )

    def advance(self, state: GameState, action) -> int:
        """Run one tick without rendering; returns the score delta"""
        if not state.running:
            raise EpisodeTerminatedError(f"episode on '{state.level_name}' already ended with {state.status.value}")
        action = Action(action)
        if action not in self.legal_actions:
            raise IllegalActionError(action.name, self.game_id)

        reward = self._tick(state, action)
        state.score += reward
        return reward

    def _tick(self, state: GameState, action: Action) -> int:
        raise NotImplementedError

    # movement helpers

    def passable(self, state: GameState, pos: Position) -> bool:
        return state.in_bounds(pos) and int(state.floor[pos]) not in self._solid

    def _monster_can_enter(self, state: GameState, pos: Position) -> bool:
        if not self.passable(state, pos):
            return False
        return not any(s.kind != "monster" for s in state.at(pos))

    def monster_policy(self, state: GameState) -> List[Position]:
        """Each monster picks uniformly among staying and its enterable 4-neighbours, in roster order"""
        moves = []
        for monster in state.of_kind("monster"):
            options = [monster.pos]
            options.extend(
                offset(monster.pos, direction)
                for direction in DIRECTIONS
                if self._monster_can_enter(state, offset(monster.pos, direction))
            )
            moves.append(options[int(state.rng.integers(len(options)))])
        return moves

    def _finish_tick(self, state: GameState):
        state.tick += 1
        if state.running and state.tick >= self.max_ticks:
            state.status = Status(self.config.timeout_status)

    def _avatar_hit(self, state: GameState) -> bool:
        return bool(state.at(state.avatar.pos, "monster"))
