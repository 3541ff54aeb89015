"""
Level files: ASCII tile grids with a per-game character legend
"""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from arena_errors import LevelParseError

COMMENT_PREFIX = "#"
OVERRIDE_PREFIX = "@"


@dataclass(frozen=True)
class Legend:
    """Character <-> tile code table for one game"""

    game: str
    chars: Mapping[str, int]
    avatar_char: str
    screen: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.avatar_char not in self.chars:
            raise LevelParseError(f"avatar character '{self.avatar_char}' missing from the {self.game} legend")
        codes = list(self.chars.values())
        if len(set(codes)) != len(codes):
            raise LevelParseError(f"{self.game} legend maps two characters to one tile code")

    @property
    def avatar_code(self) -> int:
        return self.chars[self.avatar_char]

    def char_for(self, code: int) -> str:
        for char, value in self.chars.items():
            if value == code:
                return char
        raise LevelParseError(f"tile code {code} has no character in the {self.game} legend")

    def allows(self, code: int) -> bool:
        return code in self.chars.values()


@dataclass(frozen=True, eq=False)
class Level:
    grid: np.ndarray
    game: str
    legend: Legend
    name: str = ""
    scores: Dict[str, int] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self.grid.shape)

    @property
    def avatar_positions(self):
        return [tuple(int(v) for v in pos) for pos in np.argwhere(self.grid == self.legend.avatar_code)]

    def with_grid(self, grid: np.ndarray, **changes) -> "Level":
        return replace(self, grid=np.array(grid, dtype=np.int64), **changes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Level):
            return NotImplemented
        return (
            self.game == other.game
            and self.grid.shape == other.grid.shape
            and bool(np.array_equal(self.grid, other.grid))
            and dict(self.scores) == dict(other.scores)
        )

    def __hash__(self):
        return hash((self.game, self.grid.tobytes(), self.grid.shape))

    def __repr__(self):
        h, w = self.grid.shape
        return f"Level({self.game}:{self.name or '?'} {h}x{w})"


def parse_level(text: str, legend: Legend, *, name: str = "", enforce_screen: bool = True) -> Level:
    """Parse level text; '#' lines are notes, '@key=value' lines override score parameters"""
    notes = []
    scores: Dict[str, int] = {}
    rows = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line:
            continue
        if line.startswith(COMMENT_PREFIX):
            notes.append(line[len(COMMENT_PREFIX):])
            continue
        if line.startswith(OVERRIDE_PREFIX):
            key, sep, value = line[len(OVERRIDE_PREFIX):].partition("=")
            try:
                if not sep or not key.strip():
                    raise ValueError
                scores[key.strip()] = int(value)
            except ValueError:
                raise LevelParseError(f"malformed score override '{line}'", number) from None
            continue

        codes = []
        for col, char in enumerate(line):
            if char not in legend.chars:
                raise LevelParseError(f"unknown character '{char}' at column {col}", number)
            codes.append(legend.chars[char])
        if rows and len(codes) != len(rows[0][1]):
            raise LevelParseError(
                f"ragged rows: expected width {len(rows[0][1])}, got {len(codes)}", number
            )
        rows.append((number, codes))

    if not rows:
        raise LevelParseError("level has no grid rows")

    grid = np.array([codes for _, codes in rows], dtype=np.int64)
    avatars = int((grid == legend.avatar_code).sum())
    if avatars == 0:
        raise LevelParseError("no avatar in level")
    if avatars > 1:
        raise LevelParseError(f"multiple avatars in level ({avatars})")

    if enforce_screen and legend.screen is not None and tuple(grid.shape) != tuple(legend.screen):
        raise LevelParseError(
            f"{legend.game} levels are {legend.screen[0]}x{legend.screen[1]} tiles, "
            f"got {grid.shape[0]}x{grid.shape[1]}"
        )

    return Level(grid=grid, game=legend.game, legend=legend, name=name, scores=scores, notes=tuple(notes))


def serialize_level(level: Level) -> str:
    lines = [f"{COMMENT_PREFIX}{note}" for note in level.notes]
    lines.extend(f"{OVERRIDE_PREFIX}{key}={value}" for key, value in level.scores.items())
    lines.extend("".join(level.legend.char_for(int(code)) for code in row) for row in level.grid)
    return "\n".join(lines) + "\n"


def read_level(path: Union[str, Path], legend: Legend, *, enforce_screen: bool = True) -> Level:
    path = Path(path)
    return parse_level(path.read_text(encoding="utf-8"), legend, name=path.stem, enforce_screen=enforce_screen)


def write_level(level: Level, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(serialize_level(level), encoding="utf-8")
    return path
