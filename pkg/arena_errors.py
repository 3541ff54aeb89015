"""
Arena Error Types
One exception family per failure the arena can report, all rooted at ArenaError
"""

from typing import Optional, Tuple


class ArenaError(Exception):
    """Base class for every error raised by the arena packages"""


# Tiles, screens and level files

class TileCatalogError(ArenaError):
    """Catalog construction or catalog file failed validation"""


class UnknownTileError(ArenaError):
    """A grid cell holds a code the catalog does not know"""

    def __init__(self, code: int, cell: Tuple[int, int]):
        self.code = code
        self.cell = cell
        super().__init__(f"unknown tile code {code} at cell {cell}")


class ScreenFormatError(ArenaError):
    """Screen image has the wrong shape for tile decoding"""


class LevelParseError(ArenaError):
    """Level text could not be turned into a Level"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# Games

class UnknownGameError(ArenaError):
    def __init__(self, game_id: str):
        self.game_id = game_id
        super().__init__(f"unknown game '{game_id}'")


class GameMismatchError(ArenaError):
    """A level (or level set) was handed to the wrong game"""


class EpisodeTerminatedError(ArenaError):
    """step() called on an episode that already ended"""


class IllegalActionError(ArenaError):
    def __init__(self, action, game_id: str):
        super().__init__(f"action {action} is not legal in {game_id}")


# Observations

class AvatarMissingError(ArenaError):
    def __init__(self):
        super().__init__("avatar missing: no avatar tile on screen")


class AvatarAmbiguousError(ArenaError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"avatar ambiguous: {count} avatar tiles on screen")


class ChannelOverflowError(ArenaError):
    def __init__(self, code: int, channels: int):
        super().__init__(f"tile code {code} does not fit in {channels} one-hot channels")


# Network and training

class ShapeMismatchError(ArenaError):
    pass


class DivergenceError(ArenaError):
    """Non-finite loss or gradient during training"""


class ModelFormatError(ArenaError):
    """Model file is unreadable (bad magic, version, checksum, variant or shapes)"""


class ReplayUnderflowError(ArenaError):
    def __init__(self, size: int, batch: int):
        super().__init__(f"replay buffer holds {size} transitions, cannot sample {batch}")


# Policies and agents

class NonFiniteQError(ArenaError):
    def __init__(self):
        super().__init__("Q-values contain non-finite entries")


class DuplicateScreenError(ArenaError):
    def __init__(self, screen: Tuple[int, int]):
        self.screen = screen
        super().__init__(f"a model is already registered for screen size {screen}")


class AgentBundleError(ArenaError):
    pass


# Level tools

class LevelEditError(ArenaError):
    pass


class UnrepairableLevelError(ArenaError):
    pass


# Arena harness

class MixedRecordsError(ArenaError):
    pass


class DuplicateAgentError(ArenaError):
    def __init__(self, agent_id: str):
        super().__init__(f"agent '{agent_id}' appears more than once")
