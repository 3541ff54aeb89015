"""
👁️ OBSERVATION PIPELINE
Screen -> tile codes -> avatar-centred global (GO) and local (LO) views -> one-hot tensors

The global view is (2H-1) x (2W-1) tiles so the whole screen is always inside it,
wherever the avatar stands. Out-of-screen cells carry code 0.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from arena_errors import AvatarAmbiguousError, AvatarMissingError, ChannelOverflowError
from grid_core import MAX_CODES, TileCatalog, decode_screen

logger = logging.getLogger(__name__)

LOCAL_SIZE = 5
PAD_CODE = 0


def locate_avatar(grid: np.ndarray, avatar_code: int) -> Tuple[int, int]:
    """Position of the unique avatar tile in a decoded grid"""
    rows, cols = np.nonzero(np.asarray(grid) == avatar_code)
    if len(rows) == 0:
        raise AvatarMissingError()
    if len(rows) > 1:
        raise AvatarAmbiguousError(len(rows))
    return int(rows[0]), int(cols[0])


def transform_global(grid: np.ndarray, avatar: Tuple[int, int]) -> np.ndarray:
    """Shift the grid so the avatar lands on the centre cell (H-1, W-1)"""
    grid = np.asarray(grid)
    height, width = grid.shape
    row, col = avatar
    out = np.full((2 * height - 1, 2 * width - 1), PAD_CODE, dtype=grid.dtype)
    top, left = height - 1 - row, width - 1 - col
    out[top:top + height, left:left + width] = grid
    return out


def transform_local(grid: np.ndarray, avatar: Tuple[int, int], size: int = LOCAL_SIZE) -> np.ndarray:
    """size x size window around the avatar, padded with code 0"""
    half = size // 2
    padded = np.pad(np.asarray(grid), half, mode="constant", constant_values=PAD_CODE)
    row, col = avatar
    return padded[row:row + size, col:col + size].copy()


def one_hot(codes: np.ndarray, channels: int = MAX_CODES) -> np.ndarray:
    codes = np.asarray(codes)
    if codes.size and (codes.max() >= channels or codes.min() < 0):
        bad = int(codes.max()) if codes.max() >= channels else int(codes.min())
        raise ChannelOverflowError(bad, channels)
    return np.eye(channels, dtype=np.float64)[codes]


@dataclass(frozen=True)
class ObservationPair:
    global_codes: np.ndarray
    local_codes: np.ndarray
    global_onehot: np.ndarray
    local_onehot: np.ndarray

    @property
    def global_shape(self) -> Tuple[int, ...]:
        return self.global_onehot.shape

    @property
    def local_shape(self) -> Tuple[int, ...]:
        return self.local_onehot.shape


def observe_grid(grid: np.ndarray, avatar_code: int) -> ObservationPair:
    """Code-level path: skips pixel decoding when the grid is already known"""
    avatar = locate_avatar(grid, avatar_code)
    global_codes = transform_global(grid, avatar)
    local_codes = transform_local(grid, avatar)
    return ObservationPair(
        global_codes=global_codes,
        local_codes=local_codes,
        global_onehot=one_hot(global_codes),
        local_onehot=one_hot(local_codes),
    )


def observe(screen: np.ndarray, catalog: TileCatalog) -> ObservationPair:
    """
    Full pipeline on an RGB screen

    Args:
        screen: (h, w, 3) image with h and w multiples of the tile size
        catalog: tile catalog used to decode the screen

    Returns:
        ObservationPair with GO of (2H-1, 2W-1, 16) and LO of (5, 5, 16)
    """
    grid = decode_screen(screen, catalog)
    return observe_grid(grid, catalog.code("avatar"))


def format_codes(codes: np.ndarray) -> str:
    """Code matrix as hex digits, one row per line"""
    return "\n".join("".join(format(int(code), "x") for code in row) for row in np.asarray(codes))


def dump_observation(pair: ObservationPair) -> str:
    """ASCII dump of both views for debugging a single frame"""
    gh, gw = pair.global_codes.shape
    return (
        f"GO {gh}x{gw}\n{format_codes(pair.global_codes)}\n"
        f"LO {LOCAL_SIZE}x{LOCAL_SIZE}\n{format_codes(pair.local_codes)}\n"
    )
