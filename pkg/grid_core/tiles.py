"""
Tile Catalog + Screen Codec
Reference vectors, nearest-tile matching, grid rendering and screen decoding
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from arena_errors import ScreenFormatError, TileCatalogError, UnknownTileError

logger = logging.getLogger(__name__)

TILE_SIZE = 10
MAX_CODES = 16
MIN_REFVEC_MARGIN = 10.0

# Pixels sampled for the reference vector: row 3 at even columns, then column 4 at even rows
_ROW_SAMPLE = (3, slice(0, TILE_SIZE, 2))
_COL_SAMPLE = (slice(0, TILE_SIZE, 2), 4)

CATALOG_FORMAT = "tile-catalog"
CATALOG_VERSION = 1


def check_tile_image(tile: np.ndarray) -> np.ndarray:
    """Validate a 10x10 RGB tile and return it as uint8"""
    tile = np.asarray(tile)
    if tile.shape != (TILE_SIZE, TILE_SIZE, 3):
        raise TileCatalogError(f"tile image must be 10x10x3, got {tile.shape}")
    if tile.min() < 0 or tile.max() > 255:
        raise TileCatalogError("tile channel values must lie in [0, 255]")
    return tile.astype(np.uint8)


def build_reference_vector(tile: np.ndarray) -> np.ndarray:
    """Ten channel-averaged samples: row 3 (cols 0,2,4,6,8) then column 4 (rows 0,2,4,6,8)"""
    pixels = np.asarray(tile, dtype=np.float64)
    samples = np.concatenate([pixels[_ROW_SAMPLE], pixels[_COL_SAMPLE]], axis=0)
    return samples.sum(axis=-1) / 3.0


@dataclass(frozen=True)
class TileEntry:
    code: int
    name: str
    image: np.ndarray
    refvec: np.ndarray


class TileCatalog:
    """Immutable table of <tile image, code, reference vector> entries, ordered by code"""

    def __init__(self, tiles: Sequence[Tuple[str, np.ndarray]]):
        if not tiles:
            raise TileCatalogError("catalog needs at least one tile")
        if len(tiles) > MAX_CODES:
            raise TileCatalogError(f"catalog holds {len(tiles)} tiles, limit is {MAX_CODES}")

        entries: List[TileEntry] = []
        for code, (name, image) in enumerate(tiles):
            image = check_tile_image(image)
            image.setflags(write=False)
            refvec = build_reference_vector(image)
            refvec.setflags(write=False)
            entries.append(TileEntry(code, name, image, refvec))

        names = [entry.name for entry in entries]
        if len(set(names)) != len(names):
            raise TileCatalogError(f"duplicate tile names in catalog: {names}")

        self._entries = tuple(entries)
        self._by_name: Dict[str, int] = {entry.name: entry.code for entry in entries}
        self._images = np.stack([entry.image for entry in entries])
        self._images.setflags(write=False)
        self._refvecs = np.stack([entry.refvec for entry in entries])
        self._refvecs.setflags(write=False)
        self._check_margin()

    def _check_margin(self):
        distances = np.abs(self._refvecs[:, None, :] - self._refvecs[None, :, :]).sum(axis=-1)
        np.fill_diagonal(distances, np.inf)
        closest = distances.min() if len(self._entries) > 1 else np.inf
        if closest < MIN_REFVEC_MARGIN:
            a, b = np.unravel_index(np.argmin(distances), distances.shape)
            raise TileCatalogError(
                f"tiles '{self._entries[a].name}' and '{self._entries[b].name}' are only "
                f"{closest:.2f} apart (L1); decoding needs at least {MIN_REFVEC_MARGIN}"
            )

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    @property
    def entries(self) -> Tuple[TileEntry, ...]:
        return self._entries

    @property
    def images(self) -> np.ndarray:
        return self._images

    @property
    def refvecs(self) -> np.ndarray:
        return self._refvecs

    @property
    def names(self) -> List[str]:
        return [entry.name for entry in self._entries]

    def code(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise TileCatalogError(f"catalog has no tile named '{name}'") from None

    def name(self, code: int) -> str:
        if not 0 <= code < len(self._entries):
            raise TileCatalogError(f"catalog has no tile with code {code}")
        return self._entries[code].name

    def image(self, code: int) -> np.ndarray:
        return self._entries[code].image


def match_tile(block: np.ndarray, catalog: TileCatalog) -> int:
    """Code of the entry with the smallest L1 distance to the block's reference vector (ties -> lowest code)"""
    distances = np.abs(catalog.refvecs - build_reference_vector(block)).sum(axis=1)
    return int(np.argmin(distances))


def render(grid: np.ndarray, catalog: TileCatalog) -> np.ndarray:
    """Paint a code grid as a (10H, 10W, 3) uint8 screen"""
    codes = np.asarray(grid)
    if codes.ndim != 2 or min(codes.shape) < 1:
        raise ScreenFormatError(f"grid must be a non-empty 2-D matrix, got shape {codes.shape}")
    bad = (codes < 0) | (codes >= len(catalog))
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        raise UnknownTileError(int(codes[row, col]), (row, col))

    height, width = codes.shape
    blocks = catalog.images[codes]  # (H, W, 10, 10, 3)
    return blocks.transpose(0, 2, 1, 3, 4).reshape(height * TILE_SIZE, width * TILE_SIZE, 3)


def decode_screen(image: np.ndarray, catalog: TileCatalog) -> np.ndarray:
    """Split a screen into 10x10 blocks and match every block against the catalog"""
    pixels = np.asarray(image)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ScreenFormatError(f"screen must be an RGB image, got shape {pixels.shape}")
    h, w, _ = pixels.shape
    if h == 0 or w == 0 or h % TILE_SIZE or w % TILE_SIZE:
        raise ScreenFormatError(f"screen size {h}x{w} is not a multiple of the {TILE_SIZE}px tile")

    rows, cols = h // TILE_SIZE, w // TILE_SIZE
    blocks = pixels.astype(np.float64).reshape(rows, TILE_SIZE, cols, TILE_SIZE, 3)
    row_part = blocks[:, 3, :, 0:TILE_SIZE:2, :]                          # (R, C, 5, 3)
    col_part = blocks[:, 0:TILE_SIZE:2, :, 4, :].transpose(0, 2, 1, 3)   # (R, C, 5, 3)
    vectors = np.concatenate([row_part, col_part], axis=2).sum(axis=-1) / 3.0

    distances = np.abs(vectors[:, :, None, :] - catalog.refvecs[None, None, :, :]).sum(axis=-1)
    return distances.argmin(axis=-1).astype(np.int64)


def export_ppm(image: np.ndarray, path: Union[str, Path]) -> Path:
    """Write a plain-text (P3) portable pixmap, for eyeballing screens"""
    pixels = np.asarray(image, dtype=np.uint8)
    h, w, _ = pixels.shape
    path = Path(path)
    lines = ["P3", f"{w} {h}", "255"]
    lines.extend(" ".join(str(v) for v in row.reshape(-1)) for row in pixels)
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


# Shipped tile art: flat base colour with a motif kept off row 3 and column 4,
# so every reference vector is ten copies of the base colour's channel mean.

_MOTIF_ROWS = (1, 2, 6, 7)
_MOTIF_COLS = (1, 2, 6, 7)

# name: (base RGB, motif RGB); base means are 0, 40, 60, ..., 200
DEFAULT_PALETTE: Dict[str, Tuple[Tuple[int, int, int], Tuple[int, int, int]]] = {
    "blank": ((0, 0, 0), (0, 0, 0)),
    "floor": ((35, 35, 50), (45, 45, 60)),
    "wall": ((60, 60, 60), (110, 110, 110)),
    "obstacle": ((130, 80, 30), (90, 55, 20)),
    "avatar": ((250, 250, 100), (40, 40, 200)),
    "monster": ((220, 50, 30), (255, 255, 255)),
    "jewel": ((80, 200, 200), (200, 255, 255)),
    "box": ((170, 120, 70), (120, 70, 20)),
    "key": ((240, 200, 100), (255, 240, 180)),
    "door": ((60, 160, 200), (20, 60, 120)),
}


def paint_tile(base: Iterable[int], motif: Iterable[int]) -> np.ndarray:
    tile = np.empty((TILE_SIZE, TILE_SIZE, 3), dtype=np.uint8)
    tile[:, :] = tuple(base)
    tile[np.ix_(_MOTIF_ROWS, _MOTIF_COLS)] = tuple(motif)
    return tile


@lru_cache(maxsize=1)
def default_catalog() -> TileCatalog:
    """The catalog shared by all three games (code 0 is the blank padding tile)"""
    return TileCatalog([(name, paint_tile(base, motif)) for name, (base, motif) in DEFAULT_PALETTE.items()])


def save_catalog(catalog: TileCatalog, path: Union[str, Path]) -> Path:
    path = Path(path)
    payload = {
        "format": CATALOG_FORMAT,
        "version": CATALOG_VERSION,
        "tiles": [
            {
                "code": entry.code,
                "name": entry.name,
                "pixels": entry.image.astype(int).tolist(),
                "refvec": entry.refvec.tolist(),
            }
            for entry in catalog
        ],
    }
    path.write_text(json.dumps(payload, indent=1), encoding="utf-8")
    logger.info(f"✅ Tile catalog ({len(catalog)} tiles) saved to {path}")
    return path


def load_catalog(path: Union[str, Path]) -> TileCatalog:
    """Read a catalog file; reference vectors are recomputed and must match the stored ones"""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise TileCatalogError(f"cannot read tile catalog {path}: {e}") from e

    if payload.get("format") != CATALOG_FORMAT or payload.get("version") != CATALOG_VERSION:
        raise TileCatalogError(f"{path} is not a version {CATALOG_VERSION} tile catalog")

    tiles = sorted(payload["tiles"], key=lambda t: t["code"])
    codes = [t["code"] for t in tiles]
    if codes != list(range(len(tiles))):
        raise TileCatalogError(f"catalog codes must be consecutive from 0, got {codes}")

    catalog = TileCatalog([(t["name"], np.array(t["pixels"])) for t in tiles])
    for entry, stored in zip(catalog, tiles):
        if not np.allclose(entry.refvec, stored["refvec"], rtol=0.0, atol=1e-9):
            raise TileCatalogError(f"stored reference vector of '{entry.name}' does not match its pixels")
    return catalog
