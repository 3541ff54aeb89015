# Grid core: tile catalog, screen codec and level files
from .levels import Legend, Level, parse_level, read_level, serialize_level, write_level
from .tiles import (
    TILE_SIZE,
    MAX_CODES,
    TileCatalog,
    TileEntry,
    build_reference_vector,
    decode_screen,
    default_catalog,
    export_ppm,
    load_catalog,
    match_tile,
    render,
    save_catalog,
)

__all__ = [
    'TILE_SIZE', 'MAX_CODES', 'TileCatalog', 'TileEntry', 'build_reference_vector', 'match_tile',
    'render', 'decode_screen', 'default_catalog', 'export_ppm', 'save_catalog', 'load_catalog',
    'Legend', 'Level', 'parse_level', 'serialize_level', 'read_level', 'write_level',
]
