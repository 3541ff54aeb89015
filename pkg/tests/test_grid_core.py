import json

import numpy as np
import pytest

from arena_errors import LevelParseError, ScreenFormatError, TileCatalogError, UnknownTileError
from games import GAME_IDS, load_game_config, load_level, shipped_levels
from grid_core import (
    TILE_SIZE, TileCatalog, build_reference_vector, decode_screen, export_ppm, load_catalog,
    match_tile, parse_level, render, save_catalog, serialize_level,
)


def test_default_catalog_codes(catalog):
    assert len(catalog) == 10
    assert catalog.code("blank") == 0
    assert catalog.code("avatar") == 4
    assert catalog.name(9) == "door"
    with pytest.raises(TileCatalogError):
        catalog.code("lava")


def test_reference_vector_samples_row_three_and_column_four():
    tile = np.zeros((TILE_SIZE, TILE_SIZE, 3), dtype=np.uint8)
    tile[3, :] = (30, 60, 90)
    tile[:, 4] = (3, 3, 3)
    refvec = build_reference_vector(tile)
    # row 3 at cols 0,2,4,6,8 (col 4 is overwritten), then col 4 at rows 0,2,4,6,8
    assert refvec.tolist() == [60.0, 60.0, 3.0, 60.0, 60.0, 3.0, 3.0, 3.0, 3.0, 3.0]


def test_reference_vector_ignores_unsampled_pixels(rng):
    tile = rng.integers(0, 256, size=(TILE_SIZE, TILE_SIZE, 3)).astype(np.uint8)
    refvec = build_reference_vector(tile)
    for row in range(TILE_SIZE):
        for col in range(TILE_SIZE):
            if (row == 3 and col % 2 == 0) or (col == 4 and row % 2 == 0):
                continue
            changed = tile.copy()
            changed[row, col] = 255 - changed[row, col]
            np.testing.assert_array_equal(build_reference_vector(changed), refvec)


def test_render_then_decode_recovers_grid(catalog, golddigger_level):
    screen = render(golddigger_level.grid, catalog)
    assert screen.shape == (100, 140, 3)
    assert screen.dtype == np.uint8
    np.testing.assert_array_equal(decode_screen(screen, catalog), golddigger_level.grid)


def test_decode_tolerates_pixel_noise(catalog, waterpuzzle_level, rng):
    screen = render(waterpuzzle_level.grid, catalog).astype(np.int16)
    noisy = np.clip(screen + rng.integers(-4, 5, size=screen.shape), 0, 255).astype(np.uint8)
    np.testing.assert_array_equal(decode_screen(noisy, catalog), waterpuzzle_level.grid)


def test_every_shipped_level_survives_render_and_decode(catalog):
    for game_id in GAME_IDS:
        for path in shipped_levels(game_id, include_mini=True):
            level = load_level(path, catalog=catalog)
            np.testing.assert_array_equal(decode_screen(render(level.grid, catalog), catalog), level.grid)


def test_random_grids_survive_render_and_decode(catalog, rng):
    for _ in range(1_000):
        shape = tuple(int(n) for n in rng.integers(1, 16, size=2))
        grid = rng.integers(0, len(catalog), size=shape)
        np.testing.assert_array_equal(decode_screen(render(grid, catalog), catalog), grid)


def test_decode_tolerates_noise_on_every_tile(catalog, rng):
    for code in range(len(catalog)):
        image = catalog.image(code).astype(np.int16)
        for _ in range(100):
            noisy = np.clip(image + rng.integers(-4, 5, size=image.shape), 0, 255).astype(np.uint8)
            assert match_tile(noisy, catalog) == code


def test_match_tile_picks_nearest(catalog):
    jewel = catalog.image(catalog.code("jewel")).astype(np.int16)
    assert match_tile(np.clip(jewel + 5, 0, 255), catalog) == catalog.code("jewel")


@pytest.mark.parametrize("shape", [(95, 140, 3), (100, 140), (0, 10, 3)])
def test_decode_rejects_bad_screens(catalog, shape):
    with pytest.raises(ScreenFormatError):
        decode_screen(np.zeros(shape, dtype=np.uint8), catalog)


def test_render_rejects_unknown_code(catalog):
    grid = np.ones((3, 3), dtype=np.int64)
    grid[1, 2] = 12
    with pytest.raises(UnknownTileError) as info:
        render(grid, catalog)
    assert info.value.cell == (1, 2)


def test_catalog_rejects_duplicates_and_lookalikes(catalog):
    floor = catalog.image(catalog.code("floor"))
    with pytest.raises(TileCatalogError, match="duplicate"):
        TileCatalog([("floor", floor), ("floor", catalog.image(2))])
    with pytest.raises(TileCatalogError, match="apart"):
        TileCatalog([("floor", floor), ("floor2", floor)])


def test_catalog_file_round_trip(catalog, tmp_path):
    path = save_catalog(catalog, tmp_path / "tiles.json")
    loaded = load_catalog(path)
    assert loaded.names == catalog.names
    np.testing.assert_array_equal(loaded.refvecs, catalog.refvecs)

    payload = json.loads(path.read_text())
    payload["tiles"][3]["refvec"][0] += 1.0
    path.write_text(json.dumps(payload))
    with pytest.raises(TileCatalogError, match="obstacle"):
        load_catalog(path)


@pytest.fixture
def gd_legend(catalog):
    return load_game_config("golddigger").legend_for(catalog)


def test_parse_level_notes_and_overrides(gd_legend):
    text = "# tiny test\n@jewel_score=3\nwwww\nwAjw\nwwww\n"
    level = parse_level(text, gd_legend, name="tiny", enforce_screen=False)
    assert level.notes == (" tiny test",)
    assert level.scores == {"jewel_score": 3}
    assert level.shape == (3, 4)
    assert level.avatar_positions == [(1, 1)]
    assert parse_level(serialize_level(level), gd_legend, enforce_screen=False) == level


@pytest.mark.parametrize(
    "text, message, line",
    [
        ("wwww\nwAjw\nwww\n", "ragged", 3),
        ("wwww\nwAxw\nwwww\n", "unknown character 'x'", 2),
        ("wwww\nwAAw\nwwww\n", "multiple avatars", None),
        ("wwww\nw.jw\nwwww\n", "no avatar", None),
        ("@jewel_score\nwwww\nwAjw\nwwww\n", "malformed", 1),
    ],
)
def test_parse_level_errors(gd_legend, text, message, line):
    with pytest.raises(LevelParseError, match=message) as info:
        parse_level(text, gd_legend, enforce_screen=False)
    assert info.value.line == line


def test_parse_level_enforces_screen_size(gd_legend):
    with pytest.raises(LevelParseError, match="10x14"):
        parse_level("wwww\nwAjw\nwwww\n", gd_legend)


def test_export_ppm_header(catalog, tmp_path):
    screen = render(np.array([[1, 2]]), catalog)
    lines = export_ppm(screen, tmp_path / "shot.ppm").read_text().splitlines()
    assert lines[:3] == ["P3", "20 10", "255"]
    assert len(lines) == 3 + 10


def test_shipped_level_files_serialize_back_verbatim(catalog):
    for game_id in GAME_IDS:
        legend = load_game_config(game_id).legend_for(catalog)
        for path in shipped_levels(game_id, include_mini=True):
            text = path.read_text(encoding="utf-8")
            assert serialize_level(parse_level(text, legend, name=path.stem, enforce_screen=False)) == text, path.name
