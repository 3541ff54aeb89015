import numpy as np
import pytest

from arena_errors import GameMismatchError, LevelEditError, UnrepairableLevelError
from games import GAME_IDS, load_game_config, load_level, shipped_levels
from grid_core import parse_level
from level_tools import (
    ALGORITHMS, TileEdit, augment_levels, bfs_order, combine, default_window, edits_between,
    gen_maze, hamming, is_valid, maze_to_waterpuzzle, mirror, multi_tile_change, repair,
    single_tile_change, tile_codes, window_augment,
)


@pytest.fixture
def levels(catalog):
    return lambda name: load_level(name, catalog=catalog)


def _custom(game_id, text, catalog):
    legend = load_game_config(game_id).legend_for(catalog)
    return parse_level(text, legend, name=f"{game_id}-custom", enforce_screen=False)


@pytest.mark.parametrize(
    "training, test, distance",
    [
        ("golddigger-0", "golddigger-2", 7),
        ("golddigger-1", "golddigger-3", 1),
        ("treasurekeeper-0", "treasurekeeper-2", 3),
        ("treasurekeeper-1", "treasurekeeper-3", 1),
        ("waterpuzzle-0", "waterpuzzle-2", 1),
        ("waterpuzzle-1", "waterpuzzle-3", 3),
    ],
)
def test_test_levels_are_tile_edits_of_training_levels(levels, training, test, distance):
    source, target = levels(training), levels(test)
    assert hamming(source, target) == distance
    edits = edits_between(source, target)
    derived = single_tile_change(source, edits[0]) if distance == 1 else multi_tile_change(source, edits)
    assert derived == target


@pytest.mark.parametrize("game_id", ["golddigger", "treasurekeeper"])
def test_combined_test_level(levels, game_id):
    combined = combine(levels(f"{game_id}-0"), levels(f"{game_id}-1"))
    assert combined == levels(f"{game_id}-4")


def test_combine_keeps_exactly_one_avatar(catalog):
    upper = _custom("golddigger", "wwwww\nw.A.w\nw.j.w\nwwwww\n", catalog)
    lower = _custom("golddigger", "wwwww\nw.j.w\nw.A.w\nwwwww\n", catalog)
    assert combine(upper, lower).avatar_positions == [(1, 1)]
    assert combine(lower, upper).avatar_positions == [(1, 1)]
    with pytest.raises(GameMismatchError):
        combine(upper, _custom("waterpuzzle", "wwwww\nwAkdw\nwwwww\nwwwww\n", catalog))


def test_tile_edit_validation(levels):
    level = levels("golddigger-0")
    codes = tile_codes(level)
    with pytest.raises(LevelEditError, match="outside"):
        single_tile_change(level, TileEdit(10, 0, codes["floor"]))
    with pytest.raises(LevelEditError, match="two edits"):
        multi_tile_change(level, [TileEdit(1, 1, codes["jewel"]), TileEdit(1, 1, codes["floor"])])
    with pytest.raises(LevelEditError, match="legend"):
        single_tile_change(level, TileEdit(1, 1, 8))
    with pytest.raises(LevelEditError, match="0 avatars"):
        single_tile_change(level, TileEdit(5, 6, codes["floor"]))
    edited = single_tile_change(level, TileEdit(1, 1, codes["jewel"]), name="gd-edit")
    assert hamming(level, edited) == 1
    assert edited.name == "gd-edit"


def test_mirror(levels):
    level = levels("golddigger-mini-corridor")
    flipped = mirror(level, "horizontal")
    np.testing.assert_array_equal(flipped.grid[1], level.grid[1][::-1])
    assert mirror(flipped, "horizontal") == level
    np.testing.assert_array_equal(mirror(level, "vertical").grid, level.grid[::-1])
    with pytest.raises(ValueError):
        mirror(level, "diagonal")


def test_hamming_needs_equal_shapes(levels):
    with pytest.raises(LevelEditError):
        hamming(levels("golddigger-0"), levels("golddigger-mini-corridor"))


@pytest.mark.parametrize("game_id", GAME_IDS)
def test_shipped_levels_pass_repair(levels, game_id):
    for path in shipped_levels(game_id, include_mini=True):
        level = levels(path.stem)
        repaired, report = repair(level)
        assert report.is_empty, f"{path.stem}: {report.lines()}"
        assert repaired is level


def test_repair_places_missing_sprites(catalog):
    broken = _custom("golddigger", "wwwwww\nw....w\nw.ww.w\nwwwwww\n", catalog)
    repaired, report = repair(broken)
    codes = tile_codes(repaired)
    assert report.violations == ["no avatar", "no jewel"]
    assert repaired.avatar_positions == [(1, 1)]
    # the jewel lands on the reachable floor cell farthest from the avatar
    assert repaired.grid[2, 4] == codes["jewel"]
    again, second = repair(repaired)
    assert second.is_empty and again == repaired


def test_repair_walls_border_and_clears_orphans(catalog):
    level = _custom("treasurekeeper", "wwwwww\nwA.b.w\nwwwwww\n", catalog)
    grid = level.grid.copy()
    grid[1, 5] = tile_codes(level)["floor"]
    grid[1, 2] = 8  # key: not a TreasureKeeper tile
    repaired, report = repair(level.with_grid(grid))
    assert len(report.fixes) == 2
    assert repaired == level
    assert is_valid(repaired)


def test_repair_moves_key_out_from_behind_the_door(catalog):
    level = _custom("waterpuzzle", "wwwwwww\nwA.d.kw\nwwwwwww\n", catalog)
    repaired, report = repair(level)
    codes = tile_codes(level)
    assert report.violations == ["key unreachable"]
    assert repaired.grid[1, 2] == codes["key"]
    assert repaired.grid[1, 5] == codes["floor"]
    assert repaired.grid[1, 3] == codes["door"]
    assert is_valid(repaired)


def test_unrepairable_level(catalog):
    sealed = _custom("golddigger", "wwww\nwAww\nwwww\n", catalog)
    with pytest.raises(UnrepairableLevelError):
        repair(sealed)


def test_bfs_order_starts_at_origin():
    grid = np.array([[2, 2, 2, 2], [2, 1, 1, 2], [2, 2, 1, 2], [2, 2, 2, 2]])
    assert bfs_order(grid, (1, 1), {2}) == [(1, 1), (1, 2), (2, 2)]


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_mazes_are_perfect(algorithm):
    for height, width in [(1, 1), (1, 7), (5, 7), (13, 4), (20, 20)]:
        for seed in range(20):
            maze = gen_maze(height, width, algorithm, np.random.default_rng(seed))
            assert len(maze.passages) == height * width - 1
            assert maze.is_perfect(), (algorithm, height, width, seed)


@pytest.mark.slow
@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_mazes_are_perfect_for_every_size(algorithm):
    for height in range(1, 21):
        for width in range(1, 21):
            for seed in range(20):
                assert gen_maze(height, width, algorithm, np.random.default_rng(seed)).is_perfect()


def test_maze_generation_is_seeded():
    a = gen_maze(6, 6, "backtrack", np.random.default_rng(4))
    b = gen_maze(6, 6, "backtrack", np.random.default_rng(4))
    assert a.passages == b.passages
    with pytest.raises(ValueError):
        gen_maze(3, 3, "spiral", np.random.default_rng(0))


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_maze_waterpuzzle_levels(catalog, algorithm):
    rng = np.random.default_rng(8)
    maze = gen_maze(5, 7, algorithm, rng)
    level = maze_to_waterpuzzle(maze, rng, catalog)
    codes = tile_codes(level)
    assert level.shape == (11, 15)
    assert (level.grid == codes["key"]).sum() == 1
    assert (level.grid == codes["door"]).sum() == 1
    assert is_valid(level)

    def cell_of(code):
        row, col = np.argwhere(level.grid == code)[0]
        return int(row - 1) // 2, int(col - 1) // 2

    assert cell_of(codes["door"]) not in maze.path(cell_of(codes["avatar"]), cell_of(codes["key"]))


def test_default_window():
    assert default_window((10, 14)) == (5, 7)
    assert default_window((11, 15)) == (1, 5)


def test_window_augment(levels, rng):
    sources = [levels("golddigger-0"), levels("golddigger-1")]
    level = window_augment(sources, (5, 7), (10, 14), rng, name="gd-window")
    assert level.shape == (10, 14)
    assert level.name == "gd-window"
    assert is_valid(level)
    with pytest.raises(LevelEditError):
        window_augment(sources, (3, 3), (10, 14), rng)
    with pytest.raises(GameMismatchError):
        window_augment([sources[0], levels("treasurekeeper-0")], (5, 7), (10, 14), rng)


@pytest.mark.parametrize("game_id", ["golddigger", "treasurekeeper"])
def test_seeded_window_levels_are_repaired_once(levels, game_id):
    sources = [levels(f"{game_id}-0"), levels(f"{game_id}-1")]
    shape = sources[0].shape
    for seed in range(100):
        level = window_augment(sources, default_window(shape), shape, np.random.default_rng(seed))
        again, report = repair(level)
        assert report.is_empty, f"seed {seed}: {report.lines()}"
        assert again == level


@pytest.mark.parametrize("game_id", GAME_IDS)
def test_augment_two_levels_to_ten(levels, game_id, rng):
    originals = [levels(f"{game_id}-0"), levels(f"{game_id}-1")]
    augmented = augment_levels(game_id, originals, rng)
    assert len(augmented) == 10
    assert augmented[0] == originals[0]
    assert {level.shape for level in augmented} == {originals[0].shape}
    assert all(is_valid(level) for level in augmented)
    assert len({level.name for level in augmented}) == 10
