import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from arena_cli import cli
from games import load_level
from level_tools import is_valid


@pytest.fixture
def runner():
    return CliRunner()


def test_genlevels_mirror(runner, tmp_path, catalog):
    out = tmp_path / "golddigger-mini-flipped.txt"
    result = runner.invoke(cli, ["genlevels", "--op", "mirror", "--in", "golddigger-mini-corridor", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "repair: level already valid" in result.output
    flipped = load_level(out, catalog=catalog)
    original = load_level("golddigger-mini-corridor", catalog=catalog)
    np.testing.assert_array_equal(flipped.grid, original.grid[:, ::-1])


def test_genlevels_single_edit(runner, tmp_path, catalog):
    out = tmp_path / "golddigger-edited.txt"
    result = runner.invoke(cli, [
        "genlevels", "--op", "single", "--in", "golddigger-0", "--edit", "1,1,jewel", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    edited = load_level(out, catalog=catalog)
    assert edited.grid[1, 1] == catalog.code("jewel")


def test_genlevels_maze(runner, tmp_path, catalog):
    out = tmp_path / "waterpuzzle-maze.txt"
    result = runner.invoke(cli, [
        "genlevels", "--op", "maze", "--algorithm", "unionfind", "--seed", "3", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    level = load_level(out, catalog=catalog)
    assert level.shape == (11, 15)
    assert is_valid(level)


def test_genlevels_usage_errors(runner, tmp_path):
    out = str(tmp_path / "golddigger-x.txt")
    combine_one = runner.invoke(cli, ["genlevels", "--op", "combine", "--in", "golddigger-0", "--out", out])
    assert combine_one.exit_code == 2
    bad_tile = runner.invoke(cli, [
        "genlevels", "--op", "single", "--in", "golddigger-0", "--edit", "1,1,lava", "--out", out,
    ])
    assert bad_tile.exit_code == 2
    assert "unknown tile" in bad_tile.output


def test_observe(runner, tmp_path):
    ppm = tmp_path / "shot.ppm"
    result = runner.invoke(cli, ["observe", "--level", "waterpuzzle-mini-line", "--ppm", str(ppm)])
    assert result.exit_code == 0, result.output
    assert "GO 5x13\n" in result.output
    assert "LO 5x5" in result.output
    assert ppm.read_text().startswith("P3\n")


def test_eval_writes_reports(runner, tmp_path):
    bundle = tmp_path / "righty.json"
    bundle.write_text(json.dumps({"name": "Righty", "kind": "scripted", "actions": ["RIGHT"]}))
    out_dir = tmp_path / "eval"
    result = runner.invoke(cli, [
        "eval", "--agent", str(bundle), "--level", "waterpuzzle-mini-line", "--runs", "2", "--out", str(out_dir),
    ])
    assert result.exit_code == 0, result.output
    summary = pd.read_csv(out_dir / "summary.csv")
    assert summary.loc[0, "wins"] == 2
    assert len(pd.read_csv(out_dir / "episodes.csv")) == 2


def test_eval_writes_a_transcript(runner, tmp_path):
    bundle = tmp_path / "righty.json"
    bundle.write_text(json.dumps({"name": "Righty", "kind": "scripted", "actions": ["RIGHT"]}))
    transcript = tmp_path / "first-run.csv"
    result = runner.invoke(cli, [
        "eval", "--agent", str(bundle), "--level", "waterpuzzle-mini-line", "--runs", "2",
        "--transcript", str(transcript),
    ])
    assert result.exit_code == 0, result.output
    ticks = pd.read_csv(transcript)
    assert list(ticks.columns) == ["tick", "action", "reward", "avatar_row", "avatar_col", "status"]
    assert len(ticks) == 4
    assert (ticks["action"] == "RIGHT").all()
    assert ticks["reward"].sum() == 15


def test_rank(runner, tmp_path):
    reports = tmp_path / "reports"
    reports.mkdir()
    pd.DataFrame([
        {"level": "a", "game": "golddigger", "agent": "x", "runs": 20, "wins": 5, "mean": 10.0, "std": 0.0,
         "mean_ticks": 50.0, "rank": 0, "points": 0},
        {"level": "a", "game": "golddigger", "agent": "y", "runs": 20, "wins": 5, "mean": 12.0, "std": 0.0,
         "mean_ticks": 50.0, "rank": 0, "points": 0},
        {"level": "a", "game": "golddigger", "agent": "z", "runs": 20, "wins": 2, "mean": 30.0, "std": 0.0,
         "mean_ticks": 50.0, "rank": 0, "points": 0},
    ]).to_csv(reports / "levels.csv", index=False)
    out = tmp_path / "standings.csv"
    result = runner.invoke(cli, ["rank", "--in", str(reports), "--out", str(out)])
    assert result.exit_code == 0, result.output
    standings = pd.read_csv(out)
    assert standings["agent"].tolist() == ["y", "x", "z"]
    assert standings["points"].tolist() == [25, 18, 15]


def test_rank_without_levels_report(runner, tmp_path):
    result = runner.invoke(cli, ["rank", "--in", str(tmp_path), "--out", str(tmp_path / "s.csv")])
    assert result.exit_code == 1
