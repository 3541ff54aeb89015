#!/usr/bin/env python3
"""
Learning Arena command line
train / eval / rank / compete / genlevels / observe / serve
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click
import numpy as np
import pandas as pd
from colorama import Fore, Style, init as colorama_init

from arena import standings_from_levels, write_standings
from arena_errors import ArenaError
from dqn import TrainConfig
from games import GAME_IDS, load_level
from grid_core import Level, export_ppm, render, write_level
from learning_arena import LearningArena
from level_tools import (
    ALGORITHMS, TileEdit, combine, default_window, gen_maze, maze_to_waterpuzzle, mirror,
    multi_tile_change, repair, single_tile_change, tile_codes, window_augment,
)
from observation import dump_observation, observe
from settings import ArenaSettings

logger = logging.getLogger("arena_cli")


def _ok(message: str):
    click.echo(f"{Fore.GREEN}✅ {message}{Style.RESET_ALL}")


def _fail(message: str):
    click.echo(f"{Fore.RED}❌ {message}{Style.RESET_ALL}", err=True)
    sys.exit(1)


def _table(frame: pd.DataFrame):
    click.echo(f"{Fore.CYAN}{frame.to_string(index=False)}{Style.RESET_ALL}")


@click.group()
@click.option("--log-level", default=None, help="Overrides ARENA_LOG_LEVEL")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]):
    """🎮 Learning Arena: GoldDigger, TreasureKeeper and WaterPuzzle agents"""
    colorama_init()
    settings = ArenaSettings.from_env()
    logging.basicConfig(
        level=(log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = settings


def _arena(ctx: click.Context) -> LearningArena:
    return LearningArena(ctx.obj)


@cli.command()
@click.option("--game", "game_id", type=click.Choice(GAME_IDS), required=True)
@click.option("--levels", "level_names", multiple=True, required=True, help="Training level names or files")
@click.option("--frames", type=int, default=200_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "model_path", type=click.Path(dir_okay=False), required=True)
@click.option("--log", "log_path", type=click.Path(dir_okay=False), default=None)
@click.option("--augment", is_flag=True, help="Train on mirrored, windowed and maze levels too")
@click.option("--variant", type=click.Choice(["dual", "global_only"]), default="dual", show_default=True)
@click.pass_context
def train(ctx, game_id, level_names, frames, seed, model_path, log_path, augment, variant):
    """Train a DQN agent on one game's levels"""
    try:
        config = TrainConfig(total_frames=frames, seed=seed, variant=variant)
        arena = _arena(ctx)
        _, log = arena.train_game(game_id, level_names, config, augment, model_path, log_path)
    except (ArenaError, ValueError) as e:
        _fail(f"Training failed: {e}")
    frame = log.to_frame()
    wins = int(frame["win"].sum()) if len(frame) else 0
    _ok(f"{game_id}: {len(frame)} episodes, {wins} wins, model saved to {model_path}")


@cli.command("eval")
@click.option("--agent", "bundle_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--level", "level_name", required=True)
@click.option("--runs", type=int, default=None, help="Defaults to ARENA_RUNS (20)")
@click.option("--seed", type=int, default=None, help="Defaults to ARENA_BASE_SEED (0)")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
@click.option("--policy", type=click.Choice(["det", "stoch"]), default=None)
@click.option("--sigma", type=float, default=None)
@click.option("--transcript", "transcript_path", type=click.Path(dir_okay=False), default=None,
              help="Write a per-tick CSV of the first seeded run")
@click.pass_context
def evaluate_cmd(ctx, bundle_path, level_name, runs, seed, out_dir, policy, sigma, transcript_path):
    """Play one agent bundle on one level for seeded runs"""
    try:
        arena = _arena(ctx)
        agent = arena.make_agent(bundle_path, policy, sigma)
        result = arena.evaluate_agent(agent, level_name, runs, seed, transcript_path)
    except (ArenaError, ValueError) as e:
        _fail(f"Evaluation failed: {e}")

    episodes = pd.DataFrame(result.pop("episodes"))
    summary = pd.DataFrame([result])
    _table(summary)
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        episodes.to_csv(out / "episodes.csv", index=False, lineterminator="\n")
        summary.to_csv(out / "summary.csv", index=False, float_format="%.6f", lineterminator="\n")
        _ok(f"Reports written to {out}")


@cli.command()
@click.option("--in", "in_dir", type=click.Path(exists=True, file_okay=False), required=True,
              help="Directory holding a levels.csv report")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
def rank(in_dir, out_path):
    """Re-rank per-level results and write overall standings"""
    levels_csv = Path(in_dir) / "levels.csv"
    if not levels_csv.exists():
        _fail(f"No levels.csv in {in_dir}")
    try:
        table = standings_from_levels(levels_csv)
    except ArenaError as e:
        _fail(f"Ranking failed: {e}")
    write_standings(table, out_path)
    _table(table.standings())
    _ok(f"Standings written to {out_path}")


@cli.command()
@click.option("--agents", "bundles", multiple=True, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--levels", "level_names", multiple=True, required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
@click.option("--runs", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.pass_context
def compete(ctx, bundles, level_names, out_dir, runs, seed):
    """🏆 Every agent (plus Random) on every level, ranked"""
    try:
        report = _arena(ctx).compete(bundles, level_names, out_dir, runs, seed)
    except ArenaError as e:
        _fail(f"Competition failed: {e}")
    _table(report.standings)
    _ok(f"Reports written to {report.paths['standings'].parent}")


def _parse_edit(text: str, level: Level) -> TileEdit:
    """'row,col,tile' with a tile name from the game's legend"""
    try:
        row, col, tile = text.split(",")
        code = tile_codes(level)[tile.strip()]
        return TileEdit(int(row), int(col), code)
    except KeyError:
        raise click.BadParameter(f"unknown tile in '{text}'; choose from {sorted(tile_codes(level))}")
    except ValueError:
        raise click.BadParameter(f"edit '{text}' is not 'row,col,tile'")


def _report(level: Level, do_repair: bool) -> Level:
    if not do_repair:
        return level
    repaired, report = repair(level)
    if report.is_empty:
        click.echo("repair: level already valid")
    else:
        for line in report.lines():
            click.echo(f"{Fore.YELLOW}repair: {line}{Style.RESET_ALL}")
    return repaired


@cli.command()
@click.option("--op", type=click.Choice(["single", "multi", "combine", "mirror", "window", "maze"]), required=True)
@click.option("--in", "inputs", multiple=True, help="Input level names or files")
@click.option("--edit", "edits", multiple=True, help="row,col,tile (single/multi)")
@click.option("--axis", type=click.Choice(["horizontal", "vertical"]), default="horizontal")
@click.option("--window", type=(int, int), default=None, help="Window rows cols (window)")
@click.option("--algorithm", type=click.Choice(ALGORITHMS), default="prim")
@click.option("--size", type=(int, int), default=(5, 7), show_default=True, help="Maze cells rows cols (maze)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--name", default="", help="Name of the new level")
@click.option("--repair/--no-repair", "do_repair", default=True, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
def genlevels(op, inputs, edits, axis, window, algorithm, size, seed, name, do_repair, out_path):
    """🧩 Derive a new level from existing ones, or generate a WaterPuzzle maze"""
    rng = np.random.default_rng(seed)
    try:
        sources: List[Level] = [load_level(item) for item in inputs]
        _check_inputs(op, sources, edits)
        if op == "single":
            level = single_tile_change(sources[0], _parse_edit(edits[0], sources[0]), name)
        elif op == "multi":
            level = multi_tile_change(sources[0], [_parse_edit(e, sources[0]) for e in edits], name)
        elif op == "combine":
            level = combine(sources[0], sources[1], name)
        elif op == "mirror":
            level = mirror(sources[0], axis)
        elif op == "window":
            shape = sources[0].shape
            level = window_augment(sources, tuple(window or default_window(shape)), shape, rng, name)
        else:
            maze = gen_maze(size[0], size[1], algorithm, rng)
            level = maze_to_waterpuzzle(maze, rng, name=name)
        level = _report(level, do_repair)
    except (ArenaError, ValueError) as e:
        _fail(f"genlevels --op {op} failed: {e}")
    write_level(level, out_path)
    _ok(f"{level.game} level {level.shape[0]}x{level.shape[1]} written to {out_path}")


def _check_inputs(op: str, sources: Sequence[Level], edits: Tuple[str, ...]):
    needed = {"single": 1, "multi": 1, "combine": 2, "mirror": 1, "maze": 0}
    if op in needed and len(sources) != needed[op]:
        raise click.UsageError(f"--op {op} takes {needed[op]} --in level(s), got {len(sources)}")
    if op == "window" and not sources:
        raise click.UsageError("--op window needs at least one --in level")
    if op == "single" and len(edits) != 1:
        raise click.UsageError("--op single takes exactly one --edit")
    if op == "multi" and not edits:
        raise click.UsageError("--op multi needs at least one --edit")


@cli.command("observe")
@click.option("--level", "level_name", required=True)
@click.option("--ppm", "ppm_path", type=click.Path(dir_okay=False), default=None, help="Also write a P3 screenshot")
@click.pass_context
def observe_cmd(ctx, level_name, ppm_path):
    """Print the global and local code matrices of a level's first frame"""
    try:
        arena = _arena(ctx)
        level = arena.load(level_name)
        screen = render(level.grid, arena.catalog)
        pair = observe(screen, arena.catalog)
    except ArenaError as e:
        _fail(f"Observation failed: {e}")
    click.echo(dump_observation(pair), nl=False)
    if ppm_path:
        export_ppm(screen, ppm_path)
        _ok(f"Screenshot written to {ppm_path}")


@cli.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.pass_context
def serve(ctx, host, port):
    """Run the HTTP service"""
    import uvicorn

    settings: ArenaSettings = ctx.obj
    uvicorn.run("api_service:app", host=host or settings.api_host, port=port or settings.api_port,
                log_level=settings.log_level.lower())


if __name__ == "__main__":
    cli()
