"""
🏆 COMPETITION RUNNER
Every agent (plus the Random baseline) on every level for a fixed number of seeded
runs, then per-level ranking and accumulated standings.

Reports written to the output directory:
  episodes.csv   agent,game,level,seed,win,score,ticks
  levels.csv     level,game,agent,runs,wins,mean,std,mean_ticks,rank,points
  standings.csv  rank,agent,points,wins
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from agents import DEFAULT_SIGMA, Agent, RandomAgent, agent_from_file
from arena_errors import AgentBundleError, ArenaError, DuplicateAgentError
from games import load_level
from grid_core import Level, TileCatalog

from .evaluation import DEFAULT_RUNS, EpisodeRecord, LevelResult, evaluate, summarize
from .ranking import RankedEntry, RankTable, accumulate, rank_level

logger = logging.getLogger(__name__)

EPISODE_COLUMNS = ["agent", "game", "level", "seed", "win", "score", "ticks"]
LEVEL_COLUMNS = ["level", "game", "agent", "runs", "wins", "mean", "std", "mean_ticks", "rank", "points"]
FLOAT_FORMAT = "%.6f"
BASELINE = "Random"


@dataclass
class CompetitionReport:
    episodes: pd.DataFrame
    levels: pd.DataFrame
    standings: pd.DataFrame
    table: RankTable
    paths: Dict[str, Path]


def _write(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def level_frame(rankings: Dict[str, List[RankedEntry]]) -> pd.DataFrame:
    rows = []
    for level, entries in rankings.items():
        for entry in entries:
            r = entry.result
            rows.append({
                "level": level, "game": r.game, "agent": r.agent, "runs": r.runs, "wins": r.wins,
                "mean": r.mean, "std": r.std, "mean_ticks": r.mean_ticks,
                "rank": entry.rank, "points": entry.points,
            })
    return pd.DataFrame(rows, columns=LEVEL_COLUMNS)


def compete(
    agents: Sequence[Agent],
    levels: Sequence[Level],
    out_dir: Union[str, Path],
    runs: int = DEFAULT_RUNS,
    base_seed: int = 0,
    workers: int = 1,
    include_baseline: bool = True,
    catalog: Optional[TileCatalog] = None,
) -> CompetitionReport:
    agents = list(agents)
    if include_baseline and all(agent.name != BASELINE for agent in agents):
        agents.insert(0, RandomAgent(BASELINE))
    names = [agent.name for agent in agents]
    for name in names:
        if names.count(name) > 1:
            raise DuplicateAgentError(name)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"🏆 Competition: {len(agents)} agents x {len(levels)} levels x {runs} runs (base seed {base_seed})")

    records: List[EpisodeRecord] = []
    rankings: Dict[str, List[RankedEntry]] = {}
    for level in levels:
        results: List[LevelResult] = []
        for agent in agents:
            level_records = evaluate(agent, level, runs, base_seed, workers, catalog)
            records.extend(level_records)
            if level_records:
                results.append(summarize(level_records))
        rankings[level.name] = rank_level(results)
        leader = rankings[level.name][0] if rankings[level.name] else None
        if leader is not None:
            logger.info(f"🎮 {level.name}: {leader.agent} leads with {leader.result.wins}/{leader.result.runs} wins")

    table = accumulate(rankings)
    episodes = pd.DataFrame([r.as_row() for r in records], columns=EPISODE_COLUMNS)
    per_level = level_frame(rankings)
    standings = table.standings()

    paths = {
        "episodes": _write(episodes, out_dir / "episodes.csv"),
        "levels": _write(per_level, out_dir / "levels.csv"),
        "standings": _write(standings, out_dir / "standings.csv"),
    }
    failures = sum(1 for r in records if r.error)
    if failures:
        logger.warning(f"⚠️ {failures} episodes ended by agent failures (recorded as losses)")
    logger.info(f"✅ Reports written to {out_dir}")
    return CompetitionReport(episodes, per_level, standings, table, paths)


class UnloadableAgent(Agent):
    """Stands in for a bundle that failed to load; every episode ends as a quarantined loss"""

    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason

    def act(self, screen, actions, rng):
        raise AgentBundleError(f"bundle not loaded: {self.reason}")


def load_agents(bundles: Sequence[Union[str, Path]], catalog: Optional[TileCatalog] = None,
                default_sigma: float = DEFAULT_SIGMA) -> List[Agent]:
    """One agent per bundle file; a bundle that fails to load is kept as an UnloadableAgent"""
    agents: List[Agent] = []
    for path in bundles:
        try:
            agents.append(agent_from_file(path, catalog, default_sigma))
        except ArenaError as e:
            logger.error(f"❌ Bundle {path} failed to load, its levels count as losses: {e}")
            agents.append(UnloadableAgent(Path(path).stem, str(e)))
    return agents


def run_competition(
    bundles: Sequence[Union[str, Path]],
    levels: Sequence[Union[str, Path, Level]],
    out_dir: Union[str, Path],
    runs: int = DEFAULT_RUNS,
    base_seed: int = 0,
    workers: int = 1,
    catalog: Optional[TileCatalog] = None,
    default_sigma: float = DEFAULT_SIGMA,
) -> CompetitionReport:
    """Load agent bundles and level files, then run compete()"""
    agents = load_agents(bundles, catalog, default_sigma)
    loaded = [level if isinstance(level, Level) else load_level(level, catalog=catalog) for level in levels]
    return compete(agents, loaded, out_dir, runs, base_seed, workers, catalog=catalog)


def standings_from_levels(levels_csv: Union[str, Path]) -> RankTable:
    """Re-rank a levels.csv report (used by `rank --in`)"""
    frame = pd.read_csv(levels_csv)
    rankings: Dict[str, List[RankedEntry]] = {}
    for level, group in frame.groupby("level", sort=False):
        results = [
            LevelResult(
                agent=str(row.agent), game=str(row.game), level=str(level), runs=int(row.runs),
                wins=int(row.wins), mean=float(row.mean), std=float(row.std), mean_ticks=float(row.mean_ticks),
            )
            for row in group.itertuples(index=False)
        ]
        rankings[str(level)] = rank_level(results)
    return accumulate(rankings)


def write_standings(table: RankTable, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return _write(table.standings(), path)
