"""
🏆 EVALUATION
Seeded episodes of one agent on one level, and their per-level summary.
Episode i uses seed base_seed + i for the game; the agent gets its own stream from
the same seed, so serial and parallel runs produce identical records.
"""

import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
from joblib import Parallel, delayed

from agents import Agent
from arena_errors import MixedRecordsError
from games import GameEnv, Status, load_level
from grid_core import Level, TileCatalog

logger = logging.getLogger(__name__)

AGENT_STREAM = 1
DEFAULT_RUNS = 20


@dataclass(frozen=True)
class EpisodeRecord:
    agent: str
    game: str
    level: str
    seed: int
    win: bool
    score: int
    ticks: int
    error: str = ""

    def as_row(self) -> dict:
        row = asdict(self)
        row.pop("error")
        return row


@dataclass(frozen=True)
class LevelResult:
    agent: str
    game: str
    level: str
    runs: int
    wins: int
    mean: float
    std: float
    mean_ticks: float

    @property
    def rank_key(self):
        """Smaller is better: more wins, then higher mean score, then shorter games"""
        return (-self.wins, -self.mean, self.mean_ticks)


def run_episode(agent: Agent, level: Level, seed: int, catalog: Optional[TileCatalog] = None,
                transcript_path: Optional[Union[str, Path]] = None) -> EpisodeRecord:
    """
    Play one episode; an agent exception ends it as a loss with score 0

    Returns:
        EpisodeRecord with ticks >= 1; with transcript_path the per-tick log is written there too
    """
    env = GameEnv(level.game, catalog, record_transcript=transcript_path is not None)
    screen = env.reset(level, seed)
    rng = np.random.default_rng([seed, AGENT_STREAM])
    agent.begin_episode()
    while True:
        try:
            action = agent.act(screen, env.legal_actions, rng)
            result = env.step(action)
        except Exception as e:
            ticks = max(env.state.tick, 1)
            logger.warning(f"⚠️ Agent '{agent.name}' failed on {level.name} (seed {seed}, tick {ticks}): {e}")
            record = EpisodeRecord(agent.name, level.game, level.name, seed, False, 0, ticks, error=str(e))
            break
        screen = result.screen
        if result.done:
            record = EpisodeRecord(
                agent=agent.name,
                game=level.game,
                level=level.name,
                seed=seed,
                win=result.status is Status.PLAYER_WINS,
                score=int(result.score),
                ticks=int(result.tick),
            )
            break
    if transcript_path is not None:
        env.transcript.to_csv(transcript_path)
        logger.info(f"📝 Transcript of {level.name} (seed {seed}) written to {transcript_path}")
    return record


def evaluate(
    agent: Agent,
    level: Union[Level, str, Path],
    n: int = DEFAULT_RUNS,
    base_seed: int = 0,
    workers: int = 1,
    catalog: Optional[TileCatalog] = None,
) -> List[EpisodeRecord]:
    """n episodes with seeds base_seed .. base_seed + n - 1, in seed order"""
    if not isinstance(level, Level):
        level = load_level(level, catalog=catalog)
    seeds = range(base_seed, base_seed + n)
    if workers > 1 and n > 1:
        records = Parallel(n_jobs=workers)(delayed(run_episode)(agent, level, seed, catalog) for seed in seeds)
    else:
        records = [run_episode(agent, level, seed, catalog) for seed in seeds]
    return list(records)


def summarize(records: Sequence[EpisodeRecord]) -> LevelResult:
    if not records:
        raise MixedRecordsError("no records to summarize")
    keys = {(r.agent, r.game, r.level) for r in records}
    if len(keys) > 1:
        raise MixedRecordsError(f"records mix agents or levels: {sorted(keys)}")
    agent, game, level = keys.pop()
    scores = np.array([r.score for r in records], dtype=np.float64)
    ticks = np.array([r.ticks for r in records], dtype=np.float64)
    return LevelResult(
        agent=agent,
        game=game,
        level=level,
        runs=len(records),
        wins=sum(1 for r in records if r.win),
        mean=float(scores.mean()),
        std=float(scores.std()),
        mean_ticks=float(ticks.mean()),
    )
