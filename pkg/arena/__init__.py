# Arena: seeded evaluation, per-level ranking, accumulated standings, competitions
from .competition import (
    CompetitionReport,
    UnloadableAgent,
    compete,
    load_agents,
    run_competition,
    standings_from_levels,
    write_standings,
)
from .evaluation import DEFAULT_RUNS, EpisodeRecord, LevelResult, evaluate, run_episode, summarize
from .ranking import POINTS, RankedEntry, RankTable, accumulate, points_for, rank_level

__all__ = [
    'CompetitionReport', 'UnloadableAgent', 'compete', 'load_agents', 'run_competition',
    'standings_from_levels', 'write_standings',
    'DEFAULT_RUNS', 'EpisodeRecord', 'LevelResult', 'evaluate', 'run_episode', 'summarize',
    'POINTS', 'RankedEntry', 'RankTable', 'accumulate', 'points_for', 'rank_level',
]
