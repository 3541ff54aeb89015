"""
Per-level ranking with the competition points, and accumulation across levels
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence

import pandas as pd

from arena_errors import DuplicateAgentError

from .evaluation import LevelResult

POINTS = (25, 18, 15, 12, 10)


def points_for(rank: int) -> int:
    return POINTS[rank - 1] if 1 <= rank <= len(POINTS) else 0


@dataclass(frozen=True)
class RankedEntry:
    rank: int
    agent: str
    points: int
    result: LevelResult


def rank_level(results: Sequence[LevelResult]) -> List[RankedEntry]:
    """
    Order by wins, mean score (both descending), mean ticks (ascending), then agent id

    Agents whose first three keys are all equal share the better rank and its points.
    """
    seen = set()
    for result in results:
        if result.agent in seen:
            raise DuplicateAgentError(result.agent)
        seen.add(result.agent)

    ordered = sorted(results, key=lambda r: (r.rank_key, r.agent))
    entries: List[RankedEntry] = []
    for position, result in enumerate(ordered, start=1):
        if entries and entries[-1].result.rank_key == result.rank_key:
            rank = entries[-1].rank
        else:
            rank = position
        entries.append(RankedEntry(rank, result.agent, points_for(rank), result))
    return entries


@dataclass
class RankTable:
    levels: Dict[str, List[RankedEntry]] = field(default_factory=dict)
    totals: Dict[str, int] = field(default_factory=dict)
    wins: Dict[str, int] = field(default_factory=dict)

    def standings(self) -> pd.DataFrame:
        """Agents by total points, then total wins, then name; tied agents share a rank"""
        agents = sorted(self.totals, key=lambda a: (-self.totals[a], -self.wins[a], a))
        rows = []
        for position, agent in enumerate(agents, start=1):
            key = (self.totals[agent], self.wins[agent])
            if rows and (rows[-1]["points"], rows[-1]["wins"]) == key:
                rank = rows[-1]["rank"]
            else:
                rank = position
            rows.append({"rank": rank, "agent": agent, "points": key[0], "wins": key[1]})
        return pd.DataFrame(rows, columns=["rank", "agent", "points", "wins"])


def accumulate(level_rankings: Mapping[str, Sequence[RankedEntry]]) -> RankTable:
    table = RankTable()
    for level, entries in level_rankings.items():
        table.levels[level] = list(entries)
        for entry in entries:
            table.totals[entry.agent] = table.totals.get(entry.agent, 0) + entry.points
            table.wins[entry.agent] = table.wins.get(entry.agent, 0) + entry.result.wins
    return table
