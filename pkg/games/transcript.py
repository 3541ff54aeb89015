"""
Per-tick episode transcripts (tick, action, reward, avatar position, status) as CSV
"""

from pathlib import Path
from typing import List, Union

import pandas as pd

from .engine import Action, GameState

TRANSCRIPT_COLUMNS = ["tick", "action", "reward", "avatar_row", "avatar_col", "status"]


class EpisodeTranscript:
    def __init__(self):
        self.rows: List[dict] = []

    def record(self, state: GameState, action: Action, reward: int):
        row, col = state.avatar.pos
        self.rows.append({
            "tick": state.tick,
            "action": Action(action).name,
            "reward": reward,
            "avatar_row": row,
            "avatar_col": col,
            "status": state.status.value,
        })

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=TRANSCRIPT_COLUMNS)

    def to_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        self.to_frame().to_csv(path, index=False)
        return path
