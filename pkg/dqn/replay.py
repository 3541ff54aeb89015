"""
Uniform experience replay over tile-code observations
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from arena_errors import ReplayUnderflowError
from observation import ObservationPair, one_hot


@dataclass(frozen=True)
class Transition:
    """One stored step; observations are kept as small code matrices and one-hot encoded on sampling"""

    global_codes: np.ndarray
    local_codes: np.ndarray
    action: int
    reward: int
    next_global_codes: np.ndarray
    next_local_codes: np.ndarray
    terminal: bool

    @classmethod
    def from_observations(cls, obs: ObservationPair, action: int, reward: int,
                          next_obs: ObservationPair, terminal: bool) -> "Transition":
        return cls(
            global_codes=obs.global_codes.astype(np.uint8),
            local_codes=obs.local_codes.astype(np.uint8),
            action=int(action),
            reward=int(reward),
            next_global_codes=next_obs.global_codes.astype(np.uint8),
            next_local_codes=next_obs.local_codes.astype(np.uint8),
            terminal=bool(terminal),
        )


@dataclass
class TransitionBatch:
    global_x: np.ndarray
    local_x: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_global_x: np.ndarray
    next_local_x: np.ndarray
    terminal: np.ndarray

    def __len__(self) -> int:
        return len(self.actions)

    @classmethod
    def stack(cls, transitions: Sequence[Transition]) -> "TransitionBatch":
        return cls(
            global_x=one_hot(np.stack([t.global_codes for t in transitions])),
            local_x=one_hot(np.stack([t.local_codes for t in transitions])),
            actions=np.array([t.action for t in transitions], dtype=np.int64),
            rewards=np.array([t.reward for t in transitions], dtype=np.float64),
            next_global_x=one_hot(np.stack([t.next_global_codes for t in transitions])),
            next_local_x=one_hot(np.stack([t.next_local_codes for t in transitions])),
            terminal=np.array([t.terminal for t in transitions], dtype=bool),
        )


class ReplayBuffer:
    """Fixed-capacity ring; index 0 is always the oldest transition still held"""

    def __init__(self, capacity: int = 40_000):
        if capacity <= 0:
            raise ValueError("replay capacity must be positive")
        self.capacity = capacity
        self._items: List[Optional[object]] = []
        self._next = 0
        self.inserted = 0

    def __len__(self) -> int:
        return len(self._items)

    def push(self, item):
        if len(self._items) < self.capacity:
            self._items.append(item)
        else:
            self._items[self._next] = item
        self._next = (self._next + 1) % self.capacity
        self.inserted += 1

    def __getitem__(self, index: int):
        size = len(self._items)
        if not -size <= index < size:
            raise IndexError(index)
        index %= size
        if size < self.capacity:
            return self._items[index]
        return self._items[(self._next + index) % self.capacity]

    def sample(self, batch_size: int, rng: np.random.Generator) -> list:
        """Uniform draws with replacement over the current contents"""
        if len(self._items) < batch_size or batch_size <= 0:
            raise ReplayUnderflowError(len(self._items), batch_size)
        picks = rng.integers(0, len(self._items), size=batch_size)
        return [self._items[int(i)] for i in picks]
