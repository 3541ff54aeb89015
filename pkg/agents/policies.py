"""
Decision policies over Q-values: greedy argmax and the scaled softmax

Scaled softmax: shift Q by -(max+min)/2, scale by k = sigma/(max-min), softmax.
Exponent arguments therefore stay within [-sigma/2, sigma/2].
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from arena_errors import NonFiniteQError

DEFAULT_SIGMA = 10.0


def _as_q(q) -> np.ndarray:
    q = np.asarray(q, dtype=np.float64).reshape(-1)
    if q.size == 0:
        raise ValueError("empty Q-value vector")
    if not np.all(np.isfinite(q)):
        raise NonFiniteQError()
    return q


def act_deterministic(q) -> int:
    """Argmax; ties go to the lowest index"""
    return int(np.argmax(_as_q(q)))


def softmax_probs(q, sigma: float = DEFAULT_SIGMA) -> np.ndarray:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    q = _as_q(q)
    high, low = q.max(), q.min()
    if high == low:
        return np.full(q.size, 1.0 / q.size)
    # bring Q into [-1, 1] first so max - min and max + min stay finite
    scale = max(abs(high), abs(low))
    q, high, low = q / scale, high / scale, low / scale
    spread = high - low
    if spread == 0:
        return np.full(q.size, 1.0 / q.size)
    logits = sigma * ((q - (high + low) / 2.0) / spread)
    weights = np.exp(logits - logits.max())
    return weights / weights.sum()


def sample_index(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Inverse-CDF draw over the action order using one uniform number"""
    cdf = np.cumsum(probs)
    index = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(index, len(probs) - 1)


def act_stochastic(q, sigma: float, rng: np.random.Generator) -> int:
    return sample_index(softmax_probs(q, sigma), rng)


def random_action(n_actions: int, rng: np.random.Generator) -> int:
    if n_actions <= 0:
        raise ValueError("no legal actions")
    return int(rng.integers(n_actions))


@dataclass(frozen=True)
class DecisionPolicy:
    mode: Literal["det", "stoch"] = "det"
    sigma: float = DEFAULT_SIGMA

    def __post_init__(self):
        if self.mode not in ("det", "stoch"):
            raise ValueError(f"unknown policy mode '{self.mode}'")
        if self.mode == "stoch" and self.sigma <= 0:
            raise ValueError("sigma must be positive for the stochastic policy")

    def choose(self, q, rng: np.random.Generator) -> int:
        if self.mode == "det":
            return act_deterministic(q)
        return act_stochastic(q, self.sigma, rng)

    def describe(self) -> str:
        return "det" if self.mode == "det" else f"stoch(sigma={self.sigma:g})"
