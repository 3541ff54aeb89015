"""
🧠 DQN TRAINER
Per-game DQN loop with the competition settings: linear epsilon decay, uniform
replay, periodic target sync and level alternation every few episodes.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, model_validator

from agents.policies import act_deterministic
from arena_errors import DivergenceError, GameMismatchError, ShapeMismatchError
from games import GameEnv, StepResult, Status
from grid_core import Level, TileCatalog
from neural import ArcaneNet, NetConfig, huber_loss, make_optimizer
from observation import observe

from .replay import ReplayBuffer, Transition, TransitionBatch

logger = logging.getLogger(__name__)

# TreasureKeeper has no in-game loss penalty; training sees -5 on the losing step
DEFAULT_LOSS_SHAPING: Dict[str, int] = {"treasurekeeper": -5}

TRAIN_LOG_COLUMNS = ["episode", "level", "frames", "epsilon", "score", "length", "win", "loss_mean"]


class TrainConfig(BaseModel):
    total_frames: int = Field(200_000, ge=0)
    eps_initial: float = Field(1.0, gt=0, le=1)
    eps_final: float = Field(0.1, gt=0, le=1)
    eps_final_frame: int = Field(20_000, gt=0)
    replay_capacity: int = Field(40_000, gt=0)
    replay_start: int = Field(200, gt=0)
    batch_size: int = Field(32, gt=0)
    lr: float = Field(0.001, gt=0)
    gamma: float = Field(0.9, gt=0, le=1)
    target_sync: int = Field(300, gt=0)
    update_freq: int = Field(4, gt=0)
    alt_epochs: int = Field(5, gt=0)
    seed: int = 0
    variant: Literal["dual", "global_only"] = "dual"
    optimizer: Literal["adam", "sgd"] = "adam"
    net_overrides: Dict[str, Any] = Field(default_factory=dict)
    log_every: int = Field(50, gt=0)

    @model_validator(mode="after")
    def _check_schedule(self):
        if self.eps_final > self.eps_initial:
            raise ValueError("eps_final must not exceed eps_initial")
        if self.replay_start > self.replay_capacity:
            raise ValueError("replay_start must not exceed replay_capacity")
        if self.batch_size > self.replay_start:
            raise ValueError("batch_size must not exceed replay_start")
        return self


def epsilon_at(frame: int, config: TrainConfig) -> float:
    """Linear decay from eps_initial to eps_final over eps_final_frame frames"""
    if frame >= config.eps_final_frame:
        return config.eps_final
    remaining = config.eps_final_frame - frame
    return (config.eps_initial * remaining + config.eps_final * frame) / config.eps_final_frame


def select_training_level(epoch: int, levels: Sequence, alt_epochs: int = 5):
    """One epoch is one episode; each level is used for alt_epochs episodes in turn"""
    if not levels:
        raise ValueError("no training levels")
    return levels[(epoch // alt_epochs) % len(levels)]


def td_targets(batch: TransitionBatch, target_net: ArcaneNet, gamma: float = 0.9) -> np.ndarray:
    """y = r for terminal transitions, r + gamma * max_a Q_target(next) otherwise"""
    next_q = target_net.forward_batch(batch.next_global_x, batch.next_local_x)
    bootstrap = np.where(batch.terminal, 0.0, gamma * next_q.max(axis=1))
    return batch.rewards + bootstrap


class TrainLog:
    def __init__(self):
        self.rows: List[dict] = []

    def append(self, **row):
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=TRAIN_LOG_COLUMNS)

    def to_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        return path


class DQNTrainer:
    """
    Trains one ArcaneNet on one game's levels

    Counters after run(): frames, gradient_steps, target_syncs, warmup_frame (frame at
    which the buffer first held replay_start transitions).
    """

    def __init__(
        self,
        game_id: str,
        levels: Sequence[Level],
        config: Optional[TrainConfig] = None,
        shaping: Optional[Dict[str, int]] = None,
        catalog: Optional[TileCatalog] = None,
    ):
        self.config = config or TrainConfig()
        self.levels = list(levels)
        self._check_levels(game_id)
        self.game_id = game_id
        self.shaping = DEFAULT_LOSS_SHAPING if shaping is None else dict(shaping)

        self.env = GameEnv(game_id, catalog)
        self.n_actions = len(self.env.legal_actions)
        net_config = NetConfig.for_screen(
            self.levels[0].shape,
            self.n_actions,
            variant=self.config.variant,
            seed=self.config.seed,
            **self.config.net_overrides,
        )
        self.online = ArcaneNet(net_config)
        self.target = self.online.clone()
        self.optimizer = make_optimizer(self.config.optimizer, self.config.lr)
        self.replay = ReplayBuffer(self.config.replay_capacity)
        self.rng = np.random.default_rng(self.config.seed)
        self.log = TrainLog()

        self.frames = 0
        self.gradient_steps = 0
        self.target_syncs = 0
        self.warmup_frame: Optional[int] = None

    def _check_levels(self, game_id: str):
        if not self.levels:
            raise ValueError("no training levels")
        for level in self.levels:
            if level.game != game_id:
                raise GameMismatchError(f"level '{level.name}' belongs to {level.game}, not {game_id}")
        shapes = {level.shape for level in self.levels}
        if len(shapes) > 1:
            raise ShapeMismatchError(f"training levels differ in size: {sorted(shapes)}")

    def shaped_reward(self, result: StepResult) -> int:
        reward = result.reward
        if result.status is Status.PLAYER_LOSES:
            reward += self.shaping.get(self.game_id, 0)
        return reward

    def _choose(self, obs, epsilon: float) -> int:
        if self.rng.random() < epsilon:
            return int(self.rng.integers(self.n_actions))
        return act_deterministic(self.online.forward(obs))

    def _learn(self) -> float:
        batch = TransitionBatch.stack(self.replay.sample(self.config.batch_size, self.rng))
        targets = td_targets(batch, self.target, self.config.gamma)
        q = self.online.forward_batch(batch.global_x, batch.local_x)
        rows = np.arange(len(batch))
        loss, grad = huber_loss(q[rows, batch.actions], targets)
        if not np.isfinite(loss):
            raise DivergenceError(
                f"non-finite loss at frame {self.frames} (gradient step {self.gradient_steps}); "
                f"max |Q| = {np.nanmax(np.abs(q)):.3g}"
            )
        dq = np.zeros_like(q)
        dq[rows, batch.actions] = grad
        self.optimizer.step(self.online.parameters(), self.online.backward(dq))
        return loss

    def run(self) -> Tuple[ArcaneNet, TrainLog]:
        config = self.config
        catalog = self.env.catalog
        logger.info(
            f"🎮 Training {config.variant} net on {self.game_id} "
            f"({len(self.levels)} levels, {config.total_frames:,} frames, seed {config.seed})"
        )

        episode = 0
        while self.frames < config.total_frames:
            level = select_training_level(episode, self.levels, config.alt_epochs)
            obs = observe(self.env.reset(level, seed=config.seed * 100_003 + episode), catalog)
            losses: List[float] = []
            length = 0
            result = None

            while self.frames < config.total_frames:
                action = self._choose(obs, epsilon_at(self.frames, config))
                result = self.env.step_index(action)
                self.frames += 1
                length += 1
                next_obs = observe(result.screen, catalog)
                self.replay.push(Transition.from_observations(
                    obs, action, self.shaped_reward(result), next_obs, result.done
                ))
                obs = next_obs

                if len(self.replay) >= config.replay_start:
                    if self.warmup_frame is None:
                        self.warmup_frame = self.frames
                    if self.frames % config.update_freq == 0:
                        losses.append(self._learn())
                        self.gradient_steps += 1
                        if self.gradient_steps % config.target_sync == 0:
                            self.target.copy_from(self.online)
                            self.target_syncs += 1

                if result.done:
                    break

            if result is None or not result.done:
                break

            self.log.append(
                episode=episode,
                level=level.name,
                frames=self.frames,
                epsilon=epsilon_at(self.frames, config),
                score=result.score,
                length=length,
                win=result.status is Status.PLAYER_WINS,
                loss_mean=float(np.mean(losses)) if losses else float("nan"),
            )
            episode += 1
            if episode % config.log_every == 0:
                recent = self.log.rows[-config.log_every:]
                wins = sum(row["win"] for row in recent)
                logger.info(
                    f"📊 episode {episode}: frames {self.frames:,}, eps {epsilon_at(self.frames, config):.3f}, "
                    f"wins {wins}/{len(recent)} in the last {len(recent)}"
                )

        logger.info(
            f"✅ Training done: {self.frames:,} frames, {len(self.log)} episodes, "
            f"{self.gradient_steps} gradient steps, {self.target_syncs} target syncs"
        )
        return self.online, self.log


def train(
    game_id: str,
    levels: Sequence[Level],
    config: Optional[TrainConfig] = None,
    shaping: Optional[Dict[str, int]] = None,
    catalog: Optional[TileCatalog] = None,
) -> Tuple[ArcaneNet, TrainLog]:
    return DQNTrainer(game_id, levels, config, shaping, catalog).run()
