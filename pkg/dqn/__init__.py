# DQN training: replay buffer, TD targets, the per-game training loop
from .replay import ReplayBuffer, Transition, TransitionBatch
from .trainer import (
    DEFAULT_LOSS_SHAPING,
    DQNTrainer,
    TrainConfig,
    TrainLog,
    epsilon_at,
    select_training_level,
    td_targets,
    train,
)

__all__ = [
    'ReplayBuffer', 'Transition', 'TransitionBatch', 'DEFAULT_LOSS_SHAPING', 'DQNTrainer',
    'TrainConfig', 'TrainLog', 'epsilon_at', 'select_training_level', 'td_targets', 'train',
]
