import numpy as np
import pandas as pd
import pytest

from arena_errors import GameMismatchError, ReplayUnderflowError, ShapeMismatchError
from dqn import (
    DQNTrainer, ReplayBuffer, TrainConfig, Transition, TransitionBatch, epsilon_at,
    select_training_level, td_targets,
)
from games import Status, StepResult, load_level
from level_tools import mirror
from neural import ArcaneNet
from observation import observe_grid, one_hot

SMALL_NET = {"conv_global": [4, 3], "conv_local": [3], "proj": 8, "hidden": 5}


@pytest.fixture
def corridor(catalog):
    return load_level("golddigger-mini-corridor", catalog=catalog)


def _config(**changes):
    base = dict(
        total_frames=60, replay_start=20, batch_size=4, update_freq=4, target_sync=3,
        eps_initial=1.0, eps_final=1.0, seed=3, net_overrides=SMALL_NET,
    )
    base.update(changes)
    return TrainConfig(**base)


def test_table_defaults():
    config = TrainConfig()
    assert (config.total_frames, config.replay_capacity, config.replay_start) == (200_000, 40_000, 200)
    assert (config.batch_size, config.lr, config.gamma) == (32, 0.001, 0.9)
    assert (config.target_sync, config.update_freq, config.alt_epochs) == (300, 4, 5)
    assert (config.eps_initial, config.eps_final, config.eps_final_frame) == (1.0, 0.1, 20_000)


@pytest.mark.parametrize("frame, expected", [(0, 1.0), (10_000, 0.55), (20_000, 0.1), (90_000, 0.1)])
def test_epsilon_schedule(frame, expected):
    assert epsilon_at(frame, TrainConfig()) == pytest.approx(expected, abs=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        TrainConfig(eps_initial=0.1, eps_final=0.5)
    with pytest.raises(ValueError):
        TrainConfig(replay_start=100, replay_capacity=50)
    with pytest.raises(ValueError):
        TrainConfig(batch_size=64, replay_start=32)


def test_replay_keeps_the_newest():
    buffer = ReplayBuffer(capacity=3)
    for item in range(5):
        buffer.push(item)
    assert len(buffer) == 3
    assert buffer.inserted == 5
    assert [buffer[i] for i in range(3)] == [2, 3, 4]
    assert buffer[-1] == 4


def test_replay_sampling(rng):
    buffer = ReplayBuffer(capacity=10)
    with pytest.raises(ReplayUnderflowError):
        buffer.sample(1, rng)
    for item in range(4):
        buffer.push(item)
    draws = buffer.sample(4, rng)
    assert len(draws) == 4 and set(draws) <= {0, 1, 2, 3}


def test_replay_draws_are_uniform():
    rng = np.random.default_rng(42)
    buffer = ReplayBuffer(capacity=10)
    for item in range(10):
        buffer.push(item)
    n = 100_000
    counts = np.bincount(buffer.sample(n, rng), minlength=10)
    assert np.all(np.abs(counts - n * 0.1) < 3 * np.sqrt(n * 0.1 * 0.9)), counts


def test_replay_at_full_capacity_evicts_the_oldest():
    buffer = ReplayBuffer(capacity=40_000)
    for item in range(40_001):
        buffer.push(item)
    assert len(buffer) == 40_000
    assert buffer[0] == 1
    assert buffer[-1] == 40_000
    assert 0 not in set(buffer.sample(40_000, np.random.default_rng(0)))


def test_level_alternation():
    levels = ["a", "b", "c"]
    picks = [select_training_level(epoch, levels, alt_epochs=2) for epoch in range(8)]
    assert picks == ["a", "a", "b", "b", "c", "c", "a", "a"]


def test_td_targets(corridor, small_net_config):
    grid = corridor.grid
    obs = observe_grid(grid, 4)
    moved = grid.copy()
    moved[1, 1], moved[1, 2] = 1, 4
    next_obs = observe_grid(moved, 4)
    config = small_net_config.model_copy(update={"global_shape": obs.global_codes.shape})
    net = ArcaneNet(config)

    batch = TransitionBatch.stack([
        Transition.from_observations(obs, 4, 2, next_obs, terminal=False),
        Transition.from_observations(obs, 4, 2, next_obs, terminal=True),
    ])
    targets = td_targets(batch, net, gamma=0.9)
    next_q = net.forward(next_obs)
    assert targets[0] == pytest.approx(2 + 0.9 * next_q.max())
    assert targets[1] == 2.0


def test_td_targets_match_a_per_transition_loop(small_net, rng):
    gh, gw = small_net.config.global_shape
    for _ in range(1_000):
        n = int(rng.integers(1, 6))
        batch = TransitionBatch(
            global_x=one_hot(rng.integers(0, 10, size=(n, gh, gw))),
            local_x=one_hot(rng.integers(0, 10, size=(n, 5, 5))),
            actions=rng.integers(0, 6, size=n),
            rewards=rng.integers(-10, 11, size=n).astype(np.float64),
            next_global_x=one_hot(rng.integers(0, 10, size=(n, gh, gw))),
            next_local_x=one_hot(rng.integers(0, 10, size=(n, 5, 5))),
            terminal=rng.random(n) < 0.3,
        )
        gamma = float(rng.uniform(0.0, 1.0))
        expected = []
        for i in range(n):
            if batch.terminal[i]:
                expected.append(batch.rewards[i])
            else:
                q = small_net.forward_batch(batch.next_global_x[i:i + 1], batch.next_local_x[i:i + 1])[0]
                expected.append(batch.rewards[i] + gamma * max(q))
        np.testing.assert_allclose(td_targets(batch, small_net, gamma), expected, rtol=1e-10, atol=1e-12)


def test_transitions_store_codes(corridor):
    obs = observe_grid(corridor.grid, 4)
    transition = Transition.from_observations(obs, 1, 0, obs, terminal=False)
    assert transition.global_codes.dtype == np.uint8
    batch = TransitionBatch.stack([transition])
    np.testing.assert_array_equal(batch.global_x[0], obs.global_onehot)


def test_update_cadence(corridor):
    trainer = DQNTrainer("golddigger", [corridor], _config())
    trainer.run()
    assert trainer.frames == 60
    assert trainer.warmup_frame == 20
    # one gradient step on every 4th frame from frame 20 to 60
    assert trainer.gradient_steps == 11
    assert trainer.target_syncs == 3


def test_training_alternates_levels(corridor):
    levels = [corridor, mirror(corridor, "horizontal")]
    _, log = DQNTrainer("golddigger", levels, _config(total_frames=1500, alt_epochs=1)).run()
    frame = log.to_frame()
    assert len(frame) >= 2
    expected = [levels[i % 2].name for i in range(len(frame))]
    assert frame["level"].tolist() == expected
    assert frame["win"].all()
    assert frame["frames"].is_monotonic_increasing


def test_training_is_reproducible(corridor):
    first, log_a = DQNTrainer("golddigger", [corridor], _config(total_frames=80)).run()
    second, log_b = DQNTrainer("golddigger", [corridor], _config(total_frames=80)).run()
    for name, value in first.parameters().items():
        np.testing.assert_array_equal(value, second.parameters()[name])
    pd.testing.assert_frame_equal(log_a.to_frame(), log_b.to_frame())


def test_loss_shaping_only_on_losing_steps(catalog):
    level = load_level("treasurekeeper-mini-safe", catalog=catalog)
    trainer = DQNTrainer("treasurekeeper", [level], _config())
    screen = np.zeros((1, 1, 3), dtype=np.uint8)
    assert trainer.shaped_reward(StepResult(screen, 0, Status.PLAYER_LOSES)) == -5
    assert trainer.shaped_reward(StepResult(screen, 5, Status.RUNNING)) == 5
    plain = DQNTrainer("treasurekeeper", [level], _config(), shaping={})
    assert plain.shaped_reward(StepResult(screen, 0, Status.PLAYER_LOSES)) == 0


def test_trainer_rejects_mixed_levels(corridor, golddigger_level, waterpuzzle_level):
    with pytest.raises(ShapeMismatchError):
        DQNTrainer("golddigger", [corridor, golddigger_level], _config())
    with pytest.raises(GameMismatchError):
        DQNTrainer("golddigger", [waterpuzzle_level], _config())


def test_train_log_csv(corridor, tmp_path):
    _, log = DQNTrainer("golddigger", [corridor], _config(total_frames=300)).run()
    path = log.to_csv(tmp_path / "train.csv")
    header = path.read_text().splitlines()[0]
    assert header == "episode,level,frames,epsilon,score,length,win,loss_mean"
