"""Desk-scale training runs; minutes each, so only with --runslow"""

import pytest

from agents import ArcaneAgent
from arena import evaluate, summarize
from dqn import DQNTrainer, TrainConfig
from games import load_level

SEEDS = (0, 1, 2)


def _train_and_score(level, catalog, seed, frames, variant="dual"):
    config = TrainConfig(total_frames=frames, seed=seed, variant=variant)
    net, _ = DQNTrainer(level.game, [level], config, catalog=catalog).run()
    agent = ArcaneAgent(f"{variant}-{seed}", level.game, net, catalog=catalog)
    return summarize(evaluate(agent, level, n=20, base_seed=1000, catalog=catalog))


@pytest.mark.slow
def test_corridor_is_learned(catalog):
    level = load_level("golddigger-mini-corridor", catalog=catalog)
    results = [_train_and_score(level, catalog, seed, 20_000) for seed in SEEDS]
    assert sum(result.wins >= 18 for result in results) >= 2, [r.wins for r in results]


@pytest.mark.slow
def test_local_view_helps_near_monsters(catalog):
    level = load_level("golddigger-mini-hazard", catalog=catalog)
    better = 0
    for seed in SEEDS:
        dual = _train_and_score(level, catalog, seed, 50_000)
        global_only = _train_and_score(level, catalog, seed, 50_000, variant="global_only")
        better += dual.mean > global_only.mean
    assert better >= 2
