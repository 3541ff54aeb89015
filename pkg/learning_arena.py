"""
Learning Arena
Connects the three games, the trainer, the agents and the competition harness
behind one object used by the CLI and the HTTP service
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from agents import Agent, AgentBundle, DecisionPolicy, build_agent, load_bundle
from arena import CompetitionReport, evaluate, run_competition, run_episode, summarize
from arena_errors import ArenaError, UnknownGameError
from dqn import TrainConfig, TrainLog, train
from games import GAME_IDS, load_game_config, load_level, shipped_levels
from grid_core import Level, TileCatalog, default_catalog
from level_tools import augment_levels
from neural import ArcaneNet, save_params
from settings import ArenaSettings

logger = logging.getLogger(__name__)

VERSION = "1.0.0"


class LearningArena:
    """Game registry plus the train / evaluate / compete entry points"""

    def __init__(self, settings: Optional[ArenaSettings] = None, catalog: Optional[TileCatalog] = None):
        self.settings = settings or ArenaSettings.from_env()
        self.catalog = catalog or default_catalog()
        self.games: Dict[str, dict] = {}

        for game_id in GAME_IDS:
            try:
                config = load_game_config(game_id)
                levels = shipped_levels(game_id, include_mini=True)
                self.games[game_id] = {"config": config, "levels": levels}
                logger.info(f"✅ {config.name} ready ({len(levels)} levels)")
            except ArenaError as e:
                logger.error(f"❌ {game_id} unavailable: {e}")
        logger.info(f"🎮 Learning arena ready: {len(self.games)}/{len(GAME_IDS)} games, tile catalog of {len(self.catalog)} tiles")

    # registry

    def list_games(self) -> List[dict]:
        games = []
        for game_id, entry in self.games.items():
            config = entry["config"]
            games.append({
                "id": game_id,
                "name": config.name,
                "screen": list(config.screen),
                "screen_pixels": list(config.screen_pixels),
                "max_ticks": config.max_ticks,
                "actions": list(config.actions),
                "levels": len(entry["levels"]),
            })
        return games

    def game_levels(self, game_id: str) -> List[dict]:
        if game_id not in self.games:
            raise UnknownGameError(game_id)
        info = []
        for path in self.games[game_id]["levels"]:
            level = self.load(path.stem)
            info.append({
                "name": level.name,
                "rows": level.shape[0],
                "cols": level.shape[1],
                "notes": [note.strip() for note in level.notes],
            })
        return info

    def load(self, name_or_path: Union[str, Path]) -> Level:
        return load_level(name_or_path, catalog=self.catalog)

    # training

    def train_game(
        self,
        game_id: str,
        level_names: Sequence[Union[str, Path]],
        config: TrainConfig,
        augment: bool = False,
        model_path: Optional[Union[str, Path]] = None,
        log_path: Optional[Union[str, Path]] = None,
    ) -> Tuple[ArcaneNet, TrainLog]:
        levels = [self.load(name) for name in level_names]
        if augment:
            levels = augment_levels(game_id, levels, np.random.default_rng(config.seed), catalog=self.catalog)
        net, log = train(game_id, levels, config, catalog=self.catalog)
        if model_path:
            save_params(net, model_path)
        if log_path:
            log.to_csv(log_path)
            logger.info(f"📝 Training log written to {log_path}")
        return net, log

    # evaluation

    def make_agent(self, bundle: Union[AgentBundle, str, Path], policy: Optional[str] = None,
                   sigma: Optional[float] = None) -> Agent:
        """
        Build an agent from a bundle; policy and sigma override the bundle's own.
        A bundle without a sigma gets the configured default (ARENA_SIGMA).
        """
        base_dir = Path(".")
        if not isinstance(bundle, AgentBundle):
            base_dir = Path(bundle).parent
            bundle = load_bundle(bundle)
        changes = {}
        if policy is not None:
            changes["policy"] = policy
        if sigma is not None:
            changes["sigma"] = sigma
        if changes:
            bundle = bundle.model_copy(update=changes)
            DecisionPolicy(bundle.policy, self.settings.sigma if bundle.sigma is None else bundle.sigma)
        return build_agent(bundle, base_dir, self.catalog, self.settings.sigma)

    def evaluate_agent(self, agent: Agent, level_name: Union[str, Path], runs: Optional[int] = None,
                       base_seed: Optional[int] = None,
                       transcript_path: Optional[Union[str, Path]] = None) -> dict:
        """Seeded runs of one agent on one level; transcript_path logs the first run tick by tick"""
        level = self.load(level_name)
        runs = self.settings.runs if runs is None else runs
        base_seed = self.settings.base_seed if base_seed is None else base_seed
        records = evaluate(agent, level, runs, base_seed, self.settings.workers, self.catalog)
        if transcript_path is not None and records:
            run_episode(agent, level, base_seed, self.catalog, transcript_path)
        summary = summarize(records) if records else None
        return {
            "agent": agent.name,
            "level": level.name,
            "game": level.game,
            "runs": runs,
            "base_seed": base_seed,
            "wins": summary.wins if summary else 0,
            "mean": summary.mean if summary else 0.0,
            "std": summary.std if summary else 0.0,
            "mean_ticks": summary.mean_ticks if summary else 0.0,
            "episodes": [r.as_row() for r in records],
        }

    def compete(self, bundles: Sequence[Union[str, Path]], levels: Sequence[Union[str, Path]],
                out_dir: Optional[Union[str, Path]] = None, runs: Optional[int] = None,
                base_seed: Optional[int] = None) -> CompetitionReport:
        return run_competition(
            bundles,
            [self.load(level) for level in levels],
            out_dir or self.settings.out_dir,
            self.settings.runs if runs is None else runs,
            self.settings.base_seed if base_seed is None else base_seed,
            self.settings.workers,
            self.catalog,
            self.settings.sigma,
        )

    def standings(self, out_dir: Optional[Union[str, Path]] = None) -> pd.DataFrame:
        path = Path(out_dir or self.settings.out_dir) / "standings.csv"
        if not path.exists():
            raise FileNotFoundError(f"no standings at {path}; run a competition first")
        return pd.read_csv(path)

    def get_health_status(self) -> Dict:
        return {
            "status": "operational" if len(self.games) == len(GAME_IDS) else "degraded",
            "games": {game_id: game_id in self.games for game_id in GAME_IDS},
            "tiles": len(self.catalog),
            "timestamp": datetime.now().isoformat(),
            "version": VERSION,
        }
