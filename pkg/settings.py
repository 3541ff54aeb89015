"""
Arena runtime settings, read from the environment (and a local .env file)
"""

import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class ArenaSettings(BaseModel):
    """Defaults for evaluation runs, overridable by ARENA_* variables and CLI flags"""

    base_seed: int = 0
    runs: int = Field(default=20, ge=0)
    workers: int = Field(default=1, ge=1)
    sigma: float = Field(default=10.0, gt=0)
    out_dir: str = "arena_reports"
    log_level: str = "INFO"
    api_host: str = "127.0.0.1"
    api_port: int = 8000

    @classmethod
    def from_env(cls) -> "ArenaSettings":
        env = {
            "base_seed": os.getenv("ARENA_BASE_SEED"),
            "runs": os.getenv("ARENA_RUNS"),
            "workers": os.getenv("ARENA_WORKERS"),
            "sigma": os.getenv("ARENA_SIGMA"),
            "out_dir": os.getenv("ARENA_OUT_DIR"),
            "log_level": os.getenv("ARENA_LOG_LEVEL"),
            "api_host": os.getenv("ARENA_API_HOST"),
            "api_port": os.getenv("ARENA_API_PORT"),
        }
        return cls(**{key: value for key, value in env.items() if value is not None})
