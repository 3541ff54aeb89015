#!/usr/bin/env python3
"""
FastAPI Service for the Learning Arena
Browse games and levels, evaluate agent bundles and read competition standings
"""

import logging
from datetime import datetime
from typing import Dict, List, Optional

import uvicorn
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from arena_errors import AgentBundleError, ArenaError, LevelParseError, UnknownGameError
from learning_arena import VERSION, LearningArena
from settings import ArenaSettings

settings = ArenaSettings.from_env()
logging.basicConfig(level=settings.log_level)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Learning Arena API",
    description="Grid-game arena: train, evaluate and rank game-playing agents",
    version=VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
)

try:
    arena_system = LearningArena(settings)
    logger.info("✅ Learning arena initialized successfully")
except Exception as e:
    logger.error(f"❌ Failed to initialize learning arena: {e}")
    arena_system = None


class HealthResponse(BaseModel):
    status: str
    message: str
    timestamp: str


class GameInfo(BaseModel):
    id: str
    name: str
    screen: List[int]
    screen_pixels: List[int]
    max_ticks: int
    actions: List[str]
    levels: int


class LevelInfo(BaseModel):
    name: str
    rows: int
    cols: int
    notes: List[str]


class EvaluateRequest(BaseModel):
    agent: str = Field(description="path to an agent bundle JSON file")
    level: str = Field(description="shipped level name or path to a level file")
    runs: int = Field(default=20, ge=1, le=1000)
    seed: int = 0
    policy: Optional[str] = None
    sigma: Optional[float] = Field(default=None, gt=0)


class EvaluateResponse(BaseModel):
    agent: str
    game: str
    level: str
    runs: int
    base_seed: int
    wins: int
    mean: float
    std: float
    mean_ticks: float


class StandingRow(BaseModel):
    rank: int
    agent: str
    points: int
    wins: int


def _require_system() -> LearningArena:
    if arena_system is None:
        raise HTTPException(status_code=503, detail="Learning arena not available")
    return arena_system


@app.get("/", response_model=HealthResponse)
async def root():
    """API welcome message"""
    return HealthResponse(
        status="healthy",
        message="Learning Arena API - GoldDigger, TreasureKeeper, WaterPuzzle",
        timestamp=datetime.now().isoformat(),
    )


@app.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check including which games loaded"""
    if arena_system is None:
        return HealthResponse(
            status="unhealthy",
            message="Learning arena not available",
            timestamp=datetime.now().isoformat(),
        )

    try:
        health_status = arena_system.get_health_status()
        loaded = [game for game, ok in health_status["games"].items() if ok]
        return HealthResponse(
            status="healthy" if health_status["status"] == "operational" else "degraded",
            message=f"Games loaded: {', '.join(loaded) or 'none'}",
            timestamp=health_status["timestamp"],
        )
    except Exception as e:
        return HealthResponse(
            status="unhealthy",
            message=f"Health check failed: {str(e)}",
            timestamp=datetime.now().isoformat(),
        )


@app.get("/games", response_model=List[GameInfo])
async def list_games():
    system = _require_system()
    return [GameInfo(**game) for game in system.list_games()]


@app.get("/games/{game_id}/levels", response_model=List[LevelInfo])
async def list_levels(game_id: str):
    system = _require_system()
    try:
        return [LevelInfo(**level) for level in system.game_levels(game_id)]
    except UnknownGameError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except ArenaError as e:
        logger.error(f"❌ Error listing levels of {game_id}: {e}")
        raise HTTPException(status_code=500, detail=f"Level error: {str(e)}")


@app.post("/evaluate", response_model=EvaluateResponse)
def evaluate_agent(request: EvaluateRequest):
    """
    Play an agent bundle on one level for a number of seeded runs
    Returns the win count, score mean/std and mean episode length
    """
    system = _require_system()
    try:
        logger.info(f"🎮 Evaluating {request.agent} on {request.level} ({request.runs} runs)")
        agent = system.make_agent(request.agent, request.policy, request.sigma)
        result = system.evaluate_agent(agent, request.level, request.runs, request.seed)
    except (AgentBundleError, LevelParseError, UnknownGameError, FileNotFoundError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except ArenaError as e:
        logger.error(f"❌ Error evaluating {request.agent}: {e}")
        raise HTTPException(status_code=500, detail=f"Evaluation error: {str(e)}")
    return EvaluateResponse(**{key: result[key] for key in EvaluateResponse.model_fields})


@app.get("/standings", response_model=List[StandingRow])
async def get_standings(out_dir: Optional[str] = None):
    """Overall standings of the latest competition written under out_dir"""
    system = _require_system()
    try:
        frame = system.standings(out_dir)
    except FileNotFoundError as e:
        raise HTTPException(status_code=404, detail=str(e))
    rows: List[Dict] = frame.to_dict(orient="records")
    return [StandingRow(**row) for row in rows]


if __name__ == "__main__":
    print("🚀 Starting Learning Arena API Server...")
    print("🎮 GoldDigger / TreasureKeeper / WaterPuzzle")
    print("-" * 50)
    print(f"📖 API Documentation: http://{settings.api_host}:{settings.api_port}/docs")
    print(f"🔍 Health Check: http://{settings.api_host}:{settings.api_port}/health")
    print(f"🏆 Standings: http://{settings.api_host}:{settings.api_port}/standings")
    print("-" * 50)

    uvicorn.run(
        "api_service:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=False,
        log_level=settings.log_level.lower(),
    )
