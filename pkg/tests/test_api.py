import json

import pytest
from fastapi.testclient import TestClient

from api_service import app

client = TestClient(app)


@pytest.fixture
def scripted_bundle(tmp_path):
    path = tmp_path / "righty.json"
    path.write_text(json.dumps({"name": "Righty", "kind": "scripted", "actions": ["RIGHT"]}))
    return path


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_health_reports_loaded_games():
    body = client.get("/health").json()
    assert body["status"] == "healthy"
    for game_id in ("golddigger", "treasurekeeper", "waterpuzzle"):
        assert game_id in body["message"]


def test_games():
    games = {game["id"]: game for game in client.get("/games").json()}
    assert set(games) == {"golddigger", "treasurekeeper", "waterpuzzle"}
    assert games["golddigger"]["screen"] == [10, 14]
    assert games["treasurekeeper"]["max_ticks"] == 600
    assert games["waterpuzzle"]["max_ticks"] == 1500


def test_levels():
    levels = client.get("/games/waterpuzzle/levels").json()
    names = [level["name"] for level in levels]
    assert "waterpuzzle-0" in names
    assert "waterpuzzle-mini-line" in names
    assert client.get("/games/pacman/levels").status_code == 404


def test_evaluate(scripted_bundle):
    response = client.post("/evaluate", json={
        "agent": str(scripted_bundle), "level": "waterpuzzle-mini-line", "runs": 3, "seed": 4,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["agent"] == "Righty"
    assert (body["runs"], body["base_seed"], body["wins"]) == (3, 4, 3)
    assert body["mean"] == 15.0
    assert body["mean_ticks"] == 4.0


def test_evaluate_bad_requests(scripted_bundle, tmp_path):
    missing = client.post("/evaluate", json={"agent": str(tmp_path / "nope.json"), "level": "waterpuzzle-0"})
    assert missing.status_code == 400
    unknown_level = client.post("/evaluate", json={"agent": str(scripted_bundle), "level": "no-such-level"})
    assert unknown_level.status_code == 400
    invalid = client.post("/evaluate", json={"agent": str(scripted_bundle), "level": "waterpuzzle-0", "runs": 0})
    assert invalid.status_code == 422


def test_standings(scripted_bundle, tmp_path):
    out_dir = tmp_path / "reports"
    assert client.get("/standings", params={"out_dir": str(out_dir)}).status_code == 404

    (out_dir).mkdir()
    (out_dir / "standings.csv").write_text("rank,agent,points,wins\n1,Righty,25,3\n2,Random,18,0\n")
    rows = client.get("/standings", params={"out_dir": str(out_dir)}).json()
    assert rows == [
        {"rank": 1, "agent": "Righty", "points": 25, "wins": 3},
        {"rank": 2, "agent": "Random", "points": 18, "wins": 0},
    ]
