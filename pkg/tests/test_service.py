"""HTTP API tests against a small generated network and a briefly trained
model, exercised through the in-process test client."""

import json
import threading

import pytest
from fastapi.testclient import TestClient

from pavetwin.datagen import GenConfig
from pavetwin.datagen import write_datasets
from pavetwin.pipeline import split_nodes
from pavetwin.sage import TrainConfig, save_checkpoint, train
from pavetwin.service import build_session, create_app
from pavetwin.twin import TwinConfig
from pavetwin.workflow import load_dataset

N_NODES = 40
N_EDGES = 80


@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    root = tmp_path_factory.mktemp("svc")
    data_dir = root / "data"
    gen = GenConfig(n_segments=N_NODES, n_undirected_edges=N_EDGES, months=4, seed=7)
    write_datasets(gen, data_dir)
    ds = load_dataset(data_dir)
    split = split_nodes(ds.graph.node_count, seed=7)
    cfg = TrainConfig(epochs=30, hidden_dim=8, seed=7)
    model, _ = train(ds.graph, split, cfg, ds.scaler, ds.encoder)
    checkpoint = root / "model.json"
    save_checkpoint(model, checkpoint)
    return data_dir, checkpoint, root


def make_client(artifacts, state_file=None, noise_sd=1.5):
    data_dir, checkpoint, _ = artifacts
    dynamics = GenConfig(
        n_segments=N_NODES, n_undirected_edges=N_EDGES, seed=7, noise_sd=noise_sd
    )
    session = build_session(
        data_dir,
        checkpoint,
        state_file=state_file,
        twin_config=TwinConfig(dynamics=dynamics, seed=7),
    )
    return TestClient(create_app(session)), session


@pytest.fixture()
def client(artifacts):
    return make_client(artifacts)[0]


def test_health(client):
    res = client.get("/api/health")
    assert res.status_code == 200
    body = res.json()
    assert body["model_seed"] == 7
    assert len(body["dataset_fingerprint"]) == 16
    assert "X-Twin-Version" in res.headers


def test_network_shape(client):
    body = client.get("/api/network").json()
    assert len(body["nodes"]) == N_NODES
    # Symmetrized directed edge list: one record per direction.
    assert len(body["edges"]) == 2 * N_EDGES
    node = body["nodes"][0]
    assert set(node) == {"id", "features", "features_scaled", "condition"}
    assert set(node["features"]) == {"length", "age", "traffic_volume", "material"}
    assert len(node["features_scaled"]) == 4


def test_history_and_predictions(client):
    body = client.get("/api/segments/3/history").json()
    assert [row["month"] for row in body["history"]] == [0, 1, 2, 3]
    preds = client.get("/api/predictions").json()["predictions"]
    assert len(preds) == N_NODES
    match = next(p for p in preds if p["segment_id"] == 3)
    assert match["predicted"] == pytest.approx(body["prediction"])


def test_history_unknown_segment(client):
    res = client.get("/api/segments/9999/history")
    assert res.status_code == 404
    assert set(res.json()) == {"code", "message"}


def test_step_advances_and_bumps_version(client):
    v0 = int(client.get("/api/health").headers["X-Twin-Version"])
    res = client.post("/api/twin/step", json={"months": 3})
    assert res.status_code == 200
    assert res.json()["month"] == 6  # synced at month 3, stepped 3
    v1 = int(client.get("/api/health").headers["X-Twin-Version"])
    assert v1 > v0


def test_step_invalid_months(client):
    res = client.post("/api/twin/step", json={"months": 0})
    assert res.status_code == 422
    assert res.json()["code"] == "invalid_months"
    res = client.post("/api/twin/step", json={"months": "soon"})
    assert res.status_code == 422
    assert set(res.json()) == {"code", "message"}


def test_step_conflict_when_writer_busy(artifacts):
    client, session = make_client(artifacts)
    assert session.write_lock.acquire(blocking=False)
    try:
        res = client.post("/api/twin/step", json={"months": 1})
    finally:
        session.write_lock.release()
    assert res.status_code == 409
    assert res.json()["code"] == "twin_busy"
    # Lock released: the same request succeeds now.
    assert client.post("/api/twin/step", json={"months": 1}).status_code == 200


def test_snapshot_written_on_mutation(artifacts, tmp_path):
    state_file = tmp_path / "twin_state.json"
    client, session = make_client(artifacts, state_file=state_file)
    assert not state_file.exists()
    client.post("/api/twin/step", json={"months": 2})
    doc = json.loads(state_file.read_text())
    assert doc["month"] == session.twin.month
    assert len(doc["condition"]) == N_NODES


def test_get_endpoints_are_side_effect_free(artifacts):
    client, session = make_client(artifacts)
    before = session.twin.condition.copy()
    for path in ("/api/network", "/api/predictions", "/api/alerts", "/api/health"):
        client.get(path)
    assert (session.twin.condition == before).all()
    assert session.twin.version == 0


def test_scenario_lifecycle(artifacts):
    client, session = make_client(artifacts, noise_sd=0.0)
    base = client.post("/api/scenarios")
    assert base.status_code == 201
    base_id = base.json()["id"]
    fixed = client.post("/api/scenarios").json()["id"]

    target = session.dataset.graph.segment_ids[0]
    res = client.post(
        f"/api/scenarios/{fixed}/actions",
        json={"month": 0, "kind": "reconstruct", "segment_ids": [target]},
    )
    assert res.status_code == 200

    for fid in (base_id, fixed):
        res = client.post(f"/api/scenarios/{fid}/run", json={"horizon": 6})
        assert res.status_code == 200
        assert len(res.json()["trajectory"]) == 7

    traj = client.get(f"/api/scenarios/{fixed}/trajectory").json()["trajectory"]
    assert traj[0]["condition"][0] == 100.0

    comp = client.get(
        "/api/scenarios/compare", params={"ids": f"{base_id},{fixed}"}
    ).json()["comparison"]
    assert comp[fixed]["total_cost"] == 100.0
    assert comp[base_id]["total_cost"] == 0.0
    # Reconstruction can only help under noise-free dynamics.
    for a, b in zip(comp[fixed]["mean_condition"], comp[base_id]["mean_condition"]):
        assert a >= b

    # Scenario work leaves the base twin untouched.
    assert session.twin.version == 0


def test_scenario_unknown_fork(client):
    assert client.post("/api/scenarios/nope/run", json={"horizon": 3}).status_code == 404
    assert client.get("/api/scenarios/nope/trajectory").status_code == 404
    res = client.get("/api/scenarios/compare", params={"ids": "nope,also-no"})
    assert res.status_code == 404


def test_invalid_action_kind_maps_to_422(client):
    fid = client.post("/api/scenarios").json()["id"]
    res = client.post(
        f"/api/scenarios/{fid}/actions",
        json={"month": 0, "kind": "repave", "segment_ids": [0]},
    )
    assert res.status_code == 422
    assert set(res.json()) == {"code", "message"}


def test_report_endpoint(client):
    body = client.get("/api/report").json()["models"]
    assert "gnn" in body and "linear" in body and len(body) == 7
    for row in body.values():
        assert set(row) == {"mae", "rmse", "r2", "mse", "n"}


def test_alerts_newest_first(artifacts):
    client, session = make_client(artifacts)
    client.post("/api/twin/step", json={"months": 24})
    alerts = client.get("/api/alerts").json()["alerts"]
    months = [a["month"] for a in alerts]
    assert months == sorted(months, reverse=True)
    assert len(alerts) == len(session.twin.alerts)
