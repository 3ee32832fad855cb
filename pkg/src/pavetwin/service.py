"""HTTP/JSON API exposing the twin, predictions, scenarios, alerts, and
evaluation reports.

Single in-memory session per process. Base-twin mutations are serialized
through a non-blocking lock (concurrent writers get 409); every mutation
snapshots the twin state to a JSON file. All GET endpoints are read-only.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__, errors
from .metrics import EvalReport
from .sage import SageModel, load_checkpoint, predict
from .twin import (
    MaintenanceAction,
    ScenarioFork,
    TwinConfig,
    TwinState,
    compare,
    fork,
    init_twin,
    run_scenario,
    schedule_action,
    state_to_json,
    step,
)
from .workflow import Dataset, load_dataset


@dataclass
class ApiSession:
    dataset: Dataset
    model: SageModel
    twin: TwinState
    state_file: Path | None = None
    data_fingerprint: str = ""
    forks: dict[str, ScenarioFork] = field(default_factory=dict)
    fork_counter: int = 0
    report_cache: dict[str, EvalReport] | None = None
    write_lock: threading.Lock = field(default_factory=threading.Lock)

    def snapshot(self) -> None:
        if self.state_file is not None:
            self.state_file.write_text(state_to_json(self.twin), encoding="utf-8")


def build_session(
    data_dir,
    checkpoint,
    state_file=None,
    twin_config: TwinConfig | None = None,
) -> ApiSession:
    data_dir = Path(data_dir)
    dataset = load_dataset(data_dir)
    model = load_checkpoint(checkpoint)
    cfg = twin_config or TwinConfig()
    twin = init_twin(dataset.graph, dataset.segments, dataset.distress, cfg)
    digest = hashlib.sha256()
    for name in ("segments.csv", "distress.csv", "connectivity.csv"):
        digest.update((data_dir / name).read_bytes())
    return ApiSession(
        dataset=dataset,
        model=model,
        twin=twin,
        state_file=Path(state_file) if state_file else None,
        data_fingerprint=digest.hexdigest()[:16],
    )


class StepBody(BaseModel):
    months: int


class ActionBody(BaseModel):
    month: int
    kind: str
    segment_ids: list[int]


class RunBody(BaseModel):
    horizon: int


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(session: ApiSession) -> FastAPI:
    app = FastAPI(title="pavetwin", version=__version__)
    predictions = predict(session.model, session.dataset.graph)

    @app.middleware("http")
    async def version_header(request: Request, call_next):
        response = await call_next(request)
        response.headers["X-Twin-Version"] = str(session.twin.version)
        return response

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request, exc):
        return _error(422, "invalid_body", str(exc.errors()[:1]))

    @app.exception_handler(errors.PavetwinError)
    async def domain_handler(request, exc):
        return _error(422, type(exc).__name__, str(exc))

    def refresh_predictions():
        nonlocal predictions
        predictions = predict(session.model, session.dataset.graph)

    @app.get("/api/network")
    def network():
        g = session.dataset.graph
        nodes = []
        for i, seg in enumerate(session.dataset.segments):
            nodes.append(
                {
                    "id": seg.segment_id,
                    "features": {
                        "length": seg.length,
                        "age": seg.age,
                        "traffic_volume": seg.traffic_volume,
                        "material": seg.material,
                    },
                    "features_scaled": g.feature_matrix[i].tolist(),
                    "condition": float(session.twin.condition[i]),
                }
            )
        edges = [
            {"source": int(u), "target": int(v), "weight": float(w)}
            for (u, v), w in zip(g.edge_index.T, g.edge_weight)
        ]
        return {"nodes": nodes, "edges": edges}

    @app.get("/api/segments/{segment_id}/history")
    def segment_history(segment_id: int):
        index_of = session.dataset.graph.index_of
        if segment_id not in index_of:
            return _error(404, "unknown_segment", f"no segment {segment_id}")
        series = [
            {"month": d.month, "distress_level": d.distress_level}
            for d in session.dataset.distress
            if d.segment_id == segment_id
        ]
        series.sort(key=lambda row: row["month"])
        return {
            "segment_id": segment_id,
            "history": series,
            "prediction": float(predictions[index_of[segment_id]]),
        }

    @app.get("/api/predictions")
    def all_predictions():
        ids = session.dataset.graph.segment_ids
        return {
            "predictions": [
                {"segment_id": sid, "predicted": float(p)} for sid, p in zip(ids, predictions)
            ]
        }

    @app.get("/api/alerts")
    def alerts():
        return {
            "alerts": [
                {
                    "segment_id": a.segment_id,
                    "month": a.month,
                    "observed": a.observed,
                    "threshold": a.threshold,
                    "kind": a.kind,
                }
                for a in reversed(session.twin.alerts)
            ]
        }

    @app.post("/api/twin/step")
    def twin_step(body: StepBody):
        if body.months < 1:
            return _error(422, "invalid_months", "months must be >= 1")
        if not session.write_lock.acquire(blocking=False):
            return _error(409, "twin_busy", "another mutation is in progress")
        try:
            new_alerts = step(session.twin, body.months)
            session.snapshot()
        finally:
            session.write_lock.release()
        return {
            "month": session.twin.month,
            "alerts": [
                {"segment_id": a.segment_id, "month": a.month, "kind": a.kind}
                for a in new_alerts
            ],
        }

    @app.post("/api/scenarios", status_code=201)
    def create_scenario():
        session.fork_counter += 1
        fork_id = f"scenario-{session.fork_counter}"
        session.forks[fork_id] = fork(session.twin, fork_id, session.fork_counter)
        return {"id": fork_id, "base_month": session.twin.month}

    def _get_fork(fork_id: str) -> ScenarioFork | None:
        return session.forks.get(fork_id)

    @app.post("/api/scenarios/{fork_id}/actions")
    def add_action(fork_id: str, body: ActionBody):
        scen = _get_fork(fork_id)
        if scen is None:
            return _error(404, "unknown_fork", f"no scenario {fork_id}")
        schedule_action(
            scen, body.month, MaintenanceAction(body.kind, tuple(body.segment_ids))
        )
        return {"id": fork_id, "scheduled": sum(len(a) for a in scen.actions.values())}

    @app.post("/api/scenarios/{fork_id}/run")
    def run(fork_id: str, body: RunBody):
        scen = _get_fork(fork_id)
        if scen is None:
            return _error(404, "unknown_fork", f"no scenario {fork_id}")
        trajectory = run_scenario(scen, body.horizon, session.model)
        return {"id": fork_id, "trajectory": trajectory}

    @app.get("/api/scenarios/compare")
    def compare_scenarios(ids: str):
        wanted = [part for part in ids.split(",") if part]
        missing = [fid for fid in wanted if fid not in session.forks]
        if missing:
            return _error(404, "unknown_fork", f"no scenario {missing[0]}")
        return {"comparison": compare([session.forks[fid] for fid in wanted])}

    @app.get("/api/scenarios/{fork_id}/trajectory")
    def trajectory(fork_id: str):
        scen = _get_fork(fork_id)
        if scen is None:
            return _error(404, "unknown_fork", f"no scenario {fork_id}")
        return {"id": fork_id, "trajectory": scen.trajectory}

    @app.get("/api/report")
    def report():
        if session.report_cache is None:
            from .cli import evaluate_models

            rows, _ = evaluate_models(session.dataset, session.model)
            session.report_cache = rows
        return {
            "models": {
                name: {"mae": r.mae, "rmse": r.rmse, "r2": r.r2, "mse": r.mse, "n": r.n}
                for name, r in session.report_cache.items()
            }
        }

    @app.get("/api/health")
    def health():
        return {
            "version": __version__,
            "dataset_fingerprint": session.data_fingerprint,
            "model_seed": session.model.config.seed,
            "twin_month": session.twin.month,
            "twin_version": session.twin.version,
        }

    app.state.session = session
    app.state.refresh_predictions = refresh_predictions
    return app
