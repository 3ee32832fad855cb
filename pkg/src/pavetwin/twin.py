"""Digital-twin state machine: synchronized condition state, deterioration
stepping, threshold alerts, and forked what-if maintenance scenarios.

The twin reuses the datagen deterioration recurrence so simulated futures
can be replayed bit-for-bit from (seed, action schedule).
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

import numpy as np

from .datagen import GenConfig, adjacency_lists, decay_rates, step_conditions
from .errors import ConfigError, HorizonMismatch, ModelMissing, UnknownSegment
from .pavegraph import DistressRecord, PavementGraph, SegmentRecord, latest_distress
from .sage import SageModel, predict

ACTION_EFFECTS = {"reconstruct": None, "resurface": 25.0, "patch": 10.0}  # None = set to 100
ACTION_COSTS = {"reconstruct": 100.0, "resurface": 40.0, "patch": 10.0}


@dataclass(frozen=True)
class TwinConfig:
    dynamics: GenConfig = field(default_factory=GenConfig)
    alert_threshold: float = 40.0
    rapid_drop: float = 10.0
    seed: int = 42


@dataclass(frozen=True)
class MaintenanceAction:
    kind: str
    segment_ids: tuple[int, ...]

    def validate(self) -> None:
        if self.kind not in ACTION_EFFECTS:
            raise ConfigError(f"unknown action kind {self.kind!r}")
        if not self.segment_ids:
            raise ConfigError("action needs at least one segment")


@dataclass(frozen=True)
class Alert:
    segment_id: int
    month: int
    observed: float
    threshold: float
    kind: str  # threshold_breach | rapid_drop


@dataclass
class TwinState:
    month: int
    condition: np.ndarray
    graph: PavementGraph
    decay: np.ndarray
    adj: list[list[int]]
    config: TwinConfig
    maintenance_log: list[tuple[int, int, str]] = field(default_factory=list)
    alerts: list[Alert] = field(default_factory=list)
    rng: np.random.Generator = None
    version: int = 0


def init_twin(
    graph: PavementGraph,
    segments: list[SegmentRecord],
    distress: list[DistressRecord],
    cfg: TwinConfig,
) -> TwinState:
    """Twin synchronized to the latest observed condition per segment."""
    latest = latest_distress(distress)
    condition = np.array([latest[sid] for sid in graph.segment_ids], dtype=np.float64)
    # Undirected neighbor structure straight from the (symmetrized) graph.
    adj = [set() for _ in range(graph.node_count)]
    for u, v in graph.edge_index.T:
        adj[int(v)].add(int(u))
    adj = [sorted(a) for a in adj]
    return TwinState(
        month=max((d.month for d in distress), default=0),
        condition=condition,
        graph=graph,
        decay=decay_rates(cfg.dynamics, segments),
        adj=adj,
        config=cfg,
        rng=np.random.default_rng([cfg.seed, 20]),
    )


def step(state: TwinState, n_months: int) -> list[Alert]:
    """Advance the twin; emits alerts at downward threshold crossings and
    on per-month drops larger than the rapid-drop limit."""
    if n_months < 1:
        raise ConfigError("n_months must be >= 1")
    dyn = state.config.dynamics
    thr = state.config.alert_threshold
    new_alerts: list[Alert] = []
    for _ in range(n_months):
        prev = state.condition
        shocks = (
            state.rng.normal(0.0, dyn.noise_sd, size=len(prev))
            if dyn.noise_sd > 0
            else np.zeros(len(prev))
        )
        state.condition = step_conditions(prev, state.decay, state.adj, dyn.kappa, shocks)
        state.month += 1
        for i, sid in enumerate(state.graph.segment_ids):
            if prev[i] >= thr and state.condition[i] < thr:
                new_alerts.append(
                    Alert(sid, state.month, float(state.condition[i]), thr, "threshold_breach")
                )
            if prev[i] - state.condition[i] > state.config.rapid_drop:
                new_alerts.append(
                    Alert(
                        sid,
                        state.month,
                        float(state.condition[i]),
                        state.config.rapid_drop,
                        "rapid_drop",
                    )
                )
    state.alerts.extend(new_alerts)
    state.version += 1
    return new_alerts


def apply_action(state: TwinState, action: MaintenanceAction) -> None:
    action.validate()
    index_of = state.graph.index_of
    idx = []
    for sid in action.segment_ids:
        if sid not in index_of:
            raise UnknownSegment(sid)
        idx.append(index_of[sid])
    for sid, i in zip(action.segment_ids, idx):
        if action.kind == "reconstruct":
            state.condition[i] = 100.0
        else:
            state.condition[i] = min(100.0, state.condition[i] + ACTION_EFFECTS[action.kind])
        state.maintenance_log.append((state.month, sid, action.kind))
    state.version += 1


@dataclass
class ScenarioFork:
    id: str
    base_month: int
    state: TwinState
    actions: dict[int, list[MaintenanceAction]] = field(default_factory=dict)
    trajectory: list[dict] = field(default_factory=list)


def fork(state: TwinState, fork_id: str, fork_index: int = 0) -> ScenarioFork:
    """Sandboxed deep copy with an independently derived rng stream."""
    clone = TwinState(
        month=state.month,
        condition=state.condition.copy(),
        graph=state.graph,  # immutable, shared
        decay=state.decay.copy(),
        adj=copy.deepcopy(state.adj),
        config=state.config,
        maintenance_log=list(state.maintenance_log),
        alerts=list(state.alerts),
        rng=np.random.default_rng([state.config.seed, 21, fork_index]),
    )
    return ScenarioFork(id=fork_id, base_month=state.month, state=clone)


def schedule_action(scenario: ScenarioFork, month: int, action: MaintenanceAction) -> None:
    """Schedule an action at a scenario-relative month (0 = before first step)."""
    action.validate()
    if month < 0:
        raise ConfigError("scenario month must be >= 0")
    scenario.actions.setdefault(month, []).append(action)


def run_scenario(scenario: ScenarioFork, horizon: int, model: SageModel | None) -> list[dict]:
    """Step month-by-month, applying scheduled actions; records the
    simulated condition and the model forecast at every month."""
    if model is None:
        raise ModelMissing("run_scenario needs a trained model")
    if horizon < 1:
        raise ConfigError("horizon must be >= 1")
    st = scenario.state
    thr = st.config.alert_threshold
    forecast = predict(model, st.graph)
    scenario.trajectory = []

    def record(rel_month: int) -> None:
        scenario.trajectory.append(
            {
                "month": rel_month,
                "twin_month": st.month,
                "mean_condition": float(st.condition.mean()),
                "below_threshold": int((st.condition < thr).sum()),
                "condition": st.condition.tolist(),
                "forecast": forecast.tolist(),
            }
        )

    for rel in range(horizon + 1):
        for action in scenario.actions.get(rel, []):
            apply_action(st, action)
        record(rel)
        if rel < horizon:
            step(st, 1)
    return scenario.trajectory


def scenario_cost(scenario: ScenarioFork) -> float:
    return sum(
        ACTION_COSTS[a.kind] * len(a.segment_ids)
        for acts in scenario.actions.values()
        for a in acts
    )


def compare(forks: list[ScenarioFork]) -> dict[str, dict]:
    """Per-fork monthly summary plus total action cost."""
    if len(forks) < 2:
        raise ConfigError("compare needs at least 2 forks")
    horizons = {len(f.trajectory) for f in forks}
    if len(horizons) != 1 or 0 in horizons:
        raise HorizonMismatch(f"forks have differing or empty trajectories: {horizons}")
    out = {}
    for f in forks:
        out[f.id] = {
            "months": [row["month"] for row in f.trajectory],
            "mean_condition": [row["mean_condition"] for row in f.trajectory],
            "below_threshold": [row["below_threshold"] for row in f.trajectory],
            "total_cost": scenario_cost(f),
        }
    return out


def state_to_json(state: TwinState) -> str:
    """Serialized twin snapshot (month, conditions, log, alert config)."""
    doc = {
        "month": state.month,
        "condition": state.condition.tolist(),
        "segment_ids": list(state.graph.segment_ids),
        "maintenance_log": [list(entry) for entry in state.maintenance_log],
        "alert_threshold": state.config.alert_threshold,
        "rapid_drop": state.config.rapid_drop,
        "seed": state.config.seed,
        "version": state.version,
    }
    return json.dumps(doc, sort_keys=True)
