"""Two-layer neighborhood-aggregation GNN for segment distress regression.

Each layer computes H' = H W_self^T + mean_agg(H) W_neigh^T + b, with ReLU
after both layers, dropout between them, and an affine scalar head. The
backward pass is hand-derived for this fixed topology; training is
full-graph with the loss masked to the train nodes.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    CorruptCheckpoint,
    DimensionError,
    NonFinite,
    SchemaVersionError,
    ShapeError,
)
from .nnkernel import AdamState, adam_step, dropout, mse, mse_grad, relu, relu_backward
from .pavegraph import PavementGraph
from .pipeline import FeatureScaler, LabelEncoder, NodeSplit

CHECKPOINT_VERSION = 1
INPUT_DIM = 4


def _degrees(edge_index: np.ndarray, num_nodes: int, weights: np.ndarray | None) -> np.ndarray:
    dst = edge_index[1]
    if weights is None:
        return np.bincount(dst, minlength=num_nodes).astype(np.float64)
    deg = np.zeros(num_nodes)
    np.add.at(deg, dst, weights)
    return deg


def aggregate_mean(
    H: np.ndarray,
    edge_index: np.ndarray,
    num_nodes: int | None = None,
    weights: np.ndarray | None = None,
) -> np.ndarray:
    """Per-node (weighted) mean of incoming neighbor rows.

    M[i] = mean of H[j] over directed edges (j -> i); isolated nodes get
    the zero vector.
    """
    H = np.asarray(H, dtype=np.float64)
    if H.ndim != 2:
        raise ShapeError(f"expected N x d matrix, got {H.shape}")
    n = num_nodes if num_nodes is not None else H.shape[0]
    src, dst = edge_index
    M = np.zeros((n, H.shape[1]))
    if weights is None:
        np.add.at(M, dst, H[src])
    else:
        np.add.at(M, dst, H[src] * weights[:, None])
    deg = _degrees(edge_index, n, weights)
    nz = deg > 0
    M[nz] /= deg[nz, None]
    return M


def aggregate_mean_backward(
    dM: np.ndarray,
    edge_index: np.ndarray,
    num_nodes: int,
    weights: np.ndarray | None = None,
) -> np.ndarray:
    """Adjoint of aggregate_mean: scatter dM back to the source nodes."""
    src, dst = edge_index
    deg = _degrees(edge_index, num_nodes, weights)
    norm = dM / np.where(deg > 0, deg, 1.0)[:, None]
    dH = np.zeros_like(dM)
    if weights is None:
        np.add.at(dH, src, norm[dst])
    else:
        np.add.at(dH, src, norm[dst] * weights[:, None])
    return dH


@dataclass
class SageLayer:
    w_self: np.ndarray    # d_out x d_in
    w_neigh: np.ndarray   # d_out x d_in
    bias: np.ndarray      # d_out

    def forward(
        self, H: np.ndarray, edge_index: np.ndarray, weights: np.ndarray | None = None
    ) -> np.ndarray:
        """Pre-activation layer output (activation applied by the model)."""
        agg = aggregate_mean(H, edge_index, H.shape[0], weights)
        return H @ self.w_self.T + agg @ self.w_neigh.T + self.bias


def _glorot(rng: np.random.Generator, d_out: int, d_in: int) -> np.ndarray:
    bound = np.sqrt(6.0 / (d_in + d_out))
    return rng.uniform(-bound, bound, size=(d_out, d_in))


@dataclass(frozen=True)
class TrainConfig:
    lr: float = 0.001
    weight_decay: float = 1e-5
    dropout: float = 0.2
    epochs: int = 2000
    hidden_dim: int = 64
    seed: int = 42
    weighted_agg: bool = False

    def validate(self) -> None:
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError("dropout must be in [0, 1)")
        if self.hidden_dim < 1:
            raise ConfigError("hidden_dim must be >= 1")


@dataclass
class SageModel:
    layer1: SageLayer
    layer2: SageLayer
    head_w: np.ndarray    # hidden_dim
    head_b: float
    hidden_dim: int
    scaler: FeatureScaler
    encoder: LabelEncoder
    config: TrainConfig

    @classmethod
    def initialize(
        cls, cfg: TrainConfig, scaler: FeatureScaler, encoder: LabelEncoder
    ) -> "SageModel":
        rng = np.random.default_rng([cfg.seed, 10])
        h = cfg.hidden_dim
        return cls(
            layer1=SageLayer(_glorot(rng, h, INPUT_DIM), _glorot(rng, h, INPUT_DIM), np.zeros(h)),
            layer2=SageLayer(_glorot(rng, h, h), _glorot(rng, h, h), np.zeros(h)),
            head_w=_glorot(rng, 1, h)[0],
            head_b=0.0,
            hidden_dim=h,
            scaler=scaler,
            encoder=encoder,
            config=cfg,
        )

    def parameters(self) -> list[np.ndarray]:
        return [
            self.layer1.w_self, self.layer1.w_neigh, self.layer1.bias,
            self.layer2.w_self, self.layer2.w_neigh, self.layer2.bias,
            self.head_w, np.array(self.head_b),
        ]

    def set_parameters(self, params: list[np.ndarray]) -> None:
        (self.layer1.w_self, self.layer1.w_neigh, self.layer1.bias,
         self.layer2.w_self, self.layer2.w_neigh, self.layer2.bias,
         self.head_w) = params[:7]
        self.head_b = float(params[7])


def model_forward(
    model: SageModel,
    graph: PavementGraph,
    training: bool = False,
    rng: np.random.Generator | None = None,
    return_cache: bool = False,
):
    """Predictions for every node; caches intermediates for the backward pass."""
    X = graph.feature_matrix
    if X.shape[1] != INPUT_DIM:
        raise DimensionError(f"expected {INPUT_DIM} features, got {X.shape[1]}")
    edges = graph.edge_index
    ew = graph.edge_weight if model.config.weighted_agg else None

    z1 = model.layer1.forward(X, edges, ew)
    h1 = relu(z1)
    d1, mask = dropout(h1, model.config.dropout, training, rng)
    z2 = model.layer2.forward(d1, edges, ew)
    h2 = relu(z2)
    y_hat = h2 @ model.head_w + model.head_b

    if not return_cache:
        return y_hat
    cache = {"X": X, "z1": z1, "mask": mask, "d1": d1, "z2": z2, "h2": h2, "ew": ew}
    return y_hat, cache


def model_backward(
    model: SageModel, graph: PavementGraph, cache: dict, dy: np.ndarray
) -> list[np.ndarray]:
    """Gradients in the order of model.parameters(), given d(loss)/d(y_hat)."""
    edges = graph.edge_index
    n = graph.node_count
    ew = cache["ew"]

    d_head_w = cache["h2"].T @ dy
    d_head_b = np.array(dy.sum())
    dh2 = np.outer(dy, model.head_w)
    dz2 = relu_backward(dh2, cache["z2"])

    agg_d1 = aggregate_mean(cache["d1"], edges, n, ew)
    dw_self2 = dz2.T @ cache["d1"]
    dw_neigh2 = dz2.T @ agg_d1
    db2 = dz2.sum(axis=0)

    dd1 = dz2 @ model.layer2.w_self + aggregate_mean_backward(
        dz2 @ model.layer2.w_neigh, edges, n, ew
    )
    dh1 = dd1 * cache["mask"]
    dz1 = relu_backward(dh1, cache["z1"])

    agg_x = aggregate_mean(cache["X"], edges, n, ew)
    dw_self1 = dz1.T @ cache["X"]
    dw_neigh1 = dz1.T @ agg_x
    db1 = dz1.sum(axis=0)

    return [dw_self1, dw_neigh1, db1, dw_self2, dw_neigh2, db2, d_head_w, d_head_b]


def masked_loss_grad(y_hat: np.ndarray, y: np.ndarray, idx: np.ndarray) -> tuple[float, np.ndarray]:
    """MSE over the masked nodes and its gradient w.r.t. all predictions."""
    loss = mse(y_hat[idx], y[idx])
    dy = np.zeros_like(y_hat)
    dy[idx] = mse_grad(y_hat[idx], y[idx])
    return loss, dy


@dataclass
class TrainReport:
    train_losses: list[float] = field(default_factory=list)
    test_loss: float = float("nan")
    wall_time_s: float = 0.0


def train(
    graph: PavementGraph,
    split: NodeSplit,
    cfg: TrainConfig,
    scaler: FeatureScaler | None = None,
    encoder: LabelEncoder | None = None,
    log_every: int = 0,
) -> tuple[SageModel, TrainReport]:
    """Full-graph training with Adam; loss masked to the train nodes."""
    cfg.validate()
    model = SageModel.initialize(cfg, scaler or FeatureScaler(), encoder or LabelEncoder())
    # Starting the head bias at the train-target mean removes the large
    # constant offset from the optimization problem; with raw condition
    # scores near 100 and lr 0.001 it would otherwise dominate training.
    model.head_b = float(graph.target[split.train_idx].mean())
    params = [p.astype(np.float64).copy() for p in model.parameters()]
    model.set_parameters(params)
    states = [AdamState.for_param(p) for p in params]
    drop_rng = np.random.default_rng([cfg.seed, 11])
    y = graph.target

    report = TrainReport()
    start = time.perf_counter()
    for epoch in range(cfg.epochs):
        y_hat, cache = model_forward(model, graph, training=True, rng=drop_rng, return_cache=True)
        loss, dy = masked_loss_grad(y_hat, y, split.train_idx)
        if not np.isfinite(loss):
            raise NonFinite(f"training loss diverged at epoch {epoch}")
        report.train_losses.append(loss)
        grads = model_backward(model, graph, cache, dy)
        params = [
            adam_step(p, g, s, lr=cfg.lr, weight_decay=cfg.weight_decay)
            for p, g, s in zip(params, grads, states)
        ]
        model.set_parameters(params)
        if log_every and (epoch % log_every == 0 or epoch == cfg.epochs - 1):
            print(f"epoch {epoch:5d}  train mse {loss:.4f}")
    report.wall_time_s = time.perf_counter() - start
    report.test_loss = mse(predict(model, graph)[split.test_idx], y[split.test_idx])
    return model, report


def predict(model: SageModel, graph: PavementGraph) -> np.ndarray:
    return model_forward(model, graph, training=False)


def save_checkpoint(model: SageModel, path) -> None:
    doc = {
        "version": CHECKPOINT_VERSION,
        "hidden_dim": model.hidden_dim,
        "layer1": {
            "w_self": model.layer1.w_self.tolist(),
            "w_neigh": model.layer1.w_neigh.tolist(),
            "bias": model.layer1.bias.tolist(),
        },
        "layer2": {
            "w_self": model.layer2.w_self.tolist(),
            "w_neigh": model.layer2.w_neigh.tolist(),
            "bias": model.layer2.bias.tolist(),
        },
        "head_w": model.head_w.tolist(),
        "head_b": model.head_b,
        "scaler": {"mean": model.scaler.mean_.tolist(), "sd": model.scaler.sd_.tolist()},
        "encoder": model.encoder.codes,
        "config": asdict(model.config),
        "seed": model.config.seed,
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_checkpoint(path) -> SageModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptCheckpoint(str(exc))
    if not isinstance(doc, dict) or doc.get("version") != CHECKPOINT_VERSION:
        raise SchemaVersionError(f"unsupported checkpoint version {doc.get('version')!r}")
    try:
        h = int(doc["hidden_dim"])
        cfg = TrainConfig(**doc["config"])

        def layer(key, d_in):
            w_self = np.array(doc[key]["w_self"], dtype=np.float64)
            w_neigh = np.array(doc[key]["w_neigh"], dtype=np.float64)
            bias = np.array(doc[key]["bias"], dtype=np.float64)
            if w_self.shape != (h, d_in) or w_neigh.shape != (h, d_in) or bias.shape != (h,):
                raise SchemaVersionError(
                    f"{key} shape {w_self.shape} inconsistent with hidden_dim {h}"
                )
            return SageLayer(w_self, w_neigh, bias)

        layer1 = layer("layer1", INPUT_DIM)
        layer2 = layer("layer2", h)
        head_w = np.array(doc["head_w"], dtype=np.float64)
        if head_w.shape != (h,):
            raise SchemaVersionError(f"head shape {head_w.shape} inconsistent with hidden_dim {h}")
        scaler = FeatureScaler()
        scaler.mean_ = np.array(doc["scaler"]["mean"], dtype=np.float64)
        scaler.sd_ = np.array(doc["scaler"]["sd"], dtype=np.float64)
        encoder = LabelEncoder()
        encoder._codes = {str(k): int(v) for k, v in doc["encoder"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptCheckpoint(f"malformed checkpoint: {exc}")
    return SageModel(
        layer1=layer1,
        layer2=layer2,
        head_w=head_w,
        head_b=float(doc["head_b"]),
        hidden_dim=h,
        scaler=scaler,
        encoder=encoder,
        config=cfg,
    )
