"""Train the two-layer neighborhood-aggregation forecaster.

Generates a full-size network, trains with the default configuration,
prints the loss trajectory, and round-trips the model through a JSON
checkpoint to show that predictions survive serialization exactly.
"""

import tempfile
from pathlib import Path

import numpy as np

from pavetwin.datagen import GenConfig, write_datasets
from pavetwin.metrics import evaluate
from pavetwin.pipeline import split_nodes
from pavetwin.sage import TrainConfig, load_checkpoint, predict, save_checkpoint, train
from pavetwin.workflow import load_dataset

work = Path(tempfile.mkdtemp(prefix="pavetwin-demo-"))
write_datasets(GenConfig(n_segments=1000, n_undirected_edges=6000, seed=42), work)
ds = load_dataset(work)
split = split_nodes(ds.graph.node_count, seed=42)

cfg = TrainConfig(hidden_dim=16, epochs=500, seed=42)
model, report = train(ds.graph, split, cfg, ds.scaler, ds.encoder, log_every=100)

print(f"\ntrained in {report.wall_time_s:.1f}s")
for epoch in range(0, cfg.epochs, 100):
    print(f"  epoch {epoch:4d}  train mse {report.train_losses[epoch]:10.2f}")
print(f"  final       train mse {report.train_losses[-1]:10.2f}")
print(f"              test mse  {report.test_loss:10.2f}")

y_hat = predict(model, ds.graph)[split.test_idx]
print(f"\ntest split: {evaluate(ds.graph.target[split.test_idx], y_hat)}")

ckpt = work / "model.json"
save_checkpoint(model, ckpt)
reloaded = predict(load_checkpoint(ckpt), ds.graph)[split.test_idx]
assert np.array_equal(y_hat, reloaded)
print(f"checkpoint round-trip exact: {ckpt}")
