"""Operator entry points: generate data, train, evaluate, simulate
headlessly, and serve the twin API."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import baselines as bl
from . import errors
from .datagen import GenConfig, write_datasets
from .metrics import evaluate, report_csv, report_table
from .pipeline import split_nodes
from .sage import TrainConfig, load_checkpoint, predict, save_checkpoint, train
from .twin import MaintenanceAction, TwinConfig, fork, init_twin, run_scenario, schedule_action
from .workflow import load_dataset

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


def _load_config_file(path):
    """Flat key=value overrides; '#' starts a comment."""
    overrides = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise errors.ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        overrides[key.replace("-", "_")] = value
    return overrides


def _apply_config(ctx: click.Context, config_path):
    """Config-file values override defaults; explicit flags override both."""
    if not config_path:
        return
    overrides = _load_config_file(config_path)
    for key, raw in overrides.items():
        if key not in ctx.params:
            raise errors.ConfigError(f"unknown config key {key!r}")
        if ctx.get_parameter_source(key) == click.core.ParameterSource.DEFAULT:
            param = next(p for p in ctx.command.params if p.name == key)
            ctx.params[key] = param.type.convert(raw, param, ctx)


@click.group()
def cli():
    """Pavement digital twin: data generation, GNN training, evaluation,
    scenario simulation, and the HTTP service."""


@cli.command()
@click.option("--nodes", default=1000, show_default=True, help="Segment count.")
@click.option("--edges", default=6000, show_default=True, help="Undirected link count.")
@click.option("--months", default=6, show_default=True, help="Distress history length, months.")
@click.option("--seed", default=42, show_default=True, help="Generator seed.")
@click.option("--kappa", default=0.3, show_default=True, help="Spatial coupling strength.")
@click.option("--noise", default=1.5, show_default=True, help="Monthly shock sd, PCI units.")
@click.option("--out-dir", default="data", show_default=True, type=click.Path())
@click.option("--config", default=None, type=click.Path(exists=True), help="key=value override file.")
@click.pass_context
def generate(ctx, nodes, edges, months, seed, kappa, noise, out_dir, config):
    """Write segments.csv, distress.csv, and connectivity.csv."""
    _apply_config(ctx, config)
    p = ctx.params
    cfg = GenConfig(
        n_segments=p["nodes"], n_undirected_edges=p["edges"], months=p["months"],
        seed=p["seed"], kappa=p["kappa"], noise_sd=p["noise"],
    )
    paths = write_datasets(cfg, p["out_dir"])
    for name, path in paths.items():
        click.echo(f"wrote {name}: {path}")


@cli.command(name="train")
@click.option("--data-dir", default="data", show_default=True, type=click.Path())
@click.option("--epochs", default=2000, show_default=True)
@click.option("--lr", default=0.001, show_default=True, help="Adam learning rate.")
@click.option("--weight-decay", default=1e-5, show_default=True, help="L2 coefficient.")
@click.option("--dropout", default=0.2, show_default=True, help="Dropout rate after layer 1.")
@click.option("--hidden-dim", default=64, show_default=True)
@click.option("--seed", default=42, show_default=True, help="Init, dropout, and split seed.")
@click.option("--weighted-agg", is_flag=True, help="Weighted-mean neighbor aggregation.")
@click.option("--out", default="model.json", show_default=True, type=click.Path())
@click.option("--config", default=None, type=click.Path(exists=True), help="key=value override file.")
@click.pass_context
def train_cmd(ctx, data_dir, epochs, lr, weight_decay, dropout, hidden_dim, seed,
              weighted_agg, out, config):
    """Train the GNN and write a checkpoint plus a training report."""
    _apply_config(ctx, config)
    p = ctx.params
    ds = load_dataset(p["data_dir"])
    split = split_nodes(ds.graph.node_count, seed=p["seed"])
    cfg = TrainConfig(
        lr=p["lr"], weight_decay=p["weight_decay"], dropout=p["dropout"],
        epochs=p["epochs"], hidden_dim=p["hidden_dim"], seed=p["seed"],
        weighted_agg=p["weighted_agg"],
    )
    model, report = train(ds.graph, split, cfg, ds.scaler, ds.encoder, log_every=100)
    save_checkpoint(model, p["out"])
    report_path = Path(p["out"]).with_suffix(".report.json")
    report_path.write_text(json.dumps({
        "train_losses": report.train_losses,
        "test_loss": report.test_loss,
        "wall_time_s": report.wall_time_s,
    }))
    click.echo(f"final train mse {report.train_losses[-1]:.4f}, test mse {report.test_loss:.4f}")
    click.echo(f"wrote checkpoint: {p['out']}")
    click.echo(f"wrote report: {report_path}")


def evaluate_models(ds, model, seed=42):
    """Fit all baselines plus the GNN; returns ({name: EvalReport}, {name: (y, y_hat)})."""
    split = split_nodes(ds.graph.node_count, seed=seed)
    X, y = ds.graph.feature_matrix, ds.graph.target
    Xtr, ytr = X[split.train_idx], y[split.train_idx]
    Xte, yte = X[split.test_idx], y[split.test_idx]

    rows, preds = {}, {}
    gnn_pred = predict(model, ds.graph)[split.test_idx]
    rows["gnn"] = evaluate(yte, gnn_pred)
    preds["gnn"] = (yte, gnn_pred)
    for kind in bl.BASELINE_KINDS:
        fitted = bl.make_baseline(kind, seed=seed).fit(Xtr, ytr)
        y_hat = fitted.predict(Xte)
        rows[kind] = evaluate(yte, y_hat)
        preds[kind] = (yte, y_hat)
    return rows, preds


@cli.command(name="eval")
@click.option("--data-dir", default="data", show_default=True, type=click.Path())
@click.option("--checkpoint", default="model.json", show_default=True, type=click.Path())
@click.option("--seed", default=42, show_default=True, help="Split and baseline seed.")
@click.option("--out-dir", default=".", show_default=True, type=click.Path())
@click.option("--config", default=None, type=click.Path(exists=True), help="key=value override file.")
@click.pass_context
def eval_cmd(ctx, data_dir, checkpoint, seed, out_dir, config):
    """Comparison table (GNN vs. six classical regressors) on the test split."""
    _apply_config(ctx, config)
    p = ctx.params
    ds = load_dataset(p["data_dir"])
    model = load_checkpoint(p["checkpoint"])
    rows, preds = evaluate_models(ds, model, seed=p["seed"])
    click.echo(report_table(rows))
    out_dir = Path(p["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.csv").write_text(report_csv(rows))
    for name, (y, y_hat) in preds.items():
        lines = ["actual,predicted"]
        lines += [f"{a:.6f},{b:.6f}" for a, b in zip(y, y_hat)]
        (out_dir / f"scatter_{name}.csv").write_text("\n".join(lines) + "\n")
    click.echo(f"wrote {out_dir / 'report.csv'} and per-model scatter CSVs")


@cli.command()
@click.option("--data-dir", default="data", show_default=True, type=click.Path())
@click.option("--checkpoint", default="model.json", show_default=True, type=click.Path())
@click.option("--horizon", default=24, show_default=True, help="Months to simulate.")
@click.option("--scenario", default=None, type=click.Path(exists=True),
              help="JSON file: {actions: [{month, kind, segment_ids}]}.")
@click.option("--kappa", default=0.3, show_default=True)
@click.option("--noise", default=1.5, show_default=True)
@click.option("--seed", default=42, show_default=True)
@click.option("--out", default="trajectory.csv", show_default=True, type=click.Path())
@click.option("--config", default=None, type=click.Path(exists=True), help="key=value override file.")
@click.pass_context
def simulate(ctx, data_dir, checkpoint, horizon, scenario, kappa, noise, seed, out, config):
    """Headless what-if scenario run; writes the trajectory as CSV."""
    _apply_config(ctx, config)
    p = ctx.params
    ds = load_dataset(p["data_dir"])
    model = load_checkpoint(p["checkpoint"])
    dynamics = GenConfig(
        n_segments=ds.graph.node_count,
        n_undirected_edges=max(ds.graph.node_count, ds.graph.edge_index.shape[1] // 2),
        kappa=p["kappa"], noise_sd=p["noise"], seed=p["seed"],
    )
    twin = init_twin(ds.graph, ds.segments, ds.distress, TwinConfig(dynamics=dynamics, seed=p["seed"]))
    scen = fork(twin, "headless", 0)
    horizon = p["horizon"]
    if p["scenario"]:
        doc = json.loads(Path(p["scenario"]).read_text())
        horizon = int(doc.get("horizon", horizon))
        for item in doc.get("actions", []):
            schedule_action(
                scen, int(item["month"]),
                MaintenanceAction(item["kind"], tuple(int(s) for s in item["segment_ids"])),
            )
    traj = run_scenario(scen, horizon, model)
    lines = ["month,mean_condition,below_threshold"]
    lines += [f"{r['month']},{r['mean_condition']:.6f},{r['below_threshold']}" for r in traj]
    Path(p["out"]).write_text("\n".join(lines) + "\n")
    click.echo(f"wrote trajectory: {p['out']}")


@cli.command()
@click.option("--data-dir", default="data", show_default=True, type=click.Path())
@click.option("--checkpoint", default="model.json", show_default=True, type=click.Path())
@click.option("--port", default=8080, show_default=True, envvar="PAVETWIN_PORT")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--state-file", default="twin_state.json", show_default=True, type=click.Path())
@click.option("--config", default=None, type=click.Path(exists=True), help="key=value override file.")
@click.pass_context
def serve(ctx, data_dir, checkpoint, port, host, state_file, config):
    """Run the twin HTTP/JSON API."""
    _apply_config(ctx, config)
    p = ctx.params
    import uvicorn

    from .service import build_session, create_app

    session = build_session(p["data_dir"], p["checkpoint"], state_file=p["state_file"])
    uvicorn.run(create_app(session), host=p["host"], port=p["port"])


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except errors.NonFinite as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return EXIT_NUMERIC
    except (errors.DataError, errors.ConfigError, errors.CorruptCheckpoint,
            errors.SchemaVersionError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
