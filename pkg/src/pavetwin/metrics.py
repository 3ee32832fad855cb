"""Regression metrics: MAE, RMSE, R^2, MSE."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import EmptyInput, ShapeError, ZeroVariance


def _check(y, y_hat):
    y = np.asarray(y, dtype=np.float64)
    y_hat = np.asarray(y_hat, dtype=np.float64)
    if y.shape != y_hat.shape:
        raise ShapeError(f"length mismatch: {y.shape} vs {y_hat.shape}")
    if y.size == 0:
        raise EmptyInput("metrics need at least one sample")
    return y, y_hat


def mae(y, y_hat) -> float:
    y, y_hat = _check(y, y_hat)
    return float(np.abs(y - y_hat).mean())


def mse(y, y_hat) -> float:
    y, y_hat = _check(y, y_hat)
    diff = y - y_hat
    return float(diff @ diff / diff.size)


def rmse(y, y_hat) -> float:
    return float(np.sqrt(mse(y, y_hat)))


def r2(y, y_hat) -> float:
    y, y_hat = _check(y, y_hat)
    if y.size < 2:
        raise EmptyInput("r2 needs at least two samples")
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0.0:
        raise ZeroVariance("all targets equal; r2 undefined")
    ss_res = float(((y - y_hat) ** 2).sum())
    return 1.0 - ss_res / ss_tot


@dataclass(frozen=True)
class EvalReport:
    mae: float
    rmse: float
    r2: float
    mse: float
    n: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def evaluate(y, y_hat) -> EvalReport:
    y, y_hat = _check(y, y_hat)
    m = mse(y, y_hat)
    return EvalReport(
        mae=mae(y, y_hat),
        rmse=float(np.sqrt(m)),
        r2=r2(y, y_hat),
        mse=m,
        n=int(y.size),
    )


def report_table(rows: dict[str, EvalReport]) -> str:
    """Aligned text table with columns Model, MAE, RMSE, R^2."""
    lines = [f"{'Model':<20}{'MAE':>10}{'RMSE':>10}{'R2':>10}"]
    for name, rep in rows.items():
        lines.append(f"{name:<20}{rep.mae:>10.4f}{rep.rmse:>10.4f}{rep.r2:>10.4f}")
    return "\n".join(lines)


def report_csv(rows: dict[str, EvalReport]) -> str:
    lines = ["model,mae,rmse,r2"]
    for name, rep in rows.items():
        lines.append(f"{name},{rep.mae:.6f},{rep.rmse:.6f},{rep.r2:.6f}")
    return "\n".join(lines) + "\n"
