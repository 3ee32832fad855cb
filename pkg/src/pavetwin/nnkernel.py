"""Dense numerical kernel: activations, dropout, MSE loss, Adam with
coupled L2 weight decay, and finite-difference gradient checking.

Matrices are plain float64 numpy arrays; shape mismatches raise
ShapeError instead of numpy's broadcast errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NonFinite, ShapeError


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.shape} and {b.shape}")
    return a + b


def scale(a: np.ndarray, c: float) -> np.ndarray:
    return np.asarray(a, dtype=np.float64) * c


def relu(a: np.ndarray) -> np.ndarray:
    return np.maximum(np.asarray(a, dtype=np.float64), 0.0)


def relu_backward(grad: np.ndarray, pre_activation: np.ndarray) -> np.ndarray:
    # Subgradient 0 at exactly 0.
    return np.where(pre_activation > 0.0, grad, 0.0)


def dropout(
    a: np.ndarray, rate: float, training: bool, rng: np.random.Generator | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Inverted dropout; returns (output, mask).

    The mask already carries the 1/(1-rate) keep scaling, so the backward
    pass is just grad * mask. At inference the output is the input exactly.
    """
    a = np.asarray(a, dtype=np.float64)
    if not 0.0 <= rate < 1.0:
        raise ConfigError(f"dropout rate must be in [0, 1), got {rate}")
    if not training or rate == 0.0:
        return a, np.ones_like(a)
    if rng is None:
        raise ConfigError("training-mode dropout needs an rng")
    keep = rng.random(a.shape) >= rate
    mask = keep / (1.0 - rate)
    return a * mask, mask


def mse(pred: np.ndarray, target: np.ndarray) -> float:
    pred, target = np.asarray(pred, dtype=np.float64), np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape or pred.size == 0:
        raise ShapeError(f"mse needs equal non-empty shapes, got {pred.shape} vs {target.shape}")
    diff = pred - target
    return float(diff @ diff / diff.size)


def mse_grad(pred: np.ndarray, target: np.ndarray) -> np.ndarray:
    pred, target = np.asarray(pred, dtype=np.float64), np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape or pred.size == 0:
        raise ShapeError(f"mse needs equal non-empty shapes, got {pred.shape} vs {target.shape}")
    return 2.0 / pred.size * (pred - target)


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_param(cls, param: np.ndarray) -> "AdamState":
        return cls(m=np.zeros_like(param), v=np.zeros_like(param))


def adam_step(
    param: np.ndarray,
    grad: np.ndarray,
    state: AdamState,
    lr: float = 0.001,
    weight_decay: float = 1e-5,
) -> np.ndarray:
    """One Adam update with classic coupled L2 (decay added to the gradient).

    Mutates ``state`` and returns the updated parameter.
    """
    param = np.asarray(param, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    if param.shape != grad.shape or param.shape != state.m.shape:
        raise ShapeError(
            f"param {param.shape}, grad {grad.shape}, state {state.m.shape} must match"
        )
    g = grad + weight_decay * param
    state.t += 1
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * g
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * g * g
    m_hat = state.m / (1.0 - state.beta1 ** state.t)
    v_hat = state.v / (1.0 - state.beta2 ** state.t)
    out = param - lr * m_hat / (np.sqrt(v_hat) + state.eps)
    if not np.all(np.isfinite(out)):
        raise NonFinite("Adam update produced NaN/Inf")
    return out


def grad_check(
    loss_and_grad,
    params: list[np.ndarray],
    n_probes: int = 100,
    rng: np.random.Generator | None = None,
    h: float = 1e-5,
) -> float:
    """Compare analytic gradients against central differences.

    ``loss_and_grad(params)`` must return (loss, grads) deterministically
    (dropout off). Probes ``n_probes`` random coordinates across all
    parameters and returns the max relative error
    |g_a - g_n| / max(1, |g_a| + |g_n|).
    """
    rng = rng or np.random.default_rng(0)
    _, grads = loss_and_grad(params)
    sizes = [p.size for p in params]
    total = sum(sizes)
    offsets = np.cumsum([0] + sizes)

    worst = 0.0
    for flat_idx in rng.integers(0, total, size=n_probes):
        k = int(np.searchsorted(offsets, flat_idx, side="right")) - 1
        local = int(flat_idx - offsets[k])
        coord = np.unravel_index(local, params[k].shape)

        perturbed = [p.copy() for p in params]
        perturbed[k][coord] += h
        up, _ = loss_and_grad(perturbed)
        perturbed[k][coord] -= 2.0 * h
        down, _ = loss_and_grad(perturbed)

        numeric = (up - down) / (2.0 * h)
        analytic = float(grads[k][coord])
        err = abs(analytic - numeric) / max(1.0, abs(analytic) + abs(numeric))
        worst = max(worst, err)
    return worst
