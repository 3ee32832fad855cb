"""Preprocessing: imputation, label encoding, z-score standardization,
and the seeded 80/20 node split."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import AllMissing, ConfigError, NotFitted, UnknownCategory
from .pavegraph import SegmentRecord


def _median_lower(values: list[float]) -> float:
    # Lower of the two middle values for even counts.
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def _mode_lexicographic(values: list[str]) -> str:
    counts: dict[str, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    best = max(counts.values())
    return min(v for v, c in counts.items() if c == best)


def impute(records: list[SegmentRecord]) -> list[SegmentRecord]:
    """Fill missing numeric fields with the column median and missing
    materials with the most frequent value (ties broken lexicographically)."""
    fills = {}
    for field in ("length", "age", "traffic_volume"):
        present = [getattr(r, field) for r in records if getattr(r, field) is not None]
        if not present:
            raise AllMissing(field)
        fills[field] = _median_lower(present)
    materials = [r.material for r in records if r.material is not None]
    if not materials:
        raise AllMissing("material")
    fills["material"] = _mode_lexicographic(materials)

    out = []
    for rec in records:
        missing = {f: fills[f] for f in fills if getattr(rec, f) is None}
        out.append(replace(rec, **missing) if missing else rec)
    return out


class LabelEncoder:
    """Maps categories to codes 0..K-1 in lexicographic order."""

    def __init__(self):
        self._codes: dict[str, int] | None = None

    def fit(self, categories) -> "LabelEncoder":
        self._codes = {c: i for i, c in enumerate(sorted(set(categories)))}
        return self

    @property
    def codes(self) -> dict[str, int]:
        if self._codes is None:
            raise NotFitted("LabelEncoder used before fit")
        return self._codes

    def encode(self, category: str) -> int:
        try:
            return self.codes[category]
        except KeyError:
            raise UnknownCategory(category)

    def decode(self, code: int) -> str:
        for cat, c in self.codes.items():
            if c == code:
                return cat
        raise UnknownCategory(code)


class FeatureScaler:
    """Per-column z-score with population standard deviation.

    Constant columns (sd = 0) transform to all-zeros.
    """

    def __init__(self):
        self.mean_: np.ndarray | None = None
        self.sd_: np.ndarray | None = None

    def fit(self, X: np.ndarray) -> "FeatureScaler":
        X = np.asarray(X, dtype=np.float64)
        self.mean_ = X.mean(axis=0)
        self.sd_ = X.std(axis=0)  # population sd (ddof=0)
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        if self.mean_ is None or self.sd_ is None:
            raise NotFitted("FeatureScaler used before fit")
        X = np.asarray(X, dtype=np.float64)
        safe_sd = np.where(self.sd_ == 0.0, 1.0, self.sd_)
        out = (X - self.mean_) / safe_sd
        out[:, self.sd_ == 0.0] = 0.0
        return out

    def fit_transform(self, X: np.ndarray) -> np.ndarray:
        return self.fit(X).transform(X)


@dataclass(frozen=True)
class NodeSplit:
    train_idx: np.ndarray
    test_idx: np.ndarray
    seed: int
    fraction: float


def split_nodes(n: int, seed: int = 42, fraction: float = 0.8) -> NodeSplit:
    """Seeded Fisher-Yates shuffle of 0..n-1; first round(fraction*n)
    indices form the train set."""
    if n < 2:
        raise ConfigError(f"need at least 2 nodes to split, got {n}")
    if not 0.0 < fraction < 1.0:
        raise ConfigError(f"fraction must be in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    n_train = int(fraction * n + 0.5)
    return NodeSplit(
        train_idx=perm[:n_train].copy(),
        test_idx=perm[n_train:].copy(),
        seed=seed,
        fraction=fraction,
    )
