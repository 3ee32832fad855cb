"""Seeded synthetic generator for the three pavement datasets.

Produces segment attributes, weighted connectivity with a connected ring
backbone, and monthly condition trajectories driven by a feature-dependent
decay plus a neighbor-diffusion term. All draws come from seeded PCG64
streams, so identical configs give bit-identical output files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .pavegraph import ConnectivityRecord, DistressRecord, SegmentRecord

MATERIALS = ("asphalt", "concrete", "composite")
MATERIAL_PROBS = (0.6, 0.3, 0.1)

DEFAULT_GAMMA = {"asphalt": 0.35, "concrete": 0.15, "composite": 0.25}

# Stream tags keep the three generation stages independent of each other.
_SEGMENTS_STREAM = 1
_CONNECTIVITY_STREAM = 2
_DISTRESS_STREAM = 3


@dataclass(frozen=True)
class GenConfig:
    n_segments: int = 1000
    n_undirected_edges: int = 6000
    # With kappa=0.3 diffusion, 6 months keeps neighbor influence within
    # the two hops a two-layer model can see; longer horizons mix globally.
    months: int = 6
    seed: int = 42
    kappa: float = 0.3          # spatial coupling strength
    noise_sd: float = 1.5       # monthly shock, condition-score units
    alpha_age: float = 0.6      # decay per month at age 40
    beta_traffic: float = 0.5   # decay per month at traffic 1e5
    gamma_material: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_GAMMA))

    def validate(self) -> None:
        n = self.n_segments
        if n < 1:
            raise ConfigError("n_segments must be >= 1")
        if self.months < 1:
            raise ConfigError("months must be >= 1")
        pair_bound = n * (n - 1) // 2
        if self.n_undirected_edges > pair_bound:
            raise ConfigError(
                f"{self.n_undirected_edges} edges exceed the {pair_bound} distinct pairs"
            )
        if n > 1 and self.n_undirected_edges < n:
            raise ConfigError(
                f"ring backbone needs {n} edges, got {self.n_undirected_edges}"
            )
        if self.kappa < 0 or self.noise_sd < 0:
            raise ConfigError("kappa and noise_sd must be >= 0")


def _stream(cfg: GenConfig, tag: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, tag])


def generate_segments(cfg: GenConfig) -> list[SegmentRecord]:
    cfg.validate()
    rng = _stream(cfg, _SEGMENTS_STREAM)
    n = cfg.n_segments
    lengths = rng.uniform(50.0, 2000.0, size=n)
    ages = rng.integers(0, 41, size=n)
    traffic = 10.0 ** rng.uniform(math.log10(100.0), math.log10(50000.0), size=n)
    materials = rng.choice(len(MATERIALS), size=n, p=MATERIAL_PROBS)
    return [
        SegmentRecord(
            segment_id=i,
            length=round(float(lengths[i]), 2),
            material=MATERIALS[materials[i]],
            age=float(ages[i]),
            traffic_volume=round(float(traffic[i]), 1),
        )
        for i in range(n)
    ]


def generate_connectivity(cfg: GenConfig, segment_ids: list[int]) -> list[ConnectivityRecord]:
    """Ring backbone over the segments first, then random distinct pairs.

    Emits one directed record per undirected link; symmetrization happens
    downstream in graph construction.
    """
    cfg.validate()
    n = len(segment_ids)
    if n != cfg.n_segments:
        raise ConfigError(f"expected {cfg.n_segments} segment ids, got {n}")
    rng = _stream(cfg, _CONNECTIVITY_STREAM)

    pairs: list[tuple[int, int]] = []
    used: set[tuple[int, int]] = set()
    if n > 1:
        for i in range(n if n > 2 else 1):
            u, v = i, (i + 1) % n
            key = (min(u, v), max(u, v))
            pairs.append((u, v))
            used.add(key)
    while len(pairs) < cfg.n_undirected_edges:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in used:
            continue
        used.add(key)
        pairs.append(key)

    weights = 1.0 - 0.9 * rng.random(len(pairs))  # Uniform(0.1, 1.0]
    return [
        ConnectivityRecord(
            from_id=segment_ids[u],
            to_id=segment_ids[v],
            weight=round(float(weights[k]), 6),
        )
        for k, (u, v) in enumerate(pairs)
    ]


def decay_rates(cfg: GenConfig, segments: list[SegmentRecord]) -> np.ndarray:
    """Per-segment monthly condition loss implied by its attributes."""
    out = np.empty(len(segments))
    for i, seg in enumerate(segments):
        out[i] = (
            cfg.alpha_age * seg.age / 40.0
            + cfg.beta_traffic * math.log10(max(seg.traffic_volume, 1.0)) / 5.0
            + cfg.gamma_material.get(seg.material, 0.0)
        )
    return out


def adjacency_lists(
    n: int, index_of: dict[int, int], connectivity: list[ConnectivityRecord]
) -> list[list[int]]:
    """Undirected neighbor lists over dense indices."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for rec in connectivity:
        u, v = index_of[rec.from_id], index_of[rec.to_id]
        adj[u].add(v)
        adj[v].add(u)
    return [sorted(s) for s in adj]


def step_conditions(
    condition: np.ndarray,
    decay: np.ndarray,
    adj: list[list[int]],
    kappa: float,
    shocks: np.ndarray,
) -> np.ndarray:
    """One month of the deterioration recurrence, clamped to [0, 100]."""
    nxt = condition - decay + shocks
    if kappa > 0.0:
        for i, nbrs in enumerate(adj):
            if nbrs:
                nxt[i] += kappa * (condition[nbrs].mean() - condition[i])
    return np.clip(nxt, 0.0, 100.0)


def simulate_distress(
    cfg: GenConfig,
    segments: list[SegmentRecord],
    connectivity: list[ConnectivityRecord],
) -> list[DistressRecord]:
    cfg.validate()
    rng = _stream(cfg, _DISTRESS_STREAM)
    n = len(segments)
    index_of = {seg.segment_id: i for i, seg in enumerate(segments)}
    adj = adjacency_lists(n, index_of, connectivity)
    decay = decay_rates(cfg, segments)

    ages = np.array([seg.age for seg in segments])
    init_noise = rng.normal(0.0, cfg.noise_sd, size=n) if cfg.noise_sd > 0 else np.zeros(n)
    condition = np.clip(100.0 - 0.8 * ages + init_noise, 0.0, 100.0)

    records: list[DistressRecord] = []

    def emit(month: int, cond: np.ndarray) -> None:
        for i, seg in enumerate(segments):
            records.append(
                DistressRecord(
                    segment_id=seg.segment_id,
                    month=month,
                    distress_level=round(float(cond[i]), 4),
                )
            )

    emit(0, condition)
    for month in range(1, cfg.months):
        shocks = rng.normal(0.0, cfg.noise_sd, size=n) if cfg.noise_sd > 0 else np.zeros(n)
        condition = step_conditions(condition, decay, adj, cfg.kappa, shocks)
        emit(month, condition)
    return records


def write_datasets(cfg: GenConfig, out_dir) -> dict[str, Path]:
    """Generate all three datasets and write them as CSV files."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    segments = generate_segments(cfg)
    connectivity = generate_connectivity(cfg, [s.segment_id for s in segments])
    distress = simulate_distress(cfg, segments, connectivity)

    paths = {
        "segments": out_dir / "segments.csv",
        "distress": out_dir / "distress.csv",
        "connectivity": out_dir / "connectivity.csv",
    }
    with paths["segments"].open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("segment_id,length_m,material,age_years,traffic_volume\n")
        for s in segments:
            fh.write(f"{s.segment_id},{s.length},{s.material},{s.age:g},{s.traffic_volume}\n")
    with paths["distress"].open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("segment_id,month,distress_level\n")
        for d in distress:
            fh.write(f"{d.segment_id},{d.month},{d.distress_level}\n")
    with paths["connectivity"].open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("from_id,to_id,weight\n")
        for c in connectivity:
            fh.write(f"{c.from_id},{c.to_id},{c.weight}\n")
    return paths
