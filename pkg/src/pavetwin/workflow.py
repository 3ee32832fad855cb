"""End-to-end helpers tying loading, preprocessing, and graph assembly
together for the CLI, the service, and scripts."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .pavegraph import (
    DistressRecord,
    PavementGraph,
    SegmentRecord,
    build_graph,
    load_datasets,
)
from .pipeline import FeatureScaler, LabelEncoder, impute


@dataclass
class Dataset:
    segments: list[SegmentRecord]
    distress: list[DistressRecord]
    graph: PavementGraph
    scaler: FeatureScaler
    encoder: LabelEncoder


def load_dataset(data_dir) -> Dataset:
    """Load the three CSVs from a directory, impute, fit the preprocessing
    artifacts on the full node set, and build the graph."""
    data_dir = Path(data_dir)
    segments, distress, connectivity = load_datasets(
        data_dir / "segments.csv",
        data_dir / "distress.csv",
        data_dir / "connectivity.csv",
    )
    segments = impute(segments)
    encoder = LabelEncoder().fit(s.material for s in segments)
    raw = np.array(
        [
            [s.length, s.age, s.traffic_volume, encoder.encode(s.material)]
            for s in segments
        ],
        dtype=np.float64,
    )
    scaler = FeatureScaler().fit(raw)
    graph = build_graph(segments, distress, connectivity, scaler, encoder)
    return Dataset(
        segments=segments, distress=distress, graph=graph, scaler=scaler, encoder=encoder
    )
