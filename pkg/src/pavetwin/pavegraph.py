"""Graph data model for the pavement network.

Ingests the three CSV datasets (segments, distress, connectivity),
validates them, and builds the COO-form graph with standardized node
features and raw condition-score targets.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DimensionError,
    MissingFile,
    MissingTarget,
    ParseError,
    SchemaError,
)

SEGMENT_HEADER = ["segment_id", "length_m", "material", "age_years", "traffic_volume"]
DISTRESS_HEADER = ["segment_id", "month", "distress_level"]
CONNECTIVITY_HEADER = ["from_id", "to_id", "weight"]

#: fixed feature column order of the node feature matrix
FEATURE_COLUMNS = ("length", "age", "traffic_volume", "material_code")


@dataclass(frozen=True)
class SegmentRecord:
    segment_id: int
    length: float | None
    material: str | None
    age: float | None
    traffic_volume: float | None


@dataclass(frozen=True)
class DistressRecord:
    segment_id: int
    month: int
    distress_level: float


@dataclass(frozen=True)
class ConnectivityRecord:
    from_id: int
    to_id: int
    weight: float


@dataclass(frozen=True)
class PavementGraph:
    """Pavement network in COO form.

    ``feature_matrix`` is N x 4 (length, age, traffic_volume,
    material_code), standardized. ``target`` is the raw latest condition
    score per node, never standardized. ``edge_index`` is 2 x 2E with the
    edge set closed under reversal.
    """

    node_count: int
    feature_matrix: np.ndarray
    edge_index: np.ndarray
    edge_weight: np.ndarray
    target: np.ndarray
    segment_ids: tuple[int, ...]  # dense index -> original id

    @property
    def index_of(self) -> dict[int, int]:
        return {sid: i for i, sid in enumerate(self.segment_ids)}


def _read_rows(path, expected_header):
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {expected_header}")
        if header != expected_header:
            raise SchemaError(f"{path}: header {header} != expected {expected_header}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(expected_header):
                raise SchemaError(
                    f"{path}: row {lineno} has {len(row)} columns, expected {len(expected_header)}"
                )
            rows.append((lineno, row))
    return rows


def _parse_int(value, path, row, column):
    try:
        return int(value)
    except ValueError:
        raise ParseError(path, row, column, f"not an integer: {value!r}")


def _parse_float(value, path, row, column):
    try:
        out = float(value)
    except ValueError:
        raise ParseError(path, row, column, f"not a number: {value!r}")
    if not np.isfinite(out):
        raise ParseError(path, row, column, f"non-finite value: {value!r}")
    return out


def _parse_optional_float(value, path, row, column):
    if value == "":
        return None
    return _parse_float(value, path, row, column)


def load_segments(path) -> list[SegmentRecord]:
    records = []
    seen = set()
    for lineno, row in _read_rows(path, SEGMENT_HEADER):
        sid = _parse_int(row[0], path, lineno, "segment_id")
        if sid < 0:
            raise ParseError(path, lineno, "segment_id", "must be >= 0")
        if sid in seen:
            raise ParseError(path, lineno, "segment_id", f"duplicate id {sid}")
        seen.add(sid)
        records.append(
            SegmentRecord(
                segment_id=sid,
                length=_parse_optional_float(row[1], path, lineno, "length_m"),
                material=row[2] if row[2] != "" else None,
                age=_parse_optional_float(row[3], path, lineno, "age_years"),
                traffic_volume=_parse_optional_float(row[4], path, lineno, "traffic_volume"),
            )
        )
    return records


def load_distress(path) -> list[DistressRecord]:
    records = []
    seen = set()
    for lineno, row in _read_rows(path, DISTRESS_HEADER):
        sid = _parse_int(row[0], path, lineno, "segment_id")
        month = _parse_int(row[1], path, lineno, "month")
        if month < 0:
            raise ParseError(path, lineno, "month", "must be >= 0")
        level = _parse_float(row[2], path, lineno, "distress_level")
        if not 0.0 <= level <= 100.0:
            raise ParseError(path, lineno, "distress_level", f"out of [0, 100]: {level}")
        if (sid, month) in seen:
            raise ParseError(path, lineno, "month", f"duplicate (segment, month) ({sid}, {month})")
        seen.add((sid, month))
        records.append(DistressRecord(segment_id=sid, month=month, distress_level=level))
    return records


def load_connectivity(path) -> list[ConnectivityRecord]:
    # Semantic validation (unknown ids, self-loops, bad weights) is
    # deferred to clean_connectivity; the loader only checks types.
    records = []
    for lineno, row in _read_rows(path, CONNECTIVITY_HEADER):
        records.append(
            ConnectivityRecord(
                from_id=_parse_int(row[0], path, lineno, "from_id"),
                to_id=_parse_int(row[1], path, lineno, "to_id"),
                weight=_parse_float(row[2], path, lineno, "weight"),
            )
        )
    return records


def load_datasets(segments_path, distress_path, connectivity_path):
    return (
        load_segments(segments_path),
        load_distress(distress_path),
        load_connectivity(connectivity_path),
    )


def clean_connectivity(
    records: list[ConnectivityRecord], known_ids: set[int]
) -> tuple[list[ConnectivityRecord], int]:
    """Drop invalid links; returns (kept records, dropped count).

    Drops rows with unknown endpoints, self-loops, or non-positive /
    non-finite weights. Duplicate ordered pairs keep the first occurrence.
    """
    kept = []
    seen_pairs = set()
    dropped = 0
    for rec in records:
        pair = (rec.from_id, rec.to_id)
        if (
            rec.from_id == rec.to_id
            or rec.from_id not in known_ids
            or rec.to_id not in known_ids
            or not np.isfinite(rec.weight)
            or rec.weight <= 0
            or pair in seen_pairs
        ):
            dropped += 1
            continue
        seen_pairs.add(pair)
        kept.append(rec)
    return kept, dropped


def latest_distress(distress: list[DistressRecord]) -> dict[int, float]:
    """Condition score at the maximum observed month, per segment."""
    best: dict[int, tuple[int, float]] = {}
    for rec in distress:
        cur = best.get(rec.segment_id)
        if cur is None or rec.month > cur[0]:
            best[rec.segment_id] = (rec.month, rec.distress_level)
    return {sid: level for sid, (_, level) in best.items()}


def symmetrize(edges: list[tuple[int, int, float]]) -> list[tuple[int, int, float]]:
    """Close the directed edge set under reversal.

    For every (u, v, w) present, ensures (v, u) is present; a missing
    reverse edge is added with the same weight. Idempotent.
    """
    present = {(u, v) for u, v, _ in edges}
    out = list(edges)
    for u, v, w in edges:
        if (v, u) not in present:
            present.add((v, u))
            out.append((v, u, w))
    return out


def build_graph(segments, distress, connectivity, scaler, encoder) -> PavementGraph:
    """Assemble the PavementGraph from cleaned records and fitted artifacts.

    Features are standardized with ``scaler``; targets come from
    latest_distress and stay in raw condition-score units.
    """
    ids = [s.segment_id for s in segments]
    index_of = {sid: i for i, sid in enumerate(ids)}
    n = len(ids)

    raw = np.empty((n, 4), dtype=np.float64)
    for i, seg in enumerate(segments):
        raw[i, 0] = seg.length
        raw[i, 1] = seg.age
        raw[i, 2] = seg.traffic_volume
        raw[i, 3] = encoder.encode(seg.material)
    if raw.shape[1] != 4:
        raise DimensionError(f"expected 4 features, got {raw.shape[1]}")
    features = scaler.transform(raw)

    targets_by_id = latest_distress(distress)
    y = np.empty(n, dtype=np.float64)
    for i, sid in enumerate(ids):
        if sid not in targets_by_id:
            raise MissingTarget(sid)
        y[i] = targets_by_id[sid]

    cleaned, _ = clean_connectivity(connectivity, set(ids))
    directed = [(index_of[r.from_id], index_of[r.to_id], r.weight) for r in cleaned]
    sym = symmetrize(directed)
    if sym:
        edge_index = np.array([[u for u, _, _ in sym], [v for _, v, _ in sym]], dtype=np.int64)
        edge_weight = np.array([w for _, _, w in sym], dtype=np.float64)
    else:
        edge_index = np.zeros((2, 0), dtype=np.int64)
        edge_weight = np.zeros(0, dtype=np.float64)

    return PavementGraph(
        node_count=n,
        feature_matrix=features,
        edge_index=edge_index,
        edge_weight=edge_weight,
        target=y,
        segment_ids=tuple(ids),
    )


def neighbors(graph: PavementGraph, i: int) -> list[int]:
    """Node ids j with a directed edge (j -> i), in ascending order."""
    if not 0 <= i < graph.node_count:
        raise IndexError(f"node {i} out of range [0, {graph.node_count})")
    src, dst = graph.edge_index
    return sorted(int(j) for j in src[dst == i])
