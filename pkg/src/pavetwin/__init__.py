"""pavetwin: digital-twin simulation engine for pavement networks with a
graph neural network distress forecaster."""

from .datagen import GenConfig, write_datasets
from .metrics import EvalReport, evaluate, mae, r2, rmse
from .pavegraph import PavementGraph, load_datasets
from .pipeline import FeatureScaler, LabelEncoder, NodeSplit, split_nodes
from .sage import SageModel, TrainConfig, load_checkpoint, predict, save_checkpoint, train
from .twin import MaintenanceAction, TwinConfig, TwinState, fork, init_twin, run_scenario
from .workflow import Dataset, load_dataset

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "EvalReport",
    "FeatureScaler",
    "GenConfig",
    "LabelEncoder",
    "MaintenanceAction",
    "NodeSplit",
    "PavementGraph",
    "SageModel",
    "TrainConfig",
    "TwinConfig",
    "TwinState",
    "evaluate",
    "fork",
    "init_twin",
    "load_checkpoint",
    "load_dataset",
    "load_datasets",
    "mae",
    "predict",
    "r2",
    "rmse",
    "run_scenario",
    "save_checkpoint",
    "split_nodes",
    "train",
    "write_datasets",
]
