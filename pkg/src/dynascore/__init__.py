"""DynamicScore: Jaccard-distance dynamics of snapshot graph sequences."""

from .generators import BaParams, EmggParams, ParameterError, g0_preset, generate_ba, generate_emgg
from .graph import Edge, GraphError, Snapshot, SnapshotSequence, density, make_snapshot
from .score import ScorePoint, ScoreSeries, e_dynamic_score, score_sequence, v_dynamic_score

__all__ = [
    "BaParams",
    "EmggParams",
    "ParameterError",
    "g0_preset",
    "generate_ba",
    "generate_emgg",
    "Edge",
    "GraphError",
    "Snapshot",
    "SnapshotSequence",
    "density",
    "make_snapshot",
    "ScorePoint",
    "ScoreSeries",
    "e_dynamic_score",
    "score_sequence",
    "v_dynamic_score",
]

__version__ = "0.1.0"
