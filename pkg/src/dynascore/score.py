"""V-DynamicScore and E-DynamicScore: Jaccard distance between consecutive snapshots.

Scores are exact :class:`~fractions.Fraction` values. Two empty sets score 0,
so a score of 0 always means the two sets are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Literal

import numpy as np

from .graph import GraphError, Snapshot, SnapshotSequence

__all__ = [
    "ScorePoint",
    "ScoreSeries",
    "jaccard_counts",
    "jaccard_distance",
    "v_dynamic_score",
    "e_dynamic_score",
    "mask_counts",
    "score_sequence",
]

Which = Literal["vertex", "edge", "both"]


def jaccard_counts(a: AbstractSet, b: AbstractSet) -> tuple[int, int]:
    """Return ``(|a △ b|, |a ∪ b|)``."""
    inter = len(a & b)
    union = len(a) + len(b) - inter
    return union - inter, union


def _ratio(sym: int, union: int) -> Fraction:
    return Fraction(sym, union) if union else Fraction(0)


def jaccard_distance(a: AbstractSet, b: AbstractSet) -> Fraction:
    return _ratio(*jaccard_counts(a, b))


def v_dynamic_score(g_t: Snapshot, g_t1: Snapshot) -> Fraction:
    return jaccard_distance(g_t.vertices, g_t1.vertices)


def e_dynamic_score(g_t: Snapshot, g_t1: Snapshot) -> Fraction:
    return jaccard_distance(g_t.edges, g_t1.edges)


def mask_counts(prev: np.ndarray, nxt: np.ndarray) -> tuple[int, int]:
    """``(|△|, |∪|)`` for two boolean presence masks over the same slots."""
    return int(np.count_nonzero(prev ^ nxt)), int(np.count_nonzero(prev | nxt))


@dataclass(frozen=True)
class ScorePoint:
    """Scores for the transition ``t -> t+1``.

    A score is ``None`` when it was not requested.
    """

    t: int
    v_score: Fraction | None
    e_score: Fraction | None
    sym_diff_v: int = 0
    union_v: int = 0
    sym_diff_e: int = 0
    union_e: int = 0


@dataclass(frozen=True)
class ScoreSeries:
    points: tuple[ScorePoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> ScorePoint:
        return self.points[i]

    def v_scores(self) -> list[Fraction | None]:
        return [pt.v_score for pt in self.points]

    def e_scores(self) -> list[Fraction | None]:
        return [pt.e_score for pt in self.points]


def score_sequence(seq: SnapshotSequence, which: Which = "both") -> ScoreSeries:
    if which not in ("vertex", "edge", "both"):
        raise ValueError(f"which must be 'vertex', 'edge' or 'both', got {which!r}")
    if len(seq) < 2:
        raise GraphError("nothing to compare: a sequence needs at least 2 snapshots")
    want_v = which in ("vertex", "both")
    want_e = which in ("edge", "both")
    points = []
    for g_t, g_t1 in seq.pairs():
        sv, uv = jaccard_counts(g_t.vertices, g_t1.vertices) if want_v else (0, 0)
        se, ue = jaccard_counts(g_t.edges, g_t1.edges) if want_e else (0, 0)
        points.append(
            ScorePoint(
                t=g_t.t,
                v_score=_ratio(sv, uv) if want_v else None,
                e_score=_ratio(se, ue) if want_e else None,
                sym_diff_v=sv,
                union_v=uv,
                sym_diff_e=se,
                union_e=ue,
            )
        )
    return ScoreSeries(tuple(points))
