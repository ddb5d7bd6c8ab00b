"""Barabási–Albert growth and Edge-Markovian graph generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import rng as _rng
from .graph import Edge, Snapshot, SnapshotSequence, make_snapshot

__all__ = [
    "ParameterError",
    "BaParams",
    "EmggParams",
    "generate_ba",
    "generate_emgg",
    "emgg_masks",
    "g0_preset",
    "slot_pairs",
    "snapshot_to_mask",
    "mask_to_snapshot",
]

# uniforms drawn per block in emgg_masks; a block of k steps consumes the
# same stream as k single-step draws
_BLOCK_DRAWS = 1 << 18


class ParameterError(ValueError):
    """Invalid generator or experiment parameters."""


def _check_prob(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {x}")
    return x


@dataclass(frozen=True)
class BaParams:
    n0: int
    m0: int
    m: int
    steps: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n0 < 1:
            raise ParameterError(f"n0 must be >= 1, got {self.n0}")
        if not 1 <= self.m <= self.n0:
            raise ParameterError(f"m must satisfy 1 <= m <= n0={self.n0}, got {self.m}")
        max_m0 = self.n0 * (self.n0 - 1) // 2
        if not 0 <= self.m0 <= max_m0:
            raise ParameterError(f"m0 must satisfy 0 <= m0 <= {max_m0}, got {self.m0}")
        if self.steps < 0:
            raise ParameterError(f"steps must be >= 0, got {self.steps}")


@dataclass(frozen=True)
class EmggParams:
    """``g0`` defaults to the empty graph on vertices ``0..n-1``."""

    n: int
    p: float
    q: float
    steps: int
    seed: int = 0
    g0: Snapshot | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        _check_prob("p", self.p)
        _check_prob("q", self.q)
        if self.steps < 0:
            raise ParameterError(f"steps must be >= 0, got {self.steps}")
        if self.g0 is not None and self.g0.vertices != frozenset(range(self.n)):
            raise ParameterError(
                f"g0 must have exactly the vertices 0..{self.n - 1}, "
                f"got {self.g0.order} vertices"
            )

    @property
    def slots(self) -> int:
        return self.n * (self.n - 1) // 2


# ---------------------------------------------------------------- slot masks

def slot_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of every edge slot, in lexicographic ``(i, j)``, ``i < j`` order."""
    return np.triu_indices(n, 1)


def snapshot_to_mask(s: Snapshot, n: int) -> np.ndarray:
    mask = np.zeros(n * (n - 1) // 2, dtype=bool)
    for i, j in s.edges:
        # index of (i, j) in row-major upper-triangle order
        mask[i * (2 * n - i - 1) // 2 + (j - i - 1)] = True
    return mask


def mask_to_snapshot(t: int, mask: np.ndarray, n: int) -> Snapshot:
    rows, cols = slot_pairs(n)
    idx = np.flatnonzero(mask)
    edges = frozenset(Edge(int(rows[k]), int(cols[k])) for k in idx)
    return Snapshot(t, frozenset(range(n)), edges)


# --------------------------------------------------------------------- presets

def g0_preset(kind: str, n: int, prob: float = 0.5, seed: int = 0) -> Snapshot:
    """Initial graph on vertices ``0..n-1``: ``empty``, ``complete`` or ``gnp``."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    slots = n * (n - 1) // 2
    if kind == "empty":
        mask = np.zeros(slots, dtype=bool)
    elif kind == "complete":
        mask = np.ones(slots, dtype=bool)
    elif kind == "gnp":
        prob = _check_prob("prob", prob)
        mask = _rng.stream(seed, "g0-gnp").random(slots) < prob
    else:
        raise ParameterError(f"unknown g0 preset {kind!r}")
    return mask_to_snapshot(0, mask, n)


# -------------------------------------------------------------------------- BA

def _ba_seed_edges(n0: int, m0: int, gen: np.random.Generator) -> list[Edge]:
    rows, cols = slot_pairs(n0)
    picked = np.sort(gen.choice(rows.size, size=m0, replace=False)) if m0 else []
    return [Edge(int(rows[k]), int(cols[k])) for k in picked]


def _attach_targets(
    degree: list[int], stubs: list[int], m: int, gen: np.random.Generator
) -> list[int]:
    """Pick ``m`` distinct vertices, degree-proportionally, by rejection.

    ``stubs`` lists every vertex once per incident edge end. Once all positive-degree
    vertices are taken (or none exist), remaining targets are uniform among the
    unchosen vertices.
    """
    n_vertices = len(degree)
    chosen: list[int] = []
    taken: set[int] = set()
    positive = n_vertices - degree.count(0)
    positive_taken = 0
    while len(chosen) < m:
        if positive_taken < positive:
            v = stubs[int(gen.integers(len(stubs)))]
        else:
            v = int(gen.integers(n_vertices))
        if v in taken:
            continue
        taken.add(v)
        chosen.append(v)
        if degree[v] > 0:
            positive_taken += 1
    return chosen


def generate_ba(params: BaParams) -> SnapshotSequence:
    """Grow a preferential-attachment graph for ``params.steps`` steps.

    Step ``t+1`` adds vertex ``n0 + t`` joined to ``m`` distinct existing vertices
    chosen with probability proportional to their degree at the start of the step.
    The seed graph is a uniform random simple graph with ``m0`` edges.
    """
    gen = _rng.stream(params.seed, "ba")
    n0, m = params.n0, params.m
    edges = _ba_seed_edges(n0, params.m0, gen)
    degree = [0] * n0
    stubs: list[int] = []
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
        stubs.extend((u, v))

    vertices = list(range(n0))
    edge_set = frozenset(edges)
    snaps = [Snapshot(0, frozenset(vertices), edge_set)]
    for t in range(params.steps):
        new = n0 + t
        if m > len(degree):
            raise RuntimeError(f"cannot attach {m} edges to {len(degree)} vertices")
        targets = _attach_targets(degree, stubs, m, gen)
        degree.append(0)
        new_edges = [Edge(new, v) for v in targets]
        for v in targets:
            degree[v] += 1
            degree[new] += 1
            stubs.extend((v, new))
        vertices.append(new)
        edge_set = edge_set.union(new_edges)
        snap = Snapshot(t + 1, frozenset(vertices), edge_set)
        prev = snaps[-1]
        if snap.order != prev.order + 1 or snap.size != prev.size + m:
            raise RuntimeError(f"BA growth invariant violated at step {t + 1}")
        snaps.append(snap)
    return SnapshotSequence(snaps)


# ------------------------------------------------------------------------ EMGG

def emgg_masks(params: EmggParams) -> Iterator[np.ndarray]:
    """Yield the edge-presence mask of every step, ``G_0`` through ``G_steps``.

    Each step draws one uniform ``u`` per slot (slot order of :func:`slot_pairs`):
    a present slot stays present iff ``u < p``; an absent slot appears iff ``u >= q``.
    Yielded arrays are fresh and may be kept by the caller.
    """
    n, p, q = params.n, float(params.p), float(params.q)
    slots = params.slots
    g0 = params.g0
    cur = snapshot_to_mask(g0, n) if g0 is not None else np.zeros(slots, dtype=bool)
    yield cur.copy()
    if slots == 0:
        for _ in range(params.steps):
            yield cur.copy()
        return
    gen = _rng.stream(params.seed, "emgg")
    block = max(1, _BLOCK_DRAWS // slots)
    done = 0
    while done < params.steps:
        k = min(block, params.steps - done)
        draws = gen.random((k, slots))
        for u in draws:
            cur = np.where(cur, u < p, u >= q)
            yield cur
        done += k


def generate_emgg(params: EmggParams) -> SnapshotSequence:
    n = params.n
    return SnapshotSequence(
        mask_to_snapshot(t, mask, n) for t, mask in enumerate(emgg_masks(params))
    )
