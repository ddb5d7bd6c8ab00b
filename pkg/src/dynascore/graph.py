"""Snapshot graphs, canonical undirected edges and snapshot sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "GraphError",
    "UndefinedDensityError",
    "Edge",
    "Snapshot",
    "SnapshotSequence",
    "make_snapshot",
    "density",
]


class GraphError(ValueError):
    """Malformed snapshot or sequence."""


class UndefinedDensityError(GraphError):
    pass


class Edge(tuple):
    """Undirected edge stored as ``(a, b)`` with ``a < b``.

    ``Edge(2, 1) == Edge(1, 2)``; being a tuple, it hashes and sorts like one.
    """

    __slots__ = ()

    def __new__(cls, u: int, v: int) -> "Edge":
        u, v = int(u), int(v)
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) is not allowed")
        if u < 0 or v < 0:
            raise GraphError(f"vertex labels must be non-negative, got ({u}, {v})")
        return tuple.__new__(cls, (u, v) if u < v else (v, u))

    @property
    def a(self) -> int:
        return self[0]

    @property
    def b(self) -> int:
        return self[1]

    def __repr__(self) -> str:
        return f"Edge({self[0]}, {self[1]})"


@dataclass(frozen=True)
class Snapshot:
    """One static graph ``G_t = (V_t, E_t)``."""

    t: int
    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.t < 0:
            raise GraphError(f"step index must be non-negative, got {self.t}")
        for e in self.edges:
            if not isinstance(e, Edge):
                raise GraphError(f"edges must be Edge instances, got {e!r}")
            if e[0] not in self.vertices or e[1] not in self.vertices:
                raise GraphError(f"edge {tuple(e)} has an endpoint outside the vertex set")

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertex_list(self) -> list[int]:
        return sorted(self.vertices)

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in sorted(self.edges)]

    def relabel(self, mapping: dict[int, int]) -> "Snapshot":
        return make_snapshot(
            self.t,
            [mapping[v] for v in self.vertices],
            [(mapping[u], mapping[v]) for u, v in self.edges],
        )


def make_snapshot(
    t: int,
    vertex_labels: Iterable[int] = (),
    edge_pairs: Iterable[tuple[int, int]] = (),
) -> Snapshot:
    """Build a snapshot, canonicalizing and deduplicating edges.

    Edge endpoints missing from ``vertex_labels`` are added to the vertex set.
    A pair ``(u, u)`` raises :class:`GraphError`.
    """
    vertices = {int(v) for v in vertex_labels}
    edges = set()
    for pair in edge_pairs:
        u, v = pair
        edge = Edge(u, v)
        edges.add(edge)
        vertices.update(edge)
    if any(v < 0 for v in vertices):
        raise GraphError("vertex labels must be non-negative")
    return Snapshot(int(t), frozenset(vertices), frozenset(edges))


def density(s: Snapshot, n: int | None = None) -> Fraction:
    """Edge count over ``n(n-1)/2``; ``n`` defaults to the snapshot's order."""
    if n is None:
        n = s.order
    if n < 2:
        raise UndefinedDensityError(f"density needs at least 2 vertices, got n={n}")
    slots = n * (n - 1) // 2
    if s.size > slots:
        raise GraphError(f"{s.size} edges cannot fit on {n} vertices")
    return Fraction(s.size, slots)


@dataclass(frozen=True)
class SnapshotSequence:
    """Snapshots with consecutive step indices ``t0, t0+1, ...``."""

    snapshots: tuple[Snapshot, ...]

    def __init__(self, snapshots: Iterable[Snapshot]) -> None:
        snaps = tuple(snapshots)
        for prev, nxt in zip(snaps, snaps[1:]):
            if nxt.t != prev.t + 1:
                raise GraphError(
                    f"step indices must be consecutive: {prev.t} followed by {nxt.t}"
                )
        object.__setattr__(self, "snapshots", snaps)

    @property
    def t0(self) -> int:
        if not self.snapshots:
            raise GraphError("empty sequence has no first step")
        return self.snapshots[0].t

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[Snapshot]:
        return iter(self.snapshots)

    def __getitem__(self, i: int) -> Snapshot:
        return self.snapshots[i]

    def pairs(self) -> Iterator[tuple[Snapshot, Snapshot]]:
        return zip(self.snapshots, self.snapshots[1:])

    @classmethod
    def from_lists(
        cls,
        rows: Sequence[tuple[Iterable[int], Iterable[tuple[int, int]]]],
        t0: int = 0,
    ) -> "SnapshotSequence":
        return cls(make_snapshot(t0 + i, vs, es) for i, (vs, es) in enumerate(rows))
