"""Text formats: snapshot files, score CSV and sweep CSV.

Snapshot file::

    # t=0
    v 4          isolated vertex
    e 0 1        edge; endpoints are declared implicitly
    # anything else starting with '#' is a comment

Scores are rounded exactly (half-to-even) to 6 decimals; missing scores print ``nan``.
All output is ASCII with LF line endings.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, TextIO

from .graph import GraphError, Snapshot, SnapshotSequence, make_snapshot
from .harness import SweepResult
from .score import ScoreSeries

_HEADER = re.compile(r"^#\s*t\s*=\s*(\S+)\s*$")

SCORE_HEADER = "t,v_score,e_score"
SWEEP_HEADER = "p,q,nervousnessAverage"
SWEEP_HEADER_EXTENDED = "p,q,nervousnessAverage,stddev,meanDensity,predicted"


class SnapshotFileError(GraphError):
    def __init__(self, line_no: int, message: str) -> None:
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def format_value(x: Fraction | float | None) -> str:
    if x is None:
        return "nan"
    if isinstance(x, float):
        if x != x:
            return "nan"
        x = Fraction(x)
    scaled = round(x * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**6)
    return f"{sign}{whole}.{frac:06d}"


def format_prob(x: float) -> str:
    return f"{x:g}"


# ------------------------------------------------------------ snapshot files

def _int(token: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise SnapshotFileError(line_no, f"expected an integer, got {token!r}") from None
    if value < 0:
        raise SnapshotFileError(line_no, f"vertex labels must be non-negative, got {value}")
    return value


def parse_snapshots(lines: Iterable[str]) -> SnapshotSequence:
    snaps: list[Snapshot] = []
    current: tuple[int, list[int], list[tuple[int, int]]] | None = None

    def close() -> None:
        if current is not None:
            snaps.append(make_snapshot(*current))

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m is None:
                continue
            try:
                t = int(m.group(1))
            except ValueError:
                raise SnapshotFileError(line_no, f"bad step index {m.group(1)!r}") from None
            if t < 0:
                raise SnapshotFileError(line_no, f"step index must be non-negative, got {t}")
            if current is not None and t != current[0] + 1:
                raise SnapshotFileError(
                    line_no, f"step {t} does not follow step {current[0]} consecutively"
                )
            close()
            current = (t, [], [])
            continue
        if current is None:
            raise SnapshotFileError(line_no, "content before the first '# t=<k>' header")
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "v" and len(args) == 1:
            current[1].append(_int(args[0], line_no))
        elif kind == "e" and len(args) == 2:
            u, w = _int(args[0], line_no), _int(args[1], line_no)
            if u == w:
                raise SnapshotFileError(line_no, f"self-loop ({u}, {w}) is not allowed")
            current[2].append((u, w))
        else:
            raise SnapshotFileError(line_no, f"malformed line {line!r}")
    close()
    return SnapshotSequence(snaps)


def read_snapshots(path: str) -> SnapshotSequence:
    with open(path, encoding="ascii") as fh:
        return parse_snapshots(fh)


def write_snapshots(seq: SnapshotSequence, out: TextIO) -> None:
    for s in seq:
        out.write(f"# t={s.t}\n")
        touched = {v for e in s.edges for v in e}
        for v in sorted(s.vertices - touched):
            out.write(f"v {v}\n")
        for u, w in sorted(s.edges):
            out.write(f"e {u} {w}\n")


# ----------------------------------------------------------------------- CSVs

def write_score_csv(series: ScoreSeries, out: TextIO) -> None:
    out.write(SCORE_HEADER + "\n")
    for pt in series:
        out.write(f"{pt.t},{format_value(pt.v_score)},{format_value(pt.e_score)}\n")


def write_sweep_csv(result: SweepResult, out: TextIO, extended: bool = False) -> None:
    out.write((SWEEP_HEADER_EXTENDED if extended else SWEEP_HEADER) + "\n")
    for c in result.cells:
        row = [format_prob(c.p), format_prob(c.q), format_value(c.mean_e_score)]
        if extended:
            row += [
                format_value(c.stddev_e_score),
                format_value(c.mean_density),
                format_value(c.predicted_score),
            ]
        out.write(",".join(row) + "\n")
