"""Monte Carlo experiments on the generators: time averages, grid sweeps, checks."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import oracles
from .generators import BaParams, EmggParams, ParameterError, emgg_masks, g0_preset, generate_ba
from .rng import derive_seed
from .score import mask_counts, score_sequence

__all__ = [
    "EmggAverage",
    "SweepConfig",
    "SweepCell",
    "SweepResult",
    "BaCheckReport",
    "StationarityReport",
    "default_grid",
    "run_emgg_average",
    "emgg_score_samples",
    "run_sweep",
    "run_ba_check",
    "stationarity_check",
]


def default_grid() -> tuple[float, ...]:
    return tuple(round(0.05 + 0.1 * i, 10) for i in range(10))


@dataclass(frozen=True)
class EmggAverage:
    mean_e_score: float
    stddev_e_score: float
    mean_density: float
    n_samples: int


def _check_burn_in(burn_in: int, steps: int) -> None:
    if not 0 <= burn_in < steps:
        raise ParameterError(f"burn_in must satisfy 0 <= burn_in < steps={steps}, got {burn_in}")


def emgg_score_samples(params: EmggParams, burn_in: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-step E-DynamicScores for transitions ``t >= burn_in`` and the densities
    of the snapshots they lead to."""
    _check_burn_in(burn_in, params.steps)
    slots = params.slots
    kept = params.steps - burn_in
    scores = np.empty(kept)
    densities = np.empty(kept)
    masks = emgg_masks(params)
    prev = next(masks)
    for t, cur in enumerate(masks):
        if t >= burn_in:
            sym, union = mask_counts(prev, cur)
            scores[t - burn_in] = sym / union if union else 0.0
            densities[t - burn_in] = np.count_nonzero(cur) / slots if slots else 0.0
        prev = cur
    return scores, densities


def _stddev(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1)) if x.size > 1 else 0.0


def run_emgg_average(params: EmggParams, burn_in: int) -> EmggAverage:
    scores, densities = emgg_score_samples(params, burn_in)
    return EmggAverage(
        float(np.mean(scores)), _stddev(scores), float(np.mean(densities)), scores.size
    )


# ----------------------------------------------------------------------- sweep

@dataclass(frozen=True)
class SweepConfig:
    n: int = 150
    p_values: tuple[float, ...] = field(default_factory=default_grid)
    q_values: tuple[float, ...] = field(default_factory=default_grid)
    steps: int = 700
    burn_in: int = 200
    runs: int = 1
    seed: int = 0
    g0_kind: str = "empty"
    g0_prob: float = 0.5

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_values", tuple(float(x) for x in self.p_values))
        object.__setattr__(self, "q_values", tuple(float(x) for x in self.q_values))
        if self.n < 2:
            raise ParameterError(f"n must be >= 2, got {self.n}")
        if not self.p_values or not self.q_values:
            raise ParameterError("p and q grids must be non-empty")
        for x in self.p_values + self.q_values + (self.g0_prob,):
            if not 0.0 <= x <= 1.0:
                raise ParameterError(f"probabilities must lie in [0, 1], got {x}")
        _check_burn_in(self.burn_in, self.steps)
        if self.runs < 1:
            raise ParameterError(f"runs must be >= 1, got {self.runs}")
        if self.g0_kind not in ("empty", "complete", "gnp"):
            raise ParameterError(f"unknown g0 preset {self.g0_kind!r}")


@dataclass(frozen=True)
class SweepCell:
    p: float
    q: float
    mean_e_score: float
    stddev_e_score: float
    mean_density: float
    n_samples: int
    predicted_score: float | None
    predicted_density: float | None


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    cells: tuple[SweepCell, ...]

    def max_abs_error(self) -> float:
        errs = [
            abs(c.mean_e_score - c.predicted_score)
            for c in self.cells
            if c.predicted_score is not None
        ]
        return max(errs) if errs else 0.0


def _run_cell(config: SweepConfig, i: int, j: int) -> SweepCell:
    p, q = config.p_values[i], config.q_values[j]
    g0 = g0_preset(
        config.g0_kind, config.n, config.g0_prob, derive_seed(config.seed, "g0", i, j)
    )
    scores, densities = [], []
    for r in range(config.runs):
        params = EmggParams(
            config.n, p, q, config.steps, seed=derive_seed(config.seed, "sweep", i, j, r), g0=g0
        )
        s, d = emgg_score_samples(params, config.burn_in)
        scores.append(s)
        densities.append(d)
    s = np.concatenate(scores)
    d = np.concatenate(densities)
    theory = oracles.emgg_theory(p, q)
    return SweepCell(
        p=p,
        q=q,
        mean_e_score=float(np.mean(s)),
        stddev_e_score=_stddev(s),
        mean_density=float(np.mean(d)),
        n_samples=s.size,
        predicted_score=None if theory.degenerate else float(theory.score_at_fixed_point),
        predicted_density=None if theory.degenerate else float(theory.m_star),
    )


def _run_cell_star(args: tuple[SweepConfig, int, int]) -> SweepCell:
    return _run_cell(*args)


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    """One cell per ``(p, q)``, emitted p-major. Output does not depend on ``workers``."""
    jobs = [
        (config, i, j) for i in range(len(config.p_values)) for j in range(len(config.q_values))
    ]
    if workers <= 1:
        cells = [_run_cell_star(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_cell_star, jobs, chunksize=1))
    return SweepResult(config, tuple(cells))


# -------------------------------------------------------------------- BA check

@dataclass(frozen=True)
class BaCheckReport:
    passed: bool
    steps: int
    first_mismatch: int | None = None
    detail: str = ""
    flags: tuple[str, ...] = ()


def run_ba_check(params: BaParams) -> BaCheckReport:
    """Compare every simulated BA score with the closed forms, exactly.

    The transition ``t -> t+1`` is compared with ``ba_v_score(t)`` and
    ``ba_e_score(t + 1)``.
    """
    theory = oracles.BaTheory(params.n0, params.m0, params.m)
    flags = []
    if params.m0 == 0:
        flags.append("ba_e_score(0) is 0/0 with m0=0 (0 convention)")
    if params.steps == 0:
        return BaCheckReport(True, 0, flags=tuple(flags))
    series = score_sequence(generate_ba(params), "both")
    for pt in series:
        want_v = oracles.ba_v_score(theory, pt.t)
        want_e = oracles.ba_e_score(theory, pt.t + 1)
        if pt.v_score != want_v or pt.e_score != want_e:
            return BaCheckReport(
                False,
                params.steps,
                first_mismatch=pt.t,
                detail=f"t={pt.t}: got ({pt.v_score}, {pt.e_score}), expected ({want_v}, {want_e})",
                flags=tuple(flags),
            )
    return BaCheckReport(True, params.steps, flags=tuple(flags))


# ------------------------------------------------------------- stationarity

@dataclass(frozen=True)
class StationarityReport:
    """Per-slot presence frequencies after burn-in against the stationary presence.

    ``sigma`` is the standard error of the slot-averaged frequency for the
    autocorrelated chain (lag-k correlation ``(p+q-1)**k``); ``naive_sigma``
    treats every slot-step as independent.
    """

    presence: float
    frequencies: np.ndarray = field(repr=False)
    mean_frequency: float
    max_abs_deviation: float
    samples: int
    naive_sigma: float
    sigma: float

    @property
    def z(self) -> float:
        return (self.mean_frequency - self.presence) / self.sigma if self.sigma else 0.0

    def within(self, n_sigma: float = 3.0) -> bool:
        return abs(self.mean_frequency - self.presence) <= n_sigma * self.sigma


def stationarity_check(params: EmggParams, burn_in: int) -> StationarityReport:
    p, q = oracles._require_ergodic(params.p, params.q)
    _check_burn_in(burn_in, params.steps)
    presence = float(oracles.stationary_distribution(p, q)[0])
    counts = np.zeros(params.slots, dtype=np.int64)
    for t, mask in enumerate(emgg_masks(params)):
        if t > burn_in:
            counts += mask
    kept = params.steps - burn_in
    freqs = counts / kept
    samples = params.slots * kept
    naive = math.sqrt(presence * (1 - presence) / samples) if samples else 0.0
    lam = float(p + q - 1)
    # variance of a time average of a stationary two-state chain with lag-1 correlation lam
    inflation = (1 + lam) / (1 - lam) - 2 * lam * (1 - lam**kept) / (kept * (1 - lam) ** 2)
    return StationarityReport(
        presence=presence,
        frequencies=freqs,
        mean_frequency=float(freqs.mean()) if freqs.size else presence,
        max_abs_deviation=float(np.max(np.abs(freqs - presence))) if freqs.size else 0.0,
        samples=samples,
        naive_sigma=naive,
        sigma=naive * math.sqrt(inflation),
    )
