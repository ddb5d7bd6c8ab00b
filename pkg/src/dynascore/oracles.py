"""Closed-form predictions and a brute-force small-n oracle.

Probabilities are converted to exact rationals (``0.6`` becomes ``3/5``), so the
identities between these functions hold with ``==``, not approximately.

Edge-Markovian chain, per edge slot, states ordered ``(present, absent)``::

    P = [[p, 1 - p],
         [1 - q, q]]

Its stationary presence probability is ``(1 - q) / (2 - p - q)``, the same value as
the fixed point of the expected-density map.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational

from .generators import ParameterError
from .graph import Snapshot

__all__ = [
    "DegenerateChainError",
    "UndefinedScoreWarning",
    "BaTheory",
    "EmggTheory",
    "as_fraction",
    "classify",
    "transition_matrix",
    "stationary_distribution",
    "emgg_theory",
    "ba_v_score",
    "ba_e_score",
    "density_step",
    "iterate_density",
    "fixed_point_density",
    "expected_e_score",
    "score_at_fixed_point",
    "SmallNExpectation",
    "exact_small_n_expectation",
    "MAX_ENUMERATED_N",
]

MAX_ENUMERATED_N = 4


class DegenerateChainError(ValueError):
    """Raised when ``|p + q - 1| = 1``; ``regime`` is ``"static"`` or ``"blinking"``."""

    def __init__(self, regime: str) -> None:
        self.regime = regime
        super().__init__(f"degenerate: {regime}")


class UndefinedScoreWarning(UserWarning):
    """A closed form hit 0/0 and the 0 convention was used."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x))


def _prob(name: str, x) -> Fraction:
    f = as_fraction(x)
    if not 0 <= f <= 1:
        raise ParameterError(f"{name} must lie in [0, 1], got {x}")
    return f


def classify(p, q) -> str:
    """``"static"`` (p=q=1), ``"blinking"`` (p=q=0) or ``"ergodic"``."""
    p, q = _prob("p", p), _prob("q", q)
    if p == 1 and q == 1:
        return "static"
    if p == 0 and q == 0:
        return "blinking"
    return "ergodic"


def _require_ergodic(p, q) -> tuple[Fraction, Fraction]:
    regime = classify(p, q)
    if regime != "ergodic":
        raise DegenerateChainError(regime)
    return as_fraction(p), as_fraction(q)


def transition_matrix(p, q) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    p, q = _prob("p", p), _prob("q", q)
    return ((p, 1 - p), (1 - q, q))


def stationary_distribution(p, q) -> tuple[Fraction, Fraction]:
    """``(P(present), P(absent))`` in the long run."""
    p, q = _require_ergodic(p, q)
    s = 2 - p - q
    return (1 - q) / s, (1 - p) / s


# -------------------------------------------------------------------------- BA

@dataclass(frozen=True)
class BaTheory:
    n0: int
    m0: int
    m: int

    def __post_init__(self) -> None:
        if self.n0 < 1 or not 1 <= self.m <= self.n0:
            raise ParameterError(f"need n0 >= 1 and 1 <= m <= n0, got n0={self.n0}, m={self.m}")
        if not 0 <= self.m0 <= self.n0 * (self.n0 - 1) // 2:
            raise ParameterError(f"m0={self.m0} exceeds the simple-graph bound for n0={self.n0}")


def ba_v_score(theory: BaTheory, t: int) -> Fraction:
    """V-DynamicScore of the transition ``t -> t+1``: ``1/(n0+t+1)``."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    return Fraction(1, theory.n0 + t + 1)


def ba_e_score(theory: BaTheory, t: int) -> Fraction:
    """``m/(m0 + t*m)``: the E-DynamicScore of the transition *into* step ``t``.

    ``E_t`` holds ``m0 + t*m`` edges and is the union of ``E_{t-1}`` and ``E_t``,
    so this formula is indexed by the arriving step. The transition ``t -> t+1``
    therefore scores ``ba_e_score(theory, t + 1)``. With ``m0 = 0`` and ``t = 0``
    the value is undefined; 0 is returned with an :class:`UndefinedScoreWarning`.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    denom = theory.m0 + t * theory.m
    if denom == 0:
        warnings.warn(
            "ba_e_score undefined at t=0 with m0=0; using 0", UndefinedScoreWarning, stacklevel=2
        )
        return Fraction(0)
    return Fraction(theory.m, denom)


# ------------------------------------------------------------------------ EMGG

def density_step(p, q, m_hat) -> Fraction:
    """Expected density one step after density ``m_hat``: ``p*m + (1-q)*(1-m)``."""
    p, q, m = _prob("p", p), _prob("q", q), _prob("m_hat", m_hat)
    return p * m + (1 - q) * (1 - m)


def iterate_density(p, q, m_hat, steps: int) -> list[Fraction]:
    """``[m_hat, f(m_hat), ..., f^steps(m_hat)]``."""
    out = [as_fraction(m_hat)]
    for _ in range(steps):
        out.append(density_step(p, q, out[-1]))
    return out


def fixed_point_density(p, q) -> Fraction:
    p, q = _require_ergodic(p, q)
    return (1 - q) / (2 - p - q)


def expected_e_score(p, q, m_hat) -> Fraction:
    """Ratio of expected ``|E_t △ E_t+1|`` to expected ``|E_t ∪ E_t+1|`` at density ``m_hat``.

    Algebraically ``1 - p*m / (1 + q*(m - 1))``. Not the expectation of the ratio;
    see :func:`exact_small_n_expectation` for that.
    """
    p, q, m = _prob("p", p), _prob("q", q), _prob("m_hat", m_hat)
    appear = (1 - q) * (1 - m)
    union = m + appear
    if union == 0:
        warnings.warn(
            "expected_e_score undefined for m_hat=0, q=1; using 0",
            UndefinedScoreWarning,
            stacklevel=2,
        )
        return Fraction(0)
    return ((1 - p) * m + appear) / union


def score_at_fixed_point(p, q) -> Fraction:
    """``2(1-p)/(2-p)``; ``q`` only matters for rejecting degenerate chains."""
    p, _ = _require_ergodic(p, q)
    return 2 * (1 - p) / (2 - p)


@dataclass(frozen=True)
class EmggTheory:
    p: Fraction
    q: Fraction
    regime: str
    pi_star: Fraction | None = None
    m_star: Fraction | None = None
    score_at_fixed_point: Fraction | None = None

    @property
    def degenerate(self) -> bool:
        return self.regime != "ergodic"


def emgg_theory(p, q) -> EmggTheory:
    regime = classify(p, q)
    p, q = as_fraction(p), as_fraction(q)
    if regime != "ergodic":
        return EmggTheory(p, q, regime)
    return EmggTheory(
        p,
        q,
        regime,
        pi_star=stationary_distribution(p, q)[0],
        m_star=fixed_point_density(p, q),
        score_at_fixed_point=score_at_fixed_point(p, q),
    )


# --------------------------------------------------------- brute-force oracle

@dataclass(frozen=True)
class SmallNExpectation:
    """Exact ``E[|△|/|∪|]`` for an Edge-Markovian chain on ``n`` vertices.

    ``stationary`` is ``None`` for degenerate chains. ``per_step[k]`` is the
    expected score of the transition ``k -> k+1`` starting from ``g0``.
    """

    n: int
    p: Fraction
    q: Fraction
    stationary: Fraction | None
    per_step: tuple[Fraction, ...]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def exact_small_n_expectation(n: int, p, q, g0: Snapshot | None = None, steps: int = 0):
    """Enumerate every pair of edge sets ``(E_t, E_t+1)`` on ``n <= 4`` vertices.

    Pairs with an empty union contribute 0. ``g0`` defaults to the empty graph
    and only matters for ``per_step``, which covers ``steps`` transitions.
    """
    if n < 2 or n > MAX_ENUMERATED_N:
        raise ValueError(f"enumeration supports 2 <= n <= {MAX_ENUMERATED_N}, got n={n}")
    p, q = _prob("p", p), _prob("q", q)
    slots = n * (n - 1) // 2
    states = range(1 << slots)
    # bit k of a state <-> slot k in lexicographic (i, j) order
    stay = {(1, 1): p, (1, 0): 1 - p, (0, 1): 1 - q, (0, 0): q}

    def trans(a: int, b: int) -> Fraction:
        prob = Fraction(1)
        for k in range(slots):
            prob *= stay[((a >> k) & 1, (b >> k) & 1)]
            if prob == 0:
                break
        return prob

    T = [[trans(a, b) for b in states] for a in states]
    score = [
        [Fraction(_popcount(a ^ b), _popcount(a | b)) if a | b else Fraction(0) for b in states]
        for a in states
    ]
    exp_from = [sum((T[a][b] * score[a][b] for b in states), Fraction(0)) for a in states]

    stationary = None
    if classify(p, q) == "ergodic":
        pres = fixed_point_density(p, q)
        weights = [pres ** _popcount(a) * (1 - pres) ** (slots - _popcount(a)) for a in states]
        stationary = sum((w * e for w, e in zip(weights, exp_from)), Fraction(0))

    start = 0
    if g0 is not None:
        if g0.vertices != frozenset(range(n)):
            raise ValueError(f"g0 must have vertices 0..{n - 1}")
        pairs = list(product(range(n), repeat=2))
        index = {(i, j): k for k, (i, j) in enumerate((i, j) for i, j in pairs if i < j)}
        for e in g0.edges:
            start |= 1 << index[tuple(e)]
    dist = [Fraction(0)] * (1 << slots)
    dist[start] = Fraction(1)
    per_step = []
    for _ in range(steps):
        per_step.append(sum((d * e for d, e in zip(dist, exp_from) if d), Fraction(0)))
        dist = [sum((dist[a] * T[a][b] for a in states if dist[a]), Fraction(0)) for b in states]
    return SmallNExpectation(n, p, q, stationary, tuple(per_step))
