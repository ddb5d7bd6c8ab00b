import math
from fractions import Fraction as F
from itertools import product

import pytest

from dynascore import oracles as o
from dynascore.generators import BaParams, generate_ba
from dynascore.graph import make_snapshot
from dynascore.score import score_sequence

GRID = [F(k, 20) for k in range(0, 21)]
ERGODIC = [(p, q) for p, q in product(GRID, GRID) if abs(p + q - 1) < 1]
# q = 1 < p + 1 absorbs into the empty graph: m* = 0 and the union is empty
NONABSORBING = [(p, q) for p, q in ERGODIC if q < 1]


# ------------------------------------------------------------------------ BA

def test_ba_v_score():
    th = o.BaTheory(3, 0, 1)
    assert o.ba_v_score(th, 0) == F(1, 4)
    assert o.ba_v_score(o.BaTheory(1, 0, 1), 0) == F(1, 2)
    values = [o.ba_v_score(th, t) for t in range(200)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < F(1, 200)


def test_ba_v_score_matches_one_simulated_step():
    seq = generate_ba(BaParams(1, 0, 1, steps=1))
    assert score_sequence(seq)[0].v_score == o.ba_v_score(o.BaTheory(1, 0, 1), 0)


def test_ba_e_score():
    assert o.ba_e_score(o.BaTheory(5, 4, 2), 0) == F(1, 2)
    assert o.ba_e_score(o.BaTheory(1, 0, 1), 1) == 1
    th = o.BaTheory(5, 4, 2)
    values = [o.ba_e_score(th, t) for t in range(300)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < F(1, 250)


def test_ba_e_score_indexes_the_arriving_step():
    # transition t -> t+1 of a simulated run scores ba_e_score(t + 1)
    th = o.BaTheory(5, 4, 2)
    series = score_sequence(generate_ba(BaParams(5, 4, 2, steps=5, seed=2)))
    assert series[0].e_score == F(2, 6) == o.ba_e_score(th, 1)
    assert series[0].e_score != o.ba_e_score(th, 0)


def test_ba_e_score_undefined_flagged():
    with pytest.warns(o.UndefinedScoreWarning):
        assert o.ba_e_score(o.BaTheory(1, 0, 1), 0) == 0


# ---------------------------------------------------------------- the chain

def test_as_fraction_uses_decimal_reading():
    assert o.as_fraction(0.6) == F(3, 5)
    assert o.as_fraction("0.05") == F(1, 20)


def test_stationary_distribution_solves_pi_p():
    for p, q in ERGODIC:
        pi = o.stationary_distribution(p, q)
        P = o.transition_matrix(p, q)
        assert sum(pi) == 1
        assert all(x >= 0 for x in pi)
        assert tuple(pi[0] * P[0][j] + pi[1] * P[1][j] for j in range(2)) == pi


def test_presence_first_orientation_is_the_only_solution():
    # ((1-p), (1-q)) / (2-p-q) in (present, absent) order fails pi = pi P unless p == q
    p, q = F(9, 10), F(3, 5)
    s = 2 - p - q
    swapped = ((1 - p) / s, (1 - q) / s)
    P = o.transition_matrix(p, q)
    assert swapped[0] * P[0][0] + swapped[1] * P[1][0] != swapped[0]
    assert o.stationary_distribution(p, q)[0] == F(4, 5)


def test_classify():
    assert o.classify(1, 1) == "static"
    assert o.classify(0, 0) == "blinking"
    assert o.classify(0, 1) == "ergodic"
    with pytest.raises(o.DegenerateChainError) as exc:
        o.fixed_point_density(0, 0)
    assert exc.value.regime == "blinking"
    with pytest.raises(o.DegenerateChainError):
        o.score_at_fixed_point(1, 1)
    assert o.emgg_theory(1, 1).degenerate


def test_density_step_examples():
    for m in (F(0), F(1, 3), F(1)):
        assert o.density_step(1, 1, m) == m
        assert o.density_step(0, 0, m) == 1 - m
    assert o.density_step(0.6, 0.3, 0.5) == F(13, 20)


def test_fixed_point_examples():
    assert o.fixed_point_density(0.3, 0.3) == F(1, 2)
    assert o.fixed_point_density(0.6, 0.3) == F(7, 11)
    assert o.fixed_point_density(0.95, 0.05) == F(19, 20)


def test_fixed_point_is_fixed_and_matches_presence():
    for p, q in ERGODIC:
        m = o.fixed_point_density(p, q)
        assert o.density_step(p, q, m) == m
        assert m == o.stationary_distribution(p, q)[0]


def test_contraction_and_convergence():
    for p, q in ERGODIC:
        lam = abs(p + q - 1)
        a, b = F(1, 7), F(5, 6)
        assert abs(o.density_step(p, q, a) - o.density_step(p, q, b)) == lam * abs(a - b)
        m = o.fixed_point_density(p, q)
        iterates = o.iterate_density(p, q, 0, 30)
        for k, x in enumerate(iterates):
            assert abs(x - m) == lam**k * abs(iterates[0] - m)
        assert abs(float(iterates[-1] - m)) <= float(lam) ** 30 + 1e-15


def test_expected_e_score_examples():
    for q in (F(0), F(1, 2), F(9, 10)):
        assert o.expected_e_score(1, q, o.fixed_point_density(1, q)) == 0
    for q in (F(0), F(3, 10), F(99, 100)):
        assert o.expected_e_score(0.5, q, o.fixed_point_density(0.5, q)) == F(2, 3)


def test_expected_e_score_closed_form_equivalence():
    for (p, q), m in product(ERGODIC[::7], GRID[1:]):
        assert o.expected_e_score(p, q, m) == 1 - p * m / (1 + q * (m - 1))


def test_expected_e_score_undefined_flagged():
    with pytest.warns(o.UndefinedScoreWarning):
        assert o.expected_e_score(0.5, 1, 0) == 0


def test_score_at_fixed_point():
    assert o.score_at_fixed_point(1, 0.5) == 0
    assert o.score_at_fixed_point(0, 0.5) == 1
    assert o.score_at_fixed_point(0.5, 0.2) == F(2, 3)
    for p, q in NONABSORBING:
        assert o.expected_e_score(p, q, o.fixed_point_density(p, q)) == o.score_at_fixed_point(p, q)


def test_absorbing_boundary():
    # q = 1: the graph empties, so the score at m* is 0/0; 2(1-p)/(2-p) is only the q -> 1 limit
    assert o.fixed_point_density(0.5, 1) == 0
    with pytest.warns(o.UndefinedScoreWarning):
        assert o.expected_e_score(0.5, 1, 0) == 0
    near = [o.expected_e_score(0.5, 1 - eps, o.fixed_point_density(0.5, 1 - eps)) for eps in (F(1, 10), F(1, 1000))]
    assert near == [F(2, 3), F(2, 3)]


def test_score_at_fixed_point_q_independent_and_decreasing():
    by_p = {}
    for p, q in ERGODIC:
        by_p.setdefault(p, set()).add(o.score_at_fixed_point(p, q))
    assert all(len(v) == 1 for v in by_p.values())
    values = [by_p[p].pop() for p in sorted(by_p)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[0] == 1 and values[-1] == 0


# ----------------------------------------------------------- the enumerator

def _multinomial_oracle(n, p, q):
    """Stationary E[|△|/|∪|] by counting slot categories instead of edge sets."""
    p, q = F(p), F(q)
    m = (1 - q) / (2 - p - q)
    cat = [m * p, m * (1 - p), (1 - m) * (1 - q), (1 - m) * q]  # 11, 10, 01, 00
    slots = n * (n - 1) // 2
    total = F(0)
    for a, b, c in product(range(slots + 1), repeat=3):
        d = slots - a - b - c
        if d < 0 or a + b + c == 0:
            continue
        ways = math.factorial(slots) // (
            math.factorial(a) * math.factorial(b) * math.factorial(c) * math.factorial(d)
        )
        prob = ways * cat[0] ** a * cat[1] ** b * cat[2] ** c * cat[3] ** d
        total += prob * F(b + c, a + b + c)
    return total


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("p,q", [(F(1, 5), F(4, 5)), (F(1, 2), F(1, 2)), (F(9, 10), F(3, 10))])
def test_enumerator_matches_multinomial_oracle(n, p, q):
    assert o.exact_small_n_expectation(n, p, q).stationary == _multinomial_oracle(n, p, q)


def test_enumerator_one_slot_closed_form():
    # one slot: the score is 1 exactly when the slot changes state
    for p, q in ERGODIC[::5]:
        expect = 2 * (1 - p) * (1 - q) / (2 - p - q)
        assert o.exact_small_n_expectation(2, p, q).stationary == expect


def test_enumerator_degenerate_examples():
    full = make_snapshot(0, range(2), [(0, 1)])
    frozen = o.exact_small_n_expectation(2, 1, 1, g0=full, steps=3)
    assert frozen.stationary is None
    assert frozen.per_step == (0, 0, 0)
    blink = o.exact_small_n_expectation(2, 0, 0, g0=full, steps=4)
    assert blink.per_step == (1, 1, 1, 1)
    tri = o.exact_small_n_expectation(3, 0, 0, g0=make_snapshot(0, range(3), [(0, 2)]), steps=3)
    assert tri.per_step == (1, 1, 1)


def test_enumerator_finite_n_gap():
    value = o.exact_small_n_expectation(3, 0.5, 0.5).stationary
    assert value == F(21, 32)
    assert value != o.expected_e_score(0.5, 0.5, 0.5) == F(2, 3)


def test_enumerator_per_step_approaches_stationary():
    res = o.exact_small_n_expectation(3, 0.3, 0.4, g0=make_snapshot(0, range(3), []), steps=25)
    errs = [abs(x - res.stationary) for x in res.per_step]
    assert errs[-1] < F(1, 10**6)
    assert errs[-1] < errs[0]


def test_enumerator_gap_shrinks_with_n():
    grid = [F(k, 10) for k in (1, 3, 5, 7, 9)]
    for p, q in product(grid, grid):
        target = o.score_at_fixed_point(p, q)
        gaps = [abs(o.exact_small_n_expectation(n, p, q).stationary - target) for n in (2, 3, 4)]
        assert gaps[0] > gaps[1] >= gaps[2]


def test_enumerator_refuses_large_n():
    with pytest.raises(ValueError):
        o.exact_small_n_expectation(5, 0.5, 0.5)
