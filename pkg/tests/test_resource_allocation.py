"""Priority computation and stochastic subproblem selection for the
full, random partial update and relative improvement strategies."""

import numpy as np
import pytest

from moeadra.resource_allocation import (
    STRATEGIES,
    ImprovementHistory,
    PriorityState,
    priorities_ps,
    priorities_ri,
    select_subproblems,
)


def test_strategy_names():
    assert STRATEGIES == ("full", "ps", "ri")


def test_ps_priorities_are_ones_during_warmup():
    for t in range(20):
        assert np.array_equal(priorities_ps(t, 20, 0.1, 8), np.ones(8))


def test_ps_priorities_constant_after_warmup():
    assert np.array_equal(priorities_ps(20, 20, 0.1, 5), np.full(5, 0.1))
    assert np.array_equal(priorities_ps(500, 20, 0.7, 5), np.full(5, 0.7))


def test_ps_one_is_always_full():
    assert np.array_equal(priorities_ps(100, 20, 1.0, 4), np.ones(4))


def test_ps_validates_probability():
    for bad in (0.0, -0.1, 1.2):
        with pytest.raises(ValueError):
            priorities_ps(30, 20, bad, 4)


def test_ri_priority_is_relative_decay():
    hist = ImprovementHistory(n=3, delta_t=2)
    hist.push(np.array([1.0, 2.0, 4.0]))
    hist.push(np.array([0.9, 2.0, 4.0]))
    hist.push(np.array([0.5, 2.0, 8.0]))
    u = priorities_ri(hist, t=2, delta_t=2)
    # (old - new) / old against the value two pushes back, clamped at 0
    assert u == pytest.approx([0.5, 0.0, 0.0])


def test_ri_priorities_are_ones_until_history_reaches_back():
    hist = ImprovementHistory(n=2, delta_t=3)
    for _ in range(3):
        hist.push(np.array([5.0, 5.0]))
        assert np.array_equal(priorities_ri(hist, t=10, delta_t=3), np.ones(2))
    hist.push(np.array([1.0, 5.0]))
    assert priorities_ri(hist, t=10, delta_t=3) == pytest.approx([0.8, 0.0])


def test_ri_priorities_are_ones_during_warmup_regardless_of_history():
    hist = ImprovementHistory(n=2, delta_t=1)
    hist.push(np.array([4.0, 4.0]))
    hist.push(np.array([1.0, 1.0]))
    assert np.array_equal(priorities_ri(hist, t=0, delta_t=1), np.ones(2))


def test_ri_priority_is_scale_invariant():
    # doubling every scalarized value leaves the ratio bit-for-bit identical
    a = ImprovementHistory(n=2, delta_t=1)
    b = ImprovementHistory(n=2, delta_t=1)
    vals = [np.array([0.7, 0.31]), np.array([0.55, 0.29])]
    for v in vals:
        a.push(v)
        b.push(2.0 * v)
    ua = priorities_ri(a, t=5, delta_t=1)
    ub = priorities_ri(b, t=5, delta_t=1)
    assert np.array_equal(ua, ub)


def test_ri_priority_clamped_to_unit_interval():
    hist = ImprovementHistory(n=2, delta_t=1)
    hist.push(np.array([1.0, -1.0]))
    hist.push(np.array([-5.0, -2.0]))
    u = priorities_ri(hist, t=3, delta_t=1)
    assert np.all(u >= 0.0) and np.all(u <= 1.0)
    assert u[0] == 1.0  # improvement larger than the old value saturates


def test_history_ring_buffer_lag():
    hist = ImprovementHistory(n=1, delta_t=2)
    for k in range(7):
        hist.push(np.array([float(k)]))
    assert hist.latest()[0] == 6.0
    assert hist.lagged()[0] == 4.0


def test_history_lag_unavailable_early():
    hist = ImprovementHistory(n=1, delta_t=2)
    hist.push(np.array([1.0]))
    with pytest.raises(ValueError):
        hist.lagged()


def test_history_rejects_wrong_length():
    hist = ImprovementHistory(n=3, delta_t=1)
    with pytest.raises(ValueError):
        hist.push(np.zeros(2))


def test_select_all_when_priorities_are_one():
    rng = np.random.default_rng(0)
    for strategy in STRATEGIES:
        sel = select_subproblems(np.ones(50), strategy, rng)
        assert np.array_equal(sel, np.arange(50))


def test_select_mean_matches_binomial_rate():
    # 1000 post-warm-up generations at n=350, ps=0.1: the mean selected
    # count is a binomial mean-of-means, so it must land within three
    # standard errors of 35
    rng = np.random.default_rng(42)
    state = PriorityState(strategy="ps", n=350, delta_t=20, ps=0.1)
    counts = []
    for t in range(1020):
        u = state.update(t, np.empty(0))
        counts.append(len(select_subproblems(u, "ps", rng)))
    warm, rest = counts[:20], counts[20:]
    assert warm == [350] * 20
    se = np.sqrt(350 * 0.1 * 0.9 / len(rest))
    assert abs(np.mean(rest) - 35.0) <= 3.0 * se


def test_select_ps_one_selects_everything_every_time():
    rng = np.random.default_rng(9)
    state = PriorityState(strategy="ps", n=40, delta_t=5, ps=1.0)
    for t in range(50):
        u = state.update(t, np.empty(0))
        assert len(select_subproblems(u, "ps", rng)) == 40


def test_select_ri_always_keeps_the_best_improver():
    rng = np.random.default_rng(4)
    u = np.array([0.5, 0.0, 0.2])
    for _ in range(200):
        sel = select_subproblems(u, "ri", rng)
        assert 0 in sel


def test_select_ri_zero_priorities_select_everything():
    # all-zero improvement normalizes to all-ones through the epsilon floor
    rng = np.random.default_rng(5)
    sel = select_subproblems(np.zeros(6), "ri", rng)
    assert np.array_equal(sel, np.arange(6))


def test_select_draws_one_uniform_per_subproblem_regardless_of_strategy():
    # full and ps consume identical random streams, which is what makes a
    # ps=1.0 run reproduce a full run bit for bit
    a = select_subproblems(np.full(30, 0.3), "ps", np.random.default_rng(7))
    b = np.flatnonzero(np.random.default_rng(7).random(30) < 0.3)
    assert np.array_equal(a, b)
    c = select_subproblems(np.ones(30), "full", np.random.default_rng(7))
    assert np.array_equal(c, np.arange(30))


def test_select_rejects_unknown_strategy():
    with pytest.raises(ValueError):
        select_subproblems(np.ones(3), "greedy", np.random.default_rng(0))


def test_priority_state_validation():
    with pytest.raises(ValueError):
        PriorityState(strategy="nope", n=4, delta_t=20)
    with pytest.raises(ValueError):
        PriorityState(strategy="ps", n=4, delta_t=20, ps=0.0)


def test_priority_state_full_stays_at_ones_after_warmup():
    state = PriorityState(strategy="full", n=6, delta_t=2)
    for t in range(10):
        assert np.array_equal(state.update(t, np.empty(0)), np.ones(6))


def test_priority_state_ri_tracks_scalarized_decay():
    state = PriorityState(strategy="ri", n=2, delta_t=1)
    state.update(0, np.array([2.0, 1.0]))
    u = state.update(1, np.array([1.0, 1.0]))
    assert u == pytest.approx([0.5, 0.0])
