"""Weight generation, neighborhoods, per-iteration scaling and the
Tchebycheff scalarization."""

import itertools
import math

import numpy as np
import pytest

from moeadra.decomposition import (
    guarded_weights,
    neighborhoods,
    scale_objectives,
    sld_weights,
    tchebycheff,
)


def test_sld_two_objectives_h4():
    ws = sld_weights(2, 4)
    expected = np.array([
        [0.0, 1.0], [0.25, 0.75], [0.5, 0.5], [0.75, 0.25], [1.0, 0.0],
    ])
    assert np.array_equal(ws.weights, expected)
    assert ws.h == 4


def test_sld_three_objectives_h2():
    ws = sld_weights(3, 2)
    expected = {
        (0.0, 0.0, 1.0), (0.0, 0.5, 0.5), (0.0, 1.0, 0.0),
        (0.5, 0.0, 0.5), (0.5, 0.5, 0.0), (1.0, 0.0, 0.0),
    }
    assert {tuple(w) for w in ws.weights} == expected
    assert len(ws) == 6


def test_sld_three_objectives_h25_has_351_vectors():
    assert len(sld_weights(3, 25)) == 351


def test_sld_two_objectives_h349_has_350_vectors():
    ws = sld_weights(2, 349)
    assert len(ws) == 350


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("h", [1, 2, 3, 6])
def test_sld_matches_exhaustive_lattice(m, h):
    ws = sld_weights(m, h)
    lattice = np.array(sorted(
        tuple(c / h for c in combo)
        for combo in itertools.product(range(h + 1), repeat=m)
        if sum(combo) == h
    ))
    produced = np.array(sorted(tuple(w) for w in ws.weights))
    assert produced.shape == lattice.shape
    assert np.allclose(produced, lattice, atol=1e-12)
    assert len(ws) == math.comb(h + m - 1, m - 1)


def test_sld_rows_are_simplex_points():
    ws = sld_weights(3, 12)
    assert np.all(ws.weights >= 0.0)
    assert np.allclose(ws.weights.sum(axis=1), 1.0)
    assert len(np.unique(ws.weights, axis=0)) == len(ws)


def test_sld_rejects_bad_arguments():
    with pytest.raises(ValueError):
        sld_weights(1, 5)
    with pytest.raises(ValueError):
        sld_weights(2, 0)


def test_neighborhood_of_extreme_weight():
    nb = neighborhoods(sld_weights(2, 4), T=2)
    assert nb.indices.shape == (5, 2)
    assert list(nb.indices[0]) == [0, 1]
    assert list(nb.indices[4]) == [4, 3]


def test_neighborhood_tie_breaks_to_lower_index():
    # the middle weight is equidistant from both sides
    nb = neighborhoods(sld_weights(2, 4), T=3)
    assert list(nb.indices[2]) == [2, 1, 3]


def test_neighborhood_contains_self_first():
    nb = neighborhoods(sld_weights(3, 7), T=10)
    assert np.array_equal(nb.indices[:, 0], np.arange(len(nb.indices)))


def test_neighborhood_full_population():
    ws = sld_weights(2, 9)
    nb = neighborhoods(ws, T=10)
    for row in nb.indices:
        assert sorted(row) == list(range(10))


def test_neighborhood_size_cannot_exceed_population():
    with pytest.raises(ValueError):
        neighborhoods(sld_weights(2, 4), T=6)


def test_neighborhood_matches_brute_force_distances():
    rng = np.random.default_rng(11)
    ws = sld_weights(3, 8)
    nb = neighborhoods(ws, T=7)
    w = ws.weights
    for i in rng.choice(len(w), size=12, replace=False):
        d = np.linalg.norm(w - w[i], axis=1)
        # brute force with the same tie rule: distance, then index
        expected = sorted(range(len(w)), key=lambda j: (d[j], j))[:7]
        assert list(nb.indices[i]) == expected


def test_scale_objectives_single_column():
    frame, scaled = scale_objectives(np.array([[2.0], [4.0], [6.0]]))
    assert np.array_equal(scaled.ravel(), [0.0, 0.5, 1.0])
    assert frame.ideal[0] == 2.0 and frame.span[0] == 4.0


def test_scale_objectives_degenerate_column_maps_to_zero():
    _, scaled = scale_objectives(np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]]))
    assert np.array_equal(scaled[:, 0], [0.0, 0.0, 0.0])
    assert np.array_equal(scaled[:, 1], [0.0, 0.5, 1.0])


def test_scale_objectives_is_idempotent_on_scaled_data():
    rng = np.random.default_rng(3)
    raw = rng.random((40, 2)) * [10.0, 0.5] + [3.0, -2.0]
    _, scaled = scale_objectives(raw)
    _, again = scale_objectives(scaled)
    assert np.allclose(scaled, again)
    assert scaled.min(axis=0) == pytest.approx([0.0, 0.0])
    assert scaled.max(axis=0) == pytest.approx([1.0, 1.0])


def test_scale_frame_applies_to_new_points():
    frame, _ = scale_objectives(np.array([[0.0, 10.0], [2.0, 20.0]]))
    out = frame.apply(np.array([[1.0, 15.0], [4.0, 5.0]]))
    assert np.allclose(out, [[0.5, 0.5], [2.0, -0.5]])


def test_scale_objectives_rejects_empty():
    with pytest.raises(ValueError):
        scale_objectives(np.empty((0, 2)))


def test_tchebycheff_examples():
    assert tchebycheff(np.array([0.5, 0.5]), np.array([0.2, 0.4])) == pytest.approx(0.2)
    assert tchebycheff(np.array([1.0, 0.0]), np.array([0.7, 0.9])) == pytest.approx(0.7)
    assert tchebycheff(np.array([0.0, 1.0]), np.array([0.7, 0.9])) == pytest.approx(0.9)


def test_tchebycheff_explicit_reference_point():
    val = tchebycheff(np.array([0.6, 0.3]), np.array([1.0, 1.0]), z=np.array([0.1, 0.1]))
    assert val == pytest.approx(0.5)


def test_tchebycheff_zero_at_reference():
    assert tchebycheff(np.zeros(3), np.array([0.2, 0.3, 0.5])) == 0.0


def test_tchebycheff_monotone_in_each_coordinate():
    rng = np.random.default_rng(7)
    lam = np.array([0.3, 0.7])
    for _ in range(50):
        f = rng.random(2)
        base = tchebycheff(f, lam)
        for j in range(2):
            worse = f.copy()
            worse[j] += rng.random()
            assert tchebycheff(worse, lam) >= base - 1e-15


def test_guarded_weights_removes_zeros():
    w = guarded_weights(np.array([[0.0, 1.0], [0.5, 0.5]]))
    assert np.all(w > 0.0)
    assert np.allclose(w.sum(axis=1), 1.0)
    assert w[0, 0] == pytest.approx(1e-6, rel=1e-3)
    assert np.allclose(w[1], [0.5, 0.5])
