import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import brentq

from censored_sizer import (
    Grid,
    ObservationWeights,
    SurvivalSample,
    build_kernel_row,
    convolve,
    gaussian_kernel,
    linear_bin,
    make_grid,
    observation_weights,
)


# --- grid ------------------------------------------------------------------

def test_make_grid_padding():
    g = make_grid((0.0, 10.0), 11)
    assert g.x_min == pytest.approx(-0.5)
    assert g.x_max == pytest.approx(10.5)
    assert g.bin_width == pytest.approx(1.1)


def test_make_grid_floor_inactive_and_active():
    g = make_grid((1.0, 2.0), 2, support_floor=0.0)
    assert (g.x_min, g.x_max) == pytest.approx((0.95, 2.05))
    g = make_grid((0.01, 1.0), 401, support_floor=0.0)
    assert g.x_min == 0.0


def test_make_grid_degenerate():
    with pytest.raises(ValueError, match="degenerate"):
        make_grid((3.0, 3.0), 11)
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 1)


def test_grid_points():
    g = Grid(-1.0, 1.0, 5)
    np.testing.assert_allclose(g.points, [-1, -0.5, 0, 0.5, 1])


# --- kernel ----------------------------------------------------------------

def test_gaussian_kernel_values():
    assert gaussian_kernel(1.0, 0.0) == (pytest.approx(0.3989422804014327, rel=1e-15), 0.0)
    assert gaussian_kernel(2.0, 0.0)[0] == pytest.approx(0.19947114020071635, rel=1e-15)
    phi1 = float(mpmath.npdf(1))
    k, kp = gaussian_kernel(1.0, 1.0)
    assert k == pytest.approx(phi1, rel=1e-14)
    assert kp == pytest.approx(-phi1, rel=1e-14)


@pytest.mark.parametrize("h, u", [(0.3, 0.1), (2.0, -3.5), (0.05, 0.12)])
def test_kernel_derivative_matches_mpmath(h, u):
    exact = mpmath.diff(lambda t: mpmath.npdf(t / h) / h, u)
    assert gaussian_kernel(h, u)[1] == pytest.approx(float(exact), rel=1e-12)


def test_kernel_rejects_nonpositive_bandwidth():
    with pytest.raises(ValueError):
        gaussian_kernel(0.0, 1.0)


# --- linear binning --------------------------------------------------------

def _bin_one(x, grid, w=1.0, delta=1):
    s = SurvivalSample([x, grid.x_max], [delta, 1])
    weights = ObservationWeights(np.array([w, 0.0]))
    c = linear_bin(s, weights, grid)
    # remove the anchor point sitting on the last grid point
    c0 = c.c0.copy()
    c0[-1] -= 1
    return c0, c.c0_events, c.cH


def test_point_on_grid_node():
    grid = Grid(1.0, 5.0, 5)
    c0, _, cH = _bin_one(3.0, grid)
    np.testing.assert_allclose(c0, [0, 0, 1, 0, 0])
    np.testing.assert_allclose(cH, [0, 0, 1, 0, 0])


def test_point_at_midpoint():
    grid = Grid(1.0, 5.0, 5)
    c0, _, _ = _bin_one(3.5, grid)
    np.testing.assert_allclose(c0, [0, 0, 0.5, 0.5, 0])


def test_proximity_weighting():
    grid = Grid(1.0, 5.0, 5)
    c0, _, _ = _bin_one(3.25, grid)
    # nearer node gets the larger share
    np.testing.assert_allclose(c0, [0, 0, 0.75, 0.25, 0])


def test_censored_density_counts():
    grid = Grid(1.0, 2.0, 3)
    s = SurvivalSample([1.0, 2.0], [0, 1])
    c = linear_bin(s, observation_weights(s, "censored-density"), grid)
    np.testing.assert_allclose(c.cH, [0, 0, 2])
    np.testing.assert_allclose(c.c0_events, [0, 0, 1])
    np.testing.assert_allclose(c.c0, [1, 0, 1])


def test_out_of_range_rejected():
    grid = Grid(1.0, 2.0, 3)
    s = SurvivalSample.uncensored([1.5, 2.5])
    with pytest.raises(ValueError, match="outside the grid"):
        linear_bin(s, ObservationWeights(np.ones(2)), grid)


@settings(max_examples=50, deadline=None)
@given(
    arrays(np.float64, st.integers(2, 60), elements=st.floats(0.01, 100.0)),
    st.integers(2, 300),
)
def test_binning_preserves_count_and_first_moment(times, g):
    if np.ptp(times) == 0:
        times = times + np.arange(times.size)
    s = SurvivalSample.uncensored(times)
    grid = make_grid((times.min(), times.max()), g)
    c = linear_bin(s, observation_weights(s, "density"), grid)
    assert c.c0.sum() == pytest.approx(s.n, rel=1e-12)
    assert c.c0 @ grid.points == pytest.approx(times.sum(), rel=1e-9)
    assert np.all(c.c0 >= 0)


def test_binned_counts_invariants(censored_sample):
    s = censored_sample
    grid = make_grid((s.times.min(), s.times.max()), 201, 0.0)
    c = linear_bin(s, observation_weights(s, "censored-hazard"), grid)
    assert c.c0.sum() == pytest.approx(s.n)
    assert c.c0_events.sum() == pytest.approx(s.n_events)
    assert np.all(c.c0_events[c.cH > 0] > 0)
    assert np.all(c.cH >= c.c0_events - 1e-12)


# --- kernel rows -----------------------------------------------------------

def test_kernel_row_half_support_oracle():
    u_star = brentq(lambda u: math.exp(-u * u / 2) - 1e-12, 1.0, 20.0)
    assert u_star == pytest.approx(7.4338, abs=1e-4)
    grid = Grid(0.0, 10.0, 1001)
    row = build_kernel_row(grid.bin_width, grid, 1e-12)
    assert row.half_support == math.ceil(u_star)


def test_kernel_row_structure():
    grid = Grid(0.0, 1.0, 101)
    h = 0.037
    row = build_kernel_row(h, grid)
    L = row.half_support
    assert row.k0 == 1 / (h * math.sqrt(2 * math.pi))
    assert row.k_prime[L] == 0.0
    np.testing.assert_array_equal(row.k, row.k[::-1])
    np.testing.assert_array_equal(row.k_prime, -row.k_prime[::-1])
    # first dropped lag is below the tail threshold
    assert gaussian_kernel(h, (L + 1) * grid.bin_width)[0] < 1e-12 * row.k0


def test_kernel_row_capped_at_grid():
    grid = Grid(0.0, 1.0, 11)
    row = build_kernel_row(50.0, grid)
    assert row.half_support == 10
    assert row.k.size == 21


# --- convolution -----------------------------------------------------------

def test_convolve_delta():
    grid = Grid(0.0, 4.0, 41)
    row = build_kernel_row(0.3, grid)
    counts = np.zeros(grid.g)
    m = 17
    counts[m] = 1.0
    out = convolve(counts, row)
    expect = gaussian_kernel(0.3, grid.points - grid.points[m])[0]
    np.testing.assert_allclose(out, expect, rtol=1e-12, atol=1e-300)
    d = convolve(counts, row, use_derivative=True)
    assert d[m] == 0.0
    assert d[m - 1] > 0 > d[m + 1]


def test_convolve_zero():
    grid = Grid(0.0, 1.0, 21)
    row = build_kernel_row(0.1, grid)
    assert np.all(convolve(np.zeros(21), row) == 0)


def test_convolve_linear_and_antisymmetric(rng):
    grid = Grid(-1.0, 1.0, 201)
    row = build_kernel_row(0.08, grid)
    a, b = rng.random(201), rng.random(201)
    np.testing.assert_allclose(convolve(a + b, row), convolve(a, row) + convolve(b, row), rtol=1e-12)
    sym = a + a[::-1]
    d = convolve(sym, row, use_derivative=True)
    np.testing.assert_allclose(d, -d[::-1], atol=1e-12 * np.abs(d).max())


def test_truncation_error_bound(rng):
    grid = Grid(0.0, 1.0, 301)
    h = 0.02
    eps = 1e-6
    counts = rng.integers(0, 3, grid.g).astype(float)
    n = counts.sum()
    trunc = convolve(counts, build_kernel_row(h, grid, eps))
    diffs = grid.points[:, None] - grid.points[None, :]
    full = gaussian_kernel(h, diffs)[0] @ counts
    k0 = 1 / (h * math.sqrt(2 * math.pi))
    assert np.max(np.abs(full - trunc)) <= n * eps * k0
