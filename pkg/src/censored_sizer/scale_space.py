"""Families of smooths indexed by bandwidth.

For each bandwidth ``h`` and grid point ``x_j`` the family holds the
estimate, its derivative, the standard deviation of the derivative and the
effective sample size. ``build_family`` evaluates them from linear-binned
counts; ``direct_estimate`` computes the same four numbers by exact sums
over the observations and serves as the reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binning import (
    DEFAULT_TAIL_EPS,
    BinnedCounts,
    Grid,
    KernelRow,
    build_kernel_row,
    convolve,
    convolve_lags,
    gaussian_kernel,
    linear_bin,
)
from .survival import (
    Convention,
    EstimatorMode,
    SurvivalSample,
    observation_weights,
)

__all__ = [
    "BandwidthGrid",
    "ScaleSpaceFamily",
    "build_family",
    "default_bandwidths",
    "direct_estimate",
    "direct_family",
    "family_row",
]


@dataclass(frozen=True)
class BandwidthGrid:
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 1:
            raise ValueError("empty bandwidth grid")
        if np.any(v <= 0) or not np.all(np.isfinite(v)):
            raise ValueError("bandwidths must be positive and finite")
        if np.any(np.diff(v) <= 0):
            raise ValueError("bandwidths must be strictly increasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def count(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.count

    def __iter__(self):
        return iter(self.values)


def default_bandwidths(grid: Grid, count: int = 51) -> BandwidthGrid:
    """Log-spaced from two bin widths up to the full grid width."""
    if count < 2:
        raise ValueError(f"need at least 2 bandwidths, got {count}")
    h_min = 2.0 * grid.bin_width
    h_max = grid.x_max - grid.x_min
    return BandwidthGrid(np.geomspace(h_min, h_max, count))


@dataclass(frozen=True)
class ScaleSpaceFamily:
    """Matrices of shape ``(n_bandwidths, g)``."""

    estimate: np.ndarray
    derivative: np.ndarray
    sd: np.ndarray
    ess: np.ndarray

    @property
    def shape(self):
        return self.estimate.shape


def family_row(counts: BinnedCounts, row: KernelRow, n: int):
    """Estimate, derivative, sd and ESS along the grid for one bandwidth.

    The second moment of the reweighted kernel terms needs ``w_i**2``, which
    the binned ``cH`` does not carry; it is recovered bin by bin as
    ``cH * (cH / c0_events)``.
    """
    cH = counts.cH
    ev = counts.c0_events
    ratio = np.divide(cH, ev, out=np.zeros_like(cH), where=ev > 0)
    second = cH * ratio

    estimate = convolve(cH, row) / n
    derivative = convolve(cH, row, use_derivative=True) / n

    mean_sq = convolve_lags(second, row.k_prime ** 2, row.half_support) / n
    radicand = mean_sq - derivative ** 2
    sd = np.sqrt(np.clip(radicand, 0.0, None) / n)

    ess = convolve(ev, row) / row.k0
    return estimate, derivative, sd, ess


def build_family(
    sample: SurvivalSample,
    mode: EstimatorMode | str,
    grid: Grid,
    bandwidths: BandwidthGrid,
    convention: Convention | str = Convention.LEFT_LIMIT,
    tail_eps: float = DEFAULT_TAIL_EPS,
) -> ScaleSpaceFamily:
    weights = observation_weights(sample, mode, convention)
    counts = linear_bin(sample, weights, grid)
    shape = (bandwidths.count, grid.g)
    est, der, sd, ess = (np.empty(shape) for _ in range(4))
    for k, h in enumerate(bandwidths.values):
        row = build_kernel_row(h, grid, tail_eps)
        est[k], der[k], sd[k], ess[k] = family_row(counts, row, sample.n)
    return ScaleSpaceFamily(est, der, sd, ess)


def direct_estimate(
    sample: SurvivalSample,
    mode: EstimatorMode | str,
    x: float,
    h: float,
    convention: Convention | str = Convention.LEFT_LIMIT,
    weights=None,
):
    """Unbinned ``(estimate, derivative, sd, ess)`` at a single point.

    ``sd`` is ``sqrt(s2 / n)`` with ``s2`` the divide-by-n variance of the
    n values ``w_i K'_h(x - X_i)``; censored observations enter as zeros.
    ``weights`` overrides the mode's observation weights (in input order).
    """
    if weights is None:
        weights = observation_weights(sample, mode, convention).weights
    w = np.asarray(weights, dtype=float)
    n = sample.n
    k, kp = gaussian_kernel(h, x - sample.times)
    terms = w * kp
    estimate = float(np.sum(w * k) / n)
    derivative = float(np.sum(terms) / n)
    s2 = float(np.mean((terms - derivative) ** 2))
    sd = float(np.sqrt(s2 / n))
    k0 = gaussian_kernel(h, 0.0)[0]
    ess = float(np.sum(sample.events * k) / k0)
    return estimate, derivative, sd, ess


def direct_family(
    sample: SurvivalSample,
    mode: EstimatorMode | str,
    xs,
    bandwidths: BandwidthGrid,
    convention: Convention | str = Convention.LEFT_LIMIT,
) -> ScaleSpaceFamily:
    """Exact (unbinned) family at arbitrary points ``xs``; O(n * len(xs)) per bandwidth."""
    w = observation_weights(sample, mode, convention).weights
    xs = np.asarray(xs, dtype=float)
    n = sample.n
    diff = xs[:, None] - sample.times[None, :]
    delta = sample.events.astype(float)
    shape = (bandwidths.count, xs.size)
    est, der, sd, ess = (np.empty(shape) for _ in range(4))
    for k, h in enumerate(bandwidths.values):
        kern, kp = gaussian_kernel(h, diff)
        terms = kp * w
        est[k] = kern @ w / n
        der[k] = terms.sum(axis=1) / n
        s2 = np.mean((terms - der[k][:, None]) ** 2, axis=1)
        sd[k] = np.sqrt(s2 / n)
        ess[k] = kern @ delta / gaussian_kernel(h, 0.0)[0]
    return ScaleSpaceFamily(est, der, sd, ess)
