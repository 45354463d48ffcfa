"""Equally spaced grids, Gaussian kernel tables, linear binning and binned convolution."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .survival import ObservationWeights, SurvivalSample

__all__ = [
    "BinnedCounts",
    "Grid",
    "KernelRow",
    "build_kernel_row",
    "convolve",
    "gaussian_kernel",
    "linear_bin",
    "make_grid",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
DEFAULT_TAIL_EPS = 1e-12


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    g: int

    def __post_init__(self):
        if self.g < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.g}")
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise ValueError("grid limits must be finite")
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min ({self.x_min}) must be below x_max ({self.x_max})")

    @property
    def bin_width(self) -> float:
        return (self.x_max - self.x_min) / (self.g - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.g)


def make_grid(sample_range, g: int = 401, support_floor: float | None = None) -> Grid:
    """Grid over the data range padded by 5% on each side.

    ``support_floor`` clamps the lower end (0 for lifetimes whose density
    lives on the positive half-line).
    """
    lo, hi = (float(v) for v in sample_range)
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("sample range must be finite")
    if not lo < hi:
        raise ValueError(f"degenerate sample range ({lo}, {hi})")
    pad = 0.05 * (hi - lo)
    x_min, x_max = lo - pad, hi + pad
    if support_floor is not None:
        x_min = max(x_min, float(support_floor))
    return Grid(x_min, x_max, int(g))


def gaussian_kernel(h: float, u):
    """``(K_h(u), K'_h(u))`` for the Gaussian kernel with bandwidth ``h``."""
    if h <= 0:
        raise ValueError(f"bandwidth must be positive, got {h}")
    u = np.asarray(u, dtype=float)
    k = np.exp(-0.5 * (u / h) ** 2) / (h * _SQRT_2PI)
    kp = -u / (h * h) * k
    if k.ndim == 0:
        return float(k), float(kp)
    return k, kp


@dataclass(frozen=True)
class BinnedCounts:
    """Linear-binned counts on a grid.

    c0
        every observation with unit mass
    c0_events
        uncensored observations only (unit mass)
    cH
        uncensored observations with mass ``w_i = delta_i / D(X_i)``
    """

    c0: np.ndarray
    c0_events: np.ndarray
    cH: np.ndarray


def _bin_positions(x: np.ndarray, grid: Grid):
    pos = (x - grid.x_min) / grid.bin_width
    # tolerate rounding right at the ends
    eps = 1e-9
    if np.any(pos < -eps) or np.any(pos > grid.g - 1 + eps):
        bad = x[(pos < -eps) | (pos > grid.g - 1 + eps)]
        raise ValueError(
            f"{bad.size} observations fall outside the grid "
            f"[{grid.x_min}, {grid.x_max}], e.g. {bad[0]}"
        )
    pos = np.clip(pos, 0.0, grid.g - 1)
    left = np.minimum(np.floor(pos).astype(np.intp), grid.g - 2)
    frac = pos - left
    return left, frac


def _accumulate(left, frac, mass, g):
    out = np.bincount(left, weights=mass * (1.0 - frac), minlength=g)
    out += np.bincount(left + 1, weights=mass * frac, minlength=g)
    return out


def linear_bin(sample: SurvivalSample, weights: ObservationWeights, grid: Grid) -> BinnedCounts:
    """Share each observation between its two neighbouring grid points.

    A point at fractional position ``f`` between ``x_j`` and ``x_{j+1}``
    puts ``1 - f`` of its mass on ``x_j`` and ``f`` on ``x_{j+1}``.
    """
    w = np.asarray(weights.weights, dtype=float)
    if w.shape != sample.times.shape:
        raise ValueError("weights do not match the sample")
    left, frac = _bin_positions(sample.times, grid)
    delta = sample.events.astype(float)
    g = grid.g
    return BinnedCounts(
        c0=_accumulate(left, frac, np.ones_like(delta), g),
        c0_events=_accumulate(left, frac, delta, g),
        cH=_accumulate(left, frac, w, g),
    )


@dataclass(frozen=True)
class KernelRow:
    """Kernel and kernel-derivative values at lags ``-L..L`` grid steps.

    ``k[L + l] = K_h(l * bin_width)``; ``k_prime`` likewise for ``K'_h``.
    """

    h: float
    k: np.ndarray
    k_prime: np.ndarray
    half_support: int

    @property
    def k0(self) -> float:
        return float(self.k[self.half_support])

    def at_lag(self, lag: int):
        return self.k[self.half_support + lag], self.k_prime[self.half_support + lag]


def build_kernel_row(h: float, grid: Grid, tail_eps: float = DEFAULT_TAIL_EPS) -> KernelRow:
    if h <= 0:
        raise ValueError(f"bandwidth must be positive, got {h}")
    if not 0 < tail_eps < 1:
        raise ValueError("tail_eps must lie in (0, 1)")
    # exp(-u^2/2) < tail_eps beyond u = sqrt(2 log(1/tail_eps))
    cutoff = math.sqrt(2.0 * math.log(1.0 / tail_eps)) * h / grid.bin_width
    half = min(int(math.ceil(cutoff)), grid.g - 1)
    lags = np.arange(-half, half + 1) * grid.bin_width
    k, kp = gaussian_kernel(h, lags)
    k[half] = 1.0 / (h * _SQRT_2PI)
    kp[half] = 0.0
    k.setflags(write=False)
    kp.setflags(write=False)
    return KernelRow(float(h), k, kp, half)


def convolve(counts, row: KernelRow, use_derivative: bool = False) -> np.ndarray:
    """``out_j = sum_j' kappa_{j - j'} counts_j'`` by direct truncated convolution.

    Lags running off either end of the grid are discarded.
    """
    kern = row.k_prime if use_derivative else row.k
    return convolve_lags(counts, kern, row.half_support)


def convolve_lags(counts, kern, half_support: int) -> np.ndarray:
    """Convolve with a lag table of length ``2 * half_support + 1``, trimmed to ``len(counts)``."""
    counts = np.asarray(counts, dtype=float)
    full = np.convolve(counts, kern)
    return full[half_support:half_support + counts.size]
