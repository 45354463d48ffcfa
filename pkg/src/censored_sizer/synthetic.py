"""Seeded synthetic lifetimes with optional independent random censoring.

Streams come from numpy's PCG64 bit generator (``numpy.random.PCG64(seed)``).
Every variate is produced by inverse-transform sampling from
``Generator.random()`` uniforms, in this order: all lifetime uniforms, then
(for the bathtub mixture) the component uniforms, then the censoring
uniforms. Any implementation with a PCG64 stream can reproduce the draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .survival import SurvivalSample

__all__ = ["Family", "SyntheticSpec", "generate", "lifetime_quantile"]

FAMILIES = ("exponential", "weibull", "normal", "bathtub")

# bathtub mixture: early failures (decreasing hazard) + wear-out (increasing hazard)
BATHTUB_EARLY_FRACTION = 0.3
BATHTUB_EARLY = (0.5, 0.5)  # Weibull (shape, scale)
BATHTUB_WEAR = (4.0, 2.0)


@dataclass(frozen=True)
class Family:
    """Lifetime distribution.

    ``name`` is one of ``exponential`` (uses ``rate``), ``weibull``
    (``shape``, ``scale``), ``normal`` (``mean``, ``sd``; truncated to the
    positive half-line) or ``bathtub`` (fixed Weibull mixture).
    """

    name: str = "exponential"
    rate: float = 1.0
    shape: float = 1.0
    scale: float = 1.0
    mean: float = 0.0
    sd: float = 1.0

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; choose from {FAMILIES}")
        for attr in ("rate", "shape", "scale", "sd"):
            if not getattr(self, attr) > 0:
                raise ValueError(f"{attr} must be positive")


@dataclass(frozen=True)
class SyntheticSpec:
    family: Family = Family()
    n: int = 200
    seed: int = 0
    censor_rate: float | None = None  # exponential censoring; None = uncensored

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.censor_rate is not None and not self.censor_rate > 0:
            raise ValueError("censor_rate must be positive")


def _weibull_q(u, shape, scale):
    return scale * (-np.log1p(-u)) ** (1.0 / shape)


def lifetime_quantile(family: Family, u, component=None):
    """Inverse CDF of the lifetime distribution at uniforms ``u``."""
    u = np.asarray(u, dtype=float)
    if family.name == "exponential":
        return -np.log1p(-u) / family.rate
    if family.name == "weibull":
        return _weibull_q(u, family.shape, family.scale)
    if family.name == "normal":
        lo = ndtr(-family.mean / family.sd)
        return family.mean + family.sd * ndtri(lo + u * (1.0 - lo))
    if component is None:
        raise ValueError("bathtub mixture needs component uniforms")
    early = np.asarray(component) < BATHTUB_EARLY_FRACTION
    return np.where(early, _weibull_q(u, *BATHTUB_EARLY), _weibull_q(u, *BATHTUB_WEAR))


def _uniforms(rng, n):
    u = rng.random(n)
    # keep inverse CDFs strictly positive
    return np.where(u == 0.0, math.ulp(0.5), u)


def generate(spec: SyntheticSpec) -> SurvivalSample:
    """Draw ``X_i = min(T_i, C_i)`` and ``delta_i = 1(T_i <= C_i)``."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    u = _uniforms(rng, spec.n)
    comp = rng.random(spec.n) if spec.family.name == "bathtub" else None
    t = lifetime_quantile(spec.family, u, comp)
    if spec.censor_rate is None:
        return SurvivalSample.uncensored(t)
    c = -np.log1p(-_uniforms(rng, spec.n)) / spec.censor_rate
    return SurvivalSample(np.minimum(t, c), (t <= c).astype(np.int8))
