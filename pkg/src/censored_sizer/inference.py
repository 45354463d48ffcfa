"""Significance classification of a scale-space family into a SiZer map."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .scale_space import ScaleSpaceFamily

__all__ = [
    "BlocksRule",
    "InferenceConfig",
    "Pixel",
    "SizerMap",
    "build_map",
    "classify",
    "normal_quantile",
    "row_quantile",
]


class Pixel(enum.IntEnum):
    SPARSE = 0
    FLAT = 1
    INCREASE = 2
    DECREASE = 3


class BlocksRule(str, enum.Enum):
    INDEPENDENT_BLOCKS = "independent-blocks"
    POINTWISE = "pointwise"


@dataclass(frozen=True)
class InferenceConfig:
    alpha: float = 0.05
    ess_threshold: float = 5.0
    blocks_rule: BlocksRule = BlocksRule.INDEPENDENT_BLOCKS

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.ess_threshold > 0:
            raise ValueError(f"ess_threshold must be positive, got {self.ess_threshold}")
        object.__setattr__(self, "blocks_rule", BlocksRule(self.blocks_rule))


@dataclass(frozen=True)
class SizerMap:
    pixels: np.ndarray
    quantile: np.ndarray
    config: InferenceConfig

    def counts(self) -> dict:
        return {p.name.lower(): int(np.sum(self.pixels == p)) for p in Pixel}


def normal_quantile(p: float) -> float:
    """Standard normal quantile, ``Phi^{-1}(p)``."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return float(ndtri(p))


def row_quantile(ess_row, n_events: int, config: InferenceConfig = InferenceConfig()) -> float:
    """Gaussian quantile for one bandwidth row.

    Under the independent-blocks rule the row is treated as
    ``m = n_events / mean(ESS)`` independent windows (mean over cells that
    pass the sparsity threshold) and the level is split as
    ``(1 - alpha) ** (1 / m)``.
    """
    if config.blocks_rule is BlocksRule.POINTWISE:
        return normal_quantile(1.0 - config.alpha / 2.0)
    ess_row = np.asarray(ess_row, dtype=float)
    dense = ess_row[ess_row >= config.ess_threshold]
    m = 1.0
    if dense.size:
        m = max(1.0, n_events / float(dense.mean()))
    level = (1.0 - config.alpha) ** (1.0 / m)
    return normal_quantile((1.0 + level) / 2.0)


def classify(derivative, sd, ess, q: float, config: InferenceConfig = InferenceConfig()):
    """Pixel code(s) from the confidence interval ``derivative +/- q * sd``.

    Works elementwise on arrays; scalars give a :class:`Pixel`.
    """
    derivative = np.asarray(derivative, dtype=float)
    sd = np.asarray(sd, dtype=float)
    ess = np.asarray(ess, dtype=float)
    half = np.asarray(q, dtype=float) * sd
    out = np.full(np.broadcast(derivative, sd, ess).shape, Pixel.FLAT, dtype=np.int8)
    out[derivative - half > 0] = Pixel.INCREASE
    out[derivative + half < 0] = Pixel.DECREASE
    out[ess < config.ess_threshold] = Pixel.SPARSE
    if out.ndim == 0:
        return Pixel(int(out))
    return out


def build_map(family: ScaleSpaceFamily, n_events: int, config: InferenceConfig = InferenceConfig()) -> SizerMap:
    q = np.array([row_quantile(row, n_events, config) for row in family.ess])
    pixels = classify(family.derivative, family.sd, family.ess, q[:, None], config)
    return SizerMap(pixels, q, config)

