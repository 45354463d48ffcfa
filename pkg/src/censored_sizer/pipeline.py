"""One-call SiZer analysis of a survival sample."""

from __future__ import annotations

from typing import NamedTuple

from .binning import DEFAULT_TAIL_EPS, Grid, make_grid
from .inference import InferenceConfig, SizerMap, build_map
from .scale_space import BandwidthGrid, ScaleSpaceFamily, build_family, default_bandwidths
from .survival import Convention, EstimatorMode, SurvivalSample

__all__ = ["SizerResult", "run_sizer"]

_UNSET = object()


class SizerResult(NamedTuple):
    grid: Grid
    bandwidths: BandwidthGrid
    family: ScaleSpaceFamily
    map: SizerMap


def run_sizer(
    sample: SurvivalSample,
    mode: EstimatorMode | str = EstimatorMode.CENSORED_DENSITY,
    grid_points: int = 401,
    bandwidth_count: int = 51,
    config: InferenceConfig = InferenceConfig(),
    convention: Convention | str = Convention.LEFT_LIMIT,
    support_floor=_UNSET,
    grid: Grid | None = None,
    bandwidths: BandwidthGrid | None = None,
    tail_eps: float = DEFAULT_TAIL_EPS,
) -> SizerResult:
    """Build the scale-space family and its SiZer map.

    Unless ``support_floor`` is passed explicitly, hazard modes clamp the
    grid at 0 and density modes leave it unclamped.
    """
    mode = EstimatorMode(mode)
    if support_floor is _UNSET:
        support_floor = 0.0 if mode.is_hazard else None
    if grid is None:
        grid = make_grid((sample.times.min(), sample.times.max()), grid_points, support_floor)
    if bandwidths is None:
        bandwidths = default_bandwidths(grid, bandwidth_count)
    family = build_family(sample, mode, grid, bandwidths, convention, tail_eps)
    return SizerResult(grid, bandwidths, family, build_map(family, sample.n_events, config))
