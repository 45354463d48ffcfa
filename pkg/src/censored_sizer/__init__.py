"""SiZer maps for density and hazard estimation from possibly censored data."""

from .binning import (
    BinnedCounts,
    Grid,
    KernelRow,
    build_kernel_row,
    convolve,
    gaussian_kernel,
    linear_bin,
    make_grid,
)
from .inference import (
    BlocksRule,
    InferenceConfig,
    Pixel,
    SizerMap,
    build_map,
    classify,
    normal_quantile,
    row_quantile,
)
from .pipeline import SizerResult, run_sizer
from .scale_space import (
    BandwidthGrid,
    ScaleSpaceFamily,
    build_family,
    default_bandwidths,
    direct_estimate,
    direct_family,
    family_row,
)
from .survival import (
    Convention,
    EstimatorMode,
    ObservationWeights,
    StepSurvival,
    SurvivalSample,
    Target,
    empirical_survival,
    km_survival,
    observation_weights,
)
from .synthetic import Family, SyntheticSpec, generate

__version__ = "0.1.0"
