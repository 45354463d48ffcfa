"""Observed survival data, product-limit estimation and per-observation weights.

Every kernel estimator in this package has the generic form

    n^-1 * sum_i  w_i * K_h(x - X_i),      w_i = delta_i / D(X_i),

where the denominator ``D`` is a survival function selected by the
estimation mode:

    =================  ====================================
    mode               D
    =================  ====================================
    density            1
    hazard             1 - F_n        (empirical)
    censored-density   Gbar_n         (product limit, censoring)
    censored-hazard    Fbar_n * Gbar_n
    =================  ====================================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Convention",
    "EstimatorMode",
    "ObservationWeights",
    "StepSurvival",
    "SurvivalSample",
    "Target",
    "empirical_survival",
    "km_survival",
    "observation_weights",
    "survival_denominator",
]


class EstimatorMode(str, enum.Enum):
    DENSITY = "density"
    HAZARD = "hazard"
    CENSORED_DENSITY = "censored-density"
    CENSORED_HAZARD = "censored-hazard"

    @property
    def requires_uncensored(self) -> bool:
        return self in (EstimatorMode.DENSITY, EstimatorMode.HAZARD)

    @property
    def is_hazard(self) -> bool:
        return self in (EstimatorMode.HAZARD, EstimatorMode.CENSORED_HAZARD)


class Convention(str, enum.Enum):
    """Where the denominator survival function is evaluated.

    ``LEFT_LIMIT`` uses ``D(X_i-)``, which is never zero at an observed
    point. ``PAPER_EXACT`` uses ``D(X_i)`` and drops terms whose
    denominator vanishes (the largest uncensored observation for hazards).
    """

    LEFT_LIMIT = "left-limit"
    PAPER_EXACT = "paper-exact"


class Target(str, enum.Enum):
    EVENT = "event"
    CENSORING = "censoring"


@dataclass(frozen=True)
class SurvivalSample:
    """Right-censored observations ``(X_i, delta_i)``.

    ``events[i] == 1`` marks an observed lifetime, ``0`` a censoring time.
    Input order is preserved; ``order`` gives the sorted view (ascending
    time, events before censorings at tied times).
    """

    times: np.ndarray
    events: np.ndarray
    order: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        times = np.array(self.times, dtype=float).ravel()
        events = np.array(self.events).ravel()
        if times.shape != events.shape:
            raise ValueError(
                f"times and events differ in length ({times.size} != {events.size})"
            )
        if times.size < 2:
            raise ValueError(f"need at least 2 observations, got {times.size}")
        if not np.all(np.isfinite(times)):
            raise ValueError("times must be finite")
        if np.any(times <= 0):
            raise ValueError("times must be strictly positive")
        if not np.all((events == 0) | (events == 1)):
            raise ValueError("events must be 0 (censored) or 1 (observed)")
        events = events.astype(np.int8)
        if not events.any():
            raise ValueError("sample has no uncensored observations")
        times.setflags(write=False)
        events.setflags(write=False)
        # lexsort is stable; last key is primary
        order = np.lexsort((1 - events, times))
        order.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "order", order)

    @classmethod
    def uncensored(cls, times) -> "SurvivalSample":
        times = np.asarray(times, dtype=float)
        return cls(times, np.ones(times.shape, dtype=np.int8))

    @property
    def n(self) -> int:
        return int(self.times.size)

    @property
    def n_events(self) -> int:
        return int(self.events.sum())

    @property
    def is_censored(self) -> bool:
        return self.n_events < self.n

    @property
    def sorted_times(self) -> np.ndarray:
        return self.times[self.order]

    @property
    def sorted_events(self) -> np.ndarray:
        return self.events[self.order]


@dataclass(frozen=True)
class StepSurvival:
    """Right-continuous, non-increasing step function on the real line.

    ``values[k]`` holds on ``[jump_times[k], jump_times[k + 1])`` and
    ``initial_value`` to the left of the first jump. Evaluation is exact
    (binary search, no interpolation).
    """

    jump_times: np.ndarray
    values: np.ndarray
    initial_value: float = 1.0

    def __post_init__(self):
        jt = np.array(self.jump_times, dtype=float).ravel()
        vals = np.array(self.values, dtype=float).ravel()
        if jt.shape != vals.shape:
            raise ValueError("jump_times and values differ in length")
        if jt.size and np.any(np.diff(jt) <= 0):
            raise ValueError("jump_times must be strictly increasing")
        if np.any((vals < 0) | (vals > 1)):
            raise ValueError("values must lie in [0, 1]")
        jt.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "jump_times", jt)
        object.__setattr__(self, "values", vals)

    def _lookup(self, x, side):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.jump_times, x, side=side) - 1
        padded = np.concatenate(([self.initial_value], self.values))
        out = padded[idx + 1]
        return out if out.ndim else float(out)

    def __call__(self, x):
        """Value at ``x`` (right-continuous)."""
        return self._lookup(x, "right")

    def left_limit(self, x):
        """Limit from the left, ``lim_{t -> x-} S(t)``."""
        return self._lookup(x, "left")

    def __mul__(self, other: "StepSurvival") -> "StepSurvival":
        if not isinstance(other, StepSurvival):
            return NotImplemented
        jt = np.union1d(self.jump_times, other.jump_times)
        return StepSurvival(
            jt,
            np.asarray(self(jt)) * np.asarray(other(jt)),
            self.initial_value * other.initial_value,
        )


def _product_limit(n: int, exponents: np.ndarray) -> np.ndarray:
    """prod_{j <= i} ((n - j) / (n - j + 1)) ** e_j for i = 1..n (1-based).

    Runs of consecutive unit exponents telescope to a single ratio, so the
    all-ones case returns exactly ``(n - i) / n``.
    """
    out = np.empty(n)
    prefix = 1.0
    run_start = None
    for k in range(n):
        i = k + 1
        if exponents[k]:
            if run_start is None:
                run_start = i
            out[k] = prefix * ((n - i) / (n - run_start + 1))
        else:
            if run_start is not None:
                prefix = out[k - 1]
                run_start = None
            out[k] = prefix
    return out


def _collapse_ties(sorted_times: np.ndarray, values: np.ndarray):
    # the value at a tied time is the one after the last tied index
    last = np.r_[sorted_times[1:] != sorted_times[:-1], True]
    return sorted_times[last], values[last]


def km_survival(sample: SurvivalSample, target: Target | str = Target.EVENT) -> StepSurvival:
    """Product-limit survival function of the lifetimes or of the censoring times.

    With ``target="event"`` this is ``Fbar_n``, which is also set to zero
    for every ``x > X_(n)`` even when the largest observation is censored.
    With ``target="censoring"`` the roles of ``delta`` and ``1 - delta``
    are swapped and no tail truncation is applied.

    Examples
    --------
    >>> s = SurvivalSample([1.0, 2.0, 3.0, 4.0], [1, 0, 1, 1])
    >>> km_survival(s)(3.5)
    0.375
    """
    target = Target(target)
    t = sample.sorted_times
    d = sample.sorted_events
    expo = d if target is Target.EVENT else 1 - d
    jt, vals = _collapse_ties(t, _product_limit(sample.n, expo))
    if target is Target.EVENT and vals[-1] > 0:
        jt = np.append(jt, np.nextafter(jt[-1], np.inf))
        vals = np.append(vals, 0.0)
    return StepSurvival(jt, vals)


def empirical_survival(sample: SurvivalSample) -> StepSurvival:
    """``1 - F_n(x) = #{X_i > x} / n``, ignoring censoring indicators."""
    n = sample.n
    t = sample.sorted_times
    counts = n - np.arange(1, n + 1)
    jt, remaining = _collapse_ties(t, counts)
    return StepSurvival(jt, remaining / n)


def survival_denominator(sample: SurvivalSample, mode: EstimatorMode | str) -> StepSurvival | None:
    """Survival function dividing the kernel terms, or ``None`` for plain density."""
    mode = EstimatorMode(mode)
    if mode is EstimatorMode.DENSITY:
        return None
    if mode is EstimatorMode.HAZARD:
        return empirical_survival(sample)
    gbar = km_survival(sample, Target.CENSORING)
    if mode is EstimatorMode.CENSORED_DENSITY:
        return gbar
    return km_survival(sample, Target.EVENT) * gbar


@dataclass(frozen=True)
class ObservationWeights:
    """Weights ``delta_i / D(X_i)`` in input order.

    ``dropped`` counts uncensored observations whose denominator was zero
    (only possible under ``Convention.PAPER_EXACT``).
    """

    weights: np.ndarray
    dropped: int = 0


def observation_weights(
    sample: SurvivalSample,
    mode: EstimatorMode | str,
    convention: Convention | str = Convention.LEFT_LIMIT,
) -> ObservationWeights:
    mode = EstimatorMode(mode)
    convention = Convention(convention)
    if mode.requires_uncensored and sample.is_censored:
        raise ValueError(
            f"mode {mode.value!r} needs uncensored data; "
            f"{sample.n - sample.n_events} censored observations present"
        )
    delta = sample.events.astype(float)
    surv = survival_denominator(sample, mode)
    if surv is None:
        return ObservationWeights(delta.copy(), 0)

    if convention is Convention.LEFT_LIMIT:
        denom = np.asarray(surv.left_limit(sample.times), dtype=float)
    else:
        denom = np.asarray(surv(sample.times), dtype=float)
    zero = (denom <= 0) & (delta > 0)
    w = np.zeros_like(delta)
    ok = (delta > 0) & ~zero
    w[ok] = delta[ok] / denom[ok]
    if not w.any():
        raise ValueError("every observation weight is zero")
    w.setflags(write=False)
    return ObservationWeights(w, int(zero.sum()))
