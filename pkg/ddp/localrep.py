"""
Local truncated-Taylor representation of a uniformly sampled signal.

A window of n consecutive samples around a center sample gives the
coefficients of f_N^e(x) = sum_n a^e_n (x - x0)^n, which is trusted for
|x - x0| <= spacing. Resampling evaluates every output abscissa with the
model of its nearest input sample.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial as P

from ddp.diffop1d import TaylorCoefficients, estimate_coefficients, plan_from_offsets
from ddp.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Signal:
    """Samples values[i] taken at start + i * spacing."""

    start: float
    spacing: float
    values: tuple

    def __post_init__(self):
        if not self.spacing > 0:
            raise DomainError(f"signal spacing must be > 0, got {self.spacing}")
        if len(self.values) < 2:
            raise DomainError(f"signal needs at least 2 samples, got {len(self.values)}")

    @classmethod
    def from_values(cls, start, spacing, values):
        return cls(float(start), float(spacing), tuple(float(v) for v in values))

    @classmethod
    def from_function(cls, fn, start, spacing, count):
        xs = start + np.arange(count) * spacing
        return cls.from_values(start, spacing, fn(xs))

    def __len__(self):
        return len(self.values)

    def abscissa(self, index):
        return self.start + index * self.spacing

    @property
    def abscissae(self):
        return self.start + np.arange(len(self.values)) * self.spacing

    @property
    def span(self):
        return self.start, self.abscissa(len(self.values) - 1)

    @property
    def array(self):
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class LocalModel:
    """Taylor polynomial about center, valid within valid_radius."""

    center: float
    coeffs: TaylorCoefficients
    valid_radius: float


class Evaluation(NamedTuple):
    value: float
    stale: bool


def window_start(length, center_index, n_points):
    """First index of the n_points window nearest center_index, clamped."""
    if n_points > length:
        raise DomainError(f"window of {n_points} samples does not fit a signal of {length}")
    start = center_index - (n_points - 1) // 2
    return min(max(start, 0), length - n_points)


def is_clamped(length, center_index, n_points):
    return window_start(length, center_index, n_points) != center_index - (n_points - 1) // 2


def fit_local(signal, center_index, n_points):
    """Fit the local model anchored at the abscissa of center_index."""
    if not 0 <= center_index < len(signal):
        raise DomainError(f"center index {center_index} outside signal of length {len(signal)}")
    first = window_start(len(signal), center_index, n_points)
    offsets = [(k - center_index) * signal.spacing for k in range(first, first + n_points)]
    center = signal.abscissa(center_index)
    plan = plan_from_offsets(center, signal.spacing, offsets)
    coeffs = estimate_coefficients(plan, signal.values[first:first + n_points])
    return LocalModel(center=center, coeffs=coeffs, valid_radius=signal.spacing)


def evaluate(model, x):
    """Horner evaluation of the model at x; stale outside valid_radius."""
    t = x - model.center
    value = float(P.polyval(t, model.coeffs.coeffs))
    stale = abs(t) > model.valid_radius
    if stale:
        logger.warning(f"Evaluating local model at distance {abs(t):g} beyond radius {model.valid_radius:g}")
    return Evaluation(value, stale)


def output_abscissae(signal, factor):
    count = (len(signal) - 1) * factor + 1
    # k / factor is exact at original samples, so those abscissae match bitwise
    return signal.start + (np.arange(count) / factor) * signal.spacing


def nearest_center_indices(signal, xs):
    """Index of the nearest sample for each x; ties go to the left sample."""
    position = (np.asarray(xs, dtype=np.float64) - signal.start) / signal.spacing
    index = np.ceil(position - 0.5).astype(int)
    return np.clip(index, 0, len(signal) - 1)


def resample_with(signal, factor, fit):
    if factor < 2:
        raise DomainError(f"resample factor must be >= 2, got {factor}")
    xs = output_abscissae(signal, factor)
    centers = nearest_center_indices(signal, xs)
    models = {}
    out = np.empty(len(xs), dtype=np.float64)
    for k, (x, c) in enumerate(zip(xs, centers)):
        c = int(c)
        if c not in models:
            models[c] = fit(c)
        out[k] = evaluate(models[c], x).value
    logger.debug(f"Resampled {len(signal)} samples to {len(xs)} using {len(models)} local models")
    return Signal.from_values(signal.start, signal.spacing / factor, out)


def resample(signal, factor, n_points):
    """factor-times denser signal over the same span."""
    if n_points % 2 == 0:
        raise DomainError(f"resample uses odd windows, got n_points={n_points}")
    window_start(len(signal), 0, n_points)
    return resample_with(signal, factor, lambda c: fit_local(signal, c, n_points))
