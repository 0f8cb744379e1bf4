"""
Multi-resolution encoding with a difference pyramid.

    G_0 = F,  G_i = decimate(G_{i-1} * sigma)        (keep indices 0, 2, 4, ...)
    D_i = G_{i-1} - upsample(G_i)                    for i = 1..m-1
    D_m = G_{m-1}

Each level is fitted with the local operator and the per-level coefficient
vectors are summed. Level i sits on spacing base * 2^i in original abscissa
units and its offsets are measured from the query center, so every level
contributes to the same (x - x0) basis.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from ddp.config import DEFAULT_KERNEL
from ddp.diffop1d import TaylorCoefficients, estimate_coefficients, plan_from_offsets
from ddp.errors import DomainError
from ddp.localrep import Signal, LocalModel, resample_with, window_start

logger = logging.getLogger(__name__)

KERNELS = {
    'binomial': np.array([0.25, 0.5, 0.25]),
    'mean': np.array([1.0, 1.0, 1.0]) / 3.0,
    'gaussian': np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0,
}


@dataclass(frozen=True)
class PyramidLevels:
    """levels[i] = (difference signal D_{i+1}, its spacing)."""

    levels: tuple
    kernel: str

    @property
    def depth(self):
        return len(self.levels)

    @property
    def base_spacing(self):
        return self.levels[0][1]


def get_kernel(name):
    try:
        return KERNELS[name]
    except KeyError:
        raise DomainError(f"unknown kernel {name!r}; choose one of {', '.join(sorted(KERNELS))}") from None


def smooth(values, kernel=DEFAULT_KERNEL):
    """Convolve with the kernel, replicating edge samples."""
    return correlate1d(np.asarray(values, dtype=np.float64), get_kernel(kernel), mode='nearest')


def downsample(values):
    return np.asarray(values)[::2]


def upsample(coarse, length):
    """Linear 2x upsampling to length samples; trailing samples replicate."""
    coarse = np.asarray(coarse, dtype=np.float64)
    fine_positions = np.arange(length) / 2.0
    return np.interp(fine_positions, np.arange(len(coarse)), coarse)


def build_pyramid(f, depth, kernel=DEFAULT_KERNEL):
    """Difference pyramid of m = depth levels (depth 1 stores F itself)."""
    if depth < 1:
        raise DomainError(f"pyramid depth must be >= 1, got {depth}")
    if len(f) < 2 ** depth:
        raise DomainError(f"signal of {len(f)} samples is too short for depth {depth} (needs {2 ** depth})")
    get_kernel(kernel)
    current = f.array
    spacing = f.spacing
    levels = []
    for _ in range(depth - 1):
        coarse = downsample(smooth(current, kernel))
        residual = current - upsample(coarse, len(current))
        levels.append((Signal.from_values(f.start, spacing, residual), spacing))
        current = coarse
        spacing *= 2
    levels.append((Signal.from_values(f.start, spacing, current), spacing))
    logger.debug(f"Built {depth}-level pyramid with kernel {kernel}")
    return PyramidLevels(levels=tuple(levels), kernel=kernel)


def reconstruct(p):
    """Upsample-and-sum all levels back to the base grid."""
    total = p.levels[-1][0].array
    for level, _ in reversed(p.levels[:-1]):
        total = level.array + upsample(total, len(level))
    return total


def _fit_level(level, center, n_points):
    anchor = int(np.clip(np.ceil((center - level.start) / level.spacing - 0.5), 0, len(level) - 1))
    first = window_start(len(level), anchor, n_points)
    offsets = [level.abscissa(k) - center for k in range(first, first + n_points)]
    plan = plan_from_offsets(center, level.spacing, offsets)
    return estimate_coefficients(plan, level.values[first:first + n_points])


def estimate_coefficients_pyramid(p, center, n_points):
    """Sum over levels of the coefficients fitted on each D_i around center."""
    total = None
    for level, _ in p.levels:
        if len(level) < n_points:
            raise DomainError(f"pyramid level with {len(level)} samples cannot hold a {n_points}-point window")
        coeffs = _fit_level(level, center, n_points)
        total = coeffs if total is None else total + coeffs
    return TaylorCoefficients(x0=float(center), coeffs=total.coeffs)


def resample_pyramid(f, depth, n_points, factor, kernel=DEFAULT_KERNEL):
    """resample() with pyramid-summed coefficients per center sample."""
    if n_points % 2 == 0:
        raise DomainError(f"resample uses odd windows, got n_points={n_points}")
    p = build_pyramid(f, depth, kernel)

    def fit(c):
        center = f.abscissa(c)
        coeffs = estimate_coefficients_pyramid(p, center, n_points)
        return LocalModel(center=center, coeffs=coeffs, valid_radius=f.spacing)

    return resample_with(f, factor, fit)
