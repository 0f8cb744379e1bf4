"""
Univariate discrete differential operator.

N+1 samples of f around x0 determine the truncated Taylor coefficients
a^e_0..a^e_N through the inverse Vandermonde matrix of the sample offsets;
derivative n is recovered as n! * a^e_n. All orders come out of the same
solve, so no estimate is built on top of another.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from scipy.special import factorial as _sp_factorial

from ddp.config import MAX_ORDER
from ddp.errors import DomainError
from ddp.vandermonde import Offsets, build_matrix, inverse_explicit

logger = logging.getLogger(__name__)

# exact integers, converted to float once
_FACTORIALS = tuple(float(_sp_factorial(n, exact=True)) for n in range(MAX_ORDER + 1))


def factorial(n):
    """n! as float for 0 <= n <= MAX_ORDER."""
    if n < 0 or n > MAX_ORDER:
        raise DomainError(f"factorial supported for 0..{MAX_ORDER}, got {n}")
    return _FACTORIALS[n]


@dataclass(frozen=True)
class SamplePlan:
    """Where to sample f: center x0, spacing h and the offsets."""

    x0: float
    h: float
    n_points: int
    offsets: Offsets

    @property
    def order(self):
        """Truncation order N = n_points - 1."""
        return self.n_points - 1

    @property
    def K(self):
        """Half-width multiple: max |offset| / h."""
        return self.offsets.max_abs / self.h

    @property
    def abscissae(self):
        return tuple(self.x0 + o for o in self.offsets)


@dataclass(frozen=True)
class TaylorCoefficients:
    """Estimated coefficients a^e_0..a^e_N anchored at x0."""

    x0: float
    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs) - 1

    def derivative(self, n):
        return factorial(n) * self.coeffs[n]

    def __add__(self, other):
        if len(self.coeffs) != len(other.coeffs):
            raise DomainError("cannot add coefficient vectors of different length")
        return TaylorCoefficients(self.x0, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))


@dataclass(frozen=True)
class DerivativeEstimates:
    """Derivative values for orders 0..N, optionally with truth and error."""

    x0: float
    values: tuple
    truth: Optional[tuple] = None
    abs_error: Optional[tuple] = None

    @property
    def orders(self):
        return tuple(range(len(self.values)))

    def to_frame(self):
        frame = pd.DataFrame({'order': self.orders, 'estimate': self.values})
        if self.truth is not None:
            frame['truth'] = self.truth
            frame['abs_error'] = self.abs_error
        return frame


def make_plan(x0, h, n_points):
    """Equidistant plan symmetric about x0 (half-integer offsets for even counts)."""
    if not h > 0:
        raise DomainError(f"spacing h must be > 0, got {h}")
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    if n_points - 1 > MAX_ORDER:
        raise DomainError(f"n_points must be <= {MAX_ORDER + 1}, got {n_points}")
    middle = (n_points - 1) / 2
    offsets = Offsets.from_values((i - middle) * h for i in range(n_points))
    return SamplePlan(x0=float(x0), h=float(h), n_points=n_points, offsets=offsets)


def plan_from_offsets(x0, h, offsets):
    """Plan with explicit offsets (clamped windows, pyramid levels)."""
    if not h > 0:
        raise DomainError(f"spacing h must be > 0, got {h}")
    if not isinstance(offsets, Offsets):
        offsets = Offsets.from_values(offsets)
    if len(offsets) - 1 > MAX_ORDER:
        raise DomainError(f"at most {MAX_ORDER + 1} offsets supported, got {len(offsets)}")
    return SamplePlan(x0=float(x0), h=float(h), n_points=len(offsets), offsets=offsets)


def estimate_coefficients(plan, samples):
    """a^e = W_N^-1 · samples for samples[i] = f(x0 + offsets[i])."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.shape != (plan.n_points,):
        raise DomainError(f"expected {plan.n_points} samples, got {samples.shape[0] if samples.ndim else 0}")
    inverse = inverse_explicit(build_matrix(plan.offsets))
    coeffs = inverse @ samples
    return TaylorCoefficients(x0=plan.x0, coeffs=tuple(float(c) for c in coeffs))


def estimate_derivatives(plan, samples, truth=None, passthrough_zeroth=False):
    """Derivatives n! * a^e_n for n = 0..N.

    truth: optional exact derivative values (orders 0..N) for error columns
    passthrough_zeroth: report the sample at x0 as order 0 when the plan
        contains offset 0, instead of a^e_0
    """
    coefficients = estimate_coefficients(plan, samples)
    values = [factorial(n) * a for n, a in enumerate(coefficients.coeffs)]
    if passthrough_zeroth:
        try:
            values[0] = float(samples[list(plan.offsets).index(0.0)])
        except ValueError:
            logger.warning("passthrough_zeroth requested but the plan has no sample at x0")
    if truth is None:
        return DerivativeEstimates(x0=plan.x0, values=tuple(values))
    truth = tuple(float(t) for t in truth)
    if len(truth) != len(values):
        raise DomainError(f"expected {len(values)} truth values, got {len(truth)}")
    errors = tuple(abs(v - t) for v, t in zip(values, truth))
    return DerivativeEstimates(x0=plan.x0, values=tuple(values), truth=truth, abs_error=errors)
