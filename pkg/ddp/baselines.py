"""
Comparison methods: forward differences, natural cubic spline, linear interpolation.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded
from scipy.special import comb

from ddp.errors import DomainError
from ddp.localrep import Signal

logger = logging.getLogger(__name__)


def forward_difference(samples, h, order):
    """Δⁿf / hⁿ from samples[k] = f(x0 + k*h), k = 0..n."""
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    if not h > 0:
        raise DomainError(f"spacing h must be > 0, got {h}")
    if len(samples) < order + 1:
        raise DomainError(f"order {order} forward difference needs {order + 1} samples, got {len(samples)}")
    total = 0.0
    for k in range(order + 1):
        sign = -1.0 if (order - k) % 2 else 1.0
        total += sign * float(comb(order, k, exact=True)) * float(samples[k])
    return total / h ** order


def _check_span(knots, xs):
    lo, hi = knots.span
    slack = 1e-9 * knots.spacing
    xs = np.asarray(xs, dtype=np.float64)
    if np.any(xs < lo - slack) or np.any(xs > hi + slack):
        raise DomainError(f"evaluation points outside knot span [{lo:g}, {hi:g}]; extrapolation is not supported")
    return np.clip(xs, lo, hi)


@dataclass(frozen=True)
class SplineModel:
    """Natural cubic spline through uniformly spaced knots."""

    knots: Signal
    second_derivatives: tuple

    def _segments(self, xs):
        n = len(self.knots)
        index = np.floor((xs - self.knots.start) / self.knots.spacing).astype(int)
        return np.clip(index, 0, n - 2)

    def derivative2(self, x):
        """Piecewise-linear second derivative S''(x)."""
        scalar = np.isscalar(x)
        xs = _check_span(self.knots, np.atleast_1d(x))
        k = self._segments(xs)
        h = self.knots.spacing
        m = np.asarray(self.second_derivatives)
        left = self.knots.start + k * h
        t = (xs - left) / h
        out = m[k] * (1.0 - t) + m[k + 1] * t
        return float(out[0]) if scalar else out


def spline_fit(knots):
    n = len(knots)
    if n < 3:
        raise DomainError(f"cubic spline needs at least 3 knots, got {n}")
    y = knots.array
    h = knots.spacing
    interior = n - 2
    # M[i-1] + 4 M[i] + M[i+1] = 6 (y[i+1] - 2 y[i] + y[i-1]) / h^2, M[0] = M[n-1] = 0
    bands = np.zeros((3, interior))
    bands[0, 1:] = 1.0
    bands[1, :] = 4.0
    bands[2, :-1] = 1.0
    rhs = 6.0 * (y[2:] - 2.0 * y[1:-1] + y[:-2]) / (h * h)
    inner = solve_banded((1, 1), bands, rhs)
    second = np.concatenate(([0.0], inner, [0.0]))
    logger.debug(f"Fitted natural cubic spline on {n} knots")
    return SplineModel(knots=knots, second_derivatives=tuple(float(v) for v in second))


def spline_eval(model, x):
    """S(x) for a scalar or array; DomainError outside the knot span."""
    scalar = np.isscalar(x)
    knots = model.knots
    xs = _check_span(knots, np.atleast_1d(x))
    k = model._segments(xs)
    h = knots.spacing
    y = knots.array
    m = np.asarray(model.second_derivatives)
    left = knots.start + k * h
    a = xs - left
    b = h - a
    out = (m[k] * b ** 3 + m[k + 1] * a ** 3) / (6.0 * h) \
        + (y[k] / h - m[k] * h / 6.0) * b \
        + (y[k + 1] / h - m[k + 1] * h / 6.0) * a
    return float(out[0]) if scalar else out


def linear_eval(knots, x):
    scalar = np.isscalar(x)
    xs = _check_span(knots, np.atleast_1d(x))
    out = np.interp(xs, knots.abscissae, knots.array)
    return float(out[0]) if scalar else out
