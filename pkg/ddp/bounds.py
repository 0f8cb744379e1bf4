"""
Closed-form error bounds of the operator.

    coefficient:    M C(N,i) K^(2N+1-i) h^(N+1-i) / N!
    derivative:     M K^(2N+1-i) h^(N+1-i) / (N-i)!
    representation: M h^(N+1) (K^(N+1) (K+1)^N / N! + 1/(N+1)!)
    2D remainder:   2^((N+1)/2) M rho^(N+1) / (N+1)!

Everything is evaluated as a logarithm (gammaln for factorials) and
exponentiated at the end; K^(2N+1-i) alone overflows float64 near N = 35.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ddp.config import BOUNDS_MAX_POINTS
from ddp.errors import DomainError


@dataclass(frozen=True)
class BoundParams:
    """M bounds |f^(N+1)| on the sampling window."""

    M: float
    K: float
    h: float
    N: int

    def __post_init__(self):
        if self.M < 0:
            raise DomainError(f"M must be >= 0, got {self.M}")
        if not self.K > 0:
            raise DomainError(f"K must be > 0, got {self.K}")
        if not self.h > 0:
            raise DomainError(f"h must be > 0, got {self.h}")
        if int(self.N) != self.N or self.N < 0:
            raise DomainError(f"N must be a non-negative integer, got {self.N}")

    @classmethod
    def equidistant(cls, n_points, h, M=1.0):
        """Symmetric odd plan: N = n_points - 1 and 2K = N."""
        N = n_points - 1
        return cls(M=M, K=N / 2, h=h, N=N)


def _log_m(p):
    return math.log(p.M) if p.M > 0 else -math.inf


def _check_order(p, i):
    if i < 0 or i > p.N:
        raise DomainError(f"order must satisfy 0 <= i <= N={p.N}, got {i}")


def log_coefficient_bound(p, i):
    _check_order(p, i)
    log_binom = gammaln(p.N + 1) - gammaln(i + 1) - gammaln(p.N - i + 1)
    return (_log_m(p) + log_binom + (2 * p.N + 1 - i) * math.log(p.K)
            + (p.N + 1 - i) * math.log(p.h) - gammaln(p.N + 1))


def log_derivative_bound(p, i):
    _check_order(p, i)
    return (_log_m(p) + (2 * p.N + 1 - i) * math.log(p.K)
            + (p.N + 1 - i) * math.log(p.h) - gammaln(p.N - i + 1))


def log_representation_bound(p):
    first = (p.N + 1) * math.log(p.K) + p.N * math.log(p.K + 1) - gammaln(p.N + 1)
    second = -gammaln(p.N + 2)
    return _log_m(p) + (p.N + 1) * math.log(p.h) + float(np.logaddexp(first, second))


def coefficient_bound(p, i):
    """Bound on |a^e_i - a_i| (Taylor coefficient error)."""
    return math.exp(log_coefficient_bound(p, i))


def derivative_bound(p, i):
    """Bound on |f^(i)(x0)^e - f^(i)(x0)|."""
    return math.exp(log_derivative_bound(p, i))


def representation_bound(p):
    """Bound on |f_N^e(x) - f(x)| for |x - x0| <= h."""
    return math.exp(log_representation_bound(p))


def residual_bound_2d(M, rho, N):
    """Bound on the bivariate Taylor remainder at distance rho."""
    if M < 0 or not rho >= 0 or N < 0:
        raise DomainError(f"invalid 2D remainder parameters M={M}, rho={rho}, N={N}")
    if M == 0 or rho == 0:
        return 0.0
    return math.exp((N + 1) / 2 * math.log(2) + math.log(M) + (N + 1) * math.log(rho) - gammaln(N + 2))


def bound_curve(h, i=None, n_points_range=None):
    """[(n_points, bound)] over odd counts with M = 1, K = (n-1)/2.

    i is a derivative order, or None for the representation bound.
    Counts whose N is below i are skipped, the bound is undefined there.
    """
    if n_points_range is None:
        n_points_range = range(3, BOUNDS_MAX_POINTS + 1, 2)
    curve = []
    for n in n_points_range:
        if n % 2 == 0:
            raise DomainError(f"bound curves use odd sample counts, got {n}")
        if n < 3:
            continue
        p = BoundParams.equidistant(n, h)
        if i is None:
            log_value = log_representation_bound(p)
        elif i > p.N:
            continue
        else:
            log_value = log_derivative_bound(p, i)
        curve.append((n, math.exp(log_value)))
    return curve


def best_count(h, i=None, n_points_range=None):
    """Sample count minimising the bound curve."""
    curve = bound_curve(h, i, n_points_range)
    if not curve:
        raise DomainError(f"no valid sample counts for order {i}")
    return min(curve, key=lambda item: item[1])[0]
