"""
Two-variable discrete differential operator.

The tensor basis h^p k^q, 0 <= p, q < N, is linearised by scanning
anti-diagonals p + q = 0, 1, 2, ... with p descending inside each diagonal:

    side 3: 1, h, k, h^2, hk, k^2, h^2k, hk^2, h^2k^2

m = N*N samples on a square grid give the design matrix A (row r is the
basis evaluated at the r-th offset) and the coefficients G = A^-1 · samples.
Partial derivatives come back with the Taylor normalisation
d^(p+q) f / dx^p dy^q = g_l * p! * q!.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from ddp.config import SINGULAR_RTOL
from ddp.diffop1d import factorial
from ddp.errors import DomainError, SingularMatrixError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZigZagBasis2D:
    """Exponent pairs (p, q) for h^p k^q in scan order."""

    terms: tuple
    grid_side: int

    @property
    def m(self):
        return len(self.terms)

    def index_of(self, p, q):
        try:
            return self.terms.index((p, q))
        except ValueError:
            raise DomainError(f"term h^{p} k^{q} is not in the side-{self.grid_side} basis") from None

    def row(self, dx, dy):
        """Basis evaluated at offset (dx, dy)."""
        return np.array([dx ** p * dy ** q for p, q in self.terms], dtype=np.float64)


@dataclass(frozen=True)
class SampleGrid2D:
    """Square N x N sample grid around (x0, y0), row-major offsets."""

    x0: float
    y0: float
    h: float
    side: int
    offsets: tuple

    @property
    def m(self):
        return len(self.offsets)

    @property
    def points(self):
        return tuple((self.x0 + dx, self.y0 + dy) for dx, dy in self.offsets)

    def sample(self, fn):
        """fn(x, y) at every grid point, in offset order."""
        return np.array([fn(x, y) for x, y in self.points], dtype=np.float64)


@dataclass(frozen=True)
class Coefficients2D:
    """g_l aligned to basis.terms, anchored at (x0, y0)."""

    x0: float
    y0: float
    g: tuple
    basis: ZigZagBasis2D

    def partials(self):
        """[(total order, x order, value)] for every term, in basis order."""
        return [(p + q, p, self.g[l] * factorial(p) * factorial(q))
                for l, (p, q) in enumerate(self.basis.terms)]


def build_basis(side):
    if side < 1:
        raise DomainError(f"grid side must be >= 1, got {side}")
    terms = []
    for diagonal in range(2 * side - 1):
        for p in range(min(diagonal, side - 1), max(0, diagonal - side + 1) - 1, -1):
            terms.append((p, diagonal - p))
    return ZigZagBasis2D(terms=tuple(terms), grid_side=side)


def triangle_index(i, q):
    """Basis position of the total-order-i term with y exponent q.

    Valid for the full anti-diagonals i <= side - 1 of the scan.
    """
    if i < 0 or not 0 <= q <= i:
        raise DomainError(f"triangle index needs 0 <= q <= i, got i={i}, q={q}")
    return (i * i + i) // 2 + q


def make_grid(x0, y0, h, side):
    if not h > 0:
        raise DomainError(f"spacing h must be > 0, got {h}")
    if side < 1:
        raise DomainError(f"grid side must be >= 1, got {side}")
    middle = (side - 1) / 2
    offsets = tuple(((p - middle) * h, (q - middle) * h) for p in range(side) for q in range(side))
    return SampleGrid2D(x0=float(x0), y0=float(y0), h=float(h), side=side, offsets=offsets)


def _check_pair(grid, basis):
    if grid.side != basis.grid_side:
        raise DomainError(f"grid side {grid.side} does not match basis side {basis.grid_side}")


def _design_rows(side, h):
    grid = make_grid(0.0, 0.0, h, side)
    basis = build_basis(side)
    return np.vstack([basis.row(dx, dy) for dx, dy in grid.offsets])


@lru_cache(maxsize=64)
def _factorised(side, h):
    """SVD screen then LU factors of the design matrix for (side, h)."""
    a = _design_rows(side, h)
    spectrum = np.linalg.svd(a, compute_uv=False)
    if spectrum[-1] < SINGULAR_RTOL * spectrum[0]:
        raise SingularMatrixError(
            f"2D design matrix for side={side}, h={h} is rank deficient "
            f"(smallest singular value {spectrum[-1]:.3e}, largest {spectrum[0]:.3e})",
            spectrum=tuple(float(s) for s in spectrum),
        )
    if spectrum[-1] < 1e3 * SINGULAR_RTOL * spectrum[0]:
        logger.warning(f"2D design matrix for side={side}, h={h} is nearly singular "
                       f"(ratio {spectrum[-1] / spectrum[0]:.3e})")
    logger.debug(f"Factorised {a.shape[0]}x{a.shape[1]} design matrix for side={side}, h={h}")
    return lu_factor(a)


def build_design_matrix(grid, basis):
    """A with rows Φ_m(h_r, k_r); raises SingularMatrixError when rank deficient."""
    _check_pair(grid, basis)
    _factorised(grid.side, grid.h)
    a = np.vstack([basis.row(dx, dy) for dx, dy in grid.offsets])
    a.setflags(write=False)
    return a


def estimate_coefficients_2d(grid, basis, samples):
    _check_pair(grid, basis)
    samples = np.asarray(samples, dtype=np.float64)
    if samples.shape != (grid.m,):
        raise DomainError(f"expected {grid.m} samples, got {samples.size}")
    g = lu_solve(_factorised(grid.side, grid.h), samples)
    return Coefficients2D(x0=grid.x0, y0=grid.y0, g=tuple(float(v) for v in g), basis=basis)


def extract_partial(coeffs, i, j):
    """d^i f / dx^j dy^(i-j) at the grid center."""
    if not 0 <= j <= i:
        raise DomainError(f"partial needs 0 <= x order <= total order, got i={i}, j={j}")
    l = coeffs.basis.index_of(j, i - j)
    return coeffs.g[l] * factorial(j) * factorial(i - j)


def evaluate_2d(coeffs, x, y):
    """Φ_m(x - x0, y - y0)^T · G."""
    return float(coeffs.basis.row(x - coeffs.x0, y - coeffs.y0) @ np.asarray(coeffs.g))
