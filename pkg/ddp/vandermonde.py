"""
Vandermonde matrices built from sample offsets.

The inverse is evaluated in closed form from elementary symmetric
polynomials: entry (i, j) of W^-1 is

    (-1)^(N-i) * e_{N-i}(offsets without offsets[j]) / prod_{m != j}(offsets[j] - offsets[m])

All arithmetic is plain float64. Powers and products are accumulated by
repeated multiplication in index order so the results are reproducible.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ddp.errors import DomainError, SingularMatrixError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Offsets:
    """Ordered sample offsets h_1..h_{N+1} relative to a center point."""

    values: tuple

    @classmethod
    def from_values(cls, values):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise DomainError("offsets must contain at least one value")
        if not all(np.isfinite(vals)):
            raise DomainError(f"offsets must be finite, got {vals}")
        return cls(vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    @property
    def min_gap(self):
        """Smallest pairwise distance (0.0 when offsets collide)."""
        if len(self.values) < 2:
            return float('inf')
        ordered = sorted(self.values)
        return min(b - a for a, b in zip(ordered, ordered[1:]))

    @property
    def max_abs(self):
        return max(abs(v) for v in self.values)

    def colliding_pair(self):
        """First (r, s, value) with offsets[r] == offsets[s], or None."""
        seen = {}
        for index, value in enumerate(self.values):
            if value in seen:
                return seen[value], index, value
            seen[value] = index
        return None


@dataclass(frozen=True)
class VandermondeMatrix:
    """Square matrix with row r = (1, h_r, h_r^2, ..., h_r^N)."""

    rows: np.ndarray
    offsets: Offsets

    @property
    def order(self):
        """Truncation order N (matrix side minus one)."""
        return len(self.offsets) - 1


def _power_ladder(value, order):
    powers = [1.0]
    for _ in range(order):
        powers.append(powers[-1] * value)
    return powers


def build_matrix(offsets):
    """Build W_N for the given offsets (Offsets or any sequence of reals)."""
    if not isinstance(offsets, Offsets):
        offsets = Offsets.from_values(offsets)
    order = len(offsets) - 1
    rows = np.array([_power_ladder(h, order) for h in offsets], dtype=np.float64)
    rows.setflags(write=False)
    return VandermondeMatrix(rows=rows, offsets=offsets)


def elementary_symmetric_all(values):
    """Return [e_0, e_1, ..., e_k] of the k given values.

    Coefficients of prod_j (1 + y_j t), accumulated one factor at a time.
    """
    e = [1.0] + [0.0] * len(values)
    for count, y in enumerate(values, start=1):
        for m in range(count, 0, -1):
            e[m] = e[m] + y * e[m - 1]
    return e


def elementary_symmetric(values, m):
    """Elementary symmetric polynomial e_m of values (e_0 = 1)."""
    values = [float(v) for v in values]
    if m < 0 or m > len(values):
        raise DomainError(f"e_m needs 0 <= m <= {len(values)}, got m={m}")
    return elementary_symmetric_all(values)[m]


@lru_cache(maxsize=256)
def _inverse_for(values):
    n = len(values)
    order = n - 1
    inverse = np.empty((n, n), dtype=np.float64)
    for j, xj in enumerate(values):
        others = [x for m, x in enumerate(values) if m != j]
        denominator = 1.0
        for x in others:
            denominator *= (xj - x)
        e = elementary_symmetric_all(others)
        for i in range(n):
            sign = -1.0 if (order - i) % 2 else 1.0
            inverse[i, j] = sign * e[order - i] / denominator
    inverse.setflags(write=False)
    logger.debug(f"Computed explicit Vandermonde inverse for {n} offsets")
    return inverse


def inverse_explicit(w):
    """Closed-form inverse of a Vandermonde matrix.

    Near-duplicate offsets are accepted and show up as large entries;
    only exact collisions raise SingularMatrixError.
    """
    pair = w.offsets.colliding_pair()
    if pair is not None:
        r, s, value = pair
        raise SingularMatrixError(
            f"Vandermonde matrix is singular: offsets[{r}] == offsets[{s}] == {value!r}",
            pair=pair,
        )
    return _inverse_for(w.offsets.values)


def determinant(w):
    """prod_{r<s}(offsets[s] - offsets[r]); 0.0 when offsets collide."""
    values = w.offsets.values
    det = 1.0
    for s in range(len(values)):
        for r in range(s):
            det *= (values[s] - values[r])
    return det
