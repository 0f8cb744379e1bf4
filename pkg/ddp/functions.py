"""
Built-in analytic test functions with exact derivative oracles.

1D:  exp2x = e^(2x), sinsin10 = sin(x) sin(10x), poly:c0,c1,... = sum c_k x^k
2D:  xy, expxy = e^(x+y), poly = x^2 y^2 + x^2 + y^2 + xy
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pandas as pd
from numpy.polynomial import Polynomial
from scipy.special import comb

from ddp.config import STABLE_FD_STEP
from ddp.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuiltinFunction:
    """f and its exact n-th derivative, both vectorised over x."""

    name: str
    value: Callable
    nth_derivative: Callable

    def __call__(self, x):
        return self.value(np.asarray(x, dtype=np.float64))

    def derivative(self, x, n):
        if n < 0:
            raise DomainError(f"derivative order must be >= 0, got {n}")
        return self.nth_derivative(np.asarray(x, dtype=np.float64), n)

    def derivatives(self, x, orders):
        return tuple(float(self.derivative(x, n)) for n in orders)


@dataclass(frozen=True)
class BuiltinFunction2D:
    """f(x, y) and its exact partials d^(p+q) f / dx^p dy^q."""

    name: str
    value: Callable
    partial_fn: Callable

    def __call__(self, x, y):
        return self.value(x, y)

    def partial(self, x, y, p, q):
        if p < 0 or q < 0:
            raise DomainError(f"partial orders must be >= 0, got ({p}, {q})")
        return self.partial_fn(x, y, p, q)


def _sin_scaled(a, x, n):
    """n-th derivative of sin(a x): a^n sin(a x + n pi / 2)."""
    return a ** n * np.sin(a * x + n * math.pi / 2)


def _sinsin10(x, n):
    total = 0.0
    for k in range(n + 1):
        total = total + comb(n, k, exact=True) * _sin_scaled(1.0, x, k) * _sin_scaled(10.0, x, n - k)
    return total


def _poly_function(text):
    try:
        coeffs = [float(c) for c in text.split(',') if c.strip()]
    except ValueError:
        raise DomainError(f"polynomial coefficients must be numbers, got {text!r}") from None
    if not coeffs:
        raise DomainError("poly: needs at least one coefficient, e.g. poly:1,0,0,1")
    base = Polynomial(coeffs)
    return BuiltinFunction(
        name=f"poly:{','.join(repr(c) for c in coeffs)}",
        value=lambda x: base(x),
        nth_derivative=lambda x, n: base.deriv(n)(x) if n > 0 else base(x),
    )


BUILTINS = {
    'exp2x': BuiltinFunction(
        name='exp2x',
        value=lambda x: np.exp(2.0 * x),
        nth_derivative=lambda x, n: 2.0 ** n * np.exp(2.0 * x),
    ),
    'sinsin10': BuiltinFunction(
        name='sinsin10',
        value=lambda x: np.sin(x) * np.sin(10.0 * x),
        nth_derivative=_sinsin10,
    ),
}


def _xy_partial(x, y, p, q):
    px = (x, 1.0)[p] if p < 2 else 0.0
    qy = (y, 1.0)[q] if q < 2 else 0.0
    return px * qy


def _monomial(x, p, power):
    """d^p/dx^p of x^power."""
    if p > power:
        return 0.0
    return math.perm(power, p) * x ** (power - p)


def _biquad_partial(x, y, p, q):
    total = _monomial(x, p, 2) * _monomial(y, q, 2) + _monomial(x, p, 1) * _monomial(y, q, 1)
    if q == 0:
        total += _monomial(x, p, 2)
    if p == 0:
        total += _monomial(y, q, 2)
    return total


BUILTINS_2D = {
    'xy': BuiltinFunction2D(name='xy', value=lambda x, y: x * y, partial_fn=_xy_partial),
    'expxy': BuiltinFunction2D(
        name='expxy',
        value=lambda x, y: math.exp(x + y),
        partial_fn=lambda x, y, p, q: math.exp(x + y),
    ),
    'poly': BuiltinFunction2D(
        name='poly',
        value=lambda x, y: x * x * y * y + x * x + y * y + x * y,
        partial_fn=_biquad_partial,
    ),
}

ALIASES_2D = {'xy-2d': 'xy', 'expxy-2d': 'expxy'}


def builtin_names():
    return sorted(BUILTINS) + ['poly:c0,c1,...']


def get_function(name):
    """Look up a 1D built-in; poly:c0,c1,... builds a polynomial."""
    if name in BUILTINS:
        return BUILTINS[name]
    if name.startswith('poly:'):
        return _poly_function(name[len('poly:'):])
    raise DomainError(f"unknown function {name!r}; built-ins are {', '.join(builtin_names())}")


def get_function_2d(name):
    key = ALIASES_2D.get(name, name)
    try:
        return BUILTINS_2D[key]
    except KeyError:
        choices = ', '.join(sorted(BUILTINS_2D) + sorted(ALIASES_2D))
        raise DomainError(f"unknown 2D function {name!r}; built-ins are {choices}") from None


def _central(fn, x, step):
    return (-fn(x + 2 * step) + 8 * fn(x + step) - 8 * fn(x - step) + fn(x - 2 * step)) / (12 * step)


def self_check(max_order=4, points=None, step=STABLE_FD_STEP, rtol=1e-5):
    """Compare every oracle against a 5-point central difference of the order below.

    Returns a DataFrame with columns function, order, x, exact, numeric, ok.
    """
    if points is None:
        points = np.linspace(-1.0, 1.0, 5)
    rows = []
    checked = [BUILTINS['exp2x'], BUILTINS['sinsin10'], get_function('poly:1,-2,0.5,3,-1')]
    for fn in checked:
        for n in range(1, max_order + 1):
            for x in points:
                exact = float(fn.derivative(x, n))
                numeric = float(_central(lambda t: fn.derivative(t, n - 1), x, step))
                rows.append((fn.name, n, float(x), exact, numeric))
    for fn in BUILTINS_2D.values():
        for p in range(1, 3):
            for q in range(0, 3):
                for x in points[::2]:
                    y = -0.5 * x
                    exact = float(fn.partial(x, y, p, q))
                    numeric = float(_central(lambda t: fn.partial(t, y, p - 1, q), x, step))
                    rows.append((f"{fn.name}-2d[{p},{q}]", p + q, float(x), exact, numeric))
    frame = pd.DataFrame(rows, columns=['function', 'order', 'x', 'exact', 'numeric'])
    frame['ok'] = (frame['exact'] - frame['numeric']).abs() <= rtol * frame['exact'].abs().clip(lower=1.0)
    failed = int((~frame['ok']).sum())
    if failed:
        logger.warning(f"Derivative oracle self-check: {failed} of {len(frame)} comparisons failed")
    else:
        logger.info(f"Derivative oracle self-check passed ({len(frame)} comparisons)")
    return frame
