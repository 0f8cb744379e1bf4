"""
Unit tests for the built-in analytic functions.

Tests cover:
- Exact derivative oracles
- poly: parsing
- Name lookup and error messages
- Oracle self-check
"""

import math

import numpy as np
import pytest

from ddp.errors import DomainError
from ddp.functions import builtin_names, get_function, get_function_2d, self_check


class TestOneDimensional:
    """Test suite for 1D built-ins."""

    @pytest.mark.unit
    def test_exp2x(self, exp2x):
        """n-th derivative is 2^n e^(2x)."""
        assert exp2x(0.0) == 1.0
        assert exp2x.derivatives(0.0, range(5)) == (1.0, 2.0, 4.0, 8.0, 16.0)
        assert exp2x.derivative(0.5, 3) == pytest.approx(8.0 * math.e, rel=1e-14)

    @pytest.mark.unit
    def test_sinsin10_low_orders(self, sinsin10):
        """f'(x) = cos(x) sin(10x) + 10 sin(x) cos(10x)."""
        x = 0.3
        expected = math.cos(x) * math.sin(10 * x) + 10 * math.sin(x) * math.cos(10 * x)
        assert sinsin10.derivative(x, 1) == pytest.approx(expected, rel=1e-12)
        assert sinsin10.derivative(x, 0) == pytest.approx(math.sin(x) * math.sin(10 * x), rel=1e-12)

    @pytest.mark.unit
    def test_sinsin10_second_derivative_at_zero(self, sinsin10):
        """f''(0) = 2 * 1 * 10 = 20."""
        assert sinsin10.derivative(0.0, 2) == pytest.approx(20.0, rel=1e-12)

    @pytest.mark.unit
    def test_vectorised(self, exp2x):
        """Arrays in, arrays out."""
        xs = np.linspace(-1.0, 1.0, 7)
        np.testing.assert_allclose(exp2x.derivative(xs, 2), 4.0 * np.exp(2.0 * xs))

    @pytest.mark.unit
    def test_poly(self):
        """poly:1,0,0,1 is 1 + x^3."""
        fn = get_function('poly:1,0,0,1')
        assert fn.name == 'poly:1.0,0.0,0.0,1.0'
        assert fn(2.0) == 9.0
        assert fn.derivatives(2.0, range(5)) == (9.0, 12.0, 12.0, 6.0, 0.0)

    @pytest.mark.unit
    @pytest.mark.parametrize('name', ['poly:', 'poly:1,a', 'cosh', ''])
    def test_invalid_names(self, name):
        """Unknown names and malformed coefficients are domain errors."""
        with pytest.raises(DomainError):
            get_function(name)

    @pytest.mark.unit
    def test_unknown_name_lists_builtins(self):
        """The message names every choice."""
        with pytest.raises(DomainError) as excinfo:
            get_function('cosh')
        for name in builtin_names():
            assert name in str(excinfo.value)

    @pytest.mark.unit
    def test_negative_order(self, exp2x):
        """Orders start at 0."""
        with pytest.raises(DomainError):
            exp2x.derivative(0.0, -1)


class TestTwoDimensional:
    """Test suite for 2D built-ins."""

    @pytest.mark.unit
    def test_xy_partials(self):
        """Partials of xy."""
        fn = get_function_2d('xy')
        assert fn(2.0, 3.0) == 6.0
        assert fn.partial(2.0, 3.0, 1, 0) == 3.0
        assert fn.partial(2.0, 3.0, 0, 1) == 2.0
        assert fn.partial(2.0, 3.0, 1, 1) == 1.0
        assert fn.partial(2.0, 3.0, 2, 0) == 0.0

    @pytest.mark.unit
    def test_poly_partials(self):
        """x^2 y^2 + x^2 + y^2 + xy."""
        fn = get_function_2d('poly')
        x, y = 0.5, -2.0
        assert fn.partial(x, y, 1, 0) == pytest.approx(2 * x * y * y + 2 * x + y)
        assert fn.partial(x, y, 1, 1) == pytest.approx(4 * x * y + 1)
        assert fn.partial(x, y, 2, 2) == 4.0
        assert fn.partial(x, y, 3, 0) == 0.0

    @pytest.mark.unit
    def test_aliases(self):
        """-2d suffixed names resolve to the same functions."""
        assert get_function_2d('expxy-2d') is get_function_2d('expxy')
        assert get_function_2d('xy-2d') is get_function_2d('xy')

    @pytest.mark.unit
    def test_unknown_2d_name(self):
        """Unknown names raise DomainError."""
        with pytest.raises(DomainError):
            get_function_2d('sinxy')


class TestSelfCheck:
    """Test suite for the oracle self-check."""

    @pytest.mark.unit
    def test_all_oracles_agree(self):
        """Every exact derivative matches a central difference of the order below."""
        frame = self_check()
        assert list(frame.columns) == ['function', 'order', 'x', 'exact', 'numeric', 'ok']
        assert frame['ok'].all(), frame[~frame['ok']].to_string()
        assert {'exp2x', 'sinsin10', 'poly:1.0,-2.0,0.5,3.0,-1.0'} <= set(frame['function'])

    @pytest.mark.unit
    def test_coarse_step_is_detected(self):
        """A too-coarse step fails the tight tolerance on sin(x) sin(10x)."""
        frame = self_check(max_order=2, step=0.1, rtol=1e-9)
        assert not frame['ok'].all()
