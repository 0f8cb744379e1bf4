import os
import sys
import shutil
import tempfile

import numpy as np
import pytest
from click.testing import CliRunner

# Add the parent directory to Python path to import the ddp package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ddp.functions import get_function
from ddp.localrep import Signal
from ddp.web import create_app


class SignalFixtures:
    """Helper class to create sample signals and CSV files."""

    @staticmethod
    def sampled(fn_name, start, spacing, count):
        """Uniform samples of a built-in function."""
        return Signal.from_function(get_function(fn_name), start, spacing, count)

    @staticmethod
    def write_signal_csv(path, xs, values, comment=None):
        """Write an x,value file (optionally with a leading '#' line)."""
        with open(path, 'w', encoding='utf-8') as f:
            if comment:
                f.write(f"# {comment}\n")
            f.write("x,value\n")
            for x, v in zip(xs, values):
                f.write(f"{x!r},{v!r}\n")
        return path

    @staticmethod
    def write_grid_csv(path, fn, x0, y0, h, side):
        """Write an x,y,value file for a square grid around (x0, y0), rows shuffled."""
        middle = (side - 1) / 2
        rows = [(x0 + (p - middle) * h, y0 + (q - middle) * h) for p in range(side) for q in range(side)]
        order = np.random.default_rng(7).permutation(len(rows))
        with open(path, 'w', encoding='utf-8') as f:
            f.write("x,y,value\n")
            for index in order:
                x, y = rows[index]
                f.write(f"{x!r},{y!r},{fn(x, y)!r}\n")
        return path


@pytest.fixture(scope='session')
def temp_test_dir():
    """Create temporary directory for test files."""
    temp_dir = tempfile.mkdtemp(prefix='test_ddp_')
    yield temp_dir
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture
def exp2x():
    return get_function('exp2x')


@pytest.fixture
def sinsin10():
    return get_function('sinsin10')


@pytest.fixture
def exp_signal():
    """e^(2x) on 41 samples from -1 with spacing 0.05."""
    return SignalFixtures.sampled('exp2x', -1.0, 0.05, 41)


@pytest.fixture
def signal_csv(temp_test_dir):
    """x,value file of sin(x) on 81 samples with spacing 0.025."""
    xs = [i * 0.025 for i in range(81)]
    path = os.path.join(temp_test_dir, 'sine.csv')
    return SignalFixtures.write_signal_csv(path, xs, [float(np.sin(x)) for x in xs], comment='sin(x) test signal')


@pytest.fixture
def constant_csv(temp_test_dir):
    """Fine constant signal used as bench oracle."""
    xs = [-2.0 + i * 0.015625 for i in range(257)]
    path = os.path.join(temp_test_dir, 'constant.csv')
    return SignalFixtures.write_signal_csv(path, xs, [3.5] * len(xs))


@pytest.fixture
def grid_csv(temp_test_dir):
    """x*y sampled on a 3x3 grid around (0.5, -0.25) with spacing 0.5."""
    path = os.path.join(temp_test_dir, 'grid.csv')
    return SignalFixtures.write_grid_csv(path, lambda x, y: x * y, 0.5, -0.25, 0.5, 3)


@pytest.fixture
def runner():
    """click CliRunner with stderr captured separately where supported."""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


@pytest.fixture
def app():
    app = create_app({'TESTING': True})
    with app.app_context():
        yield app


@pytest.fixture
def client(app):
    """Flask test client for the JSON API."""
    with app.test_client() as client:
        yield client
