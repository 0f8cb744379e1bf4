"""
Experiment harness shared by the CLI and the JSON API.

Every table comes back as a pandas DataFrame with a fixed column order and a
deterministic row order, so identical inputs serialise to identical CSV.
The check_* functions evaluate the ordering and trend claims used by
`--assert`; they return the list of failed claims (empty when all hold).
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from ddp.baselines import forward_difference, linear_eval, spline_eval, spline_fit
from ddp.bounds import bound_curve
from ddp.config import (BENCH_FACTOR, BENCH_LEVELS, BENCH_METHODS, BOUNDS_MAX_POINTS,
                        DEFAULT_KERNEL, DETERMINANT_COUNTS, SWEEP_COUNTS, SWEEP_ORDERS)
from ddp.diffop1d import estimate_derivatives, make_plan
from ddp.diffop2d import build_basis, estimate_coefficients_2d, make_grid
from ddp.errors import DomainError
from ddp.localrep import (Signal, fit_local, is_clamped, nearest_center_indices, output_abscissae,
                          resample)
from ddp.pyramid import resample_pyramid
from ddp.vandermonde import Offsets, build_matrix, determinant, inverse_explicit

logger = logging.getLogger(__name__)

DERIVATIVE_COLUMNS = ['method', 'order', 'h', 'estimate', 'truth', 'abs_error']
SWEEP_COLUMNS = ['n_points', 'order', 'abs_error', 'det']
BENCH_COLUMNS = ['method', 'h', 'n_points', 'total_abs_error', 'interior_abs_error', 'boundary_abs_error']
BOUNDS_COLUMNS = ['n_points', 'order', 'bound']
VANDERMONDE_COLUMNS = ['row', 'col', 'value']
DETERMINANT_COLUMNS = ['n_points', 'det']
DERIVATIVES_2D_COLUMNS = ['order', 'x_order', 'estimate', 'truth', 'abs_error']
REPRESENTATION = 'repr'


def _check_orders(orders, n_points):
    too_high = [n for n in orders if n < 0 or n > n_points - 1]
    if too_high:
        raise DomainError(f"orders must lie in 0..{n_points - 1} for {n_points} samples, got {too_high}")


# Derivative tables

def derivative_table(fn, spacings, n_points, orders=None, x0=0.0, passthrough_zeroth=False):
    """ddp and forward-difference estimates of f^(n)(x0) for every h."""
    orders = tuple(range(n_points)) if orders is None else tuple(orders)
    _check_orders(orders, n_points)
    logger.info(f"Derivative table for {fn.name}: spacings={list(spacings)} n_points={n_points}")
    rows = []
    for h in spacings:
        plan = make_plan(x0, h, n_points)
        samples = fn(np.array(plan.abscissae))
        truth = fn.derivatives(x0, range(n_points))
        estimates = estimate_derivatives(plan, samples, truth, passthrough_zeroth=passthrough_zeroth)
        forward = fn(x0 + np.arange(max(orders) + 1) * h)
        for n in orders:
            rows.append(('ddp', n, float(h), estimates.values[n], truth[n], estimates.abs_error[n]))
            value = forward_difference(forward, h, n)
            rows.append(('forward-difference', n, float(h), value, truth[n], abs(value - truth[n])))
    return _sorted(pd.DataFrame(rows, columns=DERIVATIVE_COLUMNS), ['method', 'order', 'h'])


def signal_anchor(signal):
    """Index of the sample the CSV derivative table is evaluated at."""
    return len(signal) // 2


def derivative_table_from_signal(signal, n_points, orders=None, passthrough_zeroth=False, truth=None):
    """Same table for sampled data, centered on the middle sample.

    truth: optional sequence, truth[n] = exact f^(n) at the anchor (NaN where unknown).
    Forward differences that would need samples past the end are NaN.
    """
    orders = tuple(range(n_points)) if orders is None else tuple(orders)
    _check_orders(orders, n_points)
    center = signal_anchor(signal)
    model = fit_local(signal, center, n_points)
    forward = signal.values[center:center + max(orders) + 1]
    truth = [] if truth is None else [float(t) for t in truth]
    short = [n for n in orders if n + 1 > len(forward)]
    if short:
        logger.warning(f"Forward differences of order {short} need samples past the end of the signal")
    rows = []
    for n in orders:
        exact = truth[n] if n < len(truth) else np.nan
        value = model.coeffs.derivative(n)
        if n == 0 and passthrough_zeroth:
            value = signal.values[center]
        rows.append(('ddp', n, signal.spacing, value, exact, abs(value - exact)))
        fd = np.nan if n in short else forward_difference(forward[:n + 1], signal.spacing, n)
        rows.append(('forward-difference', n, signal.spacing, fd, exact, abs(fd - exact)))
    return _sorted(pd.DataFrame(rows, columns=DERIVATIVE_COLUMNS), ['method', 'order', 'h'])


# Sample-count sweep

def equidistant_offsets(n_points, h):
    middle = (n_points - 1) / 2
    return Offsets.from_values((i - middle) * h for i in range(n_points))


def determinant_curve(h, counts):
    """[(n_points, det W)] for symmetric equidistant offsets."""
    return [(n, determinant(build_matrix(equidistant_offsets(n, h)))) for n in counts]


def determinant_table(h, counts=DETERMINANT_COUNTS):
    """n_points,det rows of the determinant decay curve."""
    if not h > 0:
        raise DomainError(f"spacing h must be > 0, got {h}")
    bad = [n for n in counts if n < 1]
    if bad:
        raise DomainError(f"sample counts must be >= 1, got {bad}")
    return pd.DataFrame(determinant_curve(h, counts), columns=DETERMINANT_COLUMNS)


def sample_count_sweep(fn, h, counts=SWEEP_COUNTS, orders=SWEEP_ORDERS, x0=0.0, passthrough_zeroth=False):
    """abs_error per (n_points, order) at fixed h, with the determinant of each plan."""
    logger.info(f"Sample-count sweep for {fn.name}: h={h} counts={list(counts)}")
    rows = []
    for n in counts:
        plan = make_plan(x0, h, n)
        samples = fn(np.array(plan.abscissae))
        truth = fn.derivatives(x0, range(n))
        estimates = estimate_derivatives(plan, samples, truth, passthrough_zeroth=passthrough_zeroth)
        det = determinant(build_matrix(plan.offsets))
        for order in orders:
            if order <= plan.order:
                rows.append((n, order, estimates.abs_error[order], det))
    return _sorted(pd.DataFrame(rows, columns=SWEEP_COLUMNS), ['n_points', 'order'])


# Interpolation benchmark

def add_noise(signal, sigma, rng):
    if sigma <= 0:
        return signal
    return Signal.from_values(signal.start, signal.spacing, signal.array + rng.normal(0.0, sigma, len(signal)))


def interpolate(signal, factor, n_points, method, levels=BENCH_LEVELS, kernel=DEFAULT_KERNEL):
    """Values of the factor-times denser signal produced by method."""
    if method == 'ddp-vanilla':
        return resample(signal, factor, n_points).array
    if method == 'ddp-pyramid':
        return resample_pyramid(signal, levels, n_points, factor, kernel).array
    xs = output_abscissae(signal, factor)
    if method == 'spline':
        return spline_eval(spline_fit(signal), xs)
    if method == 'linear':
        return linear_eval(signal, xs)
    raise DomainError(f"unknown method {method!r}; choose one of {', '.join(BENCH_METHODS)}")


def interp_signal(signal, factor=BENCH_FACTOR, n_points=5, method='ddp-vanilla',
                  levels=BENCH_LEVELS, kernel=DEFAULT_KERNEL):
    values = interpolate(signal, factor, n_points, method, levels, kernel)
    return Signal.from_values(signal.start, signal.spacing / factor, values)


def boundary_mask(signal, factor, n_points):
    """True for output samples whose nearest-center window is clamped."""
    centers = nearest_center_indices(signal, output_abscissae(signal, factor))
    clamped = {int(c): is_clamped(len(signal), int(c), n_points) for c in np.unique(centers)}
    return np.array([clamped[int(c)] for c in centers], dtype=bool)


def _bench_cell(cell):
    method, coarse, truth, n_points, factor, levels, kernel = cell
    errors = np.abs(interpolate(coarse, factor, n_points, method, levels, kernel) - truth)
    boundary = boundary_mask(coarse, factor, n_points)
    logger.debug(f"Bench cell {method} h={coarse.spacing:g}: total error {errors.sum():.3e}")
    return (method, coarse.spacing, n_points, float(errors.sum()),
            float(errors[~boundary].sum()), float(errors[boundary].sum()))


def _bench_inputs(fn, spacings, start, n_samples, factor):
    """(coarse signal, truth at the output abscissae) per spacing."""
    for h in spacings:
        coarse = Signal.from_function(fn, start, h, n_samples)
        yield coarse, fn(output_abscissae(coarse, factor))


def oracle_inputs(fine, factor):
    """Every factor-th sample of a fine signal is the coarse input, the rest is truth."""
    count = (len(fine) - 1) // factor + 1
    if count < 3:
        raise DomainError(f"oracle signal of {len(fine)} samples is too short for factor {factor}")
    truth = fine.array[:(count - 1) * factor + 1]
    coarse = Signal.from_values(fine.start, fine.spacing * factor, truth[::factor])
    return coarse, truth


def interp_bench(fn=None, spacings=(), n_points=5, methods=BENCH_METHODS, factor=BENCH_FACTOR,
                 levels=BENCH_LEVELS, kernel=DEFAULT_KERNEL, start=-10.0, n_samples=300,
                 noise=0.0, seed=0, workers=1, oracle=None):
    """Summed interpolation errors per (method, h).

    fn: built-in function sampled at start + i*h, or None with oracle
    oracle: fine Signal used as ground truth (see oracle_inputs)
    noise: standard deviation of Gaussian noise added to the coarse samples
    """
    if n_points % 2 == 0:
        raise DomainError(f"interpolation uses odd windows, got n_points={n_points}")
    for method in methods:
        if method not in BENCH_METHODS:
            raise DomainError(f"unknown method {method!r}; choose one of {', '.join(BENCH_METHODS)}")
    inputs = [oracle_inputs(oracle, factor)] if oracle is not None else \
        list(_bench_inputs(fn, spacings, start, n_samples, factor))
    cells = []
    for index, (coarse, truth) in enumerate(inputs):
        coarse = add_noise(coarse, noise, np.random.default_rng([seed, index]))
        cells.extend((method, coarse, truth, n_points, factor, levels, kernel) for method in methods)
    logger.info(f"Running {len(cells)} interpolation cells on {workers} worker(s)")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_cell, cells))
    else:
        rows = [_bench_cell(cell) for cell in cells]
    return _sorted(pd.DataFrame(rows, columns=BENCH_COLUMNS), ['method', 'h'])


# Bounds, Vandermonde and 2D tables

def bounds_table(h, orders=(1, 2, 3, 4, REPRESENTATION), max_points=BOUNDS_MAX_POINTS):
    """Bound curves over odd counts 3..max_points; order 'repr' is the representation bound."""
    counts = range(3, max_points + 1, 2)
    rows = []
    for order in orders:
        i = None if order == REPRESENTATION else int(order)
        rows.extend((n, str(order), bound) for n, bound in bound_curve(h, i, counts))
    return pd.DataFrame(rows, columns=BOUNDS_COLUMNS)


def vandermonde_table(offsets):
    """Entries of the explicit inverse and the determinant of W."""
    w = build_matrix(offsets)
    inverse = inverse_explicit(w)
    rows = [(r, c, float(inverse[r, c])) for r in range(inverse.shape[0]) for c in range(inverse.shape[1])]
    return pd.DataFrame(rows, columns=VANDERMONDE_COLUMNS), determinant(w)


def derivatives2d_from_samples(grid, samples, fn=None):
    """Every partial in the basis at the grid center, with truth when fn is given."""
    coeffs = estimate_coefficients_2d(grid, build_basis(grid.side), samples)
    rows = []
    for order, x_order, value in coeffs.partials():
        truth = np.nan if fn is None else float(fn.partial(grid.x0, grid.y0, x_order, order - x_order))
        rows.append((order, x_order, value, truth, abs(value - truth)))
    return _sorted(pd.DataFrame(rows, columns=DERIVATIVES_2D_COLUMNS), ['order', 'x_order'])


def derivatives2d_table(fn, side, h, x0=0.0, y0=0.0):
    grid = make_grid(x0, y0, h, side)
    return derivatives2d_from_samples(grid, grid.sample(fn), fn)


def _sorted(frame, keys):
    return frame.sort_values(keys, kind='mergesort').reset_index(drop=True)


# Claim checks

def check_derivative_claims(frame, function_name):
    """ddp beats forward differences for orders 1..6 (one documented sinsin10 exception)."""
    if function_name not in ('exp2x', 'sinsin10'):
        return []
    failures = []
    ddp = frame[frame['method'] == 'ddp'].set_index(['order', 'h'])['abs_error']
    fd = frame[frame['method'] == 'forward-difference'].set_index(['order', 'h'])['abs_error']
    for (order, h), error in ddp.items():
        if not 1 <= order <= 6:
            continue
        if function_name == 'sinsin10' and order == 4 and h == 0.25:
            continue
        if not error < fd[(order, h)]:
            failures.append(f"ddp error {error:.3e} not below forward difference {fd[(order, h)]:.3e} "
                            f"at order {order}, h={h}")
    return failures


def check_sweep_claims(frame):
    """Orders 1..4 fall strictly to an interior minimum then rise strictly; |det| falls over counts 5..19.

    Beyond 19 samples at h = 0.125 |det| grows again: n! h^n > 1 from n = 20.
    """
    failures = []
    for order in range(1, 5):
        errors = frame[frame['order'] == order].sort_values('n_points')['abs_error'].to_numpy()
        if len(errors) < 3:
            continue
        best = int(np.argmin(errors))
        if best == 0 or best == len(errors) - 1:
            failures.append(f"order {order} error has no interior minimum over the swept counts")
        elif not (np.all(np.diff(errors[:best + 1]) < 0) and np.all(np.diff(errors[best:]) > 0)):
            failures.append(f"order {order} error is not strictly decreasing then strictly increasing")
    in_range = frame[(frame['n_points'] >= 5) & (frame['n_points'] <= max(DETERMINANT_COUNTS))]
    dets = in_range.drop_duplicates('n_points').sort_values('n_points')['det'].abs().to_numpy()
    if np.any(np.diff(dets) >= 0):
        failures.append(f"determinant magnitude is not decreasing for counts 5..{max(DETERMINANT_COUNTS)}")
    return failures


def check_interp_claims(frame):
    """total error: ddp-vanilla < spline < linear at every spacing."""
    failures = []
    table = frame.pivot(index='h', columns='method', values='total_abs_error')
    needed = {'ddp-vanilla', 'spline', 'linear'}
    if not needed <= set(table.columns):
        return [f"interpolation claims need methods {', '.join(sorted(needed))}"]
    for h, row in table.iterrows():
        if not row['ddp-vanilla'] < row['spline'] < row['linear']:
            failures.append(f"ranking ddp-vanilla < spline < linear fails at h={h}")
    return failures
