"""
Command-line front end.

    ddp derivatives --fn exp2x --h 0.5,0.25 --n-points 11 --orders 0..10
    ddp sweep --fn exp2x --h 0.125
    ddp bench --fn sinsin10 --h 0.125,0.0125,0.00125 --n-points 9
    ddp interp --input coarse.csv --factor 4 --method spline
    ddp bounds --h 0.0625 --orders 1..4,repr
    ddp vandermonde --offsets -1,0,1
    ddp vandermonde --curve --h 0.125
    ddp derivatives2d --fn xy --side 3 --h 1
    ddp selfcheck
    ddp serve --port 5000

Every table is written as CSV (stdout by default) behind a '#' header line.
Exit status: 0 success, 1 failed --assert claim, 2 usage or domain error,
3 singular matrix.
"""

import logging
import sys
from dataclasses import replace

import click
import numpy as np
import pandas as pd

from ddp import experiments
from ddp.config import (BENCH_COUNT, BENCH_DEFAULTS, BENCH_FACTOR, BENCH_LEVELS, BENCH_METHODS,
                        BENCH_START, BOUNDS_H, BOUNDS_MAX_POINTS, DEFAULT_KERNEL,
                        DERIVATIVE_DEFAULTS, DETERMINANT_COUNTS, SWEEP_COUNTS, SWEEP_H, SWEEP_ORDERS,
                        BenchConfig)
from ddp.csvio import format_csv, read_grid, read_signal, read_truth, write_csv
from ddp.errors import DomainError, SingularMatrixError
from ddp.functions import get_function, get_function_2d, self_check
from ddp.localrep import Signal
from ddp.pyramid import KERNELS

logger = logging.getLogger(__name__)

EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


class DDPGroup(click.Group):
    """Maps package errors to exit codes with a one-line diagnostic."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SingularMatrixError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_SINGULAR)
        except DomainError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_USAGE)


def parse_floats(text, name='value'):
    try:
        values = tuple(float(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}", param_hint=name) from None
    if not values:
        raise click.BadParameter("at least one number is required", param_hint=name)
    return values


def parse_orders(text, name='--orders', allow_repr=False):
    """'0..10', '1,2,5' or a mix; 'repr' when allowed."""
    orders = []
    for token in (t.strip() for t in text.split(',')):
        if not token:
            continue
        if allow_repr and token == experiments.REPRESENTATION:
            orders.append(token)
            continue
        try:
            if '..' in token:
                lo, hi = token.split('..')
                orders.extend(range(int(lo), int(hi) + 1))
            else:
                orders.append(int(token))
        except ValueError:
            raise click.BadParameter(f"invalid order {token!r}", param_hint=name) from None
    if not orders:
        raise click.BadParameter("at least one order is required", param_hint=name)
    return tuple(orders)


def parse_methods(text):
    methods = tuple(m.strip() for m in text.split(',') if m.strip())
    unknown = [m for m in methods if m not in BENCH_METHODS]
    if unknown or not methods:
        raise click.BadParameter(f"unknown method(s) {unknown}; choose from {', '.join(BENCH_METHODS)}",
                                 param_hint='--method')
    return methods


def emit(frame, config, command, header_extra=None):
    if header_extra:
        config = replace(config, extra={**config.extra, **header_extra})
    header = config.header(command)
    if config.output == '-':
        click.echo(format_csv(frame, header), nl=False)
    else:
        write_csv(frame, header, config.output)


def finish(ctx, failures):
    if failures:
        for failure in failures:
            click.echo(f"Claim failed: {failure}", err=True)
        ctx.exit(EXIT_CLAIM_FAILED)


def _defaults(table, fn_name):
    return table.get(fn_name, table['exp2x'])


@click.group(cls=DDPGroup)
@click.option('--verbose', '-v', is_flag=True, help='Debug logging on stderr.')
def cli(verbose):
    """Discrete differential operator tools."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
        force=True,
    )


output_option = click.option('--output', '-o', default='-', show_default=True, help="CSV path or '-' for stdout.")
assert_option = click.option('--assert', 'check', is_flag=True, help='Check the ordering/trend claims; exit 1 on failure.')


@cli.command()
@click.option('--fn', 'fn_name', default='exp2x', show_default=True, help='Built-in function or poly:c0,c1,...')
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), help='x,value CSV instead of --fn.')
@click.option('--h', 'spacings', help='Comma-separated sample intervals.')
@click.option('--n-points', type=int, help='Samples per estimate (N + 1).')
@click.option('--orders', help="Derivative orders, e.g. '0..10'.")
@click.option('--x0', type=float, default=0.0, show_default=True)
@click.option('--passthrough-zeroth', is_flag=True, help='Report the sample at x0 as order 0.')
@output_option
@assert_option
@click.pass_context
def derivatives(ctx, fn_name, input_path, spacings, n_points, orders, x0, passthrough_zeroth, output, check):
    """Derivative estimates against forward differences."""
    defaults = _defaults(DERIVATIVE_DEFAULTS, fn_name)
    n_points = n_points or defaults['n_points']
    orders = parse_orders(orders) if orders else tuple(range(n_points))
    if input_path:
        signal = read_signal(input_path)
        frame = experiments.derivative_table_from_signal(signal, n_points, orders, passthrough_zeroth,
                                                         truth=read_truth(input_path))
        anchor = signal.abscissa(experiments.signal_anchor(signal))
        config = BenchConfig(function=input_path, spacings=(signal.spacing,), counts=(n_points,), orders=orders,
                             passthrough_zeroth=passthrough_zeroth, output=output,
                             extra={'x0': anchor}).validate()
        emit(frame, config, 'derivatives')
        return
    fn = get_function(fn_name)
    spacings = parse_floats(spacings, '--h') if spacings else defaults['h']
    config = BenchConfig(function=fn.name, spacings=spacings, counts=(n_points,), orders=orders,
                         passthrough_zeroth=passthrough_zeroth, output=output, extra={'x0': x0}).validate()
    frame = experiments.derivative_table(fn, spacings, n_points, orders, x0, passthrough_zeroth)
    emit(frame, config, 'derivatives')
    if check:
        finish(ctx, experiments.check_derivative_claims(frame, fn.name))


@cli.command()
@click.option('--fn', 'fn_name', default='exp2x', show_default=True)
@click.option('--h', 'h', type=float, default=SWEEP_H, show_default=True)
@click.option('--counts', help="Sample counts, e.g. 3,5,7 or 3..9; default odd 3..21.")
@click.option('--orders', default=','.join(map(str, SWEEP_ORDERS)), show_default=True)
@click.option('--passthrough-zeroth', is_flag=True)
@output_option
@assert_option
@click.pass_context
def sweep(ctx, fn_name, h, counts, orders, passthrough_zeroth, output, check):
    """Error versus sample count at a fixed interval, with det(W)."""
    fn = get_function(fn_name)
    counts = parse_orders(counts, "--counts") if counts else SWEEP_COUNTS
    orders = parse_orders(orders)
    config = BenchConfig(function=fn.name, spacings=(h,), counts=counts, orders=orders,
                         passthrough_zeroth=passthrough_zeroth, output=output).validate()
    frame = experiments.sample_count_sweep(fn, h, counts, orders, passthrough_zeroth=passthrough_zeroth)
    emit(frame, config, 'sweep')
    if check:
        finish(ctx, experiments.check_sweep_claims(frame))


def _bench_options(f):
    options = [
        click.option('--factor', type=int, default=BENCH_FACTOR, show_default=True),
        click.option('--levels', type=int, default=BENCH_LEVELS, show_default=True, help='Pyramid depth.'),
        click.option('--kernel', type=click.Choice(sorted(KERNELS)), default=DEFAULT_KERNEL, show_default=True),
        click.option('--start', type=float, default=BENCH_START, show_default=True),
        click.option('--samples', 'n_samples', type=int, default=BENCH_COUNT, show_default=True),
        click.option('--noise', type=float, default=0.0, show_default=True, help='Gaussian noise sigma.'),
        click.option('--seed', type=int, default=0, show_default=True),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@cli.command()
@click.option('--fn', 'fn_name', default='exp2x', show_default=True)
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False),
              help='Fine x,value CSV used as oracle; every factor-th sample is the input.')
@click.option('--h', 'spacings', help='Comma-separated sample intervals.')
@click.option('--n-points', type=int)
@click.option('--method', 'methods', default=','.join(BENCH_METHODS), show_default=True)
@_bench_options
@click.option('--workers', type=int, default=1, show_default=True, help='Threads for independent cells.')
@output_option
@assert_option
@click.pass_context
def bench(ctx, fn_name, input_path, spacings, n_points, methods, factor, levels, kernel, start,
          n_samples, noise, seed, workers, output, check):
    """Interpolation error of every method summed over the dense grid."""
    defaults = _defaults(BENCH_DEFAULTS, fn_name)
    n_points = n_points or defaults['n_points']
    methods = parse_methods(methods)
    if input_path:
        oracle = read_signal(input_path)
        fn, name, spacings = None, input_path, (oracle.spacing * factor,)
    else:
        oracle = None
        fn = get_function(fn_name)
        name = fn.name
        spacings = parse_floats(spacings, '--h') if spacings else defaults['h']
    config = BenchConfig(function=name, spacings=spacings, counts=(n_points,), factor=factor, methods=methods,
                         levels=levels, kernel=kernel, start=start, n_samples=n_samples, noise=noise,
                         seed=seed, workers=workers, output=output, extra={'spline': 'natural'}).validate()
    frame = experiments.interp_bench(fn, spacings, n_points, methods, factor, levels, kernel, start,
                                     n_samples, noise, seed, workers, oracle=oracle)
    emit(frame, config, 'bench')
    if check:
        finish(ctx, experiments.check_interp_claims(frame))


@cli.command()
@click.option('--fn', 'fn_name', default='exp2x', show_default=True)
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), help='x,value CSV to densify.')
@click.option('--h', 'h', type=float, default=0.0625, show_default=True, help='Interval when sampling --fn.')
@click.option('--n-points', type=int, default=5, show_default=True)
@click.option('--method', default='ddp-vanilla', type=click.Choice(BENCH_METHODS), show_default=True)
@_bench_options
@output_option
def interp(fn_name, input_path, h, n_points, method, factor, levels, kernel, start, n_samples, noise, seed, output):
    """Densify a signal by an integer factor; writes x,value."""
    if input_path:
        signal, name = read_signal(input_path), input_path
    else:
        fn = get_function(fn_name)
        signal, name = Signal.from_function(fn, start, h, n_samples), fn.name
    signal = experiments.add_noise(signal, noise, np.random.default_rng([seed, 0]))
    config = BenchConfig(function=name, spacings=(signal.spacing,), counts=(n_points,), factor=factor,
                         methods=(method,), levels=levels, kernel=kernel, start=signal.start,
                         n_samples=len(signal), noise=noise, seed=seed, output=output).validate()
    dense = experiments.interp_signal(signal, factor, n_points, method, levels, kernel)
    emit(pd.DataFrame({'x': dense.abscissae, 'value': dense.array}), config, 'interp')


@cli.command()
@click.option('--h', 'h', type=float, default=BOUNDS_H, show_default=True)
@click.option('--orders', default='1..4,repr', show_default=True, help="Derivative orders; 'repr' for the representation bound.")
@click.option('--max-points', type=int, default=BOUNDS_MAX_POINTS, show_default=True)
@output_option
def bounds(h, orders, max_points, output):
    """Bound curves versus sample count (M = 1, K = (n - 1) / 2)."""
    orders = parse_orders(orders, allow_repr=True)
    config = BenchConfig(function='bound', spacings=(h,), counts=(max_points,), orders=orders, output=output).validate()
    emit(experiments.bounds_table(h, orders, max_points), config, 'bounds')


@cli.command()
@click.option('--offsets', help='Comma-separated offsets; default is symmetric equidistant.')
@click.option('--h', 'h', type=float, default=SWEEP_H, show_default=True)
@click.option('--n-points', type=int, default=5, show_default=True)
@click.option('--curve', is_flag=True, help='Determinant versus sample count instead of inverse entries.')
@click.option('--counts', help="Sample counts for --curve, e.g. 1..19; default odd 1..19.")
@output_option
def vandermonde(offsets, h, n_points, curve, counts, output):
    """Explicit inverse entries; the determinant goes into the header."""
    config = BenchConfig(function="vandermonde", spacings=(h,), counts=(), output=output).validate()
    if curve:
        counts = parse_orders(counts, '--counts') if counts else DETERMINANT_COUNTS
        emit(experiments.determinant_table(h, counts), config, 'vandermonde', {'h': h})
        return
    if offsets:
        values = parse_floats(offsets, '--offsets')
    else:
        values = tuple(experiments.equidistant_offsets(n_points, h))
    frame, det = experiments.vandermonde_table(values)
    emit(frame, config, 'vandermonde', {'offsets': values, 'det': repr(det)})


@cli.command()
@click.option('--fn', 'fn_name', default='poly', show_default=True, help='poly, expxy or xy.')
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), help='x,y,value grid CSV.')
@click.option('--side', type=int, default=3, show_default=True)
@click.option('--h', 'h', type=float, default=0.25, show_default=True)
@click.option('--x0', type=float, default=0.0, show_default=True)
@click.option('--y0', type=float, default=0.0, show_default=True)
@output_option
def derivatives2d(fn_name, input_path, side, h, x0, y0, output):
    """All partial derivatives in the ZigZag basis at the grid center."""
    if input_path:
        grid, samples = read_grid(input_path)
        frame = experiments.derivatives2d_from_samples(grid, samples)
        name = input_path
        side, h, x0, y0 = grid.side, grid.h, grid.x0, grid.y0
    else:
        fn = get_function_2d(fn_name)
        frame = experiments.derivatives2d_table(fn, side, h, x0, y0)
        name = fn.name
    config = BenchConfig(function=name, spacings=(h,), counts=(), output=output,
                         extra={'side': side, 'x0': x0, 'y0': y0}).validate()
    emit(frame, config, 'derivatives2d')


@cli.command()
@click.pass_context
def selfcheck(ctx):
    """Compare every derivative oracle with a central difference."""
    frame = self_check()
    click.echo(frame.to_csv(index=False, lineterminator='\n'), nl=False)
    failed = frame[~frame['ok']]
    finish(ctx, [f"{row.function} order {row.order} at x={row.x:g}" for row in failed.itertuples()])


@cli.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', type=int, default=5000, show_default=True)
@click.option('--debug', is_flag=True)
def serve(host, port, debug):
    """Run the JSON API."""
    from ddp.web import create_app

    create_app().run(host=host, port=port, debug=debug)


def main():
    cli(prog_name='ddp')
