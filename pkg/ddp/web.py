"""
JSON API over the experiment harness.

Errors come back as {"error": message}: 400 for invalid input, 422 for a
singular matrix, 500 for anything unexpected.
"""

from flask import Flask, jsonify, request
from werkzeug.exceptions import HTTPException

from ddp import experiments
from ddp.config import BENCH_FACTOR, BENCH_LEVELS, BENCH_METHODS, BOUNDS_MAX_POINTS, DEFAULT_KERNEL
from ddp.errors import DomainError, SingularMatrixError
from ddp.functions import BUILTINS, BUILTINS_2D, get_function, get_function_2d
from ddp.localrep import Signal

ENDPOINTS = {
    'GET /api/functions': 'built-in test functions',
    'POST /api/derivatives': 'derivative table for a built-in function',
    'GET /api/bounds': 'bound curves (h, orders, max_points)',
    'POST /api/interp': 'densify a signal',
    'POST /api/derivatives2d': 'partial derivatives on a square grid',
}


def _payload():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise DomainError("request body must be a JSON object")
    return data


def _field(data, name, kind, default=None):
    value = data.get(name, default)
    if value is None:
        raise DomainError(f"missing field {name!r}")
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise DomainError(f"field {name!r} must be {kind.__name__}, got {value!r}") from None


def _floats(value, name):
    if isinstance(value, (int, float)):
        return (float(value),)
    if isinstance(value, str):
        value = value.split(',')
    try:
        return tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise DomainError(f"field {name!r} must be a number or a list of numbers") from None


def _records(frame):
    """DataFrame rows as JSON-safe dicts (NaN becomes null)."""
    return frame.astype(object).where(frame.notna(), None).to_dict(orient='records')


def create_app(config=None):
    app = Flask(__name__)
    app.config.update(
        BENCH_FACTOR=BENCH_FACTOR,
        BENCH_LEVELS=BENCH_LEVELS,
        DEFAULT_KERNEL=DEFAULT_KERNEL,
        BOUNDS_MAX_POINTS=BOUNDS_MAX_POINTS,
        MAX_SIGNAL_LENGTH=100_000,
    )
    if config:
        app.config.update(config)

    @app.errorhandler(DomainError)
    def domain_error(e):
        app.logger.info(f"Rejected request to {request.path}: {e}")
        return jsonify({'error': str(e)}), 400

    @app.errorhandler(SingularMatrixError)
    def singular_error(e):
        app.logger.warning(f"Singular matrix in {request.path}: {e}")
        return jsonify({'error': str(e)}), 422

    @app.errorhandler(Exception)
    def unexpected_error(e):
        if isinstance(e, HTTPException):
            return jsonify({'error': e.description}), e.code
        app.logger.error(f"Error in {request.path}: {e}")
        return jsonify({'error': 'internal error'}), 500

    @app.route('/')
    def index():
        return jsonify({'service': 'ddp', 'endpoints': ENDPOINTS})

    @app.route('/api/functions')
    def api_functions():
        return jsonify({
            '1d': sorted(BUILTINS) + ['poly:c0,c1,...'],
            '2d': sorted(BUILTINS_2D),
            'methods': list(BENCH_METHODS),
        })

    @app.route('/api/derivatives', methods=['POST'])
    def api_derivatives():
        data = _payload()
        fn = get_function(_field(data, 'fn', str))
        n_points = _field(data, 'n_points', int)
        spacings = _floats(data.get('h'), 'h')
        orders = data.get('orders')
        if orders is not None:
            try:
                orders = tuple(int(o) for o in orders)
            except (TypeError, ValueError):
                raise DomainError("field 'orders' must be a list of integers") from None
        frame = experiments.derivative_table(fn, spacings, n_points, orders,
                                             x0=_field(data, 'x0', float, 0.0),
                                             passthrough_zeroth=bool(data.get('passthrough_zeroth', False)))
        app.logger.info(f"Derivative table for {fn.name}: {len(frame)} rows")
        return jsonify({'function': fn.name, 'rows': _records(frame)})

    @app.route('/api/bounds')
    def api_bounds():
        h = request.args.get('h', type=float)
        if h is None:
            raise DomainError("query parameter 'h' is required")
        max_points = request.args.get('max_points', app.config['BOUNDS_MAX_POINTS'], type=int)
        tokens = request.args.get('orders', '1,2,3,4,repr').split(',')
        orders = []
        for token in (t.strip() for t in tokens if t.strip()):
            if token == experiments.REPRESENTATION:
                orders.append(token)
            elif token.isdigit():
                orders.append(int(token))
            else:
                raise DomainError(f"invalid order {token!r}")
        frame = experiments.bounds_table(h, tuple(orders), max_points)
        return jsonify({'h': h, 'rows': _records(frame)})

    @app.route('/api/interp', methods=['POST'])
    def api_interp():
        data = _payload()
        if 'values' in data:
            values = _floats(data['values'], 'values')
            signal = Signal.from_values(_field(data, 'start', float, 0.0), _field(data, 'spacing', float), values)
        else:
            fn = get_function(_field(data, 'fn', str))
            signal = Signal.from_function(fn, _field(data, 'start', float, 0.0), _field(data, 'spacing', float),
                                          _field(data, 'count', int))
        if len(signal) > app.config['MAX_SIGNAL_LENGTH']:
            raise DomainError(f"signal longer than {app.config['MAX_SIGNAL_LENGTH']} samples")
        dense = experiments.interp_signal(
            signal,
            factor=_field(data, 'factor', int, app.config['BENCH_FACTOR']),
            n_points=_field(data, 'n_points', int, 5),
            method=_field(data, 'method', str, 'ddp-vanilla'),
            levels=_field(data, 'levels', int, app.config['BENCH_LEVELS']),
            kernel=_field(data, 'kernel', str, app.config['DEFAULT_KERNEL']),
        )
        return jsonify({'start': dense.start, 'spacing': dense.spacing, 'values': list(dense.values)})

    @app.route('/api/derivatives2d', methods=['POST'])
    def api_derivatives2d():
        data = _payload()
        fn = get_function_2d(_field(data, 'fn', str))
        frame = experiments.derivatives2d_table(fn, _field(data, 'side', int, 3), _field(data, 'h', float),
                                                _field(data, 'x0', float, 0.0), _field(data, 'y0', float, 0.0))
        return jsonify({'function': fn.name, 'rows': _records(frame)})

    return app
