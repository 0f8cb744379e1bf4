"""
Configuration for the discrete differential operator tools.

Defaults mirror the experiment setups the operator was evaluated with:
derivative tables, sample-count sweep, interpolation benchmark and
bound curves.
"""

from dataclasses import dataclass, field, asdict

# Numerics
MAX_ORDER = 20                  # factorial table and plan size limit
SINGULAR_RTOL = 1e-12           # 2D design matrix screening threshold
STABLE_FD_STEP = 1e-3           # built-in oracle self-check step

# Derivative tables
DERIVATIVE_DEFAULTS = {
    'exp2x': {'h': (0.5, 0.25, 0.125, 0.0675, 0.03375), 'n_points': 11, 'orders': tuple(range(0, 11))},
    'sinsin10': {'h': (0.25, 0.125, 0.0625, 0.03125), 'n_points': 7, 'orders': tuple(range(0, 7))},
}

# Sample-count sweep
SWEEP_H = 0.125
SWEEP_COUNTS = tuple(range(3, 22, 2))
SWEEP_ORDERS = (0, 1, 2, 3, 4)
DETERMINANT_COUNTS = tuple(range(1, 20, 2))

# Interpolation benchmark
BENCH_START = -10.0
BENCH_COUNT = 300
BENCH_FACTOR = 4
BENCH_LEVELS = 2
BENCH_METHODS = ('ddp-vanilla', 'ddp-pyramid', 'spline', 'linear')
BENCH_DEFAULTS = {
    'exp2x': {'h': (0.0625, 0.03125, 0.015625), 'n_points': 5},
    'sinsin10': {'h': (0.125, 0.0125, 0.00125), 'n_points': 9},
}

# Bound curves
BOUNDS_H = 0.0625
BOUNDS_MAX_POINTS = 35

# Pyramid
DEFAULT_KERNEL = 'binomial'

# CSV
CSV_LINE_TERMINATOR = '\n'

# BenchConfig fields each command reads; only these go into its header line
_DERIVATIVE_FIELDS = ('function', 'spacings', 'counts', 'orders', 'passthrough_zeroth')
_INTERP_FIELDS = ('function', 'spacings', 'counts', 'methods', 'factor', 'levels', 'kernel',
                  'start', 'n_samples', 'noise', 'seed')
HEADER_FIELDS = {
    'derivatives': _DERIVATIVE_FIELDS,
    'sweep': _DERIVATIVE_FIELDS,
    'bench': _INTERP_FIELDS,
    'interp': _INTERP_FIELDS,
    'bounds': ('spacings', 'counts', 'orders'),
    'vandermonde': (),
    'derivatives2d': ('function', 'spacings'),
}


@dataclass(frozen=True)
class BenchConfig:
    """One harness invocation: what to run and where to write it."""

    function: str = 'exp2x'
    spacings: tuple = (0.0625,)
    counts: tuple = (5,)
    orders: tuple = ()
    factor: int = BENCH_FACTOR
    methods: tuple = BENCH_METHODS
    levels: int = BENCH_LEVELS
    kernel: str = DEFAULT_KERNEL
    start: float = BENCH_START
    n_samples: int = BENCH_COUNT
    passthrough_zeroth: bool = False
    noise: float = 0.0
    seed: int = 0
    workers: int = 1
    output: str = '-'
    extra: dict = field(default_factory=dict)

    def validate(self):
        """Raise DomainError for spacings <= 0 or counts < 2."""
        from ddp.errors import DomainError

        if not self.spacings:
            raise DomainError("at least one spacing is required")
        bad = [h for h in self.spacings if not h > 0]
        if bad:
            raise DomainError(f"spacings must be > 0, got {bad}")
        small = [n for n in self.counts if n < 2]
        if small:
            raise DomainError(f"sample counts must be >= 2, got {small}")
        if self.factor < 2:
            raise DomainError(f"interpolation factor must be >= 2, got {self.factor}")
        if self.noise < 0:
            raise DomainError(f"noise must be >= 0, got {self.noise}")
        return self

    def header(self, command):
        """Single-line reproducibility header for CSV output (without '#')."""
        fields = HEADER_FIELDS.get(command)
        items = {k: v for k, v in asdict(self).items()
                 if k not in ('extra', 'output') and (fields is None or k in fields)}
        items.update(self.extra)
        parts = [f"command={command}"]
        for key in sorted(items):
            value = items[key]
            if isinstance(value, (tuple, list)):
                value = ','.join(repr(v) if isinstance(v, float) else str(v) for v in value)
            parts.append(f"{key}={value}")
        return ' '.join(parts)
