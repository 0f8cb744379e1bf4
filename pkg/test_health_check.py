"""
Test environment health check script.

This script provides:
- Dependency check
- Derivative oracle self-check
- Numerical smoke checks of the operator
- Command line exit codes
- Test collection check
"""

import os
import subprocess
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

try:
    import numpy as np

    from ddp.diffop1d import estimate_derivatives, make_plan
    from ddp.functions import get_function, self_check
    from ddp.vandermonde import build_matrix, determinant, inverse_explicit
except ImportError as e:
    print(f"Error importing ddp package: {e}")
    sys.exit(1)


class TestHealthCheck:
    """Health check for test environment and package."""

    def __init__(self):
        self.passed = 0
        self.failed = 0
        self.warnings = 0

    def check(self, name, condition, warning=False):
        if condition:
            self.passed += 1
            print(f"✅ {name}")
            return True
        if warning:
            self.warnings += 1
            print(f"⚠️  {name}")
        else:
            self.failed += 1
            print(f"❌ {name}")
        return False

    def info(self, message):
        print(f"ℹ️  {message}")

    def summary(self):
        total = self.passed + self.failed + self.warnings
        print("\n📊 Health Check Summary:")
        print(f"   Passed: {self.passed}/{total}")
        print(f"   Failed: {self.failed}/{total}")
        print(f"   Warnings: {self.warnings}/{total}")
        if self.failed == 0:
            print("\n🎉 All critical checks passed!")
            return True
        print(f"\n💥 {self.failed} critical issues found!")
        return False


def check_dependencies():
    health = TestHealthCheck()

    print("\n📦 Dependency Check")
    print("=" * 50)

    for package in ['flask', 'click', 'pandas', 'numpy', 'scipy', 'pytest', 'psutil']:
        try:
            __import__(package)
            health.check(f"{package} is available", True)
        except ImportError:
            health.check(f"{package} is available", False, warning=package == 'psutil')

    return health.summary()


def check_oracles():
    """Exact derivative oracles against central differences."""
    health = TestHealthCheck()

    print("\n🔍 Derivative Oracle Check")
    print("=" * 50)

    frame = self_check()
    for name, group in frame.groupby('function', sort=True):
        health.check(f"{name}: {int(group['ok'].sum())}/{len(group)} comparisons agree", bool(group['ok'].all()))

    return health.summary()


def check_numerics():
    """Explicit inverse, determinant and a derivative table against references."""
    health = TestHealthCheck()

    print("\n🔧 Operator Smoke Check")
    print("=" * 50)

    try:
        offsets = [-0.3, -0.1, 0.05, 0.2, 0.4]
        w = build_matrix(offsets)
        start_time = time.time()
        inverse = inverse_explicit(w)
        inverse_time = time.time() - start_time
        health.check("inverse_explicit matches numpy.linalg.inv",
                     np.allclose(inverse, np.linalg.inv(w.rows), rtol=1e-8, atol=0))
        health.check("determinant matches numpy.linalg.det",
                     abs(determinant(w) - np.linalg.det(w.rows)) <= 1e-10 * abs(determinant(w)))
        health.check("Inverse performance (<50ms)", inverse_time < 0.05, warning=True)

        fn = get_function('exp2x')
        plan = make_plan(0.0, 0.125, 7)
        estimates = estimate_derivatives(plan, fn(np.array(plan.abscissae)), fn.derivatives(0.0, range(7)))
        health.check("exp2x first derivative within 1e-6", estimates.abs_error[1] < 1e-6)
        health.info(f"   order 1..4 errors: {['%.2e' % e for e in estimates.abs_error[1:5]]}")
    except Exception as e:
        health.check("Operator calls", False)
        health.info(f"   Error: {e}")

    return health.summary()


def check_cli():
    """Exit codes of the command line for success and each error class."""
    health = TestHealthCheck()

    print("\n⌨️  Command Line Check")
    print("=" * 50)

    main_py = str(Path(__file__).parent / 'main.py')
    cases = [
        (['vandermonde', '--offsets=-1,0,1'], 0, "vandermonde exits 0"),
        (['vandermonde', '--offsets=0,0.5,0.5'], 3, "colliding offsets exit 3"),
        (['derivatives', '--fn', 'cosh'], 2, "unknown function exits 2"),
    ]
    for args, expected, name in cases:
        try:
            result = subprocess.run([sys.executable, main_py] + args, capture_output=True, text=True, timeout=60)
        except subprocess.TimeoutExpired:
            health.check(f"{name} (timed out)", False)
            continue
        health.check(name, result.returncode == expected)
        if result.returncode != expected:
            health.info(f"   got {result.returncode}: {result.stderr.strip()[:200]}")

    return health.summary()


def run_quick_test():
    """Run a quick test to ensure pytest is working."""
    health = TestHealthCheck()

    print("\n🧪 Quick Test Execution")
    print("=" * 50)

    try:
        result = subprocess.run(['pytest', '--version'], capture_output=True, text=True, timeout=10)
        health.check("pytest is installed", result.returncode == 0)

        if os.path.exists('tests'):
            result = subprocess.run(['pytest', 'tests/', '--collect-only', '-q'],
                                    capture_output=True, text=True, timeout=60)
            health.check("Test collection works", result.returncode == 0)
            if result.returncode != 0:
                health.info(f"   Collection error: {result.stderr}")
        else:
            health.check("Tests directory exists", False)

    except subprocess.TimeoutExpired:
        health.check("pytest responds in reasonable time", False)
    except Exception as e:
        health.check("pytest execution", False)
        health.info(f"   Error: {e}")

    return health.summary()


def main():
    print("🏥 Discrete Differential Operator - Test Environment Health Check")
    print("=" * 60)

    all_passed = True
    all_passed &= check_dependencies()
    all_passed &= check_oracles()
    all_passed &= check_numerics()
    all_passed &= check_cli()
    all_passed &= run_quick_test()

    print("\n" + "=" * 60)
    if all_passed:
        print("🎉 All systems ready for testing!")
        print("\n💡 Next steps:")
        print("   • Run './run_tests.sh quick' for fast tests")
        print("   • Run './run_tests.sh all' for complete test suite")
        print("   • Run './run_tests.sh coverage' for coverage analysis")
        print("   • Run './run_tests.sh claims' to reproduce the method rankings")
        return 0
    print("⚠️  Some issues detected. Please resolve before testing.")
    print("\n💡 Common solutions:")
    print("   • Install missing dependencies: pip install -r requirements.txt")
    return 1


if __name__ == "__main__":
    sys.exit(main())
