"""The compiled kernels and their pure-Python twins must agree exactly."""

import math
import subprocess
import sys

import pytest

from derangesum import _accel, _kernels_py

compiled = pytest.importorskip("derangesum._kernels")


@pytest.mark.parametrize("n", range(0, 11))
def test_count_derangements_backends_agree(n):
    assert compiled.count_derangements(n) == _kernels_py.count_derangements(n)


def test_compiled_count_at_cap():
    assert compiled.count_derangements(11) == 14684570
    assert compiled.count_derangements(12) == 176214841


@pytest.mark.parametrize("n", [0, 1, 5, 12, 20])
@pytest.mark.parametrize("interval", [(-1.0, 0.0), (0.0, 50.0), (0.5, 3.0)])
def test_simpson_backends_agree(n, interval):
    a, b = interval
    # n! bounds the integral over any subset of [0, inf); e bounds it on [-1, 0]
    tol = 1e-10 * math.factorial(n) * math.e
    assert compiled.adaptive_simpson(n, a, b, tol, 10**6) == pytest.approx(
        _kernels_py.adaptive_simpson(n, a, b, tol, 10**6), rel=1e-13
    )


@pytest.mark.parametrize("backend", [compiled, _kernels_py])
def test_simpson_evaluation_cap(backend):
    with pytest.raises(_kernels_py.QuadratureError):
        backend.adaptive_simpson(12, 0.0, 60.0, 1e-15, 50)


def test_default_backend_is_compiled():
    assert _accel.BACKEND == "cython"


def test_pure_python_override():
    code = "from derangesum import _accel; print(_accel.BACKEND)"
    env = {"DERANGESUM_PURE_PYTHON": "1", "PATH": ""}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
