"""Floating-point quadrature of exp(-t) t**n, an independent check on the
exact integral values."""

from __future__ import annotations

import math
from dataclasses import dataclass

from derangesum import _accel
from derangesum._accel import QuadratureError

MAX_EVALUATIONS = 1_000_000
MIN_TOL = 1e-12
MAX_FINITE_N = 20
MAX_TAIL_N = 15

__all__ = [
    "QuadResult",
    "QuadratureError",
    "integrate_exp_monomial",
    "integrate_tail",
    "tail_bound",
    "truncation_point",
]


@dataclass(frozen=True)
class QuadResult:
    value: float
    estimated_error: float
    evaluations: int

    def __post_init__(self):
        if not self.estimated_error >= 0:
            raise ValueError("estimated_error must be non-negative")


def integrate_exp_monomial(n: int, a: float, b: float, tol: float = 1e-10) -> QuadResult:
    """Integral of exp(-t) t**n over the finite interval [a, b]."""
    if not 0 <= n <= MAX_FINITE_N:
        raise ValueError(f"n must lie in 0..{MAX_FINITE_N}, got {n}")
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValueError(f"need finite a < b, got [{a}, {b}]")
    if tol < MIN_TOL:
        raise ValueError(f"tol must be at least {MIN_TOL}, got {tol}")
    value, err, evals = _accel.adaptive_simpson(
        n, float(a), float(b), float(tol), MAX_EVALUATIONS
    )
    return QuadResult(value, err, evals)


def tail_bound(n: int, T: float) -> float:
    """Upper bound 2 T**n exp(-T) on the integral of exp(-t) t**n over [T, inf).

    Valid for T >= 2n, where the ratio of successive terms of the
    integration-by-parts expansion is at most 1/2.
    """
    if T < 2 * n:
        raise ValueError(f"tail bound needs T >= 2n, got T = {T}, n = {n}")
    if n == 0:
        return 2.0 * math.exp(-T)
    return 2.0 * math.exp(n * math.log(T) - T)


def truncation_point(n: int, tol: float) -> float:
    """Smallest T of the form max(50, 4n) + 10k whose tail bound is below tol/2."""
    T = float(max(50, 4 * n))
    while tail_bound(n, T) > tol / 2:
        T += 10.0
    return T


def integrate_tail(n: int, tol: float = 1e-6, T: float | None = None) -> QuadResult:
    """Integral of exp(-t) t**n over [0, inf): quadrature on [0, T] plus a
    certified bound on the discarded tail."""
    if not 0 <= n <= MAX_TAIL_N:
        raise ValueError(f"n must lie in 0..{MAX_TAIL_N}, got {n}")
    if tol < MIN_TOL:
        raise ValueError(f"tol must be at least {MIN_TOL}, got {tol}")
    if T is None:
        T = truncation_point(n, tol)
    bound = tail_bound(n, T)
    if bound > tol / 2:
        raise ValueError(f"tail bound {bound:.3g} exceeds tol/2 at T = {T}")
    head = integrate_exp_monomial(n, 0.0, T, max(tol / 2, MIN_TOL))
    return QuadResult(head.value, head.estimated_error + bound, head.evaluations)
