"""Pure-Python kernels; the reference twin of ``_kernels.pyx``."""

import math

MAX_DEPTH = 60


class QuadratureError(ArithmeticError):
    pass


def count_derangements(n):
    """Fixed-point-free permutations of ``n`` items, enumerated by Heap's method.

    The fixed-point count is maintained incrementally across swaps.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    a = list(range(n))
    c = [0] * n
    fixed = n
    total = 1 if fixed == 0 else 0
    i = 1
    while i < n:
        if c[i] < i:
            j = c[i] if i & 1 else 0
            x, y = a[j], a[i]
            fixed -= (x == j) + (y == i)
            a[j], a[i] = y, x
            fixed += (y == j) + (x == i)
            if fixed == 0:
                total += 1
            c[i] += 1
            i = 1
        else:
            c[i] = 0
            i += 1
    return total


def _f(n, t):
    return math.exp(-t) * t ** n


def adaptive_simpson(n, a, b, tol, max_evals):
    """Adaptive Simpson estimate of the integral of exp(-t) t**n over [a, b].

    Returns ``(value, estimated_error, evaluations)``.  Panels are refined
    depth-first (LIFO) until ``|S2 - S1| <= 15 * local_tol``; accepted panels
    contribute the Richardson-corrected value and ``|S2 - S1| / 15`` to the
    error estimate.
    """
    fa, fm, fb = _f(n, a), _f(n, 0.5 * (a + b)), _f(n, b)
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    value = 0.0
    err = 0.0
    while stack:
        a0, b0, fa0, fm0, fb0, whole0, tol0, depth = stack.pop()
        m0 = 0.5 * (a0 + b0)
        lm = 0.5 * (a0 + m0)
        rm = 0.5 * (m0 + b0)
        flm = _f(n, lm)
        frm = _f(n, rm)
        evals += 2
        h = (b0 - a0) / 12.0
        left = h * (fa0 + 4.0 * flm + fm0)
        right = h * (fm0 + 4.0 * frm + fb0)
        delta = left + right - whole0
        if abs(delta) <= 15.0 * tol0:
            value += left + right + delta / 15.0
            err += abs(delta) / 15.0
            continue
        if depth >= MAX_DEPTH or evals >= max_evals:
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {evals} evaluations"
            )
        stack.append((m0, b0, fm0, frm, fb0, right, 0.5 * tol0, depth + 1))
        stack.append((a0, m0, fa0, flm, fm0, left, 0.5 * tol0, depth + 1))
    return value, err, evals
