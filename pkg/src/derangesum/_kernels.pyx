# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; must stay step-for-step identical to ``_kernels_py``."""

from libc.math cimport exp, pow, fabs
from libc.stdlib cimport malloc, free

from derangesum._kernels_py import QuadratureError

DEF MAX_N = 20
DEF MAX_DEPTH = 60


def count_derangements(int n):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_N:
        raise ValueError("n too large for the compiled kernel")
    cdef int a[MAX_N]
    cdef int c[MAX_N]
    cdef int i, j, x, y, fixed = n
    cdef unsigned long long total = 1 if n == 0 else 0
    for i in range(n):
        a[i] = i
        c[i] = 0
    i = 1
    with nogil:
        while i < n:
            if c[i] < i:
                j = c[i] if (i & 1) else 0
                x = a[j]
                y = a[i]
                fixed -= (x == j) + (y == i)
                a[j] = y
                a[i] = x
                fixed += (y == j) + (x == i)
                if fixed == 0:
                    total += 1
                c[i] += 1
                i = 1
            else:
                c[i] = 0
                i += 1
    return total


cdef inline double _f(int n, double t) nogil:
    return exp(-t) * pow(t, n)


cdef struct Panel:
    double a, b, fa, fm, fb, whole, tol
    int depth


def adaptive_simpson(int n, double a, double b, double tol, long max_evals):
    cdef double fa = _f(n, a)
    cdef double fm = _f(n, 0.5 * (a + b))
    cdef double fb = _f(n, b)
    cdef long evals = 3
    cdef double value = 0.0, err = 0.0
    cdef double m0, lm, rm, flm, frm, h, left, right, delta
    cdef Panel p
    cdef int top = 0
    cdef int failed = 0
    # depth-first refinement holds at most MAX_DEPTH + 1 pending panels
    cdef Panel *stack = <Panel *> malloc((MAX_DEPTH + 2) * sizeof(Panel))
    if stack == NULL:
        raise MemoryError()
    try:
        stack[0].a = a
        stack[0].b = b
        stack[0].fa = fa
        stack[0].fm = fm
        stack[0].fb = fb
        stack[0].whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        stack[0].tol = tol
        stack[0].depth = 0
        top = 1
        with nogil:
            while top > 0:
                top -= 1
                p = stack[top]
                m0 = 0.5 * (p.a + p.b)
                lm = 0.5 * (p.a + m0)
                rm = 0.5 * (m0 + p.b)
                flm = _f(n, lm)
                frm = _f(n, rm)
                evals += 2
                h = (p.b - p.a) / 12.0
                left = h * (p.fa + 4.0 * flm + p.fm)
                right = h * (p.fm + 4.0 * frm + p.fb)
                delta = left + right - p.whole
                if fabs(delta) <= 15.0 * p.tol:
                    value += left + right + delta / 15.0
                    err += fabs(delta) / 15.0
                    continue
                if p.depth >= MAX_DEPTH or evals >= max_evals:
                    failed = 1
                    break
                stack[top].a = m0
                stack[top].b = p.b
                stack[top].fa = p.fm
                stack[top].fm = frm
                stack[top].fb = p.fb
                stack[top].whole = right
                stack[top].tol = 0.5 * p.tol
                stack[top].depth = p.depth + 1
                top += 1
                stack[top].a = p.a
                stack[top].b = m0
                stack[top].fa = p.fa
                stack[top].fm = flm
                stack[top].fb = p.fm
                stack[top].whole = left
                stack[top].tol = 0.5 * p.tol
                stack[top].depth = p.depth + 1
                top += 1
    finally:
        free(stack)
    if failed:
        raise QuadratureError(
            f"no convergence on [{a}, {b}] after {evals} evaluations"
        )
    return value, err, evals
