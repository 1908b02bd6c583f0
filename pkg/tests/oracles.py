"""Independent reference computations used only by the tests.

None of these touch the enclosure machinery or Heap enumeration.
"""

import itertools
from fractions import Fraction

import mpmath


def factorial_by_multiplication(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def count_fixed_point_free(n):
    return sum(
        1 for s in itertools.permutations(range(n)) if all(i != x for i, x in enumerate(s))
    )


def mp_value(a, b, c, digits):
    """a + b e + c/e evaluated with mpmath at the given working precision."""
    with mpmath.workdps(digits):
        a, b, c = (Fraction(v) for v in (a, b, c))
        to_mp = lambda q: mpmath.mpf(q.numerator) / q.denominator
        return to_mp(a) + to_mp(b) * mpmath.e + to_mp(c) / mpmath.e


def mp_floor(a, b, c):
    """Floor of an irrational a + b e + c/e via mpmath with generous guard digits."""
    size = max(
        len(str(Fraction(v).numerator)) + len(str(Fraction(v).denominator))
        for v in (a, b, c)
    )
    digits = size + 40
    with mpmath.workdps(digits):
        v = mp_value(a, b, c, digits)
        assert abs(v - mpmath.nint(v)) > mpmath.mpf(10) ** (-(digits // 2))
        return int(mpmath.floor(v))
