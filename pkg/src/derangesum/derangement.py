"""Derangement numbers D(n), the partial sums S_p and Sedgewick's A_N.

Every formula is its own code path so that the methods can be played off
against each other.  D(0) = 1 throughout.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from derangesum.exact import ELaurent, el_floor, el_nearest, factorial


def _require_nonneg(name: str, n: int) -> None:
    if n < 0:
        raise ValueError(f"{name} requires a non-negative argument, got {n}")


def d_sum(n: int) -> int:
    """n! * sum_{i=0..n} (-1)^i / i!, evaluated over the rationals."""
    _require_nonneg("d_sum", n)
    total = Fraction(0)
    ifact = 1
    for i in range(n + 1):
        if i:
            ifact *= i
        total += Fraction((-1) ** i, ifact)
    value = total * factorial(n)
    assert value.denominator == 1, f"non-integral D({n}) = {value}"
    return value.numerator


def d_pair_recurrence(n: int) -> int:
    """D(n) = (n-1)(D(n-1) + D(n-2)) from D(0) = 1, D(1) = 0."""
    _require_nonneg("d_pair_recurrence", n)
    prev, cur = 1, 0
    if n == 0:
        return prev
    for k in range(2, n + 1):
        prev, cur = cur, (k - 1) * (cur + prev)
    return cur


def d_signed_recurrence(n: int) -> int:
    """D(n) = n D(n-1) + (-1)^n from D(0) = 1."""
    _require_nonneg("d_signed_recurrence", n)
    d = 1
    for k in range(1, n + 1):
        d = k * d + (1 if k % 2 == 0 else -1)
    return d


def d_floor_formula(n: int) -> int:
    """floor((n! + 1)/e).

    Equals D(n) for n >= 1 only; at n = 0 it returns floor(2/e) = 0.
    """
    _require_nonneg("d_floor_formula", n)
    return el_floor(ELaurent(0, 0, factorial(n) + 1))


def d_nearest_formula(n: int) -> int:
    """Nearest integer to n!/e; stated for n >= 1."""
    if n < 1:
        raise ValueError(f"d_nearest_formula requires n >= 1, got {n}")
    return el_nearest(ELaurent(0, 0, factorial(n)))


METHODS = {
    "sum": d_sum,
    "pair": d_pair_recurrence,
    "signed": d_signed_recurrence,
    "floor": d_floor_formula,
    "nearest": d_nearest_formula,
}


class DerangementTable:
    """Lazily extended memo of D(n).

    Entries are produced by the signed recurrence and checked against the
    pair recurrence as they are inserted.  Reads of already cached entries
    take no lock; extension is serialized.
    """

    def __init__(self):
        self._values = [1, 0]
        self._methods = ["seed", "seed"]
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._values)

    def _extend(self, n: int) -> None:
        with self._lock:
            values = self._values
            for k in range(len(values), n + 1):
                d = k * values[k - 1] + (1 if k % 2 == 0 else -1)
                if d != (k - 1) * (values[k - 1] + values[k - 2]):
                    raise AssertionError(f"recurrences disagree at n = {k}")
                values.append(d)
                self._methods.append("signed")

    def __getitem__(self, n: int) -> int:
        _require_nonneg("DerangementTable", n)
        if n >= len(self._values):
            self._extend(n)
        return self._values[n]

    def upto(self, n: int) -> list[int]:
        """D(0), ..., D(n) as a fresh list."""
        self[n]
        return self._values[: n + 1]

    def method(self, n: int) -> str:
        self[n]
        return self._methods[n]

    def check_invariants(self) -> None:
        v = self._values
        assert v[0] == 1 and v[1] == 0
        for k in range(1, len(v)):
            assert v[k] == k * v[k - 1] + (-1) ** k
            if k >= 2:
                assert v[k] == (k - 1) * (v[k - 1] + v[k - 2])


TABLE = DerangementTable()


def derangement(n: int, table: DerangementTable = TABLE) -> int:
    return table[n]


def sum_rule_lhs(p: int, table: DerangementTable = TABLE) -> int:
    """S_p = sum_{n=0..p} n D(n)."""
    _require_nonneg("sum_rule_lhs", p)
    return sum(n * d for n, d in enumerate(table.upto(p)))


def sum_rule_rhs(p: int) -> int:
    """floor((p+1)!/e)."""
    _require_nonneg("sum_rule_rhs", p)
    return el_floor(ELaurent(0, 0, factorial(p + 1)))


def sum_rule_parity_form(p: int, table: DerangementTable = TABLE) -> int:
    """D(p+1) - (1 - (-1)^p)/2, the parity term taken as p mod 2."""
    _require_nonneg("sum_rule_parity_form", p)
    return table[p + 1] - p % 2


def a_recurrence(N: int) -> int:
    """A_1 = 0, A_N = N A_{N-1} + (N-1 if N is odd else 0)."""
    if N < 1:
        raise ValueError(f"a_recurrence requires N >= 1, got {N}")
    a = 0
    for k in range(2, N + 1):
        a = k * a + (k - 1 if k % 2 else 0)
    return a


def a_closed_form(N: int) -> int:
    """N! * sum_{k=2..N} (-1)^k / k!, evaluated over the rationals.

    This is the formula exactly as written.  It agrees with ``a_recurrence``
    and floor(N!/e) for odd N only; for even N it is larger by one (see
    :func:`a_closed_form_mismatches`).
    """
    if N < 1:
        raise ValueError(f"a_closed_form requires N >= 1, got {N}")
    total = Fraction(0)
    kfact = 1
    for k in range(2, N + 1):
        kfact = factorial(k) if k == 2 else kfact * k
        total += Fraction((-1) ** k, kfact)
    value = total * factorial(N)
    assert value.denominator == 1, f"non-integral A_{N} = {value}"
    return value.numerator


def a_closed_form_mismatches(N_max: int) -> list[tuple[int, int, int]]:
    """``(N, closed form, floor(N!/e))`` for every N <= N_max where they differ."""
    out = []
    for N in range(1, N_max + 1):
        closed = a_closed_form(N)
        fl = el_floor(ELaurent(0, 0, factorial(N)))
        if closed != fl:
            out.append((N, closed, fl))
    return out
