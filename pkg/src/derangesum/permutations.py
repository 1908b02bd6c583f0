"""Brute-force ground truth: Heap's interchange enumeration of permutations."""

from __future__ import annotations

from typing import Iterator, Sequence, Tuple

from derangesum import _accel

Permutation = Tuple[int, ...]

DEFAULT_CAP = 12
SUM_RULE_CAP = 10


class EnumerationCapError(ValueError):
    """Requested enumeration is larger than the configured cap."""


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > cap:
        raise EnumerationCapError(
            f"n = {n} exceeds the enumeration cap {cap} ({n}! permutations)"
        )


def is_permutation(sigma: Sequence[int]) -> bool:
    return sorted(sigma) == list(range(len(sigma)))


def heap_permutations(n: int, cap: int = DEFAULT_CAP) -> Iterator[Permutation]:
    """Yield all n! permutations of ``0..n-1``.

    Consecutive permutations differ by one transposition.  Iterative form
    with an explicit counter array.
    """
    _check_cap(n, cap)
    a = list(range(n))
    c = [0] * n
    yield tuple(a)
    i = 1
    while i < n:
        if c[i] < i:
            j = c[i] if i & 1 else 0
            a[j], a[i] = a[i], a[j]
            yield tuple(a)
            c[i] += 1
            i = 1
        else:
            c[i] = 0
            i += 1


def fixed_point_count(sigma: Sequence[int]) -> int:
    return sum(1 for i, s in enumerate(sigma) if i == s)


def brute_derangement_count(n: int, cap: int = DEFAULT_CAP) -> int:
    """Number of fixed-point-free permutations of n items, by full enumeration."""
    _check_cap(n, cap)
    return int(_accel.count_derangements(n))


def brute_derangement_count_stream(n: int, cap: int = DEFAULT_CAP) -> int:
    """Same count, taken over the :func:`heap_permutations` stream itself."""
    return sum(1 for s in heap_permutations(n, cap) if fixed_point_count(s) == 0)


def brute_sum_rule(p: int, cap: int = SUM_RULE_CAP) -> int:
    """sum_{n=0..p} n * (enumerated derangement count of n)."""
    _check_cap(p, cap)
    return sum(n * brute_derangement_count(n) for n in range(p + 1))
