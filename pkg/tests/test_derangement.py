from fractions import Fraction

import pytest

from derangesum import derangement as dr
from derangesum.derangement import (
    DerangementTable,
    a_closed_form,
    a_closed_form_mismatches,
    a_recurrence,
    d_floor_formula,
    d_nearest_formula,
    d_pair_recurrence,
    d_signed_recurrence,
    d_sum,
    sum_rule_lhs,
    sum_rule_parity_form,
    sum_rule_rhs,
)
from oracles import count_fixed_point_free, mp_floor
from derangesum.exact import factorial

BRUTE = [count_fixed_point_free(n) for n in range(10)]


def test_brute_oracle_values():
    assert BRUTE == [1, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496]


@pytest.mark.parametrize("n, expected", [(0, 1), (2, 1), (5, 44)])
def test_d_sum_examples(n, expected):
    assert d_sum(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (6, 265)])
def test_d_pair_examples(n, expected):
    assert d_pair_recurrence(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 0), (3, 2), (4, 9)])
def test_d_signed_examples(n, expected):
    assert d_signed_recurrence(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (9, 133496)])
def test_d_floor_examples(n, expected):
    assert d_floor_formula(n) == expected


def test_d_floor_formula_at_zero_is_documented_discrepancy():
    assert d_floor_formula(0) == 0
    assert d_sum(0) == 1


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (5, 44)])
def test_d_nearest_examples(n, expected):
    assert d_nearest_formula(n) == expected


def test_d_nearest_rejects_zero():
    with pytest.raises(ValueError):
        d_nearest_formula(0)


def test_all_methods_match_enumeration():
    for n in range(10):
        methods = [d_sum(n), d_pair_recurrence(n), d_signed_recurrence(n), dr.TABLE[n]]
        if n >= 1:
            methods += [d_floor_formula(n), d_nearest_formula(n)]
        assert set(methods) == {BRUTE[n]}


def test_four_way_agreement_to_200():
    for n in range(1, 201):
        d = d_sum(n)
        assert d == d_pair_recurrence(n) == d_signed_recurrence(n) == d_floor_formula(n)


def test_floor_formula_matches_mpmath():
    for n in (10, 50, 137, 200):
        assert d_floor_formula(n) == mp_floor(0, 0, factorial(n) + 1)


def test_table_invariants_and_tags():
    t = DerangementTable()
    assert t[0] == 1 and t[1] == 0
    assert t[30] == d_sum(30)
    assert t.method(0) == "seed" and t.method(5) == "signed"
    t.check_invariants()
    assert t.upto(4) == [1, 0, 1, 2, 9]
    with pytest.raises(ValueError):
        t[-1]


def test_table_concurrent_fill():
    from concurrent.futures import ThreadPoolExecutor

    t = DerangementTable()
    with ThreadPoolExecutor(8) as pool:
        got = list(pool.map(lambda n: t[n], range(300, 0, -7)))
    assert got == [d_signed_recurrence(n) for n in range(300, 0, -7)]
    t.check_invariants()


@pytest.mark.parametrize("p, expected", [(0, 0), (2, 2), (4, 44)])
def test_sum_rule_lhs_examples(p, expected):
    assert sum_rule_lhs(p) == expected


def test_sum_rule_lhs_against_enumeration():
    for p in range(10):
        assert sum_rule_lhs(p) == sum(n * BRUTE[n] for n in range(p + 1))


@pytest.mark.parametrize("p, expected", [(0, 0), (2, 2), (4, 44)])
def test_sum_rule_rhs_examples(p, expected):
    assert sum_rule_rhs(p) == expected


def test_sum_rule_rhs_matches_mpmath():
    for p in (5, 40, 120, 200):
        assert sum_rule_rhs(p) == mp_floor(0, 0, factorial(p + 1))


def test_theorem_and_parity_form_to_200():
    for p in range(201):
        s = sum_rule_lhs(p)
        assert s == sum_rule_rhs(p)
        assert s == sum_rule_parity_form(p)
        assert s == a_recurrence(p + 1)


def test_monotone_growth():
    # D(n+1) - n D(n) = D(n) + (-1)^(n+1), which is 0 at n = 2
    assert dr.TABLE[3] == 2 * dr.TABLE[2]
    for n in range(3, 200):
        assert dr.TABLE[n + 1] > n * dr.TABLE[n]


@pytest.mark.parametrize("N, expected", [(1, 0), (3, 2), (5, 44)])
def test_a_recurrence_examples(N, expected):
    assert a_recurrence(N) == expected


def _closed_form_oracle(N):
    # direct term-by-term evaluation with a fresh factorial per term
    return Fraction(factorial(N)) * sum(
        (Fraction((-1) ** k, factorial(k)) for k in range(2, N + 1)), Fraction(0)
    )


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 10, 31])
def test_a_closed_form_against_direct_oracle(N):
    assert a_closed_form(N) == _closed_form_oracle(N)


def test_a_closed_form_values_as_written():
    assert a_closed_form(1) == 0
    assert a_closed_form(2) == 1
    # 24 * (1/2 - 1/6 + 1/24) = 12 - 4 + 1
    assert a_closed_form(4) == 9
    assert a_recurrence(4) == 8 == sum_rule_rhs(3)


def test_a_closed_form_mismatch_is_exactly_the_even_n():
    mismatches = a_closed_form_mismatches(60)
    assert [N for N, _, _ in mismatches] == list(range(2, 61, 2))
    assert all(closed - fl == 1 for _, closed, fl in mismatches)
    for N in range(1, 61, 2):
        assert a_closed_form(N) == a_recurrence(N)
    # the closed form as written is D(N)
    assert all(a_closed_form(N) == d_sum(N) for N in range(1, 40))


@pytest.mark.parametrize("fn", [a_recurrence, a_closed_form])
def test_a_rejects_zero(fn):
    with pytest.raises(ValueError):
        fn(0)
