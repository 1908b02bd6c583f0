"""Exit criteria.  Each test prints one PASS/FAIL line; the lines are also
collected into the terminal summary (see conftest.py).

Run standalone with ``python tests/test_acceptance.py``.
"""

import math
import time
from contextlib import contextmanager

import pytest

from derangesum import verify as v
from derangesum.derangement import (
    TABLE,
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
from derangesum.exact import ELaurent, el_floor, el_nearest, el_to_float, factorial
from derangesum.permutations import brute_derangement_count, brute_sum_rule
from derangesum.quadrature import integrate_exp_monomial, integrate_tail

RESULTS = []


@contextmanager
def criterion(name, budget_s=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if ok and budget_s is not None and elapsed >= budget_s:
            ok = False
        line = f"{'PASS' if ok else 'FAIL'}  {name}  ({elapsed * 1e3:.1f} ms"
        line += f", budget {budget_s * 1e3:.0f} ms)" if budget_s else ")"
        RESULTS.append(line)
        print(line)
    assert budget_s is None or elapsed < budget_s, f"{name}: {elapsed:.3f}s over budget"


def test_base_cases():
    with criterion("base cases S_0, S_1, S_2", budget_s=1e-3):
        got = [(sum_rule_lhs(p), sum_rule_rhs(p)) for p in range(3)]
        assert got == [(0, 0), (0, 0), (2, 2)]
        assert TABLE[1] + 2 * TABLE[2] == 2


def test_theorem1_to_200():
    with criterion("Theorem 1 for 0 <= p <= 200", budget_s=30.0):
        for p in range(201):
            assert sum_rule_lhs(p) == sum_rule_rhs(p), p


def test_oracle_equivalence():
    with criterion("four D(n) methods and S_p vs enumeration, n, p <= 9", budget_s=60.0):
        for n in range(10):
            brute = brute_derangement_count(n)
            assert d_sum(n) == d_pair_recurrence(n) == d_signed_recurrence(n) == brute
            if n >= 1:
                assert d_floor_formula(n) == brute
                assert d_nearest_formula(n) == brute
        for p in range(10):
            assert sum_rule_lhs(p) == brute_sum_rule(p)


def test_induction_step():
    with criterion("induction step identity for 0 <= p <= 200"):
        assert v.verify_toprove(0, 200).passed


def test_integral_identities():
    with criterion("has1 n in 1..100, has2 n in 1..100, iint p in 0..200"):
        assert v.verify_has1(1, 100).passed
        at_zero = v.verify_has1(0, 0)
        # reported, not asserted either way
        print(f"      has1 at n = 0: {'pass' if at_zero.passed else 'fail'} "
              f"{[f.as_dict() for f in at_zero.failures]}")
        assert v.verify_has2(1, 100).passed
        assert v.verify_iint(0, 200).passed


def test_hermite_suite():
    with criterion("Hermite: 1000 random rationals, factorial instance p in 0..100"):
        r = v.verify_hermite_random(1, 1000)
        assert r.passed and r.cases_checked == 1000
        assert v.verify_hermite_factorial(0, 100).passed


def test_bound_chain():
    with criterion("strict bounds |(p+1)!/e - floor(((p+1)!+1)/e)| < 1/(p+2), p in 0..100"):
        assert v.verify_fractional_bounds(0, 100).passed


def test_third_proof_identities():
    with criterion("parity form, nearest/floor split, S_p = A_{p+1} for p in 0..200"):
        for p in range(201):
            s = sum_rule_lhs(p)
            assert s == sum_rule_parity_form(p)
            assert s == a_recurrence(p + 1)
            x = ELaurent(0, 0, factorial(p + 1))
            assert el_nearest(x) - el_floor(x) == (1 if (p + 1) % 2 == 0 else 0)
        assert v.verify_parity_identity(0, 200).passed
        assert v.verify_nearest_floor_split(1, 201).passed
        assert v.verify_a_connection(200).passed


def test_binomial_identities():
    with criterion("binomial identities for 1 <= p <= 50, 0 <= l < p"):
        assert v.verify_binomial_identities(50).passed


def test_quadrature_cross_check():
    with criterion("quadrature within 1e-8 relative for 0 <= n <= 12", budget_s=10.0):
        for n in range(13):
            ref = el_to_float(v.finite_integral(n))
            finite = integrate_exp_monomial(n, -1.0, 0.0, 1e-12)
            assert abs(finite.value - ref) / max(1.0, abs(ref)) <= 1e-8, n
            f = math.factorial(n)
            tail = integrate_tail(n, max(1e-12, 1e-10 * f))
            assert abs(tail.value - f) / max(1.0, f) <= 1e-8, n
        assert v.verify_quadrature(12, 1e-8).passed


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
