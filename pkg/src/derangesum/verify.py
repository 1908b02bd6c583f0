"""Exact checkers for each identity in the derangement sum-rule argument.

Every checker walks an inclusive integer range, decides the identity at each
point with exact arithmetic (integers, rationals, :class:`ELaurent` values and
certified floors) and returns a :class:`VerificationReport`.  Failures are
recorded, never raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

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
from derangesum.exact import (
    ELaurent,
    binomial,
    el_floor,
    el_nearest,
    el_sign,
    factorial,
    floor_rational,
)
from derangesum.permutations import brute_derangement_count, brute_sum_rule


@dataclass(frozen=True)
class Failure:
    input: str
    lhs: str
    rhs: str

    def as_dict(self) -> dict:
        return {"input": self.input, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerificationReport:
    identity_id: str
    range: tuple[int, int]
    cases_checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, case, lhs, rhs) -> None:
        self.cases_checked += 1
        if lhs != rhs:
            self.failures.append(Failure(str(case), str(lhs), str(rhs)))

    def as_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "range": [self.range[0], self.range[1]],
            "cases_checked": self.cases_checked,
            "pass": self.passed,
            "failures": [f.as_dict() for f in self.failures],
        }

    def render_text(self) -> str:
        lo, hi = self.range
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"{status} {self.identity_id} [{lo}..{hi}] "
            f"{self.cases_checked} cases, {len(self.failures)} failures"
        ]
        for f in self.failures:
            lines.append(f"    at {f.input}: lhs = {f.lhs}, rhs = {f.rhs}")
        return "\n".join(lines)


def merge_reports(reports: Iterable[VerificationReport]) -> VerificationReport:
    """Combine reports over adjacent ranges of the same identity."""
    reports = sorted(reports, key=lambda r: r.range)
    if not reports:
        raise ValueError("nothing to merge")
    ids = {r.identity_id for r in reports}
    if len(ids) != 1:
        raise ValueError(f"cannot merge different identities {sorted(ids)}")
    for left, right in zip(reports, reports[1:]):
        if right.range[0] != left.range[1] + 1:
            raise ValueError(f"ranges {left.range} and {right.range} are not adjacent")
    merged = VerificationReport(
        reports[0].identity_id, (reports[0].range[0], reports[-1].range[1])
    )
    for r in reports:
        merged.cases_checked += r.cases_checked
        merged.failures.extend(r.failures)
    return merged


def _check_range(name: str, lo: int, hi: int, min_lo: int, max_hi: int) -> None:
    if lo > hi:
        raise ValueError(f"{name}: empty range [{lo}, {hi}]")
    if lo < min_lo or hi > max_hi:
        raise ValueError(f"{name}: range [{lo}, {hi}] outside {min_lo}..{max_hi}")


def _floor_e_inv(numerator: int, offset: Fraction = Fraction(0)) -> int:
    """floor(numerator/e + offset)."""
    return el_floor(ELaurent(offset, 0, numerator))


def symbolic_I(n: int) -> ELaurent:
    """Exact value of the integral of exp(-t) t**n over [-1, inf).

    Integration by parts gives I_0 = e and I_n = n I_{n-1} + (-1)^n e, so the
    value is always an integer multiple of e.
    """
    if n < 0:
        raise ValueError(f"symbolic_I requires n >= 0, got {n}")
    value = ELaurent.e()
    for k in range(1, n + 1):
        value = k * value + (1 if k % 2 == 0 else -1) * ELaurent.e()
    return value


def finite_integral(n: int) -> ELaurent:
    """Exact integral of exp(-t) t**n over [-1, 0]: I_n minus the integral
    over [0, inf), which is n!."""
    return symbolic_I(n) - factorial(n)


def verify_has1(lo: int, hi: int) -> VerificationReport:
    """I_n == e * floor((n! + 1)/e)."""
    _check_range("has1", lo, hi, 0, 500)
    report = VerificationReport("has1", (lo, hi))
    for n in range(lo, hi + 1):
        rhs = ELaurent(0, _floor_e_inv(factorial(n) + 1), 0)
        report.record(f"n={n}", symbolic_I(n), rhs)
    return report


def verify_has2(lo: int, hi: int) -> VerificationReport:
    """Integral over [-1, 0] == e * ((1 + (-1)^n)/2 - {n!/e})."""
    _check_range("has2", lo, hi, 1, 500)
    report = VerificationReport("has2", (lo, hi))
    for n in range(lo, hi + 1):
        x = ELaurent(0, 0, factorial(n))
        frac = x - el_floor(x)
        rhs = (Fraction(1 + (-1) ** n, 2) - frac).mul_e()
        report.record(f"n={n}", finite_integral(n), rhs)
    return report


def verify_iint(lo: int, hi: int) -> VerificationReport:
    """I_{p+2} - (p+2) I_{p+1} == (-1)^p e."""
    _check_range("iint", lo, hi, 0, 500)
    report = VerificationReport("iint", (lo, hi))
    for p in range(lo, hi + 1):
        lhs = symbolic_I(p + 2) - (p + 2) * symbolic_I(p + 1)
        report.record(f"p={p}", lhs, (-1) ** p * ELaurent.e())
    return report


def verify_toprove(lo: int, hi: int) -> VerificationReport:
    """floor((p+2)!/e) == floor((p+1)!/e) + (p+1) floor(((p+1)!+1)/e)."""
    _check_range("toprove", lo, hi, 0, 300)
    report = VerificationReport("toprove", (lo, hi))
    for p in range(lo, hi + 1):
        f1 = factorial(p + 1)
        lhs = _floor_e_inv(f1 * (p + 2))
        rhs = _floor_e_inv(f1) + (p + 1) * _floor_e_inv(f1 + 1)
        report.record(f"p={p}", lhs, rhs)
    return report


def hermite_sides(x: Fraction, m: int) -> tuple[int, int]:
    """(sum_{k<m} floor(x + k/m), floor(m x)) for rational x."""
    x = Fraction(x)
    lhs = sum(floor_rational(x + Fraction(k, m)) for k in range(m))
    return lhs, floor_rational(m * x)


def verify_hermite_rational(x: Fraction, m: int) -> VerificationReport:
    if m < 1:
        raise ValueError(f"hermite needs m >= 1, got {m}")
    report = VerificationReport("hermite", (1, 1))
    report.record(f"x={Fraction(x)}, m={m}", *hermite_sides(x, m))
    return report


def hermite_case(i: int, seed: int = 0, bound: int = 10**6, m_max: int = 50):
    """The i-th reproducible (x, m) pair.

    Each case has its own generator so ranges can be split freely.  Every
    fourth x has a denominator divisible by m.
    """
    rng = random.Random(f"hermite:{seed}:{i}")
    m = rng.randint(1, m_max)
    num = rng.randint(-bound, bound)
    if i % 4 == 3:
        den = m * rng.randint(1, max(1, bound // m))
    else:
        den = rng.randint(1, bound)
    return Fraction(num, den), m


def verify_hermite_random(lo: int = 1, hi: int = 1000, seed: int = 0) -> VerificationReport:
    """Hermite's identity on the generated cases lo..hi."""
    _check_range("hermite", lo, hi, 0, 10**9)
    report = VerificationReport("hermite", (lo, hi))
    for i in range(lo, hi + 1):
        x, m = hermite_case(i, seed)
        report.record(f"x={x}, m={m}", *hermite_sides(x, m))
    return report


def verify_hermite_factorial(lo: int, hi: int) -> VerificationReport:
    """Hermite's identity at m = p+2, x = (p+1)!/e, plus the term collapse:
    the k = 0 term is floor((p+1)!/e) and every later term is
    floor(((p+1)!+1)/e)."""
    _check_range("hermite-factorial", lo, hi, 0, 150)
    report = VerificationReport("hermite-factorial", (lo, hi))
    for p in range(lo, hi + 1):
        f1 = factorial(p + 1)
        m = p + 2
        terms = [_floor_e_inv(f1, Fraction(k, m)) for k in range(m)]
        first, rest = _floor_e_inv(f1), _floor_e_inv(f1 + 1)
        ok = (
            sum(terms) == _floor_e_inv(f1 * m)
            and terms[0] == first
            and all(t == rest for t in terms[1:])
        )
        report.cases_checked += 1
        if not ok:
            report.failures.append(
                Failure(
                    f"p={p}",
                    f"terms={terms} (sum {sum(terms)})",
                    f"floor((p+2)!/e)={_floor_e_inv(f1 * m)}, k=0 term {first}, "
                    f"other terms {rest}",
                )
            )
    return report


def verify_fractional_bounds(lo: int, hi: int) -> VerificationReport:
    """-1/(p+2) < (p+1)!/e - floor(((p+1)!+1)/e) < 1/(p+2), signs certified."""
    _check_range("fractional-bounds", lo, hi, 0, 150)
    report = VerificationReport("fractional-bounds", (lo, hi))
    for p in range(lo, hi + 1):
        f1 = factorial(p + 1)
        gap = ELaurent(-_floor_e_inv(f1 + 1), 0, f1)
        eps = Fraction(1, p + 2)
        lower = el_sign(gap + eps)
        upper = el_sign(eps - gap)
        report.cases_checked += 1
        if lower != 1 or upper != 1:
            report.failures.append(
                Failure(f"p={p}", f"sign(gap + 1/(p+2)) = {lower}",
                        f"sign(1/(p+2) - gap) = {upper}")
            )
    return report


def verify_parity_identity(lo: int, hi: int) -> VerificationReport:
    """S_p == D(p+1) - (p mod 2)."""
    _check_range("parity", lo, hi, 0, 300)
    report = VerificationReport("parity", (lo, hi))
    for p in range(lo, hi + 1):
        report.record(f"p={p}", sum_rule_lhs(p), sum_rule_parity_form(p))
    return report


def verify_nearest_floor_split(lo: int, hi: int) -> VerificationReport:
    """nearest(m!/e) - floor(m!/e) == 1 if m is even else 0."""
    _check_range("nearest-floor", lo, hi, 1, 300)
    report = VerificationReport("nearest-floor", (lo, hi))
    for m in range(lo, hi + 1):
        x = ELaurent(0, 0, factorial(m))
        report.record(f"m={m}", el_nearest(x) - el_floor(x), 1 - m % 2)
    return report


def verify_binomial_identities(p_max: int, p_min: int = 1) -> VerificationReport:
    """sum_n C(p,n) D(n) == p! and sum_n C(p-l, n-l) D(p-n) == (p-l)! for 0 <= l < p."""
    _check_range("binomial", p_min, p_max, 1, 10**4)
    report = VerificationReport("binomial", (p_min, p_max))
    D = TABLE.upto(p_max)
    for p in range(p_min, p_max + 1):
        failures = []
        first = sum(binomial(p, n) * D[n] for n in range(p + 1))
        if first != factorial(p):
            failures.append(Failure(f"p={p}", str(first), str(factorial(p))))
        for l in range(p):
            second = sum(
                binomial(p - l, n - l) * D[p - n] for n in range(p + 1) if n >= l
            )
            if second != factorial(p - l):
                failures.append(
                    Failure(f"p={p}, l={l}", str(second), str(factorial(p - l)))
                )
        report.cases_checked += 1
        report.failures.extend(failures)
    return report


def verify_theorem1(p_max: int, p_min: int = 0) -> VerificationReport:
    """sum_{n<=p} n D(n) == floor((p+1)!/e)."""
    _check_range("theorem1", p_min, p_max, 0, 10**6)
    report = VerificationReport("theorem1", (p_min, p_max))
    for p in range(p_min, p_max + 1):
        report.record(f"p={p}", sum_rule_lhs(p), sum_rule_rhs(p))
    return report


def verify_a_connection(p_max: int, p_min: int = 0) -> VerificationReport:
    """S_p == A_{p+1}."""
    _check_range("a-connection", p_min, p_max, 0, 10**6)
    report = VerificationReport("a-connection", (p_min, p_max))
    for p in range(p_min, p_max + 1):
        report.record(f"p={p}", sum_rule_lhs(p), a_recurrence(p + 1))
    return report


def verify_oracle(max_n: int, min_n: int = 0) -> VerificationReport:
    """Every D(n) method and S_n against Heap-enumeration counts.

    The floor formula is compared for n >= 1 and the nearest-integer formula
    for n >= 1, the ranges on which they are stated.
    """
    _check_range("oracle", min_n, max_n, 0, 10)
    report = VerificationReport("oracle", (min_n, max_n))
    for n in range(min_n, max_n + 1):
        brute = brute_derangement_count(n)
        got = {
            "sum": d_sum(n),
            "pair": d_pair_recurrence(n),
            "signed": d_signed_recurrence(n),
            "table": TABLE[n],
        }
        if n >= 1:
            got["floor"] = d_floor_formula(n)
            got["nearest"] = d_nearest_formula(n)
        bad = {k: v for k, v in got.items() if v != brute}
        lhs, rhs = sum_rule_lhs(n), brute_sum_rule(n)
        report.cases_checked += 1
        if bad:
            report.failures.append(Failure(f"n={n}", str(bad), f"brute={brute}"))
        if lhs != rhs:
            report.failures.append(Failure(f"p={n}", f"S_p={lhs}", f"brute={rhs}"))
    return report


# name -> (checker taking (lo, hi), full-profile range, quick-profile range)
RangeChecker = Callable[[int, int], VerificationReport]

CHECKERS: dict[str, tuple[RangeChecker, tuple[int, int], tuple[int, int]]] = {
    "theorem1": (lambda lo, hi: verify_theorem1(hi, lo), (0, 200), (0, 50)),
    "toprove": (verify_toprove, (0, 200), (0, 50)),
    "has1": (verify_has1, (1, 100), (1, 50)),
    "has2": (verify_has2, (1, 100), (1, 50)),
    "iint": (verify_iint, (0, 200), (0, 50)),
    "hermite": (verify_hermite_random, (1, 1000), (1, 200)),
    "hermite-factorial": (verify_hermite_factorial, (0, 100), (0, 50)),
    "fractional-bounds": (verify_fractional_bounds, (0, 100), (0, 50)),
    "parity": (verify_parity_identity, (0, 200), (0, 50)),
    "nearest-floor": (verify_nearest_floor_split, (1, 200), (1, 50)),
    "binomial": (lambda lo, hi: verify_binomial_identities(hi, lo), (1, 50), (1, 20)),
    "a-connection": (lambda lo, hi: verify_a_connection(hi, lo), (0, 200), (0, 50)),
    "oracle": (lambda lo, hi: verify_oracle(hi, lo), (0, 9), (0, 8)),
}


def verify_quadrature(max_n: int = 12, tol: float = 1e-8, min_n: int = 0) -> VerificationReport:
    """Float quadrature against the exact integrals, relative error <= tol.

    For each n: the integral over [-1, 0] against I_n - n!, the integral over
    [0, inf) against n!, and their sum against I_n.  References are rendered
    from order-64 enclosures.
    """
    from derangesum.exact import el_to_float
    from derangesum.quadrature import QuadratureError, integrate_exp_monomial, integrate_tail

    _check_range("quadrature", min_n, max_n, 0, 12)
    report = VerificationReport("quadrature", (min_n, max_n))
    for n in range(min_n, max_n + 1):
        ref_finite = el_to_float(finite_integral(n))
        ref_tail = float(factorial(n))
        ref_total = el_to_float(symbolic_I(n))
        report.cases_checked += 1
        # quadrature tolerances sit two decades below the acceptance tolerance
        try:
            finite = integrate_exp_monomial(
                n, -1.0, 0.0, max(1e-12, tol * 1e-2 * max(1.0, abs(ref_finite)))
            )
            tail = integrate_tail(n, max(1e-12, tol * 1e-2 * ref_tail))
        except QuadratureError as exc:
            report.failures.append(Failure(f"n={n}", "no convergence", str(exc)))
            continue
        checks = (
            ("[-1,0]", finite.value, ref_finite),
            ("[0,inf)", tail.value, ref_tail),
            ("[-1,inf)", finite.value + tail.value, ref_total),
        )
        for label, got, ref in checks:
            rel = abs(got - ref) / max(1.0, abs(ref))
            if not rel <= tol:
                report.failures.append(
                    Failure(f"n={n} {label}", f"{got!r}", f"{ref!r} (rel err {rel:.3e})")
                )
    return report
