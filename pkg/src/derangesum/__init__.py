"""Exact derangement numbers and a certified check of the derangement sum rule

    sum_{n=0..p} n D(n) = floor((p+1)!/e).
"""

from derangesum._accel import BACKEND
from derangesum.derangement import (
    TABLE,
    DerangementTable,
    a_closed_form,
    a_recurrence,
    d_floor_formula,
    d_nearest_formula,
    d_pair_recurrence,
    d_signed_recurrence,
    d_sum,
    sum_rule_lhs,
    sum_rule_rhs,
)
from derangesum.exact import (
    ELaurent,
    Interval,
    PrecisionExhausted,
    binomial,
    e_enclosure,
    el_eval,
    el_floor,
    el_nearest,
    factorial,
)

__version__ = "0.1.0"
