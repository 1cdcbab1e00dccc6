"""Tests for the exact counting arguments and their brute-force confirmation."""

import itertools
from math import comb

import pytest

from polarmub import counting, spread
from polarmub.errors import ScaleExceeded
from polarmub.polar import PolarSpace


def test_equality_at_2_2():
    r = counting.conjecture_counts(2, 2)
    assert (r.binom_term, r.lhs, r.rhs) == (10, 15, 15)
    assert r.verdict == "Equality"


def test_equality_at_2_3():
    r = counting.conjecture_counts(2, 3)
    assert (r.binom_term, r.lhs, r.rhs) == (126, 135, 135)
    assert r.verdict == "Equality"


def test_violation_at_3_2():
    r = counting.conjecture_counts(3, 2)
    assert (r.binom_term, r.lhs, r.rhs) == (210, 220, 40)
    assert r.verdict == "Violated"


def test_grid_equality_exactly_at_the_two_known_cases():
    for d in (2, 3, 5, 7, 11, 13):
        for n in range(2, 9):
            r = counting.conjecture_counts(d, n)
            if (d, n) in ((2, 2), (2, 3)):
                assert r.verdict == "Equality"
            else:
                assert r.verdict == "Violated"


def test_bounded_binom_agrees_with_comb():
    for n in range(1, 40):
        for k in range(0, n + 1):
            assert counting._bounded_binom(n, k, 0) == comb(n, k)
    # long walks take the bounded path: certified abort below, exact above
    n, k = 1000, 500
    exact = comb(n, k)
    assert counting._bounded_binom(n, k, exact) == exact
    assert counting._bounded_binom(n, k, exact - 1) is None


def test_binomial_identities():
    for n in range(0, 12):
        assert sum(comb(n, k) for k in range(n + 1)) == 2**n
        for k in range(n + 1):
            assert comb(n, k) == comb(n, n - k)


def test_asymptotic_gate_examples():
    assert counting.asymptotic_gate(5, 2)  # 5 >= 5
    assert counting.asymptotic_gate(2, 6)  # 32 >= 27
    assert not counting.asymptotic_gate(2, 5)  # 16 < 20


def test_asymptotic_gate_monotone():
    for d in (2, 3, 5, 7, 11, 13):
        fired = False
        for m in range(2, 30):
            now = counting.asymptotic_gate(d, m)
            if fired:
                assert now
            fired = fired or now
        assert fired


def test_brute_force_w32():
    space = PolarSpace(2, 2)
    s = spread.construct_symplectic_spread(space)
    summary = counting.brute_force_conjecture(space, s)
    assert summary.subsets_total == 10
    assert summary.exactly_one == 10
    assert summary.at_least_one == 10
    assert summary.first_failure is None
    assert summary.distinct_covered
    assert summary.completions_complete
    assert summary.expected_completion_size == 3


def test_brute_force_w33_exhibits_failure():
    space = PolarSpace(3, 2)
    s = spread.construct_symplectic_spread(space)
    summary = counting.brute_force_conjecture(space, s)
    assert summary.subsets_total == 210
    assert summary.exactly_one < 210
    assert summary.first_failure is not None
    # consistency with the counting verdict: equality fails at (3, 2)
    assert counting.conjecture_counts(3, 2).verdict == "Violated"


def test_brute_force_scale_guard():
    space = PolarSpace(5, 2)
    s = spread.construct_symplectic_spread(space)
    with pytest.raises(ScaleExceeded):
        counting.brute_force_conjecture(space, s)


def test_brute_force_requires_spread():
    space = PolarSpace(2, 2)
    s = spread.construct_symplectic_spread(space)
    partial = spread.partial_spread(space, s.members[:3])
    with pytest.raises(ValueError):
        counting.brute_force_conjecture(space, partial)
