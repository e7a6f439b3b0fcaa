import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegastar.arith import sieve_primes, totient_table
from omegastar.errors import DomainError
from omegastar.identities import (
    erdos_prachar_census,
    identity_report,
    pair_sum_direct,
    pair_sum_direct_exact,
    pair_sum_phi,
    pair_sum_phi_exact,
)

PRIMES = sieve_primes(10**5 + 1)
PHIS = totient_table(10**5)


def test_small_examples():
    assert pair_sum_direct(2) == 1.0
    assert pair_sum_direct(3) == 2.5
    assert pair_sum_phi(2) == 1.0
    assert pair_sum_phi(3) == 2.5
    # d = 1: (1 + 1/2)^2, d = 2: phi(2) (1/2)^2
    assert Fraction(9, 4) + Fraction(1, 4) == pair_sum_phi_exact(3) == pair_sum_direct_exact(3)
    with pytest.raises(DomainError):
        pair_sum_direct(1)


def test_exact_identity_up_to_200():
    for x in range(2, 201):
        assert pair_sum_direct_exact(x, PRIMES) == pair_sum_phi_exact(x, PRIMES), x


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 200))
def test_float_matches_exact(x):
    exact = float(pair_sum_direct_exact(x, PRIMES))
    assert pair_sum_direct(x, PRIMES) == pytest.approx(exact, rel=1e-13)
    assert pair_sum_phi(x, PRIMES, PHIS) == pytest.approx(exact, rel=1e-13)


@pytest.mark.parametrize("x", [10**3, 10**4, 10**5])
def test_float_identity(x):
    a = pair_sum_direct(x, PRIMES)
    b = pair_sum_phi(x, PRIMES, PHIS)
    assert abs(a - b) <= 1e-9 * a


def test_diagonal_bounded_by_total():
    for x in (10, 1000, 10**4):
        diag = math.fsum(1.0 / (int(p) - 1) for p in PRIMES.upto(x))
        assert diag <= pair_sum_direct(x, PRIMES)


def test_census_examples():
    assert erdos_prachar_census(1) == 1
    assert erdos_prachar_census(2) == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 3000))
def test_census_monotone(a, b):
    lo, hi = sorted((a, b))
    assert erdos_prachar_census(lo, PRIMES) <= erdos_prachar_census(hi, PRIMES)


def test_identity_report_x6():
    r = identity_report(6)
    assert r.s2_scaled == 25 / 6
    # p, q <= 6 gives p - 1 in {1, 2, 4}
    assert r.t_direct == pytest.approx(3.75, rel=1e-15)
    assert r.t_phi == pytest.approx(3.75, rel=1e-15)
    assert r.abs_gap == pytest.approx(25 / 6 - 3.75)
    assert r.census == 14


def test_identity_report_invariants():
    for x in (2, 17, 500, 4000):
        r = identity_report(x, PRIMES, PHIS)
        assert r.t_direct > 0 and r.census >= 1 and r.abs_gap >= 0
        assert abs(r.t_direct - r.t_phi) <= 1e-9 * r.t_direct
