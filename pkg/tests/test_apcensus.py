import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegastar.apcensus import (
    LOG_FOUR_THIRDS,
    DyadicBlockReport,
    ap_census,
    ap_primes,
    bv_error,
    count_ap_primes,
    dyadic_blocks,
    exceptional_set,
    loglog_integral_quad,
    lower_bound_functional,
    max_block_index,
)
from omegastar.arith import log_integral, sieve_primes, totient_table
from omegastar.errors import DomainError, ParameterError

PRIMES = sieve_primes(10**6)


def test_count_examples():
    assert count_ap_primes(20, 4) == 3
    assert ap_primes(20, 4, PRIMES).tolist() == [5, 13, 17]
    assert count_ap_primes(10, 1) == 4
    for d in range(2, 40):
        assert count_ap_primes(d, d, PRIMES) == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 10**5), st.integers(1, 3000))
def test_count_brute_force(y, d):
    brute = sum(1 for p in PRIMES.upto(y) if (int(p) - 1) % d == 0)
    assert count_ap_primes(y, d, PRIMES) == brute


def test_census_counts():
    c = ap_census(1, np.arange(2, 5000), PRIMES)
    assert np.array_equal(c.counts, PRIMES.pi(np.arange(2, 5000)))
    c = ap_census(6, np.geomspace(2, 10**5, 50), PRIMES)
    assert np.all(np.diff(c.counts) >= 0)


def test_bv_error_is_sup_over_dense_grid():
    d, z, step = 2, 100, 7e-3
    odd_primes = [p for p in range(3, z + 1) if all(p % q for q in range(2, p))]
    ys = np.arange(2.0, z + 1e-9, step)
    dense = max(abs(sum(p <= y for p in odd_primes) - log_integral(y)) for y in ys)
    bv = bv_error(d, z, primes=PRIMES)
    assert bv > 0
    assert dense <= bv + 1e-9
    # li moves by at most step / log 2 between samples
    assert bv <= dense + step / math.log(2)


def test_bv_error_params():
    with pytest.raises(ParameterError):
        bv_error(3, 100, grid_size=1, primes=PRIMES)
    with pytest.raises(DomainError):
        bv_error(1, 100, primes=PRIMES)
    assert bv_error(7, 10**4, 2, PRIMES) >= 0


def test_dyadic_examples():
    blocks = dyadic_blocks(2**52)
    assert [b.j for b in blocks] == [0, 1, 2, 3, 4]
    assert [b.q_j for b in blocks] == [2.0 ** (13 + j) for j in range(5)]
    b16 = dyadic_blocks(16)
    assert [(b.j, b.q_j) for b in b16] == [(0, 2.0)]
    with pytest.raises(DomainError):
        dyadic_blocks(15)


@pytest.mark.parametrize("x", [16, 10**4, 10**6, 10**8, 2**52, 2**52 - 1, 3**40])
def test_block_geometry_against_mpmath(x):
    with mpmath.workdps(50):
        jmax = int(mpmath.floor(mpmath.log(x) / (13 * mpmath.log(2))))
        assert max_block_index(x) == jmax
        for b in dyadic_blocks(x):
            q = mpmath.mpf(2) ** b.j * mpmath.root(x, 4)
            assert q < mpmath.cbrt(x)
            assert b.block_range == (int(mpmath.floor(q)) + 1, int(mpmath.floor(2 * q)))


def test_exceptional_set_partition_and_membership():
    x = 10**6
    phis = totient_table(200)
    for b in dyadic_blocks(x):
        r = exceptional_set(x, b.j, 64, PRIMES, phis)
        lo, hi = r.block_range
        assert r.good_set_size + r.exceptional_count == hi - lo + 1
        assert r.phi_mass > 0
    # restate membership on the same grid for every d of block 0
    r = exceptional_set(x, 0, 16, PRIMES, phis)
    ys = np.geomspace(x**0.75, x, 16)
    ys[-1] = x
    good = [
        d for d in range(r.block_range[0], r.block_range[1] + 1)
        if all(count_ap_primes(int(y), d, PRIMES) * 3 * phis.phi[d] * math.log(y) > y for y in ys)
    ]
    assert len(good) == r.good_set_size
    assert r.phi_mass == pytest.approx(math.fsum(1 / phis.phi[d] for d in good))


def test_exceptional_set_bad_index():
    with pytest.raises(ParameterError):
        exceptional_set(10**6, 2, primes=PRIMES)
    with pytest.raises(ParameterError):
        exceptional_set(10**6, -1, primes=PRIMES)


def test_exceptional_set_mean_bv():
    r = exceptional_set(10**5, 0, 16, with_bv=True)
    assert np.isfinite(r.mean_bv_error) and r.mean_bv_error > 0


def test_lower_bound_functional():
    assert LOG_FOUR_THIRDS == pytest.approx(0.287682, abs=1e-6)
    empty = [DyadicBlockReport(0, 10.0, (11, 20), 0, 10, 0.0)]
    assert lower_bound_functional(10**4, empty).value == 0.0
    with pytest.raises(ParameterError):
        lower_bound_functional(10**4, [])
    one = [DyadicBlockReport(0, 10.0, (11, 20), 1, 9, 0.5)]
    assert lower_bound_functional(900, one).value == pytest.approx(100 * LOG_FOUR_THIRDS**2 * 0.5)


@pytest.mark.parametrize("x", [1e4, 1e6, 1e8, 1e12])
def test_closed_form_integral(x):
    assert abs(loglog_integral_quad(x) - LOG_FOUR_THIRDS) <= 1e-9
