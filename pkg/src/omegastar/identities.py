"""Reciprocal prime-pair sum T(x) and the identities tying it to S2(x).

T(x) runs over ordered pairs of primes p, q <= x (diagonal included). The
floor-sum forms in ``moments`` run over p - 1, q - 1 <= x instead; the two
differ only when x + 1 is prime, a boundary term of size O(1) in T.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit, prange

from .arith import PrimeTable, TotientTable, sieve_primes, totient_table
from .errors import DomainError
from .moments import moment_sums, pair_floor_sums
from .omega import OmegaStarTable, omega_star_table

EXACT_CHECK_LIMIT = 200


@dataclass(frozen=True)
class PairSumReport:
    x: int
    t_direct: float
    t_phi: float
    s2_scaled: float
    abs_gap: float
    census: int

    @property
    def census_over_x(self) -> float:
        return self.census / self.x


@njit(cache=True)
def _neumaier(values):
    s = 0.0
    c = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


@njit(parallel=True, cache=True)
def _direct_rows(s):
    n = s.shape[0]
    rows = np.zeros(n, dtype=np.float64)
    for i in prange(n):
        a = s[i]
        acc = 0.0
        comp = 0.0
        for j in range(i + 1, n):
            b = s[j]
            g, r = a, b
            while r:
                g, r = r, g % r
            v = 2.0 / ((a // g) * float(b))
            t = acc + v
            if abs(acc) >= v:
                comp += (acc - t) + v
            else:
                comp += (v - t) + acc
            acc = t
        rows[i] = (acc + comp) + 1.0 / a
    return rows


@njit(parallel=True, cache=True)
def _phi_terms(x, is_prime, phi):
    # term[d] = phi(d) * (sum over primes p <= x, p = 1 mod d, of 1/(p-1))^2
    terms = np.zeros(x, dtype=np.float64)
    for d in prange(1, x):
        acc = 0.0
        comp = 0.0
        for m in range(d, x, d):
            if is_prime[m + 1]:
                v = 1.0 / m
                t = acc + v
                if abs(acc) >= v:
                    comp += (acc - t) + v
                else:
                    comp += (v - t) + acc
                acc = t
        inner = acc + comp
        terms[d] = phi[d] * inner * inner
    return terms


def _tables(x, primes, phis, need_phi=False):
    if primes is None or primes.limit < x:
        primes = sieve_primes(x)
    if need_phi and (phis is None or phis.limit < x):
        phis = totient_table(x)
    return primes, phis


def pair_sum_direct_exact(x: int, primes: PrimeTable | None = None) -> Fraction:
    """T(x) in exact rationals by enumerating every ordered pair."""
    if x < 2:
        raise DomainError(f"pair sums need x >= 2, got {x}")
    primes, _ = _tables(x, primes, None)
    s = [int(p) - 1 for p in primes.upto(x)]
    return sum((Fraction(math.gcd(a, b), a * b) for a in s for b in s), Fraction(0))


def pair_sum_phi_exact(x: int, primes: PrimeTable | None = None) -> Fraction:
    """T(x) in exact rationals through the gcd = sum of phi(d) over d | gcd rewrite."""
    if x < 2:
        raise DomainError(f"pair sums need x >= 2, got {x}")
    primes, _ = _tables(x, primes, None)
    s = [int(p) - 1 for p in primes.upto(x)]
    total = Fraction(0)
    for d in range(1, x):
        # phi by counting units, independent of the totient sieve
        phi_d = sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)
        inner = sum((Fraction(1, m) for m in s if m % d == 0), Fraction(0))
        total += phi_d * inner * inner
    return total


def pair_sum_direct(x: int, primes: PrimeTable | None = None) -> float:
    """T(x) = sum over ordered prime pairs p, q <= x of 1/lcm(p - 1, q - 1).

    Rows of the upper triangle are summed with Neumaier compensation and
    combined in fixed row order. Below EXACT_CHECK_LIMIT the float result is
    also checked against exact rational enumeration.
    """
    if x < 2:
        raise DomainError(f"pair sums need x >= 2, got {x}")
    primes, _ = _tables(x, primes, None)
    s = np.ascontiguousarray(primes.upto(x) - 1)
    val = float(_neumaier(_direct_rows(s)))
    if x <= EXACT_CHECK_LIMIT:
        exact = pair_sum_direct_exact(x, primes)
        if abs(val - float(exact)) > 1e-12 * float(exact):
            raise ArithmeticError(f"T({x}): float {val!r} != exact {float(exact)!r}")
    return val


def pair_sum_phi(
    x: int, primes: PrimeTable | None = None, phis: TotientTable | None = None
) -> float:
    """T(x) as sum over d of phi(d) * (sum over p = 1 mod d of 1/(p - 1))^2."""
    if x < 2:
        raise DomainError(f"pair sums need x >= 2, got {x}")
    primes, phis = _tables(x, primes, phis, need_phi=True)
    terms = _phi_terms(x, primes.is_prime, phis.phi)
    return float(_neumaier(terms))


def erdos_prachar_census(x: int, primes: PrimeTable | None = None) -> int:
    """Number of ordered prime pairs (p, q) with lcm(p - 1, q - 1) <= x."""
    return pair_floor_sums(x, primes)[1]


def identity_report(
    x: int,
    primes: PrimeTable | None = None,
    phis: TotientTable | None = None,
    omega: OmegaStarTable | None = None,
) -> PairSumReport:
    """Compare T(x) two ways against S2(x)/x; abs_gap tracks the O(1) remainder."""
    primes, phis = _tables(x + 1, primes, phis, need_phi=True)
    if omega is None or omega.limit < x:
        omega = omega_star_table(x, primes)
    t_direct = pair_sum_direct(x, primes)
    t_phi = pair_sum_phi(x, primes, phis)
    s2 = moment_sums(omega, [x]).s2[0]
    s2_scaled = s2 / x
    return PairSumReport(
        x=x,
        t_direct=t_direct,
        t_phi=t_phi,
        s2_scaled=s2_scaled,
        abs_gap=abs(t_direct - s2_scaled),
        census=erdos_prachar_census(x, primes),
    )
