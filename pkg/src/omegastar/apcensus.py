"""Primes in progressions 1 mod d, dyadic modulus blocks and exceptional sets."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .arith import PrimeTable, TotientTable, log_integral_array, sieve_primes, totient_table
from .errors import DomainError, ParameterError

LOG_FOUR_THIRDS = math.log(4.0 / 3.0)


@dataclass(frozen=True)
class APCensus:
    d: int
    y_grid: np.ndarray
    counts: np.ndarray
    bv_error: float


@dataclass
class DyadicBlockReport:
    j: int
    q_j: float
    block_range: tuple[int, int]  # integers lo..hi inclusive, i.e. (Q_j, 2 Q_j]
    good_set_size: int | None = None
    exceptional_count: int | None = None
    phi_mass: float | None = None
    mean_bv_error: float | None = None

    @property
    def block_size(self) -> int:
        lo, hi = self.block_range
        return hi - lo + 1


@dataclass(frozen=True)
class LowerBound:
    x: int
    value: float
    phi_mass: float

    @property
    def constant(self) -> float:
        """L(x) / (x log x)."""
        return self.value / (self.x * math.log(self.x))


def ap_primes(y: int, d: int, primes: PrimeTable) -> np.ndarray:
    """Ascending primes p <= y with p = 1 (mod d)."""
    y, d = int(y), int(d)
    if d < 1:
        raise DomainError(f"modulus must be >= 1, got {d}")
    if y > primes.limit:
        primes.upto(y)  # raises SizingError
    if y < 2:
        return primes.primes[:0]
    if y // d > primes.pi(y):
        ps = primes.upto(y)
        return ps[(ps - 1) % d == 0]
    m = np.arange(d, y, d, dtype=np.int64)
    return m[primes.is_prime[m + 1]] + 1


def count_ap_primes(y: int, d: int, primes: PrimeTable | None = None) -> int:
    """pi(y; d, 1)."""
    if primes is None:
        primes = sieve_primes(max(int(y), 2))
    return len(ap_primes(y, d, primes))


def ap_census(d: int, y_grid, primes: PrimeTable, phis: TotientTable | None = None) -> APCensus:
    """pi(y; d, 1) along y_grid plus the largest |pi(y; d, 1) - li(y)/phi(d)| on it."""
    ys = np.asarray(y_grid, dtype=np.float64)
    if ys.size == 0 or np.any(np.diff(ys) < 0):
        raise ParameterError("y_grid must be nonempty and ascending")
    sel = ap_primes(int(ys[-1]), d, primes)
    counts = np.searchsorted(sel, np.floor(ys), side="right")
    phi_d = _phi(d, phis)
    dev = np.abs(counts - log_integral_array(np.maximum(ys, 2.0)) / phi_d)
    return APCensus(d, ys, counts, float(dev.max()))


def _phi(d: int, phis: TotientTable | None) -> int:
    if phis is not None and d <= phis.limit:
        return int(phis.phi[d])
    return int(totient_table(d).phi[d])


def bv_error(
    d: int,
    z: int,
    grid_size: int = 64,
    primes: PrimeTable | None = None,
    phis: TotientTable | None = None,
) -> float:
    """max over 2 <= y <= z of |pi(y; d, 1) - li(y)/phi(d)|.

    The geometric grid is supplemented by both sides of every jump of
    pi(y; d, 1): li is increasing, so between jumps the deviation peaks at
    an interval end. That makes the returned value the exact supremum.
    """
    if grid_size < 2:
        raise ParameterError(f"grid_size must be >= 2, got {grid_size}")
    if z < 4 or d < 2:
        raise DomainError(f"bv_error needs z >= 4 and d >= 2, got z={z}, d={d}")
    if primes is None:
        primes = sieve_primes(z)
    phi_d = _phi(d, phis)
    grid = np.geomspace(2.0, float(z), grid_size)
    grid[-1] = float(z)
    best = ap_census(d, grid, primes, phis).bv_error
    jumps = ap_primes(z, d, primes)
    if jumps.size:
        li_p = log_integral_array(jumps.astype(np.float64)) / phi_d
        k = np.arange(1, jumps.size + 1)
        best = max(best, float(np.max(np.abs(k - li_p))), float(np.max(np.abs(k - 1 - li_p))))
    return best


def _block_bounds(x: int, j: int) -> tuple[int, int]:
    # floor(2^j x^(1/4)) = floor((16^j x)^(1/4)) = isqrt(isqrt(16^j x)), exactly
    lo = math.isqrt(math.isqrt(16**j * x)) + 1
    hi = math.isqrt(math.isqrt(16 ** (j + 1) * x))
    return lo, hi


def max_block_index(x: int) -> int:
    """floor(log x / (13 log 2)) computed exactly as floor(floor(log2 x) / 13)."""
    return (int(x).bit_length() - 1) // 13


def dyadic_blocks(x: int) -> list[DyadicBlockReport]:
    """Blocks (Q_j, 2 Q_j] with Q_j = 2^j x^(1/4), 0 <= j <= floor(log x / (13 log 2))."""
    x = int(x)
    if x < 16:
        raise DomainError(f"dyadic blocks need x >= 16, got {x}")
    blocks = []
    for j in range(max_block_index(x) + 1):
        # Q_j < x^(1/3)  <=>  2^(12 j) < x
        if not 2 ** (12 * j) < x:
            raise ArithmeticError(f"block {j} of x={x} violates Q_j < x^(1/3)")
        blocks.append(DyadicBlockReport(j, 2.0**j * x**0.25, _block_bounds(x, j)))
    return blocks


def exceptional_set(
    x: int,
    j: int,
    y_samples: int = 64,
    primes: PrimeTable | None = None,
    phis: TotientTable | None = None,
    with_bv: bool = False,
) -> DyadicBlockReport:
    """Split block j into good moduli and exceptions.

    d is good when pi(y; d, 1) > y / (3 phi(d) log y) at every point of a
    geometric grid on [x^(3/4), x]. Only grid points are tested, so the good
    set can be larger than the one defined over all real y.
    """
    x = int(x)
    if not 0 <= j <= max_block_index(x):
        raise ParameterError(f"block index {j} out of range for x={x}")
    if y_samples < 2:
        raise ParameterError(f"y_samples must be >= 2, got {y_samples}")
    if primes is None:
        primes = sieve_primes(x)
    report = dyadic_blocks(x)[j]
    lo, hi = report.block_range
    if phis is None or phis.limit < hi:
        phis = totient_table(max(hi, 1))
    ys = np.geomspace(x**0.75, float(x), y_samples)
    ys[-1] = float(x)
    ys_floor = np.floor(ys)
    y_log_y = ys / np.log(ys)
    good = 0
    mass = 0.0
    bv = []
    for d in range(lo, hi + 1):
        phi_d = int(phis.phi[d])
        sel = ap_primes(x, d, primes)
        counts = np.searchsorted(sel, ys_floor, side="right")
        if np.all(3 * phi_d * counts > y_log_y):
            good += 1
            mass += 1.0 / phi_d
        if with_bv and d >= 2:
            bv.append(bv_error(d, x, y_samples, primes, phis))
    report.good_set_size = good
    report.exceptional_count = report.block_size - good
    report.phi_mass = mass
    if bv:
        report.mean_bv_error = float(np.mean(bv))
    return report


def lower_bound_functional(x: int, reports: list[DyadicBlockReport]) -> LowerBound:
    """L(x) = (x / 9) * log(4/3)^2 * total phi mass of the good sets."""
    if not reports:
        raise ParameterError("lower_bound_functional needs at least one block report")
    mass = math.fsum(r.phi_mass for r in reports)
    return LowerBound(x, x / 9.0 * LOG_FOUR_THIRDS**2 * mass, mass)


def loglog_integral_quad(x: float) -> float:
    """Quadrature of dt / (t log t) over [x^(3/4), x]; log(4/3) in closed form."""
    val, _ = integrate.quad(
        lambda t: 1.0 / (t * math.log(t)), x**0.75, float(x),
        epsabs=0.0, epsrel=1e-13, limit=400,
    )
    return val
