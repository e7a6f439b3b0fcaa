"""omega*(n): the number of primes p with (p - 1) | n."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np
from numba import njit, prange

from .arith import PrimeTable, is_prime_u64, sieve_primes
from .config import DEFAULT_BUDGET, Budget
from .errors import DomainError, SizingError

# the bundled TBB is too old for numba; try it last so it never warns
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@dataclass(frozen=True)
class OmegaStarTable:
    limit: int
    values: np.ndarray  # uint32, values[0] = 0 placeholder
    updates: int  # (p, m) incidences applied by the sieve, p = 2 included

    def __getitem__(self, n):
        return self.values[n]


def _divisors(n: int) -> list[int]:
    fac: list[tuple[int, int]] = []
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            fac.append((p, e))
    f = 5
    while f * f <= m:
        for q in (f, f + 2):
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            if e:
                fac.append((q, e))
        f += 6
    if m > 1:
        fac.append((m, 1))
    divs = [1]
    for p, e in fac:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def omega_star_point(n: int, table: PrimeTable | None = None) -> int:
    """Count divisors e of n with e + 1 prime.

    Primality comes from ``table`` when e + 1 is inside it, otherwise from
    deterministic Miller-Rabin.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"omega* is defined for n >= 1, got {n}")
    if n % 2:
        return 1
    count = 0
    for e in _divisors(n):
        q = e + 1
        if table is not None and q <= table.limit:
            count += bool(table.is_prime[q])
        else:
            count += is_prime_u64(q)
    return count


@njit(parallel=True, cache=True)
def _omega_kernel(n, strides, seg):
    values = np.ones(n + 1, dtype=np.uint32)
    values[0] = 0
    nseg = (n + seg - 1) // seg
    updates = np.zeros(nseg, dtype=np.int64)
    for i in prange(nseg):
        # late segments walk more strides; alternate ends so static chunks balance
        k = i // 2 if i % 2 == 0 else nseg - 1 - i // 2
        lo = 1 + k * seg
        hi = min(lo + seg, n + 1)
        cnt = 0
        for r in range(strides.shape[0]):
            s = strides[r]
            if s >= hi:
                break
            start = ((lo + s - 1) // s) * s
            for m in range(start, hi, s):
                values[m] += 1
            cnt += (hi - 1) // s - (lo - 1) // s
        updates[k] = cnt
    return values, updates.sum()


def omega_star_table(
    n: int,
    primes: PrimeTable | None = None,
    threads: int | None = None,
    budget: Budget = DEFAULT_BUDGET,
) -> OmegaStarTable:
    """Bulk omega* for 1..n by striding over multiples of p - 1.

    p = 2 is the all-ones initial fill; every odd prime p <= n + 1 adds one
    to each multiple of p - 1. Index segments are disjoint, so the result
    does not depend on the thread count.
    """
    if n < 1:
        raise SizingError(f"omega* table limit must be >= 1, got {n}")
    need = 4 * (n + 1) + (n + 2) + 8 * int(1.26 * (n + 1) / math.log(n + 2)) + 8
    if need > budget.memory_bytes:
        raise SizingError(
            f"omega* table for n={n} needs ~{need} bytes, over the memory budget of "
            f"{budget.memory_bytes} bytes"
        )
    if primes is None:
        primes = sieve_primes(n + 1, budget)
    elif primes.limit < n + 1:
        raise SizingError(f"prime table limit {primes.limit} < n + 1 = {n + 1}")
    strides = primes.upto(n + 1)[1:] - 1
    strides = np.ascontiguousarray(strides, dtype=np.int64)
    if threads is not None:
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
    values, updates = _omega_kernel(n, strides, budget.omega_segment_size)
    values.flags.writeable = False
    return OmegaStarTable(n, values, int(updates) + n)
