"""First and second moments of omega*, their floor-sum forms, and B/C estimates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .arith import PrimeTable, sieve_primes
from .errors import RangeError
from .omega import OmegaStarTable, omega_star_table

LOG_BASE = "natural"
_CHUNK = 1 << 22


@dataclass
class MomentSeries:
    checkpoints: list[int]
    s1: list[int]
    s2: list[int]
    b_hat: list[float | None]
    c_hat: list[float | None]
    log_base: str = field(default=LOG_BASE)

    def rows(self):
        return zip(self.checkpoints, self.s1, self.s2, self.b_hat, self.c_hat)


@dataclass(frozen=True)
class ConstantEstimate:
    x: int
    b_hat: float | None
    c_hat: float | None


def b_hat(x: int, s1: int) -> float | None:
    # log log x <= 0 for x <= e
    if x <= math.e:
        return None
    return (s1 - x * math.log(math.log(x))) / x


def c_hat(x: int, s2: int) -> float | None:
    if x < 2:
        return None
    return s2 / (x * math.log(x))


def moment_sums(source: int | OmegaStarTable, checkpoints) -> MomentSeries:
    """S1(x) and S2(x) at each checkpoint, from one pass over the omega* table.

    ``source`` is either a prebuilt table or the limit N to build one for.
    Sums are accumulated chunk-wise into Python ints, so they stay exact.
    """
    xs = [int(x) for x in checkpoints]
    if not xs:
        raise RangeError("checkpoints must be nonempty")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise RangeError(f"checkpoints must be strictly ascending: {xs}")
    if xs[0] < 1:
        raise RangeError(f"checkpoints must be >= 1: {xs}")
    table = source if isinstance(source, OmegaStarTable) else None
    limit = table.limit if table is not None else int(source)
    if xs[-1] > limit:
        raise RangeError(f"checkpoint {xs[-1]} exceeds table limit {limit}")
    if table is None:
        table = omega_star_table(limit)

    vals = table.values
    s1s: list[int] = []
    s2s: list[int] = []
    acc1 = acc2 = 0
    lo = 1
    k = 0
    while k < len(xs):
        hi = min(lo + _CHUNK, xs[-1] + 1)
        v = vals[lo:hi].astype(np.int64)
        c1 = np.cumsum(v)
        c2 = np.cumsum(v * v)
        while k < len(xs) and xs[k] < hi:
            i = xs[k] - lo
            s1s.append(acc1 + int(c1[i]))
            s2s.append(acc2 + int(c2[i]))
            k += 1
        acc1 += int(c1[-1])
        acc2 += int(c2[-1])
        lo = hi
    return MomentSeries(
        checkpoints=xs,
        s1=s1s,
        s2=s2s,
        b_hat=[b_hat(x, s) for x, s in zip(xs, s1s)],
        c_hat=[c_hat(x, s) for x, s in zip(xs, s2s)],
    )


def estimate_constants(series: MomentSeries) -> list[ConstantEstimate]:
    """Per-checkpoint B-hat and C-hat, natural log; B-hat is None for x <= e."""
    return [
        ConstantEstimate(x, b_hat(x, s1), c_hat(x, s2))
        for x, s1, s2 in zip(series.checkpoints, series.s1, series.s2)
    ]


def _shifted_primes(x: int, primes: PrimeTable | None) -> np.ndarray:
    if primes is None or primes.limit < x + 1:
        primes = sieve_primes(x + 1)
    return np.ascontiguousarray(primes.upto(x + 1) - 1)


def floor_sum_s1(x: int, primes: PrimeTable | None = None) -> int:
    """Sum over primes p with p - 1 <= x of floor(x / (p - 1)); equals S1(x)."""
    if x < 1:
        raise RangeError(f"x must be >= 1, got {x}")
    s = _shifted_primes(x, primes)
    return sum(int(t) for t in x // s)


@njit(cache=True)
def _pair_floor_rows(x, s):
    # floor(x / lcm(a, b)) == (x // b) // (a // gcd(a, b)); no product is formed
    n = s.shape[0]
    total = np.zeros(n, dtype=np.int64)
    census = np.zeros(n, dtype=np.int64)
    for i in range(n):
        a = s[i]
        t_row = x // a
        c_row = 1 if t_row > 0 else 0
        for j in range(i + 1, n):
            b = s[j]
            g, r = a, b
            while r:
                g, r = r, g % r
            t = (x // b) // (a // g)
            if t == 0:
                continue
            t_row += 2 * t
            c_row += 2
        total[i] = t_row
        census[i] = c_row
    return total, census


def pair_floor_sums(x: int, primes: PrimeTable | None = None) -> tuple[int, int]:
    """(S2 floor sum, lcm census) over ordered prime pairs with p-1, q-1 <= x."""
    if x < 1:
        raise RangeError(f"x must be >= 1, got {x}")
    s = _shifted_primes(x, primes)
    total, census = _pair_floor_rows(x, s)
    return sum(int(t) for t in total), sum(int(c) for c in census)


def floor_sum_s2(x: int, primes: PrimeTable | None = None) -> int:
    """Sum over ordered prime pairs of floor(x / lcm(p - 1, q - 1)); equals S2(x).

    Pairs whose lcm exceeds x contribute 0, so no lcm is ever materialised.
    """
    return pair_floor_sums(x, primes)[0]


def default_checkpoints(limit: int) -> list[int]:
    """Powers of 10 and powers of 2 up to limit, merged."""
    xs = set()
    k = 1
    while k <= limit:
        xs.add(k)
        k *= 10
    k = 2
    while k <= limit:
        xs.add(k)
        k *= 2
    return sorted(xs)
