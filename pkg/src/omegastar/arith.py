"""Arithmetic primitives: segmented prime sieve, totients, checked lcm, li."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import integrate, special

from .config import DEFAULT_BUDGET, WORD_MAX, Budget
from .errors import DomainError, SizingError

U64_MAX = 2**64 - 1
_LI_OFFSET = float(special.expi(math.log(2.0)))  # Li(2) in the principal-value convention


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    is_prime: np.ndarray  # bool, length limit + 1
    primes: np.ndarray  # int64, ascending

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and bool(self.is_prime[n])

    def __len__(self) -> int:
        return len(self.primes)

    def pi(self, y):
        """Number of primes <= y; y may be a real or an array (floored)."""
        y = np.asarray(y)
        if y.dtype.kind == "f":
            y = np.floor(y).astype(np.int64)
        if np.any(y > self.limit):
            raise SizingError(f"pi({np.max(y)}) requested beyond sieve limit {self.limit}")
        out = np.searchsorted(self.primes, y, side="right")
        return int(out) if out.ndim == 0 else out

    def upto(self, y: int) -> np.ndarray:
        if y > self.limit:
            raise SizingError(f"primes up to {y} requested beyond sieve limit {self.limit}")
        return self.primes[: np.searchsorted(self.primes, y, side="right")]


@dataclass(frozen=True)
class TotientTable:
    limit: int
    phi: np.ndarray  # int64, phi[0] is a 0 placeholder

    def __getitem__(self, d):
        return self.phi[d]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _check_limit(n: int, what: str, bytes_per_entry: float, budget: Budget) -> None:
    if n < 1:
        raise SizingError(f"{what} limit must be >= 1, got {n}")
    if n > WORD_MAX:
        raise SizingError(f"{what} limit {n} does not fit a signed 64-bit word")
    need = int((n + 1) * bytes_per_entry)
    if need > budget.memory_bytes:
        raise SizingError(
            f"{what} limit {n} needs ~{need} bytes, over the memory budget of "
            f"{budget.memory_bytes} bytes"
        )


def _small_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def sieve_primes(n: int, budget: Budget = DEFAULT_BUDGET) -> PrimeTable:
    """Segmented sieve of Eratosthenes up to and including n.

    Only the base primes up to sqrt(n) live outside the output bitmap; each
    segment of ``budget.segment_size`` entries is struck in place.
    """
    # bitmap byte per entry + int64 per prime (pi(n) < 1.26 n / log n)
    density = 1.26 / math.log(max(n, 3)) if n >= 3 else 1.0
    _check_limit(n, "prime sieve", 1 + 8 * density, budget)

    base = _small_sieve(math.isqrt(n))
    is_prime = np.empty(n + 1, dtype=bool)
    seg = budget.segment_size
    for lo in range(0, n + 1, seg):
        hi = min(lo + seg, n + 1)
        block = is_prime[lo:hi]
        block[:] = True
        for p in base:
            p = int(p)
            start = max(p * p, -(-lo // p) * p)
            if start >= hi:
                if p * p >= hi:
                    break
                continue
            block[start - lo :: p] = False
    is_prime[: min(2, n + 1)] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    return PrimeTable(n, _freeze(is_prime), _freeze(primes))


@njit(cache=True)
def _linear_totients(d_max):
    phi = np.zeros(d_max + 1, dtype=np.int64)
    phi[1] = 1
    primes = np.empty(d_max // 2 + 2, dtype=np.int64)
    composite = np.zeros(d_max + 1, dtype=np.bool_)
    k = 0
    for i in range(2, d_max + 1):
        if not composite[i]:
            primes[k] = i
            k += 1
            phi[i] = i - 1
        for j in range(k):
            p = primes[j]
            m = i * p
            if m > d_max:
                break
            composite[m] = True
            if i % p == 0:
                phi[m] = phi[i] * p
                break
            phi[m] = phi[i] * (p - 1)
    return phi


def totient_table(d_max: int, budget: Budget = DEFAULT_BUDGET) -> TotientTable:
    """Euler phi for 1..d_max via a linear (Euler) sieve."""
    _check_limit(d_max, "totient table", 8 + 1 + 4, budget)
    return TotientTable(d_max, _freeze(_linear_totients(d_max)))


def lcm_checked(a: int, b: int) -> int:
    """lcm(a, b), raising OverflowError past the unsigned 64-bit range."""
    a, b = int(a), int(b)
    if a < 1 or b < 1:
        raise DomainError(f"lcm_checked needs positive arguments, got ({a}, {b})")
    r = (a // math.gcd(a, b)) * b
    if r > U64_MAX:
        raise OverflowError(f"lcm({a}, {b}) exceeds the unsigned 64-bit range")
    return r


def log_integral(y: float) -> float:
    """Offset logarithmic integral, integral of dt/log t from 2 to y.

    Adaptive Gauss-Kronrod on the substitution t = e^u, which keeps the
    integrand smooth and bounded on [log 2, log y].
    """
    y = float(y)
    if not y >= 2.0:
        raise DomainError(f"log_integral defined for y >= 2, got {y}")
    if y == 2.0:
        return 0.0
    val, _ = integrate.quad(
        lambda u: math.exp(u) / u, math.log(2.0), math.log(y),
        epsabs=0.0, epsrel=1e-13, limit=400,
    )
    return val


def log_integral_array(y) -> np.ndarray:
    """Vectorised offset li via the exponential integral Ei(log y) - Ei(log 2)."""
    y = np.asarray(y, dtype=np.float64)
    if np.any(~(y >= 2.0)):
        raise DomainError("log_integral_array defined for y >= 2")
    return np.where(y == 2.0, 0.0, special.expi(np.log(y)) - _LI_OFFSET)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers all of u64)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
