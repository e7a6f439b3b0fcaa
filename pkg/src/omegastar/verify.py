"""Exact cross-checks run by ``omegastar verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .apcensus import ap_primes
from .arith import sieve_primes, totient_table
from .identities import pair_sum_direct, pair_sum_direct_exact, pair_sum_phi, pair_sum_phi_exact
from .moments import floor_sum_s1, floor_sum_s2, moment_sums
from .omega import omega_star_point, omega_star_table

SCALES = {
    "small": dict(sweep=2000, exact=60, omega=10**4, float_x=(10**3,), ap_d=10, ap_y=10**4, phi=10**3),
    "medium": dict(sweep=2000, exact=200, omega=10**5, float_x=(10**3, 10**4, 10**5),
                   ap_d=50, ap_y=10**5, phi=10**4),
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def trial_division_primes(n: int) -> list[int]:
    found: list[int] = []
    for k in range(2, n + 1):
        r = math.isqrt(k)
        for q in found:
            if q > r:
                found.append(k)
                break
            if k % q == 0:
                break
        else:
            found.append(k)
    return found


def check_floor_sums(x_max: int, store=None) -> CheckResult:
    primes = sieve_primes(x_max + 1)
    table = store.omega(x_max) if store else omega_star_table(x_max, primes)
    ms = moment_sums(table, range(1, x_max + 1))
    for x, s1, s2 in zip(ms.checkpoints, ms.s1, ms.s2):
        f1, f2 = floor_sum_s1(x, primes), floor_sum_s2(x, primes)
        if (s1, s2) != (f1, f2):
            return CheckResult("floor-sum identity", False, f"x={x} expected S1,S2={f1},{f2} got {s1},{s2}")
    return CheckResult("floor-sum identity", True, f"S1, S2 exact for all x <= {x_max}")


def check_phi_exact(x_max: int) -> CheckResult:
    primes = sieve_primes(x_max)
    for x in range(2, x_max + 1):
        a, b = pair_sum_direct_exact(x, primes), pair_sum_phi_exact(x, primes)
        if a != b:
            return CheckResult("phi decomposition (exact)", False, f"x={x} expected {a} got {b}")
    return CheckResult("phi decomposition (exact)", True, f"rational equality for 2 <= x <= {x_max}")


def check_phi_float(xs) -> CheckResult:
    worst = 0.0
    for x in xs:
        primes = sieve_primes(x)
        a, b = pair_sum_direct(x, primes), pair_sum_phi(x, primes)
        rel = abs(a - b) / a
        worst = max(worst, rel)
        if rel > 1e-9:
            return CheckResult("phi decomposition (float)", False, f"x={x} expected {a!r} got {b!r}")
    return CheckResult("phi decomposition (float)", True, f"max rel diff {worst:.3g} at x in {list(xs)}")


def check_omega_pointwise(n: int, store=None) -> CheckResult:
    primes = sieve_primes(n + 1)
    table = store.omega(n) if store else omega_star_table(n, primes)
    vals = table.values
    for k in range(1, n + 1):
        if omega_star_point(k, primes) != vals[k]:
            return CheckResult("omega* bulk vs pointwise", False,
                               f"n={k} expected {omega_star_point(k, primes)} got {vals[k]}")
    if np.any(vals[1 : n + 1 : 2] != 1):
        return CheckResult("omega* bulk vs pointwise", False, "odd n with omega* != 1")
    return CheckResult("omega* bulk vs pointwise", True, f"equal for n <= {n}")


def check_ap_counts(d_max: int, y_max: int) -> CheckResult:
    primes = sieve_primes(y_max)
    plain = trial_division_primes(y_max)
    ys = np.arange(1, y_max + 1)
    for d in range(1, d_max + 1):
        expected = np.zeros(y_max + 1, dtype=np.int64)
        for p in plain:
            if (p - 1) % d == 0:
                expected[p] += 1
        expected = np.cumsum(expected)[1:]
        got = np.searchsorted(ap_primes(y_max, d, primes), ys, side="right")
        bad = np.flatnonzero(got != expected)
        if bad.size:
            y = int(ys[bad[0]])
            return CheckResult("AP prime counts", False, f"d={d} y={y} expected {expected[bad[0]]} got {got[bad[0]]}")
    return CheckResult("AP prime counts", True, f"all d <= {d_max}, y <= {y_max}")


def check_totients(d_max: int) -> CheckResult:
    phi = totient_table(d_max).phi
    for d in range(1, d_max + 1):
        want = int(np.count_nonzero(np.gcd(np.arange(1, d + 1), d) == 1))
        if phi[d] != want:
            return CheckResult("totient sieve", False, f"d={d} expected {want} got {phi[d]}")
    return CheckResult("totient sieve", True, f"gcd-count equality for d <= {d_max}")


def run_checks(scale: str = "small", store=None, on_result: Callable | None = None) -> list[CheckResult]:
    cfg = SCALES[scale]
    steps = [
        lambda: check_totients(cfg["phi"]),
        lambda: check_floor_sums(cfg["sweep"], store),
        lambda: check_omega_pointwise(cfg["omega"], store),
        lambda: check_phi_exact(cfg["exact"]),
        lambda: check_phi_float(cfg["float_x"]),
        lambda: check_ap_counts(cfg["ap_d"], cfg["ap_y"]),
    ]
    results = []
    for step in steps:
        r = step()
        results.append(r)
        if on_result:
            on_result(r)
    return results
