"""Print the quantities the acceptance suite pins as bands.

Run after ``omegastar verify --scale medium`` passes; the printed values are
the reference run the tolerance bands in tests/test_acceptance.py came from.
"""
import math

from omegastar.apcensus import dyadic_blocks, exceptional_set, lower_bound_functional
from omegastar.arith import sieve_primes, totient_table
from omegastar.identities import identity_report, pair_sum_phi
from omegastar.moments import moment_sums
from omegastar.omega import omega_star_table

X_MAX = 10**7

primes = sieve_primes(X_MAX + 1)
phis = totient_table(10**6)
omega = omega_star_table(X_MAX, primes)
series = moment_sums(omega, [10**3, 10**4, 10**5, 10**6, 10**7])

print("x        S1           S2             B-hat          C-hat")
for x, s1, s2, b, c in series.rows():
    print(f"{x:<8} {s1:<12} {s2:<14} {b:<14.10f} {c:.10f}")

print("\nT(x)/log x")
ratios = []
for x in (10**3, 10**4, 10**5, 10**6):
    t = pair_sum_phi(x, primes, phis)
    ratios.append(t / math.log(x))
    print(f"{x:<8} T={t:.10f}  T/log x={ratios[-1]:.10f}")
print(f"max/min = {max(ratios) / min(ratios):.10f}")

print("\n|x T(x) - S2(x)| / x")
for x in (10**3, 10**4, 10**5):
    r = identity_report(x, primes, phis, omega)
    print(f"{x:<8} gap={r.abs_gap:.10f} census={r.census} census/x={r.census_over_x:.6f}")

x = 10**6
reports = [exceptional_set(x, b.j, 64, primes, phis) for b in dyadic_blocks(x)]
for r in reports:
    print(f"block j={r.j} Q={r.q_j:.4f} range={r.block_range} good={r.good_set_size} "
          f"exc={r.exceptional_count} phi_mass={r.phi_mass:.10f}")
lb = lower_bound_functional(x, reports)
s2 = moment_sums(omega, [x]).s2[0]
print(f"L(1e6)={lb.value:.6f} S2(1e6)={s2} (S2 - L)/x={(s2 - lb.value) / x:.6f} L/(x log x)={lb.constant:.8f}")
