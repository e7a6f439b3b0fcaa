"""Shifted-prime divisor function omega*(n), its moments and the pair-sum identities."""

__version__ = "0.1.0"

from .apcensus import (
    bv_error,
    count_ap_primes,
    dyadic_blocks,
    exceptional_set,
    lower_bound_functional,
)
from .arith import lcm_checked, log_integral, sieve_primes, totient_table
from .identities import erdos_prachar_census, identity_report, pair_sum_direct, pair_sum_phi
from .moments import estimate_constants, floor_sum_s1, floor_sum_s2, moment_sums
from .omega import omega_star_point, omega_star_table

__all__ = [
    "bv_error",
    "count_ap_primes",
    "dyadic_blocks",
    "erdos_prachar_census",
    "estimate_constants",
    "exceptional_set",
    "floor_sum_s1",
    "floor_sum_s2",
    "identity_report",
    "lcm_checked",
    "log_integral",
    "lower_bound_functional",
    "moment_sums",
    "omega_star_point",
    "omega_star_table",
    "pair_sum_direct",
    "pair_sum_phi",
    "sieve_primes",
    "totient_table",
]
