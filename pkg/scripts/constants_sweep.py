"""B-hat / C-hat trajectory plus the T(x) and lower-bound diagnostics.

    python scripts/constants_sweep.py --limit 1e8 --out results/

Writes moments.csv, pairsum.csv and blocks.csv (same schemas as the CLI).
"""
import argparse
import math
from pathlib import Path

from omegastar.apcensus import dyadic_blocks, exceptional_set, lower_bound_functional
from omegastar.arith import sieve_primes, totient_table
from omegastar.cli import parse_int
from omegastar.identities import erdos_prachar_census, pair_sum_direct, pair_sum_phi
from omegastar.moments import default_checkpoints, moment_sums
from omegastar.omega import omega_star_table
from omegastar.output import BLOCKS_HEADER, MOMENTS_HEADER, PAIRSUM_HEADER, render_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=parse_int, default=10**7)
    ap.add_argument("--pairsum-max", type=parse_int, default=10**6)
    ap.add_argument("--blocks-x", type=parse_int, default=10**6)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    primes = sieve_primes(args.limit + 1)
    omega = omega_star_table(args.limit, primes)
    series = moment_sums(omega, default_checkpoints(args.limit))
    (args.out / "moments.csv").write_text(render_csv(MOMENTS_HEADER, series.rows()))
    for x, s1, s2, b, c in series.rows():
        if x >= 1000:
            print(f"x={x:>11}  B-hat={b:.6f}  C-hat={c:.6f}")

    phis = totient_table(args.pairsum_max)
    rows = []
    x = 1000
    while x <= args.pairsum_max:
        t = pair_sum_phi(x, primes, phis)
        s2 = moment_sums(omega, [x]).s2[0]
        # direct form and census are O(pi(x)^2): left empty past 1e5
        small = x <= 10**5
        t_direct = pair_sum_direct(x, primes) if small else None
        census = erdos_prachar_census(x, primes) if small else None
        rows.append((x, t_direct, t, s2 / x, abs(t - s2 / x), census))
        print(f"x={x:>8}  T={t:.6f}  T/log x={t / math.log(x):.6f}  |T - S2/x|={abs(t - s2 / x):.4f}")
        x *= 10
    (args.out / "pairsum.csv").write_text(render_csv(PAIRSUM_HEADER, rows))

    bx = args.blocks_x
    reports = [exceptional_set(bx, b.j, 64, primes) for b in dyadic_blocks(bx)]
    lb = lower_bound_functional(bx, reports)
    block_rows = [(bx, r.j, r.q_j, r.block_size, r.good_set_size, r.exceptional_count, r.phi_mass)
                  for r in reports]
    (args.out / "blocks.csv").write_text(render_csv(BLOCKS_HEADER, block_rows))
    print(f"L({bx}) = {lb.value:.3f}, L/(x log x) = {lb.constant:.6f}")


if __name__ == "__main__":
    main()
