"""Time and measure one omega* table build; prints a JSON record.

    NUMBA_NUM_THREADS=4 python scripts/bench_omega.py --limit 1e8 --threads 4

elapsed covers sieve + table; kernel_elapsed only the omega* strides (the
part that parallelises). peak_rss_mb is the process high-water mark.
"""
import argparse
import hashlib
import json
import resource
import time

from omegastar.arith import sieve_primes
from omegastar.cli import parse_int
from omegastar.omega import omega_star_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=parse_int, default=10**8)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    omega_star_table(1000, threads=args.threads)  # JIT warm-up (or cache load)
    t0 = time.perf_counter()
    primes = sieve_primes(args.limit + 1)
    t1 = time.perf_counter()
    table = omega_star_table(args.limit, primes, threads=args.threads)
    t2 = time.perf_counter()
    digest = hashlib.sha256(memoryview(table.values)).hexdigest()
    peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    print(json.dumps({
        "limit": args.limit,
        "threads": args.threads,
        "elapsed": t2 - t0,
        "kernel_elapsed": t2 - t1,
        "peak_rss_mb": peak_kb / 1024,
        "sha256": digest,
    }))


if __name__ == "__main__":
    main()
