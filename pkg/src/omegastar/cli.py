"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or cache error.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

import numba

from . import cache
from .apcensus import ap_primes, bv_error, dyadic_blocks, exceptional_set, lower_bound_functional
from .arith import PrimeTable, TotientTable, sieve_primes, totient_table
from .errors import CacheError
from .identities import erdos_prachar_census, pair_sum_direct, pair_sum_phi
from .moments import default_checkpoints, moment_sums
from .omega import OmegaStarTable, omega_star_table
from .output import (
    BLOCKS_HEADER,
    BV_HEADER,
    MOMENTS_HEADER,
    OMEGA_HEADER,
    PAIRSUM_HEADER,
    RunManifest,
    render,
)
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Accepts 12345, 10^6 and 1e6 (the latter only when integral)."""
    t = text.strip().replace("_", "")
    m = re.fullmatch(r"(\d+)\^(\d+)", t)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    if re.fullmatch(r"\d+", t):
        return int(t)
    if re.fullmatch(r"\d+(\.\d*)?[eE]\d+", t):
        mant, exp = re.split(r"[eE]", t)
        v = float(mant) * 10 ** int(exp)
        if v == int(v):
            return int(v)
    raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def parse_int_list(text: str) -> list[int]:
    try:
        return [parse_int(part) for part in text.split(",") if part.strip()]
    except argparse.ArgumentTypeError as e:
        raise argparse.ArgumentTypeError(f"malformed list {text!r}: {e}") from None


class TableStore:
    """Builds tables on demand, reading and writing binary caches when a directory is set."""

    def __init__(self, cache_dir: str | None, threads: int):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.threads = threads
        self.limits: dict[str, int] = {}
        self._primes: PrimeTable | None = None
        if self.cache_dir is not None:
            try:
                self.cache_dir.mkdir(parents=True, exist_ok=True)
                probe = self.cache_dir / ".write-probe"
                probe.write_bytes(b"")
                probe.unlink()
            except OSError as e:
                raise OSError(f"cache directory {self.cache_dir} is not writable: {e}") from e

    def _cached(self, name: str, load, save, build):
        if self.cache_dir is None:
            return build()
        path = self.cache_dir / name
        if path.exists():
            return load(path)
        obj = build()
        save(path, obj)
        return obj

    def primes(self, n: int) -> PrimeTable:
        if self._primes is None or self._primes.limit < n:
            self._primes = self._cached(
                f"primes_{n}.osl", cache.load_prime_table, cache.save_prime_table,
                lambda: sieve_primes(n),
            )
            self.limits["primes"] = n
        return self._primes

    def omega(self, n: int) -> OmegaStarTable:
        self.limits["omega"] = n
        return self._cached(
            f"omega_{n}.osw", cache.load_omega_table, cache.save_omega_table,
            lambda: omega_star_table(n, self.primes(n + 1), threads=self.threads),
        )

    def totients(self, n: int) -> TotientTable:
        self.limits["totients"] = n
        return totient_table(n)


def cmd_moments(args, store: TableStore):
    checkpoints = args.checkpoints
    limit = args.limit
    if limit is None:
        if not checkpoints:
            raise UsageError("moments needs --limit or --checkpoints")
        limit = max(checkpoints)
    if checkpoints is None:
        checkpoints = default_checkpoints(limit)
    checkpoints = sorted(set(checkpoints))
    if not checkpoints or checkpoints[0] < 1:
        raise UsageError("checkpoints must be positive integers")
    if checkpoints[-1] > limit:
        raise UsageError(f"checkpoint {checkpoints[-1]} exceeds --limit {limit}")
    series = moment_sums(store.omega(limit), checkpoints)
    return MOMENTS_HEADER, list(series.rows()), {}, dict(limit=limit, checkpoints=checkpoints)


def cmd_omega(args, store: TableStore):
    if args.limit is None:
        raise UsageError("omega needs --limit")
    vals = store.omega(args.limit).values
    rows = ((n, int(v)) for n, v in enumerate(vals.tolist()) if n)
    return OMEGA_HEADER, rows, {}, dict(limit=args.limit)


def cmd_pairsum(args, store: TableStore):
    if not args.x:
        raise UsageError("pairsum needs --x")
    xs = sorted(set(args.x))
    if xs[0] < 2:
        raise UsageError("pairsum needs x >= 2")
    top = xs[-1]
    primes = store.primes(top + 1)
    phis = store.totients(top)
    omega = store.omega(top)
    series = moment_sums(omega, xs)
    rows = []
    for x, s2 in zip(xs, series.s2):
        t_direct = pair_sum_direct(x, primes)
        t_phi = pair_sum_phi(x, primes, phis)
        rows.append((x, t_direct, t_phi, s2 / x, abs(t_direct - s2 / x), erdos_prachar_census(x, primes)))
    return PAIRSUM_HEADER, rows, {}, dict(x=xs)


def cmd_apcensus(args, store: TableStore):
    if not args.d or args.z is None:
        raise UsageError("apcensus needs --d and --z")
    if args.z < 4:
        raise UsageError("apcensus needs z >= 4")
    primes = store.primes(args.z)
    phis = store.totients(max(args.d))
    rows, counts = [], []
    for d in args.d:
        if d < 2:
            raise UsageError("apcensus needs d >= 2")
        rows.append((d, args.z, bv_error(d, args.z, args.grid_size, primes, phis)))
        counts.append({"d": d, "z": args.z, "count": int(len(ap_primes(args.z, d, primes)))})
    params = dict(d=args.d, z=args.z, grid_size=args.grid_size)
    return BV_HEADER, rows, {"counts": counts}, params


def cmd_blocks(args, store: TableStore):
    if args.x is None or len(args.x) != 1:
        raise UsageError("blocks needs a single --x")
    (x,) = args.x
    if x < 16:
        raise UsageError("blocks needs x >= 16")
    primes = store.primes(x)
    top = dyadic_blocks(x)[-1].block_range[1]
    phis = store.totients(max(top, 1))
    reports = [exceptional_set(x, b.j, args.grid_size, primes, phis) for b in dyadic_blocks(x)]
    lb = lower_bound_functional(x, reports)
    rows = [
        (x, r.j, r.q_j, r.block_size, r.good_set_size, r.exceptional_count, r.phi_mass)
        for r in reports
    ]
    extra = {"lower_bound": lb.value, "lower_bound_constant": lb.constant}
    return BLOCKS_HEADER, rows, extra, dict(x=x, y_samples=args.grid_size)


COMMANDS = {
    "moments": cmd_moments,
    "omega": cmd_omega,
    "pairsum": cmd_pairsum,
    "apcensus": cmd_apcensus,
    "blocks": cmd_blocks,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cache-dir", default=os.environ.get("OSL_CACHE_DIR"),
                        help="binary table cache (default: $OSL_CACHE_DIR)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--output", "-o", help="data file; a .manifest.json is written beside it")

    p = argparse.ArgumentParser(prog="omegastar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("moments", parents=[common], help="S1, S2, B-hat, C-hat along checkpoints")
    s.add_argument("--limit", type=parse_int)
    s.add_argument("--checkpoints", type=parse_int_list)

    s = sub.add_parser("omega", parents=[common], help="export the omega* table")
    s.add_argument("--limit", type=parse_int)

    s = sub.add_parser("pairsum", parents=[common], help="T(x) direct and phi forms vs S2(x)/x")
    s.add_argument("--x", type=parse_int_list)

    s = sub.add_parser("apcensus", parents=[common], help="BV-style deviation of pi(y; d, 1)")
    s.add_argument("--d", type=parse_int_list)
    s.add_argument("--z", type=parse_int)
    s.add_argument("--grid-size", type=int, default=64)

    s = sub.add_parser("blocks", parents=[common], help="dyadic blocks, exceptional sets, lower bound")
    s.add_argument("--x", type=parse_int_list)
    s.add_argument("--grid-size", type=int, default=64)

    s = sub.add_parser("verify", parents=[common], help="run the exact oracle cross-checks")
    s.add_argument("--scale", choices=("small", "medium"), default="small")
    return p


def _emit(args, manifest: RunManifest, text: str) -> None:
    if args.output:
        out = Path(args.output)
        with open(out, "w", newline="") as f:
            f.write(text)
        Path(str(out) + ".manifest.json").write_text(manifest.to_json())
    else:
        sys.stdout.write(text)
        sys.stderr.write(manifest.to_json())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    threads = min(args.threads, numba.config.NUMBA_NUM_THREADS)
    if threads != args.threads:
        print(f"note: only {threads} numba thread(s) available", file=sys.stderr)
    numba.set_num_threads(threads)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "output", "cache_dir")}
    manifest = RunManifest(args.command, params, thread_count=threads)
    try:
        store = TableStore(args.cache_dir, threads)
        if args.command == "verify":
            results = run_checks(args.scale, store, on_result=lambda r: print(r.line(), flush=True))
            manifest.table_limits = store.limits
            sys.stderr.write(manifest.finish().to_json())
            return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL
        header, rows, extra, used = COMMANDS[args.command](args, store)
        manifest.parameters.update(used)
        manifest.table_limits = store.limits
        text = render(args.format, header, rows, extra)
        _emit(args, manifest.finish(), text)
    except UsageError as e:
        parser.error(str(e))
    except (CacheError, OSError) as e:
        print(f"omegastar: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"omegastar: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
