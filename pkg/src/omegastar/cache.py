"""Binary table caches.

Layout: 4-byte magic, 8-byte little-endian limit, payload, then a 32-byte
SHA-256 of everything before it.

  OSL1  prime bitmap for 0..limit, bit n at byte n >> 3, bit n & 7 (LSB first)
  OSW1  omega* counts for n = 1..limit as little-endian uint32
"""
from __future__ import annotations

import hashlib
import struct
from pathlib import Path

import numpy as np

from .arith import PrimeTable
from .errors import CacheError
from .omega import OmegaStarTable

PRIME_MAGIC = b"OSL1"
OMEGA_MAGIC = b"OSW1"
_HEADER = struct.Struct("<4sQ")
_DIGEST = 32


def _seal(magic: bytes, limit: int, payload: bytes) -> bytes:
    body = _HEADER.pack(magic, limit) + payload
    return body + hashlib.sha256(body).digest()


def _open(blob: bytes, magic: bytes, source) -> tuple[int, memoryview]:
    if len(blob) < _HEADER.size + _DIGEST:
        raise CacheError(f"{source}: truncated cache file")
    body, digest = blob[:-_DIGEST], blob[-_DIGEST:]
    got_magic, limit = _HEADER.unpack_from(body)
    if got_magic != magic:
        raise CacheError(f"{source}: bad magic {got_magic!r}, expected {magic!r}")
    if hashlib.sha256(body).digest() != digest:
        raise CacheError(f"{source}: checksum mismatch")
    return limit, memoryview(body)[_HEADER.size :]


def prime_table_bytes(table: PrimeTable) -> bytes:
    bits = np.packbits(table.is_prime, bitorder="little")
    return _seal(PRIME_MAGIC, table.limit, bits.tobytes())


def prime_table_from_bytes(blob: bytes, source="<bytes>") -> PrimeTable:
    limit, payload = _open(blob, PRIME_MAGIC, source)
    if len(payload) != (limit + 8) // 8:
        raise CacheError(f"{source}: bitmap length {len(payload)} does not match limit {limit}")
    bits = np.frombuffer(payload, dtype=np.uint8)
    is_prime = np.unpackbits(bits, count=limit + 1, bitorder="little").astype(bool)
    primes = np.flatnonzero(is_prime).astype(np.int64)
    is_prime.flags.writeable = False
    primes.flags.writeable = False
    return PrimeTable(limit, is_prime, primes)


def omega_table_bytes(table: OmegaStarTable) -> bytes:
    payload = table.values[1:].astype("<u4", copy=False).tobytes()
    return _seal(OMEGA_MAGIC, table.limit, payload)


def omega_table_from_bytes(blob: bytes, source="<bytes>") -> OmegaStarTable:
    limit, payload = _open(blob, OMEGA_MAGIC, source)
    if len(payload) != 4 * limit:
        raise CacheError(f"{source}: payload length {len(payload)} does not match limit {limit}")
    values = np.empty(limit + 1, dtype=np.uint32)
    values[0] = 0
    values[1:] = np.frombuffer(payload, dtype="<u4")
    values.flags.writeable = False
    # every incidence the sieve applies lands in exactly one counter
    return OmegaStarTable(limit, values, int(values.sum(dtype=np.uint64)))


def save_prime_table(path, table: PrimeTable) -> None:
    Path(path).write_bytes(prime_table_bytes(table))


def load_prime_table(path) -> PrimeTable:
    return prime_table_from_bytes(Path(path).read_bytes(), path)


def save_omega_table(path, table: OmegaStarTable) -> None:
    Path(path).write_bytes(omega_table_bytes(table))


def load_omega_table(path) -> OmegaStarTable:
    return omega_table_from_bytes(Path(path).read_bytes(), path)
