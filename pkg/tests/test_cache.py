import hashlib
import struct

import numpy as np
import pytest

from omegastar import cache
from omegastar.arith import sieve_primes
from omegastar.errors import CacheError
from omegastar.omega import omega_star_table


@pytest.mark.parametrize("n", [1, 7, 8, 9, 1000, 65537])
def test_prime_cache_roundtrip(tmp_path, n):
    t = sieve_primes(n)
    blob = cache.prime_table_bytes(t)
    assert blob[:4] == b"OSL1"
    assert struct.unpack("<Q", blob[4:12])[0] == n
    assert len(blob) == 12 + (n + 8) // 8 + 32
    back = cache.prime_table_from_bytes(blob)
    assert back.limit == n
    assert np.array_equal(back.primes, t.primes)
    assert cache.prime_table_bytes(back) == blob
    path = tmp_path / "p.osl"
    cache.save_prime_table(path, t)
    assert path.read_bytes() == blob
    assert np.array_equal(cache.load_prime_table(path).is_prime, t.is_prime)


def test_prime_bitmap_layout():
    blob = cache.prime_table_bytes(sieve_primes(7))
    # primes 2, 3, 5, 7 -> bits 2, 3, 5, 7 of byte 0
    assert blob[12] == 0b10101100


def test_omega_cache_roundtrip(tmp_path):
    t = omega_star_table(5000)
    blob = cache.omega_table_bytes(t)
    assert blob[:4] == b"OSW1"
    assert np.frombuffer(blob[12:24], "<u4").tolist() == [1, 2, 1]
    back = cache.omega_table_from_bytes(blob)
    assert np.array_equal(back.values, t.values)
    assert back.updates == t.updates
    assert cache.omega_table_bytes(back) == blob


def test_corruption_detected():
    blob = bytearray(cache.omega_table_bytes(omega_star_table(100)))
    blob[20] ^= 1
    with pytest.raises(CacheError, match="checksum"):
        cache.omega_table_from_bytes(bytes(blob))


def test_bad_magic_and_truncation():
    blob = cache.prime_table_bytes(sieve_primes(100))
    with pytest.raises(CacheError, match="magic"):
        cache.omega_table_from_bytes(blob)
    with pytest.raises(CacheError):
        cache.prime_table_from_bytes(blob[:10])


def test_length_mismatch_with_valid_checksum():
    body = struct.pack("<4sQ", b"OSW1", 10) + b"\x01\x00\x00\x00"
    with pytest.raises(CacheError, match="length"):
        cache.omega_table_from_bytes(body + hashlib.sha256(body).digest())
