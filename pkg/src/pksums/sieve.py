"""Segmented, odd-only sieve of Eratosthenes with streaming block output.

Primes are produced in ascending order as numpy int64 blocks (one block per
segment) so downstream sums can stay vectorized.  Segments may be sieved by
a small thread pool; blocks are always emitted in ascending order, so every
public stream is deterministic and independent of the worker count.

The hard cap ``SIEVE_CAP = 2**40`` protects against accidental requests far
beyond desk scale.
"""

from __future__ import annotations

import heapq
import math
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import DomainError, ResourceError

SIEVE_CAP = 1 << 40
DEFAULT_SEGMENT_SIZE = 1 << 20  # odd numbers per segment

_threads = 1
_thread_lock = threading.Lock()


def set_threads(n: int) -> None:
    """Set the default worker count for segment sieving (1 = serial)."""
    global _threads
    if n < 1:
        raise ValueError("thread count must be >= 1")
    with _thread_lock:
        _threads = int(n)


def get_threads() -> int:
    return _threads


@dataclass(frozen=True)
class SieveConfig:
    """Bounds for one sieve run.  limit counts natural numbers <= limit."""

    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE

    def __post_init__(self):
        if self.limit > SIEVE_CAP:
            raise ResourceError(
                f"sieve limit {self.limit} exceeds cap 2**40 = {SIEVE_CAP}"
            )
        if self.limit < 2:
            raise ValueError("sieve limit must be >= 2")
        if self.segment_size < 64:
            raise ValueError("segment_size must be >= 64")


class PrimePowerTerm(NamedTuple):
    """A prime power n = p**m together with its von Mangoldt weight log p."""

    n: int
    lam: float


def _checked_limit(limit) -> int:
    if limit < 0:
        raise DomainError("limit must be nonnegative")
    if limit > SIEVE_CAP:
        raise ResourceError(f"limit {limit} exceeds sieve cap 2**40 = {SIEVE_CAP}")
    return int(limit)


def _simple_odd_sieve(limit: int) -> np.ndarray:
    """All primes <= limit (including 2) by a plain in-memory sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    size = (limit - 1) // 2  # odds 3, 5, ..., <= limit
    comp = np.zeros(size, dtype=bool)
    i = 1
    while True:
        p = 2 * i + 1
        if p * p > limit:
            break
        if not comp[i - 1]:
            start = (p * p - 3) // 2
            comp[start::p] = True
        i += 1
    odds = 3 + 2 * np.flatnonzero(~comp)
    return np.concatenate(([2], odds)).astype(np.int64)


def _sieve_segment(lo: int, count: int, base: np.ndarray) -> np.ndarray:
    """Primes among the odd numbers lo, lo+2, ..., lo+2*(count-1)."""
    comp = np.zeros(count, dtype=bool)
    hi = lo + 2 * count  # exclusive
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = p * p
        if start < lo:
            start = ((lo + p - 1) // p) * p
            if start % 2 == 0:
                start += p
        comp[(start - lo) // 2 :: p] = True
    return (lo + 2 * np.flatnonzero(~comp)).astype(np.int64)


def iter_prime_blocks(
    limit, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int | None = None
) -> Iterator[np.ndarray]:
    """Yield ascending numpy blocks of primes <= limit.

    Block boundaries depend only on (limit, segment_size); the emitted
    sequence is identical for every thread count.
    """
    limit = _checked_limit(limit)
    if segment_size < 64:
        raise ValueError("segment_size must be >= 64")
    if limit < 2:
        return
    base = _simple_odd_sieve(math.isqrt(limit))
    base_odd = base[1:]  # skip 2; even offsets never occur in odd segments

    spans = []
    lo = 3
    while lo <= limit:
        count = min(segment_size, (limit - lo) // 2 + 1)
        spans.append((lo, count))
        lo += 2 * count

    n_workers = _threads if threads is None else threads
    if n_workers <= 1 or len(spans) <= 1:
        first = True
        for lo, count in spans:
            block = _sieve_segment(lo, count, base_odd)
            if first:
                block = np.concatenate(([2], block)).astype(np.int64)
                first = False
            yield block
        if not spans:
            yield np.array([2], dtype=np.int64)
        return

    # bounded prefetch window keeps memory flat; results consumed in order
    span_iter = iter(enumerate(spans))
    pending: deque = deque()
    with ThreadPoolExecutor(max_workers=n_workers) as pool:

        def submit_next() -> bool:
            try:
                i, (lo, count) = next(span_iter)
            except StopIteration:
                return False
            pending.append((i, pool.submit(_sieve_segment, lo, count, base_odd)))
            return True

        for _ in range(2 * n_workers):
            if not submit_next():
                break
        while pending:
            i, fut = pending.popleft()
            block = fut.result()
            if i == 0:
                block = np.concatenate(([2], block)).astype(np.int64)
            submit_next()
            yield block


def primes_up_to(limit, segment_size: int = DEFAULT_SEGMENT_SIZE) -> Iterator[int]:
    """Ascending stream of the primes p <= limit, each exactly once."""
    for block in iter_prime_blocks(limit, segment_size):
        yield from (int(p) for p in block)


# Cache of the largest prime array materialized so far.  Streaming paths are
# used above the cap, so memory stays bounded (~90 MB worst case).
_PRIMES_CACHE_MAX = 200_000_000
_cache_lock = threading.Lock()
_cached_limit = 0
_cached_primes = np.empty(0, dtype=np.int64)


def primes_array(limit) -> np.ndarray:
    """All primes <= limit as one array; cached and reused across calls."""
    global _cached_limit, _cached_primes
    limit = _checked_limit(limit)
    if limit > _PRIMES_CACHE_MAX:
        raise ValueError(
            f"primes_array is capped at {_PRIMES_CACHE_MAX}; stream blocks instead"
        )
    with _cache_lock:
        if limit > _cached_limit:
            _cached_primes = np.concatenate(list(iter_prime_blocks(limit)))
            _cached_limit = limit
        arr = _cached_primes
    return arr[: int(np.searchsorted(arr, limit, side="right"))]


def count_primes(x) -> int:
    """pi(x): the number of primes <= x (x may be any nonnegative real)."""
    if x < 0:
        raise DomainError("count_primes requires x >= 0")
    if x < 2:
        return 0
    limit = _checked_limit(math.floor(x))
    if limit <= _PRIMES_CACHE_MAX:
        return int(primes_array(limit).size)
    total = 0
    for block in iter_prime_blocks(limit):
        total += int(block.size)
    return total


def higher_prime_powers(limit) -> list[tuple[int, int, int]]:
    """All (n, p, m) with n = p**m <= limit and m >= 2, ascending in n.

    There are only O(sqrt(limit) * log(limit)) such n, so these are
    enumerated from the already-sieved primes rather than sieved again.
    """
    limit = _checked_limit(limit)
    out = []
    if limit < 4:
        return out
    for p in primes_array(math.isqrt(limit)):
        p = int(p)
        n = p * p
        m = 2
        while n <= limit:
            out.append((n, p, m))
            n *= p
            m += 1
    out.sort()
    return out


def prime_powers_up_to(limit, segment_size: int = DEFAULT_SEGMENT_SIZE) -> Iterator[PrimePowerTerm]:
    """Ascending stream of prime powers n = p**m <= limit with weight log p."""
    limit = _checked_limit(limit)

    def prime_terms():
        for p in primes_up_to(limit, segment_size):
            yield PrimePowerTerm(p, math.log(p))

    def power_terms():
        for n, p, _m in higher_prime_powers(limit):
            yield PrimePowerTerm(n, math.log(p))

    yield from heapq.merge(prime_terms(), power_terms())
