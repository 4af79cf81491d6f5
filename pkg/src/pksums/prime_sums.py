"""Prime-power sums and their exact step-function integrals.

All sums accept a real threshold x and a real exponent k > -1 and report a
:class:`~pksums.summation.CompensatedSum`.  Real powers p**k are evaluated
as exp(k*log p); the error model in :mod:`pksums.summation` charges 2 ulp
per term for that route.

The heavy entry point is :func:`prime_prefix_sums`, which evaluates several
weighted prime sums at many thresholds in one ascending pass over the sieve
stream, so grid scans near the 1e9 scale stay single-pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np

from . import sieve
from .errors import DomainError, ResourceError
from .summation import EPS, BlockAccumulator, CompensatedSum

Exponent = float  # validity guard: require_exponent


def require_exponent(k) -> float:
    """Validate the standing hypothesis k > -1 shared by every sum here."""
    k = float(k)
    if not math.isfinite(k) or k <= -1.0:
        raise DomainError(f"exponent k must be finite and > -1, got {k}")
    return k


def _pow(p: np.ndarray, k: float) -> np.ndarray:
    if k == 0.0:
        return np.ones_like(p)
    return np.exp(k * np.log(p))


def _prime_blocks(limit: int) -> Iterator[np.ndarray]:
    if limit <= sieve._PRIMES_CACHE_MAX:
        yield sieve.primes_array(limit)
    else:
        yield from sieve.iter_prime_blocks(limit)


def _sum_over_primes(x: float, weight: Callable[[np.ndarray], np.ndarray]) -> CompensatedSum:
    acc = BlockAccumulator()
    if x >= 2:
        limit = math.floor(x)
        for block in _prime_blocks(limit):
            acc.add_block(weight(block.astype(np.float64)))
    return acc.total()


def integer_root(x: float, m: int) -> int:
    """floor(x**(1/m)) computed exactly despite float pow rounding."""
    if x < 1:
        return 0
    r = int(x ** (1.0 / m))
    while (r + 1) ** m <= x:
        r += 1
    while r > 0 and r**m > x:
        r -= 1
    return r


def pi_k(x, k) -> CompensatedSum:
    """Sum of p**k over primes p <= x."""
    k = require_exponent(k)
    if x < 0:
        raise DomainError("pi_k requires x >= 0")
    return _sum_over_primes(float(x), lambda p: _pow(p, k))


def psi_k(x, k) -> CompensatedSum:
    """Sum of Lambda(n) * n**k over prime powers n <= x."""
    k = require_exponent(k)
    if x < 0:
        raise DomainError("psi_k requires x >= 0")
    x = float(x)
    acc = BlockAccumulator()
    if x >= 2:
        limit = math.floor(x)
        for block in _prime_blocks(limit):
            pf = block.astype(np.float64)
            acc.add_block(np.log(pf) * _pow(pf, k))
        for n, p, _m in sieve.higher_prime_powers(limit):
            acc.add_term(math.log(p) * math.exp(k * math.log(n)))
    return acc.total()


def capital_pi_k(x, k) -> CompensatedSum:
    """Riemann-weighted count: sum over m >= 1 of pi_{m*k}(x**(1/m)) / m.

    Terminates once x**(1/m) < 2, i.e. after at most log2(x) terms.  The
    inner sums are finite for every real k, so only the outer k > -1 guard
    applies.
    """
    k = require_exponent(k)
    if x < 0:
        raise DomainError("capital_pi_k requires x >= 0")
    x = float(x)
    total = CompensatedSum.exact(0.0)
    m = 1
    while True:
        root = integer_root(x, m)
        if root < 2:
            break
        inner = _sum_over_primes(float(root), lambda p, mk=m * k: _pow(p, mk))
        total = total + inner.scaled(1.0 / m)
        m += 1
    return total


def capital_pi_k_via_lambda(x, k) -> CompensatedSum:
    """Same quantity as capital_pi_k via sum of Lambda(n)*n**k / log n.

    Kept as a genuinely separate accumulation route (threshold handling,
    power evaluation, term grouping) so the two can cross-check each other.
    """
    k = require_exponent(k)
    if x < 0:
        raise DomainError("capital_pi_k_via_lambda requires x >= 0")
    x = float(x)
    acc = BlockAccumulator()
    if x >= 2:
        limit = math.floor(x)
        for block in _prime_blocks(limit):
            pf = block.astype(np.float64)
            # for n = p the weight Lambda(n)/log n is exactly 1
            acc.add_block(_pow(pf, k))
        for n, p, _m in sieve.higher_prime_powers(limit):
            ln_n = math.log(n)
            acc.add_term(math.log(p) * math.exp(k * ln_n) / ln_n)
    return acc.total()


@dataclass(frozen=True)
class PiDecomposition:
    """Head terms vs tail of the capital_pi_k expansion, as a diagnostic.

    The tail magnitudes are reported raw (no asserted bound); the scales
    x**(k+1/3) and log x are included for eyeballing growth.
    """

    x: float
    k: float
    head: float  # pi_k(x)
    half_term: float  # pi_{2k}(sqrt x) / 2
    tail: float  # all m >= 3 contributions
    scale_x_k_third: float
    scale_log_x: float


def capital_pi_decomposition(x, k) -> PiDecomposition:
    k = require_exponent(k)
    x = float(x)
    if x < 2:
        raise DomainError("decomposition requires x >= 2")
    head = pi_k(x, k).value
    r2 = integer_root(x, 2)
    half = 0.5 * _sum_over_primes(float(r2), lambda p: _pow(p, 2 * k)).value if r2 >= 2 else 0.0
    total = capital_pi_k(x, k).value
    tail = total - head - half
    return PiDecomposition(
        x=x,
        k=k,
        head=head,
        half_term=half,
        tail=tail,
        scale_x_k_third=x ** (k + 1.0 / 3.0),
        scale_log_x=math.log(x),
    )


def delta_k(x, k) -> float:
    """pi_k(x) - pi(x**(k+1)); identically 0 at k = 0."""
    k = require_exponent(k)
    if x < 2:
        raise DomainError("delta_k requires x >= 2")
    x = float(x)
    power = x ** (k + 1.0)
    if power > sieve.SIEVE_CAP:
        raise ResourceError(f"x**(k+1) = {power:.3g} exceeds sieve cap 2**40")
    return pi_k(x, k).value - sieve.count_primes(power)


def normalized_delta(x, k) -> float:
    """delta_k scaled by the oscillation normalizer for its k regime."""
    k = require_exponent(k)
    if k == 0.0:
        raise DomainError("normalized_delta is undefined at k = 0")
    if x < 16:
        raise DomainError("normalized_delta requires x >= 16")
    x = float(x)
    d = delta_k(x, k)
    if k > 0:
        return d * math.log(x) / x ** (k + 0.5)
    return d * math.log(x) / x ** ((k + 1.0) / 2.0)


def integral_psi_k_exact(a, b, k) -> CompensatedSum:
    """Exact integral of the step function psi_k over [a, b].

    Equals sum over prime powers n <= b of Lambda(n)*n**k*(b - max(a, n)).
    """
    k = require_exponent(k)
    a, b = float(a), float(b)
    if a < 2:
        raise DomainError("integral starts at 2; got a < 2")
    if b < a:
        raise DomainError("requires a <= b")
    acc = BlockAccumulator()
    if b >= 2:
        limit = math.floor(b)
        for block in _prime_blocks(limit):
            pf = block.astype(np.float64)
            acc.add_block(np.log(pf) * _pow(pf, k) * (b - np.maximum(a, pf)))
        for n, p, _m in sieve.higher_prime_powers(limit):
            acc.add_term(math.log(p) * math.exp(k * math.log(n)) * (b - max(a, float(n))))
    return acc.total()


def integral_pi_k_exact(x, k) -> CompensatedSum:
    """Exact integral of pi_k over [1, x]: sum of p**k * (x - p), p <= x."""
    k = require_exponent(k)
    if x < 1:
        raise DomainError("integral_pi_k_exact requires x >= 1")
    x = float(x)
    return _sum_over_primes(x, lambda p: _pow(p, k) * (x - p))


def integral_pi_power_exact(x, k) -> CompensatedSum:
    """Exact integral of t -> pi(t**(k+1)) over [1, x].

    pi(t**(k+1)) jumps by 1 at t = q**(1/(k+1)) for each prime q <= x**(k+1),
    so the integral is the sum of (x - q**(1/(k+1))) over those primes.
    """
    k = require_exponent(k)
    if x < 1:
        raise DomainError("integral_pi_power_exact requires x >= 1")
    x = float(x)
    power = x ** (k + 1.0)
    if power > sieve.SIEVE_CAP:
        raise ResourceError(f"x**(k+1) = {power:.3g} exceeds sieve cap 2**40")
    inv = 1.0 / (k + 1.0)
    return _sum_over_primes(power, lambda q: x - _pow(q, inv))


def prime_prefix_sums(
    limit,
    thresholds: Iterable[float],
    weights: dict[str, Callable[[np.ndarray], np.ndarray]],
) -> tuple[np.ndarray, dict[str, list[CompensatedSum]]]:
    """One ascending pass computing weighted prime sums at many thresholds.

    ``thresholds`` must be ascending and <= limit.  Every weight function
    must map a float64 prime array to nonnegative values (all callers here
    satisfy this; the error model relies on it).  Returns the prime counts
    pi(threshold) and, per weight, the prefix CompensatedSums.
    """
    thr = np.asarray(list(thresholds), dtype=np.float64)
    if thr.size == 0:
        raise ValueError("need at least one threshold")
    if np.any(np.diff(thr) < 0):
        raise ValueError("thresholds must be ascending")
    limit = int(limit)
    counts = np.zeros(thr.size, dtype=np.int64)
    partials: dict[str, list[list[float]]] = {
        name: [[] for _ in range(thr.size)] for name in weights
    }
    errs = {name: np.zeros(thr.size) for name in weights}

    for block in _prime_blocks(limit):
        pos = np.searchsorted(block, thr, side="right")
        counts += pos
        pf = block.astype(np.float64)
        for name, fn in weights.items():
            vals = fn(pf)
            cum = np.cumsum(vals)
            for j, pj in enumerate(pos):
                if pj > 0:
                    s = float(cum[pj - 1])
                    partials[name][j].append(s)
                    # sequential-cumsum bound (weights nonnegative, so the
                    # running absolute mass is the running sum itself)
                    errs[name][j] += EPS * (2.0 + pj) * s

    sums = {
        name: [
            CompensatedSum(math.fsum(parts), float(err) + EPS * abs(math.fsum(parts)))
            for parts, err in zip(partials[name], errs[name])
        ]
        for name in weights
    }
    return counts, sums
