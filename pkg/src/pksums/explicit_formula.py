"""Truncated explicit formula for the psi_k integral and averaged kernels.

The cumulative integral of psi_k over [2, x] has the closed expansion

    x**(k+2)/((k+1)(k+2))  -  sum over zeros of x**(rho+k+1)/((rho+k)(rho+k+1))
    - A*x + B  + lower order,

with rho = 1/2 + i*gamma running over critical-line zeros (conjugates
paired).  This module evaluates the truncation of that sum against the
exact step-function integral and reports the residual together with a tail
estimate, plus the interval-averaged oscillation identity

    average of (psi_k(u) - u**(k+1)/(k+1)) over [exp(-d)x, exp(d)x]
      ~  -2 x**(k+1/2) * sum sin(gamma d)/(gamma d) * sin(gamma log x)/gamma.

Zero-sum terms are evaluated as x**(k+3/2) * (cos, sin) of gamma*log(x)
with the phase reduced mod 2*pi in double-double precision (argreduce), so
phases of order 1e5 keep ~1e-11 absolute accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .argreduce import reduce_mod_2pi, split_log
from .errors import DomainError
from .prime_sums import (
    integral_psi_k_exact,
    prime_prefix_sums,
    psi_k,
    require_exponent,
)
from . import sieve
from .zeta import ZeroTable, residues_A_B, tail_bound_inverse_gamma_sq
from .errors import ZeroCountError


@dataclass(frozen=True)
class ExplicitFormulaReport:
    """One truncated-formula evaluation against the exact integral."""

    x: float
    k: float
    zeros_used: int
    main_term: float
    zero_sum: float
    linear_terms: float  # -A*x + B, or 0.0 when skipped
    total: float  # main_term - zero_sum + linear_terms, verbatim
    exact: float  # sum of (x - n) * Lambda(n) * n**k
    abs_residual: float
    tail_estimate: float
    linear_included: bool


def _paired_zero_terms(x: float, k: float, ordinates: np.ndarray) -> np.ndarray:
    """2 * Re( e^{i*gamma*log x} / ((rho+k)(rho+k+1)) ) per ordinate."""
    hi, lo = split_log(x)
    phases = reduce_mod_2pi(ordinates, hi, lo)
    den = ((0.5 + k) + 1j * ordinates) * ((1.5 + k) + 1j * ordinates)
    num = np.cos(phases) + 1j * np.sin(phases)
    return 2.0 * np.real(num / den)


def truncated_psi_integral(
    x, k, table: ZeroTable, count: int, include_linear: bool = True
) -> ExplicitFormulaReport:
    """Evaluate the truncated expansion of the psi_k integral at x.

    The zero sum runs over the first `count` positive ordinates with
    conjugate pairing applied; the reported tail estimate scales the
    density-based 2/gamma^2 tail by x**(k+3/2).
    """
    k = require_exponent(k)
    x = float(x)
    if x < 4:
        raise DomainError("truncated_psi_integral requires x >= 4")
    if count < 1:
        raise DomainError("count must be >= 1")
    if count > len(table):
        raise ZeroCountError(f"count {count} exceeds table of {len(table)} ordinates")

    g = table.ordinates[:count]
    scale = x ** (k + 1.5)
    zero_sum = scale * math.fsum(_paired_zero_terms(x, k, g))
    main = x ** (k + 2.0) / ((k + 1.0) * (k + 2.0))
    linear = 0.0
    if include_linear:
        pair = residues_A_B(k)
        linear = -pair.A * x + pair.B
    total = main - zero_sum + linear
    exact = integral_psi_k_exact(2.0, x, k).value
    return ExplicitFormulaReport(
        x=x,
        k=k,
        zeros_used=count,
        main_term=main,
        zero_sum=zero_sum,
        linear_terms=linear,
        total=total,
        exact=exact,
        abs_residual=abs(total - exact),
        tail_estimate=scale * tail_bound_inverse_gamma_sq(float(g[-1])),
        linear_included=bool(include_linear),
    )


class IdentityCheck(NamedTuple):
    """Discrepancy between two accumulation pipelines plus its error budget."""

    gap: float
    err_bound: float


def integral_identity_gap(x, k) -> IdentityCheck:
    """Cross-check the exact psi_k integral against a second pipeline.

    Route one sums (x - n) * Lambda(n) * n**k directly; route two uses the
    summation-by-parts form x * psi_k(x) - psi_{k+1}(x).  The two are
    mathematically identical, so the gap must stay within the combined
    rounding budget; this validates the whole summation pipeline.
    """
    k = require_exponent(k)
    x = float(x)
    if x < 2:
        raise DomainError("identity check requires x >= 2")
    direct = integral_psi_k_exact(2.0, x, k)
    s_k = psi_k(x, k)
    s_k1 = psi_k(x, k + 1.0)
    by_parts = x * s_k.value - s_k1.value
    gap = abs(direct.value - by_parts)
    bound = (
        direct.err_bound
        + x * s_k.err_bound
        + s_k1.err_bound
        + 2.0 * np.finfo(float).eps * (abs(x * s_k.value) + abs(by_parts))
    )
    return IdentityCheck(gap=gap, err_bound=float(bound))


def _check_window(x: float, delta: float) -> None:
    if x < 4:
        raise DomainError("averaging window requires x >= 4")
    if not (1.0 / (2.0 * x) <= delta <= 0.5):
        raise DomainError(
            f"delta = {delta} outside admissible window [1/(2x), 1/2] at x = {x}"
        )


def littlewood_lhs(x, delta, k) -> float:
    """Exact interval average of psi_k(u) - u**(k+1)/(k+1).

    The step part is the exact integral of psi_k over [exp(-d)x, exp(d)x];
    the smooth part integrates in closed form.
    """
    k = require_exponent(k)
    x, delta = float(x), float(delta)
    _check_window(x, delta)
    a = math.exp(-delta) * x
    b = math.exp(delta) * x
    step = integral_psi_k_exact(a, b, k).value
    smooth = (b ** (k + 2.0) - a ** (k + 2.0)) / ((k + 1.0) * (k + 2.0))
    width = (math.exp(delta) - math.exp(-delta)) * x
    return (step - smooth) / width


def littlewood_rhs(x, delta, k, table: ZeroTable, count: int) -> float:
    """Truncated oscillation kernel -2 x**(k+1/2) sum over ordinates of
    sin(gamma*delta)/(gamma*delta) * sin(gamma*log x)/gamma."""
    k = require_exponent(k)
    x, delta = float(x), float(delta)
    _check_window(x, delta)
    if count < 0 or count > len(table):
        raise ZeroCountError(f"count {count} outside table of {len(table)} ordinates")
    if count == 0:
        return 0.0
    g = table.ordinates[:count]
    hi, lo = split_log(x)
    phases = reduce_mod_2pi(g, hi, lo)
    gd = g * delta
    terms = (np.sin(gd) / gd) * (np.sin(phases) / g)
    return -2.0 * x ** (k + 0.5) * math.fsum(terms)


@dataclass(frozen=True)
class LittlewoodReport:
    """Both sides of the averaged oscillation identity at one (x, delta)."""

    x: float
    delta: float
    k: float
    zeros_used: int
    lhs: float
    rhs: float
    normalized_gap: float  # |lhs - rhs| / x**(k+1/2)


def littlewood_report(x, delta, k, table: ZeroTable, count: int) -> LittlewoodReport:
    lhs = littlewood_lhs(x, delta, k)
    rhs = littlewood_rhs(x, delta, k, table, count)
    gap = abs(lhs - rhs) / float(x) ** (float(k) + 0.5)
    return LittlewoodReport(
        x=float(x),
        delta=float(delta),
        k=float(k),
        zeros_used=int(count),
        lhs=lhs,
        rhs=rhs,
        normalized_gap=gap,
    )


@dataclass(frozen=True)
class OscillationScanReport:
    """Normalized psi_k deviations over a grid, with sign-change positions."""

    k: float
    xs: tuple[float, ...]
    deviations: tuple[float, ...]
    min_dev: float
    max_dev: float
    sign_changes: tuple[float, ...]  # grid points where the sign flips


def oscillation_scan(x_grid: Sequence[float], k) -> OscillationScanReport:
    """(psi_k(x) - x**(k+1)/(k+1)) / x**(k+1/2) over an ascending grid.

    A single ascending pass over the sieve stream serves all grid points.
    """
    k = require_exponent(k)
    xs = [float(x) for x in x_grid]
    if not xs:
        raise DomainError("grid must be nonempty")
    if any(x < 16 for x in xs):
        raise DomainError("grid points must be >= 16")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("grid must be strictly ascending")

    limit = math.floor(xs[-1])
    _counts, sums = prime_prefix_sums(
        limit, xs, {"w": lambda p, kk=k: np.log(p) * np.exp(kk * np.log(p))}
    )
    prime_part = [s.value for s in sums["w"]]

    higher = sieve.higher_prime_powers(limit)
    higher_prefix = []
    acc = 0.0
    idx = 0
    for x in xs:
        while idx < len(higher) and higher[idx][0] <= x:
            n, p, _m = higher[idx]
            acc += math.log(p) * math.exp(k * math.log(n))
            idx += 1
        higher_prefix.append(acc)

    deviations = []
    for x, pp, hp in zip(xs, prime_part, higher_prefix):
        dev = (pp + hp - x ** (k + 1.0) / (k + 1.0)) / x ** (k + 0.5)
        deviations.append(dev)

    sign_changes = [
        b for a, b, da, db in zip(xs, xs[1:], deviations, deviations[1:])
        if da == 0.0 or (da < 0) != (db < 0)
    ]
    return OscillationScanReport(
        k=k,
        xs=tuple(xs),
        deviations=tuple(deviations),
        min_dev=min(deviations),
        max_dev=max(deviations),
        sign_changes=tuple(sign_changes),
    )
