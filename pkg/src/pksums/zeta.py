"""Zeta-zero tables and the special functions behind the explicit formula.

Zero ordinates are input data (published tables); this module never locates
zeros.  Conjugate pairing is handled here, once: every exported "sum over
zeros" primitive takes positive ordinates and applies the factor 2 that
accounts for the conjugate zero, so callers never juggle multiplicity.

Truncation policy: consumers of zero sums pass an explicit count and get a
tail estimate alongside the value (see tail_bound_inverse_gamma_sq).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import mpmath
import numpy as np
from scipy.special import expi

from .errors import (
    DomainError,
    SingularityError,
    ZeroCountError,
    ZerosFormatError,
    ZerosValidationError,
)

# Certified upper bound for the sum of 1/gamma^2 over all nontrivial zeros
# (both half-planes).  Partial sums of any valid table must stay below it.
ZERO_SUM_BOUND = 0.04620999


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Validated ascending positive ordinates of critical-line zeros."""

    ordinates: np.ndarray
    source_label: str = "unlabeled"

    def __post_init__(self):
        arr = np.asarray(self.ordinates, dtype=np.float64)
        if arr.ndim != 1:
            raise ZerosValidationError("ordinates must be one-dimensional")
        if arr.size and arr[0] <= 0:
            raise ZerosValidationError("ordinates must be positive")
        if arr.size > 1 and np.any(np.diff(arr) <= 0):
            raise ZerosValidationError("ordinates must be strictly increasing")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "ordinates", arr)

    def __len__(self) -> int:
        return int(self.ordinates.size)


def load_zeros(source, source_label: str | None = None) -> ZeroTable:
    """Parse a zeros file: one decimal ordinate per line, '#' comments.

    Raises ZerosFormatError with the offending line number on parse
    failure, ZerosValidationError on ordering/positivity violations.
    """
    if isinstance(source, (str, Path)):
        label = source_label or str(source)
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        label = source_label or "bytes"
        text = source.decode("utf-8")
    else:
        label = source_label or getattr(source, "name", "stream")
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    ordinates: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            g = float(line)
        except ValueError:
            raise ZerosFormatError(f"cannot parse ordinate {line!r}", lineno) from None
        if not math.isfinite(g) or g <= 0:
            raise ZerosValidationError(f"line {lineno}: ordinate must be positive, got {g}")
        if ordinates and g <= ordinates[-1]:
            raise ZerosValidationError(
                f"line {lineno}: ordinate {g} not strictly above previous {ordinates[-1]}"
            )
        ordinates.append(g)

    if not ordinates:
        warnings.warn(f"zeros table {label!r} is empty", stacklevel=2)
    elif not (14.0 < ordinates[0] < 14.3):
        warnings.warn(
            f"first ordinate {ordinates[0]} is not the leading Riemann zero "
            "(expected in (14.0, 14.3)); treating as a partial or synthetic table",
            stacklevel=2,
        )
    return ZeroTable(np.array(ordinates, dtype=np.float64), label)


def sum_inverse_gamma_sq(table: ZeroTable, count: int) -> float:
    """Partial sum of 2/gamma^2 over the first `count` ordinates.

    The factor 2 pairs each ordinate with its conjugate zero, matching the
    all-zeros sum the bound ZERO_SUM_BOUND refers to.
    """
    if count < 0 or count > len(table):
        raise ZeroCountError(f"count {count} outside table of {len(table)} ordinates")
    g = table.ordinates[:count]
    return math.fsum(2.0 / (g * g))


def tail_bound_inverse_gamma_sq(T: float) -> float:
    """Estimated sum of 2/gamma^2 over ordinates above T.

    Integrates the standard zero-density heuristic log(t/2pi)/(2pi) against
    2/t^2; an estimate for truncation control, not a proven bound.
    """
    if T < 15:
        raise DomainError("tail estimate requires T >= 15")
    return (math.log(T / (2 * math.pi)) + 1.0) / (math.pi * T)


def digamma(x: float) -> float:
    """psi(x) for x > 0: upward recurrence to x >= 10, then the asymptotic
    series through the y**-14 term (absolute error well below 1e-12)."""
    x = float(x)
    if x <= 0:
        raise DomainError("digamma requires x > 0")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    w = 1.0 / (x * x)
    series = (
        -1.0 / 12.0
        + w
        * (
            1.0 / 120.0
            + w
            * (
                -1.0 / 252.0
                + w
                * (
                    1.0 / 240.0
                    + w * (-1.0 / 132.0 + w * (691.0 / 32760.0 + w * (-1.0 / 12.0)))
                )
            )
        )
    )
    return acc + math.log(x) - 0.5 / x + w * series


def _cot_half_pi(s: float) -> float:
    """cot(pi*s/2) with the argument reduced modulo the period 2 first."""
    r = math.remainder(s, 2.0)
    return math.cos(0.5 * math.pi * r) / math.sin(0.5 * math.pi * r)


def log_deriv_zeta(s: float) -> float:
    """zeta'(s)/zeta(s) on the real line, outside [0, 1].

    For s > 1 the value is taken from high-precision zeta evaluation.  For
    s < 0 the reflection of the functional equation is used:

        zeta'/zeta(s) = log(2*pi) + (pi/2)*cot(pi*s/2)
                        - digamma(1 - s) - zeta'/zeta(1 - s),

    whose right side only needs arguments in the convergent region.
    Arguments within 1e-6 of a trivial zero (negative even integer) are
    refused, as are arguments inside [0, 1].
    """
    s = float(s)
    if 0.0 <= s <= 1.0:
        raise DomainError("zeta'/zeta is not provided on [0, 1]")
    if s > 1.0:
        with mpmath.workdps(30):
            return float(mpmath.zeta(s, derivative=1) / mpmath.zeta(s))
    nearest_even = 2.0 * round(s / 2.0)
    if nearest_even <= -2.0 and abs(s - nearest_even) <= 1e-6:
        raise SingularityError(
            f"s = {s} is within 1e-6 of the trivial zero at {nearest_even}"
        )
    return (
        math.log(2 * math.pi)
        + 0.5 * math.pi * _cot_half_pi(s)
        - digamma(1.0 - s)
        - log_deriv_zeta(1.0 - s)
    )


def log_integral(y: float) -> float:
    """li(y): principal value of the integral of 1/log(t) from 0 to y.

    With this normalization li(2) = 1.04516378...  Only y >= 2 is exposed;
    the additive constant cancels in every difference used downstream.
    """
    y = float(y)
    if y < 2:
        raise DomainError("log_integral requires y >= 2")
    return float(expi(math.log(y)))


@dataclass(frozen=True)
class ResiduePair:
    """The two linear-term constants of the truncated explicit formula."""

    A: float
    B: float


def residues_A_B(k) -> ResiduePair:
    """Residues at s = 0 and s = -1 of (zeta'/zeta)(s - k) / (s(s+1)).

    Both poles are simple, so A = (zeta'/zeta)(-k) and
    B = -(zeta'/zeta)(-1-k).  Refused when -k or -1-k collides with a
    trivial zero (k within 1e-6 of a positive integer), and for k in
    (-1, 0), where -k would land inside [0, 1].
    """
    k = float(k)
    if not math.isfinite(k) or k <= -1.0:
        raise DomainError(f"residues require k > -1, got {k}")
    nearest = round(k)
    if nearest >= 1 and abs(k - nearest) <= 1e-6:
        raise SingularityError(
            f"k = {k}: trivial zero collision, -k or -1-k lands on a pole of zeta'/zeta"
        )
    if k == 0.0:
        # limit of the reflection formula at s -> 0: zeta'/zeta(0) = log(2*pi)
        return ResiduePair(A=math.log(2 * math.pi), B=-log_deriv_zeta(-1.0))
    if k < 0.0:
        raise DomainError(
            "linear-term residues are unavailable for -1 < k < 0: "
            "they need zeta'/zeta inside [0, 1], which this module refuses"
        )
    return ResiduePair(A=log_deriv_zeta(-k), B=-log_deriv_zeta(-1.0 - k))
