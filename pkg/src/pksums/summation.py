"""Error-tracked floating-point summation.

Every sum over primes or prime powers in this package is reported as a
:class:`CompensatedSum`: the accumulated value together with a bound on the
rounding error committed while producing it.

Summation scheme (fixed, deterministic, independent of worker count):

* terms are produced in ascending order of n and grouped into blocks;
* each block is reduced with ``numpy.sum`` (pairwise reduction);
* block totals are combined with ``math.fsum`` (exactly rounded).

Error model charged into ``err_bound``:

* term evaluation: 2 ulp per term, i.e. ``2*EPS*sum(|t|)`` (covers the
  exp/log route used for real powers p**k);
* pairwise block reduction: ``EPS*ceil(log2(n_block))*sum_block(|t|)``;
* the exactly-rounded fsum combine: ``EPS*|total|``.

The bound is deliberately loose (a few ulps of the absolute mass) so that
it stays valid without per-platform tuning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPS = float(np.finfo(np.float64).eps)  # 2**-52


@dataclass(frozen=True)
class CompensatedSum:
    """A floating-point sum plus a bound on its accumulated rounding error."""

    value: float
    err_bound: float

    def __post_init__(self):
        if self.err_bound < 0:
            raise ValueError("err_bound must be nonnegative")

    @staticmethod
    def exact(value: float) -> "CompensatedSum":
        return CompensatedSum(float(value), 0.0)

    def __add__(self, other: "CompensatedSum") -> "CompensatedSum":
        v = self.value + other.value
        return CompensatedSum(v, self.err_bound + other.err_bound + EPS * abs(v))

    def __sub__(self, other: "CompensatedSum") -> "CompensatedSum":
        v = self.value - other.value
        return CompensatedSum(v, self.err_bound + other.err_bound + EPS * abs(v))

    def scaled(self, c: float) -> "CompensatedSum":
        v = c * self.value
        return CompensatedSum(v, abs(c) * self.err_bound + EPS * abs(v))


class BlockAccumulator:
    """Accumulates numpy blocks and scalar terms under the documented model.

    Block order must be ascending in n; the final combine is order-exact
    (fsum), so the reported value is reproducible bit for bit.
    """

    __slots__ = ("_sums", "_err")

    def __init__(self):
        self._sums: list[float] = []
        self._err = 0.0

    def add_block(self, values: np.ndarray) -> None:
        n = values.size
        if n == 0:
            return
        s = float(np.sum(values))
        a = float(np.sum(np.abs(values)))
        self._sums.append(s)
        # 2 ulp per term for evaluation + pairwise-reduction residual
        self._err += EPS * a * (2.0 + math.ceil(math.log2(max(n, 2))))

    def add_term(self, t: float) -> None:
        self._sums.append(float(t))
        self._err += 2.0 * EPS * abs(t)

    def total(self) -> CompensatedSum:
        v = math.fsum(self._sums)
        return CompensatedSum(v, self._err + EPS * abs(v))


def fsum_compensated(terms) -> CompensatedSum:
    """Exactly-rounded sum of a finite iterable, charging 2 ulp per term."""
    acc = BlockAccumulator()
    for t in terms:
        acc.add_term(t)
    return acc.total()
