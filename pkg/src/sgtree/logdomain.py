"""Log-domain arithmetic for nonnegative quantities.

A nonnegative number x is represented by the float log(x), with -inf
standing for an exact zero.  Products become sums (where -inf absorbs, as
IEEE addition already guarantees for finite partners) and sums become
max-shifted log-sum-exp, which never produces a NaN as long as no operand
is +inf.
"""

from __future__ import annotations

import math
from typing import Iterable

LOG_ZERO = float("-inf")


def log_add(a: float, b: float) -> float:
    """log(e^a + e^b), stable for any mix of finite values and -inf."""
    if a == LOG_ZERO:
        return b
    if b == LOG_ZERO:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def log_sum(values: Iterable[float]) -> float:
    """log of the sum of e^v over all values; -inf for an empty sum."""
    vals = list(values)
    if not vals:
        return LOG_ZERO
    m = max(vals)
    if m == LOG_ZERO:
        return LOG_ZERO
    return m + math.log(math.fsum(math.exp(v - m) for v in vals))


_LOG_FACTORIALS = [0.0]


def log_factorial(n: int) -> float:
    """log(n!) by cumulative summation of log(k).

    Deliberately not a lgamma call: the running sum is extended one term at
    a time and cached, so every caller sees bit-identical values within and
    across runs.
    """
    if n < 0:
        raise ValueError(f"negative factorial argument: {n}")
    while len(_LOG_FACTORIALS) <= n:
        _LOG_FACTORIALS.append(_LOG_FACTORIALS[-1] + math.log(len(_LOG_FACTORIALS)))
    return _LOG_FACTORIALS[n]
