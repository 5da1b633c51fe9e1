"""Branching-weight families and their log-domain evaluation.

A weight sequence assigns a nonnegative weight w_n to each vertex degree
n >= 1.  The families of interest here grow superexponentially: the
factorial powers w_n = ((n-1)!)^alpha and the variant with w_2 pinned to a
parameter lam while every other weight stays at (n-1)!.  Values are huge
(w_n ~ n!^alpha), so the canonical representation is log w_n; families with
rational weights also expose an exact Fraction view for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .logdomain import LOG_ZERO, log_factorial

UNIFORM = "uniform"
LAMBDA_FACTORIAL = "lambda_factorial"
FACTORIAL_ALPHA = "factorial_alpha"
CUSTOM = "custom"


def _log_fraction(x: Fraction) -> float:
    if x == 0:
        return LOG_ZERO
    if x < 0:
        raise ValueError(f"negative weight: {x}")
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class WeightSequence:
    """Immutable branching-weight family.

    Every valid sequence has w_1 > 0 and w_n > 0 for at least one n >= 3;
    anything else cannot carry a tree measure at all sizes and is rejected
    at construction.
    """

    family: str
    alpha: Optional[float] = None
    lam: Optional[Fraction] = None
    table: Optional[tuple[Fraction, ...]] = field(default=None)

    def __post_init__(self) -> None:
        if self.family == UNIFORM:
            pass
        elif self.family == LAMBDA_FACTORIAL:
            if self.lam is None or self.lam <= 0:
                raise ValueError("lambda_factorial requires lam > 0")
        elif self.family == FACTORIAL_ALPHA:
            if self.alpha is None or self.alpha <= 0:
                raise ValueError("factorial_alpha requires alpha > 0")
        elif self.family == CUSTOM:
            if not self.table:
                raise ValueError("custom family requires a weight table")
            if any(w < 0 for w in self.table):
                raise ValueError("weights must be nonnegative")
            if self.table[0] == 0:
                raise ValueError("w_1 must be positive")
            if not any(w > 0 for w in self.table[2:]):
                raise ValueError("need w_n > 0 for some n > 2")
        else:
            raise ValueError(f"unknown weight family: {self.family}")

    # -- evaluation ---------------------------------------------------------

    def log_weight(self, n: int) -> float:
        """log w_n.  Degree 0 does not exist and is rejected."""
        if n < 1:
            raise ValueError(f"degree must be >= 1, got {n}")
        if self.family == UNIFORM:
            return 0.0
        if self.family == LAMBDA_FACTORIAL:
            if n == 2:
                return _log_fraction(self.lam)
            return log_factorial(n - 1)
        if self.family == FACTORIAL_ALPHA:
            return self.alpha * log_factorial(n - 1)
        if n <= len(self.table):
            return _log_fraction(self.table[n - 1])
        return LOG_ZERO  # finitely supported beyond the table end

    def log_weights_upto(self, d_max: int) -> np.ndarray:
        """Array lw with lw[d] = log w_{d+1} for d = 0..d_max.

        Built from the same cumulative log-factorial cache as log_weight so
        scalar and vector paths agree bitwise.
        """
        return np.array([self.log_weight(d + 1) for d in range(d_max + 1)])

    @property
    def is_exact(self) -> bool:
        """True when every weight is rational and exposable as a Fraction."""
        if self.family == FACTORIAL_ALPHA:
            return float(self.alpha).is_integer()
        return True

    def exact_weight(self, n: int) -> Optional[Fraction]:
        """w_n as an exact Fraction, or None for irrational families."""
        if n < 1:
            raise ValueError(f"degree must be >= 1, got {n}")
        if not self.is_exact:
            return None
        if self.family == UNIFORM:
            return Fraction(1)
        if self.family == LAMBDA_FACTORIAL:
            return self.lam if n == 2 else Fraction(math.factorial(n - 1))
        if self.family == FACTORIAL_ALPHA:
            return Fraction(math.factorial(n - 1)) ** int(self.alpha)
        if n <= len(self.table):
            return self.table[n - 1]
        return Fraction(0)

    # -- configuration round trip ------------------------------------------

    def to_config(self) -> dict:
        if self.family == UNIFORM:
            return {"family": UNIFORM}
        if self.family == LAMBDA_FACTORIAL:
            return {"family": LAMBDA_FACTORIAL, "lam": str(self.lam)}
        if self.family == FACTORIAL_ALPHA:
            return {"family": FACTORIAL_ALPHA, "alpha": self.alpha}
        return {"family": CUSTOM, "weights": [str(w) for w in self.table]}

    @staticmethod
    def from_config(config: dict) -> "WeightSequence":
        family = config.get("family")
        if family == UNIFORM:
            return uniform_weights()
        if family == LAMBDA_FACTORIAL:
            return lambda_factorial_weights(config["lam"])
        if family == FACTORIAL_ALPHA:
            return factorial_alpha_weights(float(config["alpha"]))
        if family == CUSTOM:
            return custom_weights(config["weights"])
        raise ValueError(f"unknown weight family in config: {family!r}")


def uniform_weights() -> WeightSequence:
    """w_n = 1 for every n (not superexponential; useful as a test bed)."""
    return WeightSequence(UNIFORM)


def lambda_factorial_weights(lam: Union[int, float, str, Fraction]) -> WeightSequence:
    """w_2 = lam and w_n = (n-1)! for every n != 2."""
    return WeightSequence(LAMBDA_FACTORIAL, lam=Fraction(str(lam)))


def factorial_alpha_weights(alpha: float) -> WeightSequence:
    """w_n = ((n-1)!)^alpha with alpha > 0."""
    return WeightSequence(FACTORIAL_ALPHA, alpha=float(alpha))


def custom_weights(weights: Sequence[Union[int, str, Fraction]]) -> WeightSequence:
    """Finitely supported table: w_n = weights[n-1], zero beyond the end.

    Entries are parsed as exact decimals/fractions ("0.5", "1/3", 2, ...).
    """
    table = tuple(Fraction(str(w)) for w in weights)
    return WeightSequence(CUSTOM, table=table)


@dataclass(frozen=True)
class WeightGrowthReport:
    """Diagnostic for the ratio sequence w_{n+1}/w_n.

    Superexponential growth means the ratios diverge; over a finite window
    that is not decidable, so this is advisory: we report whether the tail
    of the window increases and whether the last ratio clears a threshold.
    """

    ratios: tuple[float, ...]  # ratios[j] = w_{j+2}/w_{j+1}, j = 0..n_max-2
    increasing_from: Optional[int]  # least n with strictly rising tail
    exceeds_threshold: bool
    threshold: float
    warnings: tuple[str, ...]

    @property
    def looks_superexponential(self) -> bool:
        return self.increasing_from is not None and self.exceeds_threshold


def check_superexponential(
    ws: WeightSequence, n_max: int, threshold: float = 2.0
) -> WeightGrowthReport:
    """Inspect w_{n+1}/w_n for n = 1..n_max-1 and flag suspicious growth."""
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    warnings: list[str] = []
    ratios: list[float] = []
    for n in range(1, n_max):
        la, lb = ws.log_weight(n), ws.log_weight(n + 1)
        if la == LOG_ZERO and lb == LOG_ZERO:
            ratios.append(float("nan"))
        elif la == LOG_ZERO:
            ratios.append(float("inf"))
        else:
            ratios.append(math.exp(lb - la))
    if any(math.isnan(r) for r in ratios):
        warnings.append("weights vanish on part of the checked range")

    increasing_from: Optional[int] = None
    for start in range(len(ratios) - 1):
        window = ratios[start:]
        if all(window[j] < window[j + 1] for j in range(len(window) - 1)):
            increasing_from = start + 1  # ratio index n
            break
    if increasing_from is None:
        warnings.append("ratio sequence is not eventually increasing on the checked range")
    exceeds = bool(ratios and ratios[-1] > threshold)
    if not exceeds:
        warnings.append(
            f"last checked ratio {ratios[-1]:.6g} does not exceed threshold {threshold:g}"
        )
    return WeightGrowthReport(
        ratios=tuple(ratios),
        increasing_from=increasing_from,
        exceeds_threshold=exceeds,
        threshold=threshold,
        warnings=tuple(warnings),
    )
