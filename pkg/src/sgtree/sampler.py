"""Exact sampling from the N-edge tree measure.

A tree is drawn in two stages: first a weight-proportional composition
(d_1, ..., d_N) with sum N-1 is sampled sequentially against the Z-table,
P(d_1 = d) = w_{d+1} Z(N-1, n-d) / Z(N, n); then the unique cyclic rotation
that forms a valid outdegree word is applied.  Every tree corresponds to
exactly N compositions of equal weight (its rotations), so the rotated
sample is distributed exactly as the tree measure.

The sequential draw scans d = 0, 1, 2, ... accumulating exact conditional
probabilities until the uniform variate is covered.  The expected scan
length is E[d_i] + 1, so a whole composition costs O(N) expected work even
though single draws can have support of size N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .partition import ZTable
from .trees import PlaneTree

RNG_ALGORITHM = "philox4x64"  # counter-based; (seed, stream) is the key


@dataclass(frozen=True)
class RandomSource:
    """Reproducible, splittable randomness: (seed, stream) keys a Philox
    counter-based generator, so distinct streams are independent and any
    pair of integers reproduces the identical draw sequence."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        mask = (1 << 64) - 1
        key = [self.seed & mask, self.stream & mask]
        return np.random.Generator(np.random.Philox(key=key))

    def split(self, stream: int) -> "RandomSource":
        return RandomSource(self.seed, stream)


RngLike = Union[RandomSource, np.random.Generator]


def _as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, RandomSource):
        return rng.generator()
    return rng


def _sample_composition_inner(
    log_w: list[float],
    rows: list[list[float]],
    n_slots: int,
    total: int,
    uniforms: list[float],
) -> list[int]:
    """Tight scalar loop behind sample_composition.

    Scans the conditional pmf from d = 0 upward; the probabilities sum to 1
    analytically, and any float shortfall (~1e-14 mass) falls back to the
    largest d seen with positive probability.
    """
    out: list[int] = []
    n = total
    exp = math.exp
    for i in range(n_slots, 1, -1):
        denom = rows[i][n]
        row = rows[i - 1]
        u = uniforms[n_slots - i]
        acc = 0.0
        d = 0
        last_positive = -1
        while True:
            p = exp(log_w[d] + row[n - d] - denom)
            acc += p
            if p > 0.0:
                last_positive = d
            if acc > u or d == n:
                break
            d += 1
        if acc <= u:
            d = last_positive  # float shortfall; cannot be -1 since Z(i, n) > 0
        out.append(d)
        n -= d
    out.append(n)
    return out


def sample_composition(table: ZTable, n_slots: int, total: int, rng: RngLike) -> list[int]:
    """Draw (d_1, ..., d_N) with sum `total`, distributed ~ prod w_{d_i+1}.

    Requires Z(N, total) > 0; with all-positive weights that always holds.
    """
    if not (1 <= n_slots <= table.n_max and 0 <= total <= table.n_max):
        raise ValueError("arguments outside table bound")
    if table.log_z(n_slots, total) == -math.inf:
        raise ValueError(f"Z({n_slots},{total}) = 0: no admissible composition")
    if n_slots == 1:
        return [total]
    gen = _as_generator(rng)
    uniforms = gen.random(n_slots - 1).tolist()
    return _sample_composition_inner(
        table.log_w_as_list(), table.rows_as_lists(), n_slots, total, uniforms
    )


def rotate_word(word: Sequence[int]) -> list[int]:
    """The unique cyclic rotation of a composition with sum len-1 that is a
    valid outdegree word: start right after the first prefix-sum minimum of
    (d_i - 1)."""
    total = sum(word)
    if total != len(word) - 1:
        raise ValueError("composition must sum to length - 1")
    s = 0
    s_min = 1
    cut = 0
    for i, d in enumerate(word):
        s += d - 1
        if s < s_min:
            s_min = s
            cut = i + 1
    return list(word[cut:]) + list(word[:cut])


def rotate_to_tree(word: Sequence[int]) -> PlaneTree:
    """Cycle-lemma rotation of a composition into a plane tree."""
    return PlaneTree(tuple(rotate_word(word)))


def sample_tree(table: ZTable, n_edges: int, rng: RngLike) -> PlaneTree:
    """One exact draw from the N-edge tree measure."""
    comp = sample_composition(table, n_edges, n_edges - 1, rng)
    return rotate_to_tree(comp)


def sample_trees(table: ZTable, n_edges: int, count: int, rng: RngLike) -> list[PlaneTree]:
    """count independent draws sharing one generator state."""
    gen = _as_generator(rng)
    return [sample_tree(table, n_edges, gen) for _ in range(count)]


def categorical_log(log_weights: np.ndarray, size: int, gen: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draws from weights given in the log domain: subtract the
    max, exponentiate, prefix-sum, then bisect uniforms into the cdf."""
    finite = log_weights > -np.inf
    if not finite.any():
        raise ValueError("no admissible category")
    shifted = np.exp(log_weights - log_weights[finite].max())
    cdf = np.cumsum(shifted)
    cdf /= cdf[-1]
    return np.searchsorted(cdf, gen.random(size), side="right")


def sample_sigma_s(table: ZTable, n_edges: int, rng: RngLike) -> int:
    """Draw sigma(s) alone from its closed-form law, no tree built."""
    return int(sample_sigma_s_many(table, n_edges, 1, rng)[0])


def sample_sigma_s_many(table: ZTable, n_edges: int, count: int, rng: RngLike) -> np.ndarray:
    """Vectorized draws of sigma(s); returns an array of degrees."""
    if n_edges < 2:
        raise ValueError("sigma(s) sampling needs N >= 2")
    gen = _as_generator(rng)
    p = table.root_degree_pmf(n_edges)
    cdf = np.cumsum(p)
    cdf /= cdf[-1]
    ks = np.searchsorted(cdf, gen.random(count), side="right")
    return ks + 1
