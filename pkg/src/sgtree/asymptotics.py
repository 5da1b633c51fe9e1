"""Large-N predictions for factorial-power branching weights.

For w_n = ((n-1)!)^alpha with 0 < alpha < 1, almost all edges condense
onto the root's child s and the leftover degrees follow sharp laws.  The
count of degree-(i+1) vertices lives on the scale

    scale_i = i!^alpha * N^(1 - i*alpha),      1 <= i <= K = floor(1/alpha),

diverges for i < 1/alpha (Gaussian fluctuations around a center found by
maximizing a concave profile objective), and is Poisson with constant mean
K!^alpha in the boundary case where 1/alpha is an integer.  The same
objective yields expansions of log Z_N per growth regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

DEFAULT_ETA = 0.5  # half-width of the search box around the scales
_INTEGER_TOL = 1e-9


class BoundaryHitError(RuntimeError):
    """Stationary point escaped the search box: eta too small or N too small."""


class NoConvergenceError(RuntimeError):
    def __init__(self, grad_norm: float):
        super().__init__(f"center solve stalled with gradient norm {grad_norm:.3e}")
        self.grad_norm = grad_norm


def degree_cutoff(alpha: float) -> int:
    """K = floor(1/alpha): the largest observable small-degree index."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    recip = 1.0 / alpha
    near = round(recip)
    if abs(recip - near) < _INTEGER_TOL:
        return int(near)
    return int(math.floor(recip))


def reciprocal_is_integer(alpha: float) -> bool:
    recip = 1.0 / alpha
    return abs(recip - round(recip)) < _INTEGER_TOL


def gaussian_indices(alpha: float) -> list[int]:
    """Indices i with i < 1/alpha: the diverging, Gaussian coordinates."""
    k = degree_cutoff(alpha)
    return list(range(1, k)) if reciprocal_is_integer(alpha) else list(range(1, k + 1))


def degree_count_scale(alpha: float, n_edges: int, i: int) -> float:
    """scale_i = i!^alpha N^(1-i*alpha), the typical count of degree-(i+1)
    vertices."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if not 1 <= i <= degree_cutoff(alpha):
        raise ValueError(f"i={i} outside 1..{degree_cutoff(alpha)}")
    return math.factorial(i) ** alpha * n_edges ** (1.0 - i * alpha)


def center_first_order(alpha: float, n_edges: int, i: int) -> float:
    """First-order corrected center scale_i * (1 - (1-i*alpha) N^-alpha)."""
    if i * alpha >= 1.0 - _INTEGER_TOL:
        raise ValueError(f"i={i} is not below 1/alpha")
    scale = degree_count_scale(alpha, n_edges, i)
    return scale * (1.0 - (1.0 - i * alpha) * n_edges ** (-alpha))


def _moments(m: np.ndarray) -> tuple[float, float]:
    idx = np.arange(1, len(m) + 1)
    return float(m.sum()), float((idx * m).sum())


def profile_objective(
    alpha: float, n_edges: int, m: Sequence[float], j_max: Optional[int] = None
) -> float:
    """Log-weight of a degree profile m (m[i-1] counts degree-(i+1) vertices):

      sum_i [(1-alpha*i) m_i log N + alpha m_i log(i!) - m_i log m_i + m_i
             - log(2 pi m_i)/2]
      + sum_{j=2}^{j_max} (alpha B^j - A^j) / (j (j-1) N^(j-1)),

    with A = sum m_i and B = sum i m_i.  The correction sum defaults to
    j_max = floor(1/alpha) regardless of the number of coordinates passed.
    """
    m = np.asarray(m, dtype=float)
    if np.any(m <= 0):
        raise ValueError("all coordinates must be positive")
    if j_max is None:
        j_max = degree_cutoff(alpha)
    n = float(n_edges)
    idx = np.arange(1, len(m) + 1)
    log_fact = np.array([math.lgamma(i + 1) for i in idx])
    value = float(
        np.sum(
            (1.0 - alpha * idx) * m * math.log(n)
            + alpha * m * log_fact
            - m * np.log(m)
            + m
            - 0.5 * np.log(2.0 * math.pi * m)
        )
    )
    a, b = _moments(m)
    for j in range(2, j_max + 1):
        value += (alpha * b**j - a**j) / (j * (j - 1) * n ** (j - 1))
    return value


def profile_objective_gradient(
    alpha: float, n_edges: int, m: Sequence[float], j_max: Optional[int] = None
) -> np.ndarray:
    """d/dm_i of the profile objective:

    (1-alpha*i) log N + alpha log(i!) - log m_i - 1/(2 m_i)
      + sum_{j=2}^{j_max} (alpha i B^(j-1) - A^(j-1)) / ((j-1) N^(j-1)).
    """
    m = np.asarray(m, dtype=float)
    if np.any(m <= 0):
        raise ValueError("all coordinates must be positive")
    if j_max is None:
        j_max = degree_cutoff(alpha)
    n = float(n_edges)
    idx = np.arange(1, len(m) + 1)
    log_fact = np.array([math.lgamma(i + 1) for i in idx])
    g = (1.0 - alpha * idx) * math.log(n) + alpha * log_fact - np.log(m) - 0.5 / m
    a, b = _moments(m)
    for j in range(2, j_max + 1):
        g += (alpha * idx * b ** (j - 1) - a ** (j - 1)) / ((j - 1) * n ** (j - 1))
    return g


def _profile_hessian(alpha: float, n_edges: int, m: np.ndarray, j_max: int) -> np.ndarray:
    n = float(n_edges)
    idx = np.arange(1, len(m) + 1)
    h = np.diag(-1.0 / m + 0.5 / m**2)
    a, b = _moments(m)
    for j in range(2, j_max + 1):
        outer = alpha * np.outer(idx, idx) * b ** max(j - 2, 0)
        if j == 2:
            h += (outer - 1.0) / n
        else:
            h += (outer - a ** (j - 2)) / n ** (j - 1)
    return h


def solve_centers(
    alpha: float,
    n_edges: int,
    tol: float = 1e-10,
    eta: float = DEFAULT_ETA,
    max_iter: int = 100,
) -> np.ndarray:
    """Stationary point of the profile objective over the Gaussian
    coordinates i < 1/alpha, inside the box [(1-eta) scale_i, (1+eta)
    scale_i].

    Damped Newton from m_i = scale_i, falling back to coordinatewise
    bisection of the gradient when a step misbehaves.  In the boundary
    case 1/alpha integral, the Poisson coordinate i = K is excluded (its
    stationary value would sit outside any thin box around the constant
    scale K!^alpha) but the correction sum keeps j_max = K.
    """
    indices = gaussian_indices(alpha)
    if not indices:
        raise ValueError(f"no diverging degree coordinates for alpha={alpha}")
    scales = np.array([degree_count_scale(alpha, n_edges, i) for i in indices])
    if scales.min() < 1.0:
        raise ValueError("n_edges too small: some scale_i below 1")
    j_max = degree_cutoff(alpha)
    lo, hi = (1.0 - eta) * scales, (1.0 + eta) * scales

    m = scales.copy()
    g = profile_objective_gradient(alpha, n_edges, m, j_max)
    for _ in range(max_iter):
        if np.abs(g).max() < tol:
            break
        h = _profile_hessian(alpha, n_edges, m, j_max)
        try:
            step = np.linalg.solve(h, -g)
        except np.linalg.LinAlgError:
            step = g * m  # gradient ascent scaled to the coordinate size
        t = 1.0
        improved = False
        for _ in range(40):
            trial = m + t * step
            if np.all(trial > 0):
                g_trial = profile_objective_gradient(alpha, n_edges, trial, j_max)
                if np.abs(g_trial).max() < np.abs(g).max():
                    m, g = trial, g_trial
                    improved = True
                    break
            t *= 0.5
        if not improved:
            m = _bisect_centers(alpha, n_edges, lo, hi, j_max, tol)
            g = profile_objective_gradient(alpha, n_edges, m, j_max)
            break
    if np.abs(g).max() >= tol:
        raise NoConvergenceError(float(np.abs(g).max()))
    if np.any(m <= lo) or np.any(m >= hi):
        raise BoundaryHitError(
            f"stationary point {m} outside box [{lo}, {hi}]; increase eta or n_edges"
        )
    return m


def _bisect_centers(
    alpha: float,
    n_edges: int,
    lo: np.ndarray,
    hi: np.ndarray,
    j_max: int,
    tol: float,
    sweeps: int = 200,
) -> np.ndarray:
    """Gauss-Seidel sweeps of coordinatewise bisection on the gradient."""
    m = 0.5 * (lo + hi)
    for _ in range(sweeps):
        g = profile_objective_gradient(alpha, n_edges, m, j_max)
        if np.abs(g).max() < tol:
            return m
        for i in range(len(m)):
            a, b = lo[i], hi[i]

            def g_i(x: float) -> float:
                trial = m.copy()
                trial[i] = x
                return float(profile_objective_gradient(alpha, n_edges, trial, j_max)[i])

            ga, gb = g_i(a), g_i(b)
            if ga <= 0 or gb >= 0:
                raise BoundaryHitError(
                    f"gradient does not change sign across coordinate {i + 1}"
                )
            for _ in range(200):
                mid = 0.5 * (a + b)
                if g_i(mid) > 0:
                    a = mid
                else:
                    b = mid
                if b - a < 1e-14 * max(1.0, b):
                    break
            m[i] = 0.5 * (a + b)
    return m


REGIME_LAMBDA = "lambda_factorial"
REGIME_ALPHA_LT_1 = "alpha_lt_1"
REGIME_ALPHA_GT_1 = "alpha_gt_1"


def predict_log_zn(regime: str, param: float, n_edges: int) -> float:
    """Closed-form log Z_N expansion per weight regime (error terms dropped).

    lambda_factorial: log Z_N = lam + log((N-1)!)
    alpha_lt_1:       alpha log((N-1)!) + N^(1-a) + (2^a - (1-a)/2) N^(1-2a)
    alpha_gt_1:       alpha log((N-1)!)
    """
    lg = math.lgamma(n_edges)
    if regime == REGIME_LAMBDA:
        return float(param) + lg
    if regime == REGIME_ALPHA_LT_1:
        a = float(param)
        if not 0 < a < 1:
            raise ValueError("alpha_lt_1 regime needs alpha in (0, 1)")
        return a * lg + n_edges ** (1 - a) + (2**a - (1 - a) / 2) * n_edges ** (1 - 2 * a)
    if regime == REGIME_ALPHA_GT_1:
        a = float(param)
        if a <= 1:
            raise ValueError("alpha_gt_1 regime needs alpha > 1")
        return a * lg
    raise ValueError(f"unsupported regime: {regime!r}")


@dataclass(frozen=True)
class DegreeLaw:
    """Predicted limit law for the count of vertices of one degree."""

    degree: int  # = i + 1
    kind: str  # "gaussian" or "poisson"
    center: float  # Gaussian center, or the Poisson mean
    scale: float  # Gaussian scale sqrt(scale_i); sqrt(mean) for Poisson

    def standardize(self, counts: np.ndarray) -> np.ndarray:
        return (np.asarray(counts, dtype=float) - self.center) / self.scale


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Bundle of per-degree laws and the log Z_N expansion at one (alpha, N).

    The standardized Gaussian coordinates and the Poisson coordinate are
    predicted jointly independent.  Centers are defined only up to the
    stated expansion orders, so downstream checks compare distributions,
    not the centers themselves.
    """

    alpha: float
    n_edges: int
    k_cutoff: int
    scales: tuple[float, ...]  # scale_i for i = 1..K
    centers: tuple[float, ...]  # solved centers for i < 1/alpha
    poisson_mean: Optional[float]  # K!^alpha when 1/alpha is an integer
    objective_max: float
    eta: float
    log_zn: float

    @property
    def laws(self) -> tuple[DegreeLaw, ...]:
        out = [
            DegreeLaw(i + 1, "gaussian", self.centers[j], math.sqrt(self.scales[i - 1]))
            for j, i in enumerate(gaussian_indices(self.alpha))
        ]
        if self.poisson_mean is not None:
            out.append(
                DegreeLaw(
                    self.k_cutoff + 1,
                    "poisson",
                    self.poisson_mean,
                    math.sqrt(self.poisson_mean),
                )
            )
        return tuple(out)


def predict(alpha: float, n_edges: int, eta: float = DEFAULT_ETA, tol: float = 1e-10) -> AsymptoticPrediction:
    """Solve the centers and assemble every prediction at one (alpha, N)."""
    k = degree_cutoff(alpha)
    scales = tuple(degree_count_scale(alpha, n_edges, i) for i in range(1, k + 1))
    centers = solve_centers(alpha, n_edges, tol=tol, eta=eta)
    poisson_mean = scales[k - 1] if reciprocal_is_integer(alpha) else None
    return AsymptoticPrediction(
        alpha=alpha,
        n_edges=n_edges,
        k_cutoff=k,
        scales=scales,
        centers=tuple(float(c) for c in centers),
        poisson_mean=poisson_mean,
        objective_max=profile_objective(alpha, n_edges, centers),
        eta=eta,
        log_zn=predict_log_zn(REGIME_ALPHA_LT_1, alpha, n_edges),
    )


def reference_laws(alpha: float, n_edges: int, eta: float = DEFAULT_ETA) -> tuple[DegreeLaw, ...]:
    """Predicted limit laws for each tracked degree at one (alpha, N)."""
    return predict(alpha, n_edges, eta=eta).laws
