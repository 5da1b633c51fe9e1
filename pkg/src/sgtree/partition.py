"""Composition partition-function table Z(N, n) and its identities.

Z(N, n) sums prod_i w_{d_i+1} over all length-N compositions d_1+...+d_N = n.
Everything about the tree measure reduces to this table:

  Z_N          = Z(N, N-1) / N                   (trees with N edges)
  Z_N^(m)      = (m/N) Z(N, N-m)                 (ordered forests, m trees)
  P(sigma(s) = k+1)        ~ k w_{k+1} Z(N-1, N-1-k)
  P(sigma(s), sigma(s_1))  ~ (k+l-1) w_{k+1} w_{l+1} Z(N-2, N-1-k-l)

The table is built row by row in the log domain; each row is a log-domain
convolution of the previous row with the weight sequence, evaluated with a
per-entry max shift so that entries thousands of log-units apart stay
accurate.  Families with rational weights can mirror a small corner of the
table in exact Fractions.
"""

from __future__ import annotations

import io
import json
import math
import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .logdomain import LOG_ZERO, log_sum
from .weights import WeightSequence

DEFAULT_N_MAX_CAP = 1500
TRUNCATION_CUTOFF = 40.0  # natural-log units below the per-entry maximum

_MAGIC = b"SGTZ"
_VERSION = 1


class TableSizeError(ValueError):
    """Requested table exceeds the configured desk-scale budget."""


class WeightDecayError(ValueError):
    """Weight ratios never fall below the requested epsilon on the table range."""


def _log_conv_row(prev: np.ndarray, log_terms: np.ndarray, truncate: bool) -> np.ndarray:
    """out[n] = logsumexp_d (log_terms[d] + prev[n-d]), d = 0..n.

    prev and log_terms have equal length W; the result has length W.  The
    shifted-window matrix T[n, d] = prev[n-d] is a zero-copy view; the
    max shift is taken per output entry.  With truncate set, terms more
    than TRUNCATION_CUTOFF below the entry maximum are dropped (bounded
    relative error ~ W * exp(-cutoff)).
    """
    w = prev.shape[0]
    pad = np.full(2 * w - 1, -np.inf)
    pad[w - 1 :] = prev
    t = sliding_window_view(pad[::-1], w)[::-1]  # t[n, d] = prev[n-d]
    m = t + log_terms[None, :]
    mx = m.max(axis=1)
    finite = mx > -np.inf
    shift = np.where(finite, mx, 0.0)
    np.subtract(m, shift[:, None], out=m)
    if truncate:
        np.copyto(m, -np.inf, where=m < -TRUNCATION_CUTOFF)
    np.exp(m, out=m)
    s = m.sum(axis=1)
    out = np.full(w, -np.inf)
    np.log(s, out=s, where=s > 0)
    out[finite] = mx[finite] + s[finite]
    return out


@dataclass(frozen=True)
class ShiftInequalityCheck:
    """Outcome of one Z(N,n) <= eps Z(N,n+1) + C_eps^N verification."""

    applicable: bool
    holds: Optional[bool]
    eps: float
    a_eps: int
    log_c_eps: float
    lhs_log: float
    rhs_log: float

    @property
    def margin(self) -> float:
        """rhs - lhs in log units; nonnegative when the inequality holds."""
        return self.rhs_log - self.lhs_log


class ZTable:
    """Log-domain table of Z(N, n) for 0 <= N, n <= n_max.

    Immutable after build; concurrent readers are safe.  The optional exact
    mirror covers the square corner N, n <= exact_upto in Fractions.
    """

    def __init__(
        self,
        ws: WeightSequence,
        n_max: int,
        log_table: np.ndarray,
        log_w: np.ndarray,
        exact_upto: int = -1,
        exact_table: Optional[list[list[Fraction]]] = None,
        truncated: bool = False,
    ):
        self.ws = ws
        self.n_max = n_max
        self.log_table = log_table
        self.log_w = log_w  # log_w[d] = log w_{d+1}
        self.exact_upto = exact_upto
        self.exact_table = exact_table
        self.truncated = truncated
        self._rows_list: Optional[list[list[float]]] = None
        self._log_w_list: Optional[list[float]] = None
        self._log_sized_w: Optional[np.ndarray] = None  # log(l * w_{l+1})
        self._shift_cache: dict[float, tuple[int, float]] = {}

    # -- raw access ---------------------------------------------------------

    def log_z(self, n_vertices: int, n: int) -> float:
        """log Z(N, n)."""
        if not (0 <= n_vertices <= self.n_max and 0 <= n <= self.n_max):
            raise ValueError(f"(N={n_vertices}, n={n}) outside table bound {self.n_max}")
        return float(self.log_table[n_vertices, n])

    def exact_z(self, n_vertices: int, n: int) -> Fraction:
        if self.exact_table is None or n_vertices > self.exact_upto or n > self.exact_upto:
            raise ValueError(f"(N={n_vertices}, n={n}) outside exact mirror")
        return self.exact_table[n_vertices][n]

    def rows_as_lists(self) -> list[list[float]]:
        """Plain-list view of the table for tight scalar loops (sampler)."""
        if self._rows_list is None:
            self._rows_list = self.log_table.tolist()
        return self._rows_list

    def log_w_as_list(self) -> list[float]:
        if self._log_w_list is None:
            self._log_w_list = self.log_w.tolist()
        return self._log_w_list

    # -- partition functions --------------------------------------------------

    def log_z_n(self, n_edges: int) -> float:
        """log Z_N = log Z(N, N-1) - log N: trees with N edges."""
        if not 1 <= n_edges <= self.n_max:
            raise ValueError(f"N={n_edges} outside table bound {self.n_max}")
        return float(self.log_table[n_edges, n_edges - 1]) - math.log(n_edges)

    def exact_z_n(self, n_edges: int) -> Fraction:
        return self.exact_z(n_edges, n_edges - 1) / n_edges

    def log_forest_z(self, n_edges: int, m: int) -> float:
        """log of the ordered-forest partition function (m/N) Z(N, N-m)."""
        if not 1 <= m <= n_edges <= self.n_max:
            raise ValueError(f"need 1 <= m <= N <= {self.n_max}, got m={m}, N={n_edges}")
        return math.log(m) - math.log(n_edges) + float(self.log_table[n_edges, n_edges - m])

    def exact_forest_z(self, n_edges: int, m: int) -> Fraction:
        if not 1 <= m <= n_edges:
            raise ValueError(f"need 1 <= m <= N, got m={m}, N={n_edges}")
        return Fraction(m, n_edges) * self.exact_z(n_edges, n_edges - m)

    # -- conditional degree laws ---------------------------------------------

    def root_degree_pmf(self, n_edges: int) -> np.ndarray:
        """p[k] = P(sigma(s) = k+1) under the N-edge measure, k = 1..N-1.

        Entry 0 is zero padding.  The values come straight from the
        pendant-forest identity and sum to 1 analytically; no renormalizing
        is applied here.
        """
        n = n_edges
        if n < 2:
            raise ValueError("root-degree law needs N >= 2")
        if n > self.n_max:
            raise ValueError(f"N={n} outside table bound {self.n_max}")
        log_zn = self.log_table[n, n - 1]
        if log_zn == -np.inf:
            raise ValueError(f"Z({n},{n-1}) = 0: no trees with {n} edges")
        ks = np.arange(1, n)
        t = (
            math.log(n)
            - math.log(n - 1)
            + np.log(ks)
            + self.log_w[1:n]
            + self.log_table[n - 1, n - 1 - ks]
            - log_zn
        )
        p = np.zeros(n)
        p[1:] = np.exp(t)
        return p

    def joint_child_pmf(self, n_edges: int) -> np.ndarray:
        """P(sigma(s) = k+1, sigma(s_1) = l+1) as a matrix indexed [k, l].

        k = 1..N-1 (rows; row 0 is padding), l = 0..N-2 (columns); s_1 is
        the first child of s.  Removing r, s and s_1 leaves an ordered
        forest of k+l-1 trees on N-2 edges, which gives the closed form;
        the matrix restricted to k, l >= 1 is symmetric.
        """
        n = n_edges
        if n < 3:
            raise ValueError("joint law needs N >= 3")
        if n > self.n_max:
            raise ValueError(f"N={n} outside table bound {self.n_max}")
        log_zn = self.log_table[n, n - 1]
        if log_zn == -np.inf:
            raise ValueError(f"Z({n},{n-1}) = 0: no trees with {n} edges")
        ks = np.arange(0, n)  # row index k; row 0 stays zero
        ls = np.arange(0, n - 1)
        kk, ll = np.meshgrid(ks, ls, indexing="ij")
        multiplicity = kk + ll - 1  # forest size k+l-1
        rest = n - 1 - kk - ll  # edges left for the forest interior
        valid = (kk >= 1) & (multiplicity >= 1) & (rest >= 0)
        out = np.zeros((n, n - 1))
        if not valid.any():
            return out
        kv, lv = kk[valid], ll[valid]
        t = (
            math.log(n)
            - math.log(n - 2)
            + np.log(multiplicity[valid].astype(float))
            + self.log_w[kv]
            + self.log_w[lv]
            + self.log_table[n - 2, rest[valid]]
            - log_zn
        )
        out[valid] = np.exp(t)
        return out

    # -- identities ------------------------------------------------------------

    def _log_sized_weights(self) -> np.ndarray:
        if self._log_sized_w is None:
            with np.errstate(divide="ignore"):
                self._log_sized_w = np.log(np.arange(self.n_max + 1, dtype=float)) + self.log_w
        return self._log_sized_w

    def sum_identity_residual(self, n_vertices: int, n: int) -> float:
        """Relative residual of sum_l l w_{l+1} Z(N-1, n-l) = (n/N) Z(N, n).

        Zero sums on both sides count as a zero residual; a one-sided zero
        reports inf.
        """
        if not (1 <= n_vertices <= self.n_max and 0 <= n <= self.n_max):
            raise ValueError("arguments outside table bound")
        if n == 0:
            return 0.0
        terms = self._log_sized_weights()[1 : n + 1] + self.log_table[n_vertices - 1, n - 1 :: -1]
        mx = terms.max()
        lhs = LOG_ZERO if mx == -np.inf else float(mx + np.log(np.exp(terms - mx).sum()))
        rhs = math.log(n) - math.log(n_vertices) + float(self.log_table[n_vertices, n])
        if lhs == LOG_ZERO and rhs == LOG_ZERO:
            return 0.0
        if lhs == LOG_ZERO or rhs == LOG_ZERO:
            return float("inf")
        return abs(math.expm1(lhs - rhs))

    def sum_identity_exact_residual(self, n_vertices: int, n: int) -> Fraction:
        """Exact-mode difference of the same identity; zero when it holds."""
        lhs = Fraction(0)
        for el in range(1, n + 1):
            lhs += el * self.ws.exact_weight(el + 1) * self.exact_z(n_vertices - 1, n - el)
        rhs = Fraction(n, n_vertices) * self.exact_z(n_vertices, n)
        return lhs - rhs

    def shift_index(self, eps: float) -> tuple[int, float]:
        """(A_eps, log C_eps): least A with w_i/w_{i+1} < eps for all
        checked i >= A, and the log of C_eps = sum_{i<=A} w_{i+1}."""
        if eps <= 0:
            raise ValueError("eps must be positive")
        if eps in self._shift_cache:
            return self._shift_cache[eps]
        log_eps = math.log(eps)
        a_eps = 1
        for i in range(1, self.n_max + 1):
            if float(self.log_w[i - 1]) - float(self.log_w[i]) >= log_eps:
                a_eps = i + 1
        if a_eps > self.n_max:
            raise WeightDecayError(
                f"no index below {self.n_max} with all later ratios w_i/w_(i+1) < {eps}"
            )
        log_c = log_sum(float(self.log_w[i]) for i in range(a_eps + 1))
        self._shift_cache[eps] = (a_eps, log_c)
        return a_eps, log_c

    def shift_inequality(self, eps: float, n_vertices: int, n: int) -> ShiftInequalityCheck:
        """Check Z(N,n) <= eps Z(N,n+1) + C_eps^N on stored entries.

        At n = n_max the right side is unavailable and the check reports
        not-applicable rather than guessing.
        """
        a_eps, log_c = self.shift_index(eps)
        if n >= self.n_max:
            return ShiftInequalityCheck(False, None, eps, a_eps, log_c, float("nan"), float("nan"))
        lhs = float(self.log_table[n_vertices, n])
        rhs = log_sum([math.log(eps) + float(self.log_table[n_vertices, n + 1]), n_vertices * log_c])
        holds = lhs <= rhs + 1e-12 * max(1.0, abs(rhs))
        return ShiftInequalityCheck(True, holds, eps, a_eps, log_c, lhs, rhs)


def build_ztable(
    ws: WeightSequence,
    n_max: int,
    exact_upto: int = 0,
    truncate: bool = False,
    allow_large: bool = False,
) -> ZTable:
    """Row-by-row log-domain build; O(n_max^3) scalar work, vectorized.

    The full table is retained because sequential sampling consults every
    row.  Sizes beyond the desk-scale default require allow_large.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > DEFAULT_N_MAX_CAP and not allow_large:
        raise TableSizeError(
            f"n_max={n_max} exceeds the default cap {DEFAULT_N_MAX_CAP}; "
            "pass allow_large to override"
        )
    w = n_max + 1
    log_w = ws.log_weights_upto(n_max)
    table = np.full((w, w), -np.inf)
    table[0, 0] = 0.0
    for row in range(1, w):
        table[row] = _log_conv_row(table[row - 1], log_w, truncate)

    exact_table = None
    if exact_upto > 0:
        if not ws.is_exact:
            raise ValueError("exact mirror requires a rational weight family")
        exact_upto = min(exact_upto, n_max)
        ew = [ws.exact_weight(d + 1) for d in range(exact_upto + 1)]
        exact_table = [[Fraction(0)] * (exact_upto + 1) for _ in range(exact_upto + 1)]
        exact_table[0][0] = Fraction(1)
        for row in range(1, exact_upto + 1):
            prev = exact_table[row - 1]
            exact_table[row] = [
                sum((ew[d] * prev[n - d] for d in range(n + 1)), Fraction(0))
                for n in range(exact_upto + 1)
            ]
    else:
        exact_upto = -1

    return ZTable(ws, n_max, table, log_w, exact_upto, exact_table, truncate)


# -- persistence ---------------------------------------------------------------


def save_ztable(table: ZTable, path: str) -> None:
    """Binary container: magic 'SGTZ', version byte, JSON descriptor,
    then (n_max+1)^2 row-major float64 log values, little endian."""
    descriptor = json.dumps(
        {
            "weights": table.ws.to_config(),
            "n_max": table.n_max,
            "truncated": table.truncated,
            "exact_upto": table.exact_upto,
        }
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<B", _VERSION))
        fh.write(struct.pack("<I", len(descriptor)))
        fh.write(descriptor)
        fh.write(table.log_table.astype("<f8").tobytes())


def load_ztable(path: str) -> ZTable:
    """Read a container written by save_ztable.

    The exact mirror is not serialized; it is rebuilt on load when the
    descriptor asks for one (cheap at the small sizes it covers).
    """
    with open(path, "rb") as fh:
        data = fh.read()
    buf = io.BytesIO(data)
    if buf.read(4) != _MAGIC:
        raise ValueError(f"{path}: not a ztable container")
    (version,) = struct.unpack("<B", buf.read(1))
    if version != _VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    (desc_len,) = struct.unpack("<I", buf.read(4))
    descriptor = json.loads(buf.read(desc_len).decode("utf-8"))
    n_max = int(descriptor["n_max"])
    w = n_max + 1
    raw = buf.read(w * w * 8)
    if len(raw) != w * w * 8:
        raise ValueError(f"{path}: truncated table payload")
    log_table = np.frombuffer(raw, dtype="<f8").reshape(w, w).copy()
    ws = WeightSequence.from_config(descriptor["weights"])
    exact_upto = int(descriptor.get("exact_upto", -1))
    exact_table = None
    if exact_upto > 0:
        rebuilt = build_ztable(ws, min(exact_upto, n_max), exact_upto=exact_upto)
        exact_table = rebuilt.exact_table
    return ZTable(
        ws,
        n_max,
        log_table,
        ws.log_weights_upto(n_max),
        exact_upto,
        exact_table,
        bool(descriptor.get("truncated", False)),
    )


def write_ztable_csv(table: ZTable, path: str) -> None:
    """N,n,logZ triples for external tooling."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("N,n,logZ\n")
        for n_vertices in range(table.n_max + 1):
            row = table.log_table[n_vertices]
            for n in range(table.n_max + 1):
                fh.write(f"{n_vertices},{n},{row[n]!r}\n")
