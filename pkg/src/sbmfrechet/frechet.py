"""Sample Frechet functions, medians and means of network samples.

Under the Hamming distance the Frechet mean is found by exhaustive
enumeration (small n only) and compared with the majority-rule median.
Under the resistance distance the Frechet function is quadratic in the
resistance matrix, so the barycenter's resistance is the sample mean
resistance, and the barycenter itself is recovered by inverting the
resistance map.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import (
    GraphError,
    NetworkSample,
    SampleMoments,
    as_binary,
    from_pairs,
    num_pairs,
    sample_moments,
    to_pairs,
)
from .metrics import (
    delta,
    effective_resistance,
    effective_resistance_combinatorial,
    is_connected,
)

#: Largest vertex count accepted by the exhaustive search (2^15 candidates).
BRUTE_FORCE_MAX_N = 6


class SingularInversionError(np.linalg.LinAlgError):
    def __init__(self, message: str, condition: float):
        super().__init__(f"{message} (condition estimate {condition:.3e})")
        self.condition = condition


class NotRealizableError(ValueError):
    def __init__(self, residual: float, tol: float):
        super().__init__(
            f"resistance matrix is not realizable: round-trip residual {residual:.3e} exceeds {tol:.1e}"
        )
        self.residual = residual


def _sample_pairs(b, sample: NetworkSample) -> tuple[np.ndarray, np.ndarray]:
    b = as_binary(b)
    if b.shape[0] != sample.n:
        raise GraphError(f"dimension mismatch: network has n={b.shape[0]}, sample has n={sample.n}")
    return to_pairs(b).astype(np.int64), sample.pair_matrix().astype(np.int64)


def hamming_to_sample(b, sample: NetworkSample) -> np.ndarray:
    """Hamming distance from ``b`` to every network of the sample."""
    x, A = _sample_pairs(b, sample)
    return np.count_nonzero(A != x, axis=1)


def frechet_function_hamming(b, sample: NetworkSample) -> float:
    """(1/N) sum_k d_H(B, A_k)^2."""
    d = hamming_to_sample(b, sample)
    return float((d * d).sum() / sample.N)


def frechet_function_median(b, sample: NetworkSample) -> float:
    """(1/N) sum_k d_H(B, A_k), which equals delta(B, P-hat)."""
    value = float(hamming_to_sample(b, sample).sum() / sample.N)
    phat = sample_moments(sample, dense_cap=0).phat
    assert abs(value - delta(b, phat)) <= 1e-9 * max(1.0, value)
    return value


def majority_median(sample: NetworkSample) -> np.ndarray:
    """Edge (i, j) is kept iff it appears in at least N/2 networks (ties keep it)."""
    counts = sample.pair_matrix().astype(np.int64).sum(axis=0)
    return as_binary(from_pairs((2 * counts >= sample.N).astype(np.int8), sample.n))


@dataclass(frozen=True)
class FrechetDecomposition:
    """F2(B) split as a B-dependent dominant term plus a vanishing residual.

    ``fhat`` is delta(B, P-hat)^2 - sum over all pair-of-pairs of
    (P-hat P-hat' - rho-hat); ``zeta`` is 4 times the same summand taken
    over non-edges x edges of B.
    """

    f2: float
    fhat: float
    zeta: float

    @property
    def identity_gap(self) -> float:
        return self.f2 - self.fhat - self.zeta


def decompose_frechet(b, sample: NetworkSample, moments: SampleMoments | None = None) -> FrechetDecomposition:
    x, _ = _sample_pairs(b, sample)
    if moments is None:
        moments = sample_moments(sample)
    ph = moments.phat_pairs
    all_pairs = np.arange(num_pairs(sample.n))
    on = np.flatnonzero(x)
    off = np.flatnonzero(x == 0)

    d = delta(b, moments.phat)
    total = ph.sum() ** 2 - moments.rho_block_sum(all_pairs, all_pairs)
    fhat = d * d - total
    zeta = 4.0 * (ph[off].sum() * ph[on].sum() - moments.rho_block_sum(off, on))
    return FrechetDecomposition(f2=frechet_function_hamming(b, sample), fhat=float(fhat), zeta=float(zeta))


def enumerate_graphs(n: int) -> np.ndarray:
    """Every network on n vertices as rows of pair indicators.

    Row ``c`` is the binary expansion of ``c`` over the pairs in
    :func:`~sbmfrechet.graph.pair_index` order (pair 0 is the lowest bit).
    """
    m = num_pairs(n)
    codes = np.arange(1 << m, dtype=np.int64)
    return ((codes[:, None] >> np.arange(m)) & 1).astype(np.int8)


@dataclass(frozen=True)
class FrechetMeanSet:
    """All global minimizers of a Frechet function over the searched space."""

    minimizers: tuple[np.ndarray, ...]
    value: float
    metric: str
    n_candidates: int
    n_skipped: int = 0

    def contains(self, b) -> bool:
        b = np.asarray(b)
        return any(np.array_equal(m, b) for m in self.minimizers)

    @property
    def unique(self) -> bool:
        return len(self.minimizers) == 1


def _batch_resistance(pairs: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Resistance pair-vectors of many small graphs plus a connectivity mask."""
    A = from_pairs(pairs.astype(float), n)
    L = np.einsum("cij->ci", A)[:, :, None] * np.eye(n) - A
    fiedler = np.linalg.eigvalsh(L)[:, 1] if n > 1 else np.ones(len(A))
    connected = fiedler > 1e-9
    J = np.full((n, n), 1.0 / n)
    Lp = np.linalg.inv(L[connected] + J) - J
    d = np.einsum("cii->ci", Lp)
    R = d[:, :, None] + d[:, None, :] - 2.0 * Lp
    return to_pairs(R), connected


def brute_force_frechet_mean(sample: NetworkSample, metric: str = "hamming") -> FrechetMeanSet:
    """Exact sample Frechet mean over all of S by enumeration (n <= 6).

    ``metric`` is ``"hamming"`` or ``"resistance_sq"``. For the resistance
    metric only connected candidates are searched and the number of
    skipped disconnected candidates is reported. Ties are not broken: the
    full argmin set is returned.
    """
    n = sample.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"exhaustive search is limited to n <= {BRUTE_FORCE_MAX_N}, got n={n}")
    cands = enumerate_graphs(n)
    A = sample.pair_matrix().astype(np.int64)

    if metric == "hamming":
        C = cands.astype(np.int64)
        d = C.sum(1)[:, None] + A.sum(1)[None, :] - 2 * (C @ A.T)
        score = (d * d).sum(axis=1)  # exact integers, N * F2
        best = score.min()
        idx = np.flatnonzero(score == best)
        value = float(best) / sample.N
        skipped = 0
        kept = cands
    elif metric == "resistance_sq":
        if not all(is_connected(a) for a in sample):
            raise GraphError("every sample network must be connected for the resistance metric")
        RA, _ = _batch_resistance(A, n)
        RC, connected = _batch_resistance(cands, n)
        kept = cands[connected]
        skipped = int((~connected).sum())
        if kept.shape[0] == 0:
            raise ValueError("no connected candidate networks")
        rbar = RA.mean(axis=0)
        spread = float(np.mean((RA * RA).sum(axis=1)))
        score = (RC * RC).sum(axis=1) - 2.0 * RC @ rbar + spread
        best = score.min()
        idx = np.flatnonzero(score <= best + 1e-10 * max(1.0, abs(best)))
        value = float(best)
    else:
        raise ValueError(f"unknown metric {metric!r}; expected 'hamming' or 'resistance_sq'")

    mins = tuple(as_binary(from_pairs(kept[i], n)) for i in idx)
    return FrechetMeanSet(
        minimizers=mins, value=value, metric=metric, n_candidates=int(cands.shape[0]), n_skipped=skipped
    )


def adjacency_from_resistance(r, alpha: float = 1.0, tol: float = 1e-6) -> np.ndarray:
    """Weighted adjacency whose effective resistance matrix is ``r``.

    L+ = -1/2 C R C with C = I - J/n, then L = (L+ + (alpha/n) J)^-1 - J/(alpha n),
    and A is -L with its diagonal zeroed. The result does not depend on
    ``alpha``. Entries are returned as computed, without clipping.
    """
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise GraphError(f"resistance matrix must be square, got {r.shape}")
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    n = r.shape[0]
    J = np.full((n, n), 1.0 / n)
    C = np.eye(n) - J
    Lp = -0.5 * C @ r @ C
    M = Lp + alpha * J
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > 1e14:
        raise SingularInversionError("L+ + (alpha/n) J is singular", float(cond))
    L = np.linalg.solve(M, np.eye(n)) - J / alpha
    A = -L
    A = 0.5 * (A + A.T)
    np.fill_diagonal(A, 0.0)

    try:
        back = effective_resistance_combinatorial(A)
    except (GraphError, np.linalg.LinAlgError) as exc:
        raise NotRealizableError(np.inf, tol) from exc
    residual = float(np.max(np.abs(back - r))) if n > 1 else 0.0
    if not residual <= tol:
        raise NotRealizableError(residual, tol)
    return A


@dataclass(frozen=True)
class BarycenterResult:
    mean_resistance: np.ndarray
    reconstructed: np.ndarray
    alpha: float
    round_trip_residual: float

    @property
    def min_entry(self) -> float:
        return float(to_pairs(self.reconstructed).min())

    @property
    def max_entry(self) -> float:
        return float(to_pairs(self.reconstructed).max())

    def sidecar(self) -> dict:
        return {
            "alpha": self.alpha,
            "round_trip_residual": self.round_trip_residual,
            "min_entry": self.min_entry,
            "max_entry": self.max_entry,
        }


def mean_resistance(sample: NetworkSample, workers: int | None = None) -> np.ndarray:
    """Entrywise mean of the per-network resistance matrices, summed in sample order."""
    for k, a in enumerate(sample):
        if not is_connected(a):
            raise GraphError(f"sample network {k} is disconnected")
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            mats = list(pool.map(effective_resistance, sample))
    else:
        mats = map(effective_resistance, sample)
    total = np.zeros((sample.n, sample.n))
    for R in mats:
        total += R
    return total / sample.N


def resistance_barycenter(
    sample: NetworkSample, alpha: float = 1.0, tol: float = 1e-6, workers: int | None = None
) -> BarycenterResult:
    """Sample Frechet mean under the resistance distance, over weighted networks."""
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    Rhat = mean_resistance(sample, workers=workers)
    A = adjacency_from_resistance(Rhat, alpha=alpha, tol=tol)
    residual = float(np.max(np.abs(effective_resistance_combinatorial(A) - Rhat)))
    return BarycenterResult(mean_resistance=Rhat, reconstructed=A, alpha=float(alpha), round_trip_residual=residual)
