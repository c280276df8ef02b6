"""Closed-form predictions for G(n, p, q) used as oracles by the experiments.

Where a prediction carries an unspecified big-O constant, the constant is
taken as 1. Those bands are reporting conventions, not bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import SbmParams


class TheoryDomainError(ValueError):
    pass


def block_indicator(n: int) -> np.ndarray:
    """K = [[0, 1], [1, 0]] (x) J_{n/2}: 1 exactly on across-community pairs."""
    return np.kron(np.array([[0.0, 1.0], [1.0, 0.0]]), np.ones((n // 2, n // 2)))


def predicted_mean_resistance(params: SbmParams) -> np.ndarray:
    """Expected effective resistance 4/(n(p+q)) J + (p-q)/(p+q) 4/(n^2 q) K.

    The diagonal is set to zero.
    """
    n, p, q = params.n, params.p, params.q
    if q <= 0:
        raise TheoryDomainError(
            "q must be positive: the across-community bottleneck term "
            "(p-q)/(p+q) * 4/(n^2 q) is undefined at q = 0"
        )
    if p + q <= 0:
        raise TheoryDomainError("p + q must be positive")
    R = 4.0 / (n * (p + q)) * np.ones((n, n))
    R += (p - q) / (p + q) * 4.0 / (n * n * q) * block_indicator(n)
    np.fill_diagonal(R, 0.0)
    return R


def predicted_lambda2(params: SbmParams) -> tuple[float, float]:
    """Second eigenvalue of the normalized adjacency and its fluctuation scale.

    Returns ``((p-q)/(p+q), sqrt(2 log n / (n (p+q))))``.
    """
    n, p, q = params.n, params.p, params.q
    if p + q <= 0:
        raise TheoryDomainError("p + q must be positive")
    return (p - q) / (p + q), math.sqrt(2.0 * math.log(n) / (n * (p + q)))


def spectral_tail_bound(params: SbmParams) -> float:
    """8 / sqrt(np), the bound on max_{m >= 3} |lambda_m|."""
    npr = params.n * params.p
    if npr <= 0:
        raise TheoryDomainError("n p must be positive")
    return 8.0 / math.sqrt(npr)


def residual_bound(params: SbmParams, di: float, dj: float) -> float:
    """(1/d_i + 1/d_j) 8 sqrt(2) / (np)^{3/2}: bound on the m >= 3 spectral
    contribution to R_ij."""
    if di <= 0 or dj <= 0:
        raise TheoryDomainError("degrees must be positive")
    npr = params.n * params.p
    if npr <= 0:
        raise TheoryDomainError("n p must be positive")
    return (1.0 / di + 1.0 / dj) * 8.0 * math.sqrt(2.0) / npr**1.5


@dataclass(frozen=True)
class TheoryPrediction:
    expected_resistance: np.ndarray
    lambda2: float
    lambda2_band: float
    tail_bound: float
    residual_scale: float

    @property
    def within_resistance(self) -> float:
        return float(self.expected_resistance[0, 1])

    @property
    def across_resistance(self) -> float:
        n = self.expected_resistance.shape[0]
        return float(self.expected_resistance[0, n - 1])


def predict(params: SbmParams) -> TheoryPrediction:
    lam, band = predicted_lambda2(params)
    tail = spectral_tail_bound(params)
    return TheoryPrediction(
        expected_resistance=predicted_mean_resistance(params),
        lambda2=lam,
        lambda2_band=band,
        tail_bound=tail,
        residual_scale=8.0 * math.sqrt(2.0) / (params.n * params.p) ** 1.5,
    )
