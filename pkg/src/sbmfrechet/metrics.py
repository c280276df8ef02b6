"""Hamming distance, its [0, 1]-weighted extension, and resistance distances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .graph import GraphError, as_binary, as_weighted, to_pairs

#: Weights at or below this magnitude are treated as absent edges.
EDGE_TOL = 1e-12


class DisconnectedGraphError(GraphError):
    """Effective resistance is only defined here for connected graphs."""


def _check_same_size(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise GraphError(f"dimension mismatch: {a.shape} vs {b.shape}")


def hamming(a, b) -> int:
    """Number of vertex pairs on which two binary networks differ."""
    a, b = as_binary(a), as_binary(b)
    _check_same_size(a, b)
    return int(np.count_nonzero(to_pairs(a) != to_pairs(b)))


def delta(a, b) -> float:
    """Bilinear extension of the Hamming distance to weights in [0, 1].

    sum a_ij + sum b_ij - 2 sum a_ij b_ij over pairs i < j. Agrees with
    :func:`hamming` on binary inputs but is not a metric in general.
    """
    a = as_weighted(a, unit_interval=True)
    b = as_weighted(b, unit_interval=True)
    _check_same_size(a, b)
    x, y = to_pairs(a), to_pairs(b)
    return float(x.sum() + y.sum() - 2.0 * (x @ y))


def is_connected(a) -> bool:
    a = np.asarray(a)
    if a.shape[0] == 1:
        return True
    ncomp, _ = connected_components(np.abs(a) > EDGE_TOL, directed=False)
    return ncomp == 1


def _check_connected(a: np.ndarray) -> None:
    deg = a.sum(axis=1)
    if np.any(deg <= EDGE_TOL):
        raise DisconnectedGraphError(
            f"vertex {int(np.argmin(deg))} has zero degree; effective resistance "
            "requires a connected graph"
        )
    if not is_connected(a):
        raise DisconnectedGraphError("graph is disconnected; effective resistance requires a connected graph")


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigendecomposition of the normalized adjacency D^-1/2 A D^-1/2.

    ``eigenvalues`` are sorted in decreasing order and ``eigenvectors[:, m]``
    spans the m-th eigenspace (one column per eigenvalue, so repeated
    eigenvalues have several columns).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degrees: np.ndarray

    @property
    def total_degree(self) -> float:
        return float(self.degrees.sum())

    @property
    def n(self) -> int:
        return self.degrees.size

    def projector(self, m: int) -> np.ndarray:
        """Rank-one projector on the m-th eigenvector (0-based)."""
        z = self.eigenvectors[:, m]
        return np.outer(z, z)

    def perron_projector(self) -> np.ndarray:
        """tau^-1 d^1/2 (d^1/2)^T, the projector on the kernel of the normalized Laplacian."""
        s = np.sqrt(self.degrees)
        return np.outer(s, s) / self.total_degree

    def normalized_adjacency(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T

    def laplacian_pinv(self, tol: float | None = None) -> np.ndarray:
        """Pseudoinverse of I - A-hat from the stored spectrum.

        Laplacian eigenvalues ``1 - lambda`` at or below ``tol`` (default
        ``1e-10 * n``) are treated as zero.
        """
        if tol is None:
            tol = 1e-10 * self.n
        mu = 1.0 - self.eigenvalues
        keep = mu > tol
        V = self.eigenvectors[:, keep]
        return (V / mu[keep]) @ V.T


def spectral_decomposition(a) -> SpectralDecomposition:
    a = as_weighted(a, atol=1e-12)
    deg = a.sum(axis=1)
    if np.any(deg <= EDGE_TOL):
        raise GraphError(f"vertex {int(np.argmin(deg))} has zero degree")
    s = 1.0 / np.sqrt(deg)
    ahat = s[:, None] * a * s[None, :]
    ahat = 0.5 * (ahat + ahat.T)
    w, V = np.linalg.eigh(ahat)
    order = np.argsort(w)[::-1]
    return SpectralDecomposition(eigenvalues=w[order], eigenvectors=V[:, order], degrees=deg)


def effective_resistance(a) -> np.ndarray:
    """Effective resistance matrix from the normalized-Laplacian pseudoinverse.

    R_ij = <u_i - u_j, Ldag (u_i - u_j)> with u_i = e_i / sqrt(d_i).
    """
    a = as_weighted(a, atol=1e-12)
    _check_connected(a)
    spec = spectral_decomposition(a)
    s = 1.0 / np.sqrt(spec.degrees)
    M = s[:, None] * spec.laplacian_pinv() * s[None, :]
    d = np.diag(M)
    R = d[:, None] + d[None, :] - 2.0 * M
    R = 0.5 * (R + R.T)
    np.fill_diagonal(R, 0.0)
    return R


def effective_resistance_combinatorial(a) -> np.ndarray:
    """Effective resistance via L^+ of L = D - A: R_ij = L+_ii + L+_jj - 2 L+_ij.

    Independent of :func:`effective_resistance`. Accepts signed weights so
    it can check reconstructed barycenters whose entries leave [0, 1];
    the only requirement is a Laplacian of rank n - 1.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if not is_connected(a):
        raise DisconnectedGraphError("graph is disconnected; effective resistance requires a connected graph")
    L = np.diag(a.sum(axis=1)) - a
    # L + J/n is invertible exactly when L has rank n - 1.
    J = np.full((n, n), 1.0 / n)
    Lp = np.linalg.inv(L + J) - J
    d = np.diag(Lp)
    R = d[:, None] + d[None, :] - 2.0 * Lp
    R = 0.5 * (R + R.T)
    np.fill_diagonal(R, 0.0)
    return R


def resistance_distance_sq(a, b) -> float:
    """Sum over pairs i < j of (R_ij - R'_ij)^2.

    This is the quantity whose sample average is the Frechet function
    under the resistance metric; :func:`resistance_distance` is its root.
    """
    a = as_weighted(a, atol=1e-12)
    b = as_weighted(b, atol=1e-12)
    _check_same_size(a, b)
    diff = to_pairs(effective_resistance(a) - effective_resistance(b))
    return float(diff @ diff)


def resistance_distance(a, b) -> float:
    return float(np.sqrt(resistance_distance_sq(a, b)))
