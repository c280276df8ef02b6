"""Network space, two-community SBM parameterization, sampling and sample moments.

Adjacency matrices are plain ``numpy`` arrays. ``as_binary`` and
``as_weighted`` validate the invariants (symmetry, zero diagonal, entry
range) and return read-only copies, so everything downstream can treat
them as immutable values.

Vertex pairs are always enumerated in row-major upper-triangular order,
``np.triu_indices(n, 1)``. Sampling consumes one uniform per pair in that
order, network after network, from a PCG64 stream seeded with ``seed``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

#: Largest n for which the 4-index sample correlation is materialized densely.
RHO_DENSE_CAP = 32

SEED_MASK = (1 << 64) - 1


class GraphError(ValueError):
    """Raised when a matrix violates the network-space invariants."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def as_weighted(a, *, unit_interval: bool = False, atol: float = 0.0) -> np.ndarray:
    """Validate a weighted adjacency matrix and return a read-only float copy.

    Symmetry is checked up to ``atol``; the diagonal must be exactly zero.
    With ``unit_interval`` every entry must lie in [0, 1].
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError(f"adjacency must be square, got shape {a.shape}")
    if a.shape[0] < 1:
        raise GraphError("adjacency must have at least one vertex")
    if not np.all(np.isfinite(a)):
        raise GraphError("adjacency has non-finite entries")
    if np.any(np.diag(a) != 0):
        raise GraphError("adjacency must have a zero diagonal")
    if np.max(np.abs(a - a.T)) > atol:
        raise GraphError("adjacency must be symmetric")
    if np.any(a < 0):
        raise GraphError("adjacency entries must be nonnegative")
    if unit_interval and np.any(a > 1):
        raise GraphError("entries must lie in [0, 1]")
    return _frozen(a)


def as_binary(a) -> np.ndarray:
    """Validate a 0/1 adjacency matrix and return a read-only ``int8`` copy."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphError(f"adjacency must be square, got shape {arr.shape}")
    if not np.all((arr == 0) | (arr == 1)):
        raise GraphError("binary adjacency entries must be 0 or 1")
    arr = arr.astype(np.int8)
    if np.any(np.diag(arr) != 0):
        raise GraphError("adjacency must have a zero diagonal")
    if np.any(arr != arr.T):
        raise GraphError("adjacency must be symmetric")
    return _frozen(arr)


@lru_cache(maxsize=64)
def pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-major upper-triangular vertex pairs ``(rows, cols)`` for size ``n``."""
    rows, cols = np.triu_indices(n, 1)
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def to_pairs(a: np.ndarray) -> np.ndarray:
    """Upper-triangular entries of ``a`` (or of a stack of matrices) as vectors."""
    a = np.asarray(a)
    rows, cols = pair_index(a.shape[-1])
    return a[..., rows, cols]


def from_pairs(values, n: int, dtype=None) -> np.ndarray:
    """Inverse of :func:`to_pairs`: symmetric matrix with zero diagonal."""
    values = np.asarray(values)
    out = np.zeros(values.shape[:-1] + (n, n), dtype=dtype or values.dtype)
    rows, cols = pair_index(n)
    out[..., rows, cols] = values
    out[..., cols, rows] = values
    return out


def edge_count(b: np.ndarray) -> int:
    """m(B): number of edges of a binary adjacency."""
    return int(np.count_nonzero(to_pairs(b)))


def edges(b: np.ndarray) -> list[tuple[int, int]]:
    """Edge set E(B) as 0-based ``(i, j)`` pairs with ``i < j``."""
    rows, cols = pair_index(b.shape[0])
    mask = to_pairs(b) != 0
    return list(zip(rows[mask].tolist(), cols[mask].tolist()))


def non_edges(b: np.ndarray) -> list[tuple[int, int]]:
    """Non-edge set of a binary adjacency, 0-based with ``i < j``."""
    rows, cols = pair_index(b.shape[0])
    mask = to_pairs(b) == 0
    return list(zip(rows[mask].tolist(), cols[mask].tolist()))


def empty_graph(n: int) -> np.ndarray:
    return _frozen(np.zeros((n, n), dtype=np.int8))


def complete_graph(n: int) -> np.ndarray:
    return _frozen((1 - np.eye(n)).astype(np.int8))


@dataclass(frozen=True)
class SbmParams:
    """Parameters of the two-community block model G(n, p, q).

    Vertices ``0 .. n/2 - 1`` form the first community and the rest form
    the second; labels are never permuted.
    """

    n: int
    p: float
    q: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise GraphError(f"n must be an integer >= 2, got {self.n}")
        if self.n % 2:
            raise GraphError(f"n must be even for two equal communities, got {self.n}")
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise GraphError(f"{name} must lie in [0, 1], got {v}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @property
    def signs(self) -> np.ndarray:
        """Community sign vector: +1 on the first half, -1 on the second."""
        return community_signs(self.n)

    def same_community(self) -> np.ndarray:
        """Boolean n x n mask, True where both endpoints share a community."""
        s = self.signs
        return np.equal.outer(s, s)


def community_signs(n: int) -> np.ndarray:
    s = np.ones(n)
    s[n // 2:] = -1.0
    return s


def expected_matrix(params: SbmParams) -> np.ndarray:
    """P = [[p, q], [q, p]] (x) J_{n/2} with the diagonal zeroed."""
    block = np.array([[params.p, params.q], [params.q, params.p]])
    P = np.kron(block, np.ones((params.n // 2, params.n // 2)))
    np.fill_diagonal(P, 0.0)
    return _frozen(P)


@dataclass(frozen=True)
class NetworkSample:
    """An ordered sample of N binary networks on the same vertex set.

    ``networks`` is a read-only ``(N, n, n)`` int8 array.
    """

    networks: np.ndarray
    seed: int | None = None
    params: SbmParams | None = field(default=None, compare=False)

    def __post_init__(self):
        nets = np.asarray(self.networks)
        if nets.ndim == 2:
            nets = nets[None]
        if nets.ndim != 3 or nets.shape[0] < 1:
            raise GraphError("a sample needs at least one n x n network")
        nets = np.stack([as_binary(a) for a in nets])
        nets.setflags(write=False)
        object.__setattr__(self, "networks", nets)

    @classmethod
    def from_list(cls, networks, seed: int | None = None) -> "NetworkSample":
        networks = [np.asarray(a) for a in networks]
        if not networks:
            raise GraphError("a sample needs at least one network")
        n = networks[0].shape
        if any(a.shape != n for a in networks):
            raise GraphError("all networks in a sample must have the same size")
        return cls(np.stack(networks), seed=seed)

    @property
    def N(self) -> int:
        return self.networks.shape[0]

    @property
    def n(self) -> int:
        return self.networks.shape[1]

    def pair_matrix(self) -> np.ndarray:
        """``(N, n(n-1)/2)`` matrix of edge indicators in pair order."""
        return to_pairs(self.networks)

    def __len__(self) -> int:
        return self.N

    def __iter__(self):
        return iter(self.networks)

    def __getitem__(self, k):
        return self.networks[k]


def derive_seed(base_seed: int, index: int) -> int:
    """Per-replicate seed: ``(base_seed + index) mod 2**64``."""
    return (int(base_seed) + int(index)) & SEED_MASK


def sample_sbm(params: SbmParams, count: int, seed: int) -> NetworkSample:
    """Draw ``count`` independent networks from G(n, p, q).

    Edge (i, j) of network k is present iff the uniform drawn for it is
    below P_ij. Uniforms come from ``numpy.random.Generator(PCG64(seed))``
    in network-major, then row-major upper-triangular order.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    seed = int(seed) & SEED_MASK
    rng = np.random.Generator(np.random.PCG64(seed))
    probs = to_pairs(expected_matrix(params))
    u = rng.random((count, probs.size))
    nets = from_pairs((u < probs).astype(np.int8), params.n)
    return NetworkSample(nets, seed=seed, params=params)


class SampleMoments:
    """Entrywise sample mean P-hat and sample correlation rho-hat.

    ``rho(i, j, k, l)`` is (1/N) sum_k a_ij a_kl. For ``n <= RHO_DENSE_CAP``
    the full pair-by-pair matrix is kept in :attr:`rho_dense` (indexed by
    pair position, see :func:`pair_index`); above the cap it is ``None`` and
    entries are evaluated on demand from the stored sample.
    """

    def __init__(self, sample: NetworkSample, dense_cap: int = RHO_DENSE_CAP):
        x = sample.pair_matrix().astype(float)
        self.n = sample.n
        self.N = sample.N
        self._x = x
        self._x.setflags(write=False)
        self.phat = _frozen(from_pairs(x.mean(axis=0), self.n))
        if self.n <= dense_cap:
            self.rho_dense = _frozen(x.T @ x / self.N)
        else:
            self.rho_dense = None

    @property
    def phat_pairs(self) -> np.ndarray:
        return to_pairs(self.phat)

    def _pos(self, i: int, j: int) -> int:
        if i == j:
            raise IndexError("rho is indexed by vertex pairs with i != j")
        i, j = min(i, j), max(i, j)
        n = self.n
        return i * n - i * (i + 1) // 2 + (j - i - 1)

    def rho(self, i: int, j: int, k: int, l: int) -> float:
        a, b = self._pos(i, j), self._pos(k, l)
        if self.rho_dense is not None:
            return float(self.rho_dense[a, b])
        return float(self._x[:, a] @ self._x[:, b] / self.N)

    def rho_block(self, left, right) -> np.ndarray:
        """rho over pair positions ``left x right`` (arrays of pair indices)."""
        left = np.asarray(left, dtype=int)
        right = np.asarray(right, dtype=int)
        if self.rho_dense is not None:
            return self.rho_dense[np.ix_(left, right)]
        return self._x[:, left].T @ self._x[:, right] / self.N

    def rho_block_sum(self, left, right) -> float:
        """Sum of rho over ``left x right`` without forming the block."""
        left = np.asarray(left, dtype=int)
        right = np.asarray(right, dtype=int)
        if self.rho_dense is not None:
            return float(self.rho_dense[np.ix_(left, right)].sum())
        return float(self._x[:, left].sum(1) @ self._x[:, right].sum(1) / self.N)


def sample_moments(sample: NetworkSample, dense_cap: int = RHO_DENSE_CAP) -> SampleMoments:
    return SampleMoments(sample, dense_cap=dense_cap)
