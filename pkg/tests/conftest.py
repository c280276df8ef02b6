import numpy as np
import pytest


def adjacency(n, edge_list, weights=None):
    A = np.zeros((n, n))
    for k, (i, j) in enumerate(edge_list):
        w = 1.0 if weights is None else weights[k]
        A[i, j] = A[j, i] = w
    return A


@pytest.fixture
def path3():
    return adjacency(3, [(0, 1), (1, 2)]).astype(int)


@pytest.fixture
def k3():
    return adjacency(3, [(0, 1), (0, 2), (1, 2)]).astype(int)


@pytest.fixture
def empty3():
    return np.zeros((3, 3), dtype=int)


def random_connected(rng, n, density=0.3, weighted=True):
    """Spanning path through a random permutation plus random extra edges."""
    A = np.zeros((n, n))
    perm = rng.permutation(n)
    for a, b in zip(perm[:-1], perm[1:]):
        A[a, b] = A[b, a] = 1.0
    extra = np.triu(rng.random((n, n)) < density, 1)
    A = np.maximum(A, extra + extra.T)
    if weighted:
        W = np.triu(rng.uniform(0.2, 3.0, (n, n)), 1)
        A = A * (W + W.T)
    return A


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
