import itertools

import numpy as np
import pytest

from sbmfrechet.frechet import (
    NotRealizableError,
    SingularInversionError,
    adjacency_from_resistance,
    brute_force_frechet_mean,
    decompose_frechet,
    enumerate_graphs,
    frechet_function_hamming,
    frechet_function_median,
    majority_median,
    resistance_barycenter,
)
from sbmfrechet.graph import (
    GraphError,
    NetworkSample,
    SbmParams,
    complete_graph,
    empty_graph,
    expected_matrix,
    from_pairs,
    sample_moments,
    sample_sbm,
    to_pairs,
)
from sbmfrechet.metrics import effective_resistance, effective_resistance_combinatorial, hamming
from sbmfrechet.theory import predicted_mean_resistance

from conftest import adjacency, random_connected


def f2_expansion(b, sample):
    """Squared Hamming distance through the edge/non-edge expansion, averaged."""
    x = to_pairs(b).astype(bool)
    m = x.sum()
    total = 0.0
    for a in sample:
        y = to_pairs(a).astype(float)
        on, off = y[x].sum(), y[~x].sum()
        total += m * m + 2 * m * (off - on) - 4 * off * on + y.sum() ** 2
    return total / sample.N


def decomposition_by_loops(b, sample):
    """Dominant term and residual summed explicitly over pair-of-pairs."""
    n = sample.n
    pairs = list(itertools.combinations(range(n), 2))
    mom = sample_moments(sample)
    ph = {pr: mom.phat[pr] for pr in pairs}
    E = [pr for pr in pairs if b[pr]]
    Ebar = [pr for pr in pairs if not b[pr]]
    d = sum(ph.values()) + sum(b[pr] for pr in pairs) - 2 * sum(b[pr] * ph[pr] for pr in pairs)
    full = sum(ph[u] * ph[v] - mom.rho(*u, *v) for u in pairs for v in pairs)
    cross = sum(ph[u] * ph[v] - mom.rho(*u, *v) for u in Ebar for v in E)
    return d * d - full, 4 * cross


def random_binary(rng, n, density=0.5):
    x = (rng.random(n * (n - 1) // 2) < density).astype(np.int8)
    return from_pairs(x, n)


class TestFrechetFunctions:
    def test_single_network(self, path3):
        s = NetworkSample.from_list([path3])
        assert frechet_function_hamming(path3, s) == 0
        assert frechet_function_median(path3, s) == 0

    def test_two_point_sample(self, empty3, k3):
        s = NetworkSample.from_list([empty3, k3])
        assert frechet_function_hamming(empty3, s) == pytest.approx(4.5)
        assert frechet_function_hamming(k3, s) == pytest.approx(4.5)
        assert frechet_function_median(empty3, s) == pytest.approx(1.5)

    def test_median_function_is_delta_to_phat(self):
        from sbmfrechet.metrics import delta

        rng = np.random.default_rng(0)
        s = sample_sbm(SbmParams(6, 0.7, 0.2), 15, seed=1)
        ph = sample_moments(s).phat
        for _ in range(20):
            b = random_binary(rng, 6)
            assert frechet_function_median(b, s) == pytest.approx(delta(b, ph))

    def test_dimension_mismatch(self, path3):
        s = NetworkSample.from_list([empty_graph(4)])
        with pytest.raises(GraphError):
            frechet_function_hamming(path3, s)


class TestMajorityMedian:
    def test_single(self, path3):
        assert np.array_equal(majority_median(NetworkSample.from_list([path3])), path3)

    def test_tie_keeps_edge(self, empty3, k3):
        assert np.array_equal(majority_median(NetworkSample.from_list([empty3, k3])), k3)

    def test_minority_edge_dropped(self, empty3):
        one = adjacency(3, [(0, 1)]).astype(int)
        med = majority_median(NetworkSample.from_list([one, empty3, empty3]))
        assert med[0, 1] == 0

    def test_minimizes_median_function(self):
        rng = np.random.default_rng(2)
        for n in (3, 4, 5):
            for trial in range(4):
                s = NetworkSample.from_list([random_binary(rng, n, rng.uniform(0.2, 0.8)) for _ in range(7)])
                med = majority_median(s)
                best = min(frechet_function_median(from_pairs(c, n), s) for c in enumerate_graphs(n))
                assert frechet_function_median(med, s) == pytest.approx(best)


class TestDecomposition:
    def test_identity_small(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            n = int(rng.integers(2, 11))
            N = int(rng.integers(1, 51))
            s = NetworkSample.from_list([random_binary(rng, n, rng.uniform(0.1, 0.9)) for _ in range(N)])
            b = random_binary(rng, n)
            dec = decompose_frechet(b, s)
            assert abs(dec.identity_gap) <= 1e-9 * max(1.0, dec.f2)
            assert dec.f2 == pytest.approx(frechet_function_hamming(b, s), abs=1e-9)

    def test_against_expansion_and_loops(self):
        rng = np.random.default_rng(4)
        s = sample_sbm(SbmParams(4, 0.6, 0.3), 5, seed=17)
        for _ in range(5):
            b = random_binary(rng, 4)
            dec = decompose_frechet(b, s)
            assert dec.f2 == pytest.approx(f2_expansion(b, s), abs=1e-12)
            fhat, zeta = decomposition_by_loops(b, s)
            assert dec.fhat == pytest.approx(fhat, abs=1e-12)
            assert dec.zeta == pytest.approx(zeta, abs=1e-12)

    def test_single_network(self, path3):
        dec = decompose_frechet(path3, NetworkSample.from_list([path3]))
        assert dec.f2 == 0
        assert dec.fhat == pytest.approx(-dec.zeta)

    def test_on_demand_rho(self):
        s = sample_sbm(SbmParams(8, 0.6, 0.2), 30, seed=5)
        b = majority_median(s)
        dense = decompose_frechet(b, s)
        lazy = decompose_frechet(b, s, sample_moments(s, dense_cap=0))
        assert lazy.fhat == pytest.approx(dense.fhat, abs=1e-9)
        assert lazy.zeta == pytest.approx(dense.zeta, abs=1e-9)

    def test_large_n_identity(self):
        s = sample_sbm(SbmParams(40, 0.5, 0.1), 10, seed=6)
        b = majority_median(s)
        dec = decompose_frechet(b, s)
        assert abs(dec.identity_gap) <= 1e-9 * max(1.0, dec.f2)


def enumerate_minimizers(sample):
    n = sample.n
    pairs = list(itertools.combinations(range(n), 2))
    best, arg = None, []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        B = np.zeros((n, n), int)
        for (i, j), v in zip(pairs, bits):
            B[i, j] = B[j, i] = v
        f = sum(hamming(B, a) ** 2 for a in sample)
        if best is None or f < best:
            best, arg = f, [B]
        elif f == best:
            arg.append(B)
    return best / sample.N, arg


class TestBruteForce:
    def test_single(self, path3):
        fm = brute_force_frechet_mean(NetworkSample.from_list([path3]))
        assert fm.unique and fm.contains(path3) and fm.value == 0

    def test_two_point_sample(self, empty3, k3):
        s = NetworkSample.from_list([empty3, k3])
        value, arg = enumerate_minimizers(s)
        fm = brute_force_frechet_mean(s)
        # minimizers are the graphs with one or two edges: (1 + 4) / 2
        assert value == pytest.approx(2.5) and len(arg) == 6
        assert fm.value == pytest.approx(value)
        assert len(fm.minimizers) == 6
        assert all(fm.contains(B) for B in arg)

    def test_matches_enumeration(self):
        rng = np.random.default_rng(7)
        for n in (3, 4):
            s = NetworkSample.from_list([random_binary(rng, n) for _ in range(6)])
            value, arg = enumerate_minimizers(s)
            fm = brute_force_frechet_mean(s)
            assert fm.value == pytest.approx(value)
            assert len(fm.minimizers) == len(arg)

    def test_theorem1_small(self):
        params = SbmParams(6, 0.9, 0.1)
        hits = 0
        for t in range(20):
            s = sample_sbm(params, 101, seed=100 + t)
            fm = brute_force_frechet_mean(s)
            hits += fm.unique and fm.contains(majority_median(s))
        assert hits >= 18

    def test_too_large(self):
        with pytest.raises(ValueError):
            brute_force_frechet_mean(NetworkSample.from_list([empty_graph(7)]))

    def test_resistance_metric(self, k3):
        fm = brute_force_frechet_mean(NetworkSample.from_list([k3, k3]), "resistance_sq")
        assert fm.unique and fm.contains(k3)
        assert fm.value == pytest.approx(0.0, abs=1e-12)
        assert fm.n_skipped == 4  # empty graph and the three single edges

    def test_resistance_metric_matches_direct(self, path3, k3):
        from sbmfrechet.metrics import resistance_distance_sq

        s = NetworkSample.from_list([path3, k3, k3])
        fm = brute_force_frechet_mean(s, "resistance_sq")
        conn = [from_pairs(c, 3) for c in enumerate_graphs(3) if c.sum() >= 2]
        vals = [np.mean([resistance_distance_sq(B, a) for a in s]) for B in conn]
        assert fm.value == pytest.approx(min(vals))

    def test_resistance_disconnected_sample(self, empty3, k3):
        with pytest.raises(GraphError):
            brute_force_frechet_mean(NetworkSample.from_list([empty3, k3]), "resistance_sq")

    def test_unknown_metric(self, k3):
        with pytest.raises(ValueError):
            brute_force_frechet_mean(NetworkSample.from_list([k3]), "cosine")


class TestReconstruction:
    def test_k2(self):
        A = adjacency_from_resistance(np.array([[0, 1.0], [1.0, 0]]))
        assert np.allclose(A, [[0, 1], [1, 0]])

    def test_k3(self):
        R = np.full((3, 3), 2 / 3)
        np.fill_diagonal(R, 0)
        assert np.allclose(adjacency_from_resistance(R), complete_graph(3), atol=1e-12)

    def test_predicted_resistance_gives_P(self):
        params = SbmParams(100, 0.5, 0.1)
        A = adjacency_from_resistance(predicted_mean_resistance(params))
        assert np.max(np.abs(A - expected_matrix(params))) <= 1e-6

    def test_round_trip_and_alpha(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            n = int(rng.integers(2, 51))
            A = random_connected(rng, n, density=rng.uniform(0.02, 0.5))
            R = effective_resistance(A)
            A1 = adjacency_from_resistance(R, alpha=1.0)
            A7 = adjacency_from_resistance(R, alpha=7.0)
            assert np.max(np.abs(A1 - A)) <= 1e-8
            assert np.max(np.abs(A7 - A1)) <= 1e-8

    def test_negative_alpha(self, k3):
        R = effective_resistance(k3)
        assert np.allclose(adjacency_from_resistance(R, alpha=-2.5), k3, atol=1e-10)

    def test_zero_alpha(self):
        with pytest.raises(ValueError):
            adjacency_from_resistance(np.array([[0, 1.0], [1.0, 0]]), alpha=0)

    def test_singular(self):
        with pytest.raises(SingularInversionError) as info:
            adjacency_from_resistance(np.zeros((3, 3)))
        assert info.value.condition > 1e14

    def test_not_realizable(self):
        R = np.array([[0, 1.0, 2.0], [1.0, 0, 1.0], [0.5, 1.0, 0]])
        with pytest.raises(NotRealizableError) as info:
            adjacency_from_resistance(R)
        assert info.value.residual > 1e-6


class TestBarycenter:
    def test_single_network(self):
        rng = np.random.default_rng(9)
        A = random_connected(rng, 9, weighted=False)
        res = resistance_barycenter(NetworkSample.from_list([A.astype(int)]))
        assert np.max(np.abs(res.reconstructed - A)) <= 1e-8
        assert res.round_trip_residual <= 1e-10

    def test_identical_copies(self, k3):
        res = resistance_barycenter(NetworkSample.from_list([k3, k3]))
        assert np.allclose(res.reconstructed, k3, atol=1e-10)
        side = res.sidecar()
        assert set(side) == {"alpha", "round_trip_residual", "min_entry", "max_entry"}
        assert side["min_entry"] == pytest.approx(1.0)

    def test_mean_resistance_round_trip(self):
        s = sample_sbm(SbmParams(30, 0.6, 0.2), 8, seed=10)
        res = resistance_barycenter(s)
        back = effective_resistance_combinatorial(res.reconstructed)
        assert np.max(np.abs(back - res.mean_resistance)) <= 1e-6
        Rs = np.mean([effective_resistance(a) for a in s], axis=0)
        assert np.allclose(res.mean_resistance, Rs, atol=1e-13)

    def test_workers_match_serial(self):
        s = sample_sbm(SbmParams(20, 0.6, 0.3), 6, seed=11)
        a = resistance_barycenter(s)
        b = resistance_barycenter(s, workers=3)
        assert np.array_equal(a.mean_resistance, b.mean_resistance)

    def test_disconnected_member(self, k3, empty3):
        with pytest.raises(GraphError):
            resistance_barycenter(NetworkSample.from_list([k3, empty3]))
