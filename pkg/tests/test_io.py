import json

import numpy as np

from sbmfrechet.frechet import resistance_barycenter
from sbmfrechet.graph import SbmParams, sample_sbm
from sbmfrechet.io import format_matrix, parse_matrix, read_sample, write_barycenter, write_sample


def test_binary_format(k3):
    text = format_matrix(k3)
    assert text.splitlines() == ["3", "0 1 1", "1 0 1", "1 1 0"]
    assert np.array_equal(parse_matrix(text), k3)


def test_weighted_round_trip():
    rng = np.random.default_rng(0)
    A = np.triu(rng.random((5, 5)), 1)
    A = A + A.T
    B = parse_matrix(format_matrix(A))
    assert B.dtype == float
    assert np.array_equal(A, B)
    # at least 12 significant digits per entry
    assert len(format_matrix(A).splitlines()[1].split()[1].replace("0.", "", 1)) >= 12


def test_sample_directory(tmp_path):
    params = SbmParams(6, 0.7, 0.2)
    s = sample_sbm(params, 4, seed=99)
    write_sample(tmp_path / "s", s)
    manifest = json.loads((tmp_path / "s" / "manifest.json").read_text())
    assert manifest["N"] == 4 and manifest["seed"] == 99
    assert manifest["params"] == {"n": 6, "p": 0.7, "q": 0.2}
    back = read_sample(tmp_path / "s")
    assert np.array_equal(back.networks, s.networks)
    assert back.seed == 99 and back.params == params


def test_barycenter_sidecar(tmp_path, k3):
    from sbmfrechet.graph import NetworkSample

    res = resistance_barycenter(NetworkSample.from_list([k3]))
    mpath, spath = write_barycenter(tmp_path, res)
    side = json.loads(spath.read_text())
    assert set(side) == {"alpha", "round_trip_residual", "min_entry", "max_entry"}
    assert np.allclose(parse_matrix(mpath.read_text()), k3)
