"""Matrix text files, sample directories and barycenter sidecars.

Matrix format: first line ``n``, then n lines of n space-separated
entries. Binary matrices are written as integers, weighted ones with 17
significant digits (round-trips doubles exactly).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .graph import NetworkSample, SbmParams, as_binary

MANIFEST = "manifest.json"


def format_matrix(a) -> str:
    a = np.asarray(a)
    n = a.shape[0]
    if np.issubdtype(a.dtype, np.integer) or a.dtype == bool:
        rows = (" ".join(str(int(v)) for v in row) for row in a)
    else:
        rows = (" ".join(f"{float(v):.17g}" for v in row) for row in a)
    return f"{n}\n" + "\n".join(rows) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    n = int(lines[0])
    body = lines[1:]
    if len(body) != n:
        raise ValueError(f"expected {n} rows, found {len(body)}")
    tokens = [ln.split() for ln in body]
    if any(len(t) != n for t in tokens):
        raise ValueError(f"every row must have {n} entries")
    flat = [tok for row in tokens for tok in row]
    if all(tok.lstrip("-").isdigit() for tok in flat):
        return np.array(flat, dtype=np.int64).reshape(n, n)
    return np.array(flat, dtype=float).reshape(n, n)


def write_matrix(path, a) -> Path:
    path = Path(path)
    path.write_text(format_matrix(a))
    return path


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_sample(directory, sample: NetworkSample, params: SbmParams | None = None) -> Path:
    """Write ``graph_00000.txt, ...`` plus ``manifest.json`` into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    width = max(5, len(str(sample.N - 1)))
    files = []
    for k, a in enumerate(sample):
        name = f"graph_{k:0{width}d}.txt"
        write_matrix(directory / name, a)
        files.append(name)
    params = params or sample.params
    manifest = {
        "params": None if params is None else {"n": params.n, "p": params.p, "q": params.q},
        "N": sample.N,
        "n": sample.n,
        "seed": sample.seed,
        "files": files,
    }
    (directory / MANIFEST).write_text(json.dumps(manifest, indent=2) + "\n")
    return directory


def read_sample(directory) -> NetworkSample:
    directory = Path(directory)
    manifest_path = directory / MANIFEST
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text())
        files = [directory / f for f in manifest["files"]]
        seed = manifest.get("seed")
        p = manifest.get("params")
        params = SbmParams(**p) if p else None
    else:
        files = sorted(directory.glob("*.txt"))
        seed, params = None, None
    if not files:
        raise FileNotFoundError(f"no matrix files in {directory}")
    nets = [as_binary(read_matrix(f)) for f in files]
    return NetworkSample(np.stack(nets), seed=seed, params=params)


def write_barycenter(directory, result, stem: str = "barycenter") -> tuple[Path, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    mpath = write_matrix(directory / f"{stem}.txt", np.asarray(result.reconstructed, dtype=float))
    spath = directory / f"{stem}.json"
    spath.write_text(json.dumps(result.sidecar(), indent=2) + "\n")
    return mpath, spath
