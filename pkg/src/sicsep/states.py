"""Benchmark state families, seeded random states, and the JSON state file.

Random generators draw from ``numpy.random.Generator(PCG64(seed))`` so a
seed reproduces the same state on every platform running the same numpy
bit-generator.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .matcore import INTERNAL_TOL, DensityMatrix, DensityMatrixError


class StateFileError(ValueError):
    pass


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def _finalize(m: np.ndarray, dims: Sequence[int]) -> DensityMatrix:
    m = (m + m.conj().T) / 2
    return DensityMatrix.from_array(m, dims, tol=INTERNAL_TOL)


def maximally_entangled(d: int) -> DensityMatrix:
    if d < 2:
        raise ValueError("d must be >= 2")
    psi = np.zeros(d * d, dtype=complex)
    psi[:: d + 1] = 1 / np.sqrt(d)
    return _finalize(np.outer(psi, psi.conj()), (d, d))


def isotropic(d: int, p: float) -> DensityMatrix:
    """``(1-p) I/d² + p |Φ+⟩⟨Φ+|``; separable iff ``p <= 1/(d+1)``."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    return ghz_with_noise(2, d, p)


def ghz_with_noise(m: int, d: int, p: float) -> DensityMatrix:
    if m < 2 or d < 2:
        raise ValueError("need m >= 2 parties of local dimension d >= 2")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    D = d**m
    psi = np.zeros(D, dtype=complex)
    step = sum(d**k for k in range(m))  # index of |i i ... i>
    psi[np.arange(d) * step] = 1 / np.sqrt(d)
    rho = (1 - p) * np.eye(D) / D + p * np.outer(psi, psi.conj())
    return _finalize(rho, (d,) * m)


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    D = int(np.prod(dims))
    return _finalize(np.eye(D, dtype=complex) / D, dims)


def haar_pure_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_separable(dims: Sequence[int], terms: int, seed: int) -> DensityMatrix:
    """Convex mixture of ``terms`` Haar-random product pure states.

    Mixture weights are uniform on the simplex (Dirichlet with all ones).
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = rng_for(seed)
    dims = tuple(int(d) for d in dims)
    weights = rng.dirichlet(np.ones(terms)) if terms > 1 else np.ones(1)
    D = int(np.prod(dims))
    rho = np.zeros((D, D), dtype=complex)
    for pk in weights:
        psi = np.ones(1, dtype=complex)
        for d in dims:
            psi = np.kron(psi, haar_pure_vector(d, rng))
        rho += pk * np.outer(psi, psi.conj())
    return _finalize(rho, dims)


def random_density(dims: Sequence[int], rank: int, seed: int) -> DensityMatrix:
    """Ginibre-ensemble state ``G G† / Tr(G G†)`` with ``G`` of shape ``D × rank``."""
    dims = tuple(int(d) for d in dims)
    D = int(np.prod(dims))
    if not 1 <= rank <= D:
        raise ValueError(f"rank must lie in [1, {D}], got {rank}")
    rng = rng_for(seed)
    g = rng.standard_normal((D, rank)) + 1j * rng.standard_normal((D, rank))
    rho = g @ g.conj().T
    return _finalize(rho / np.trace(rho).real, dims)


def state_to_dict(rho: DensityMatrix, label: str | None = None) -> dict:
    out = {
        "dims": list(rho.dims),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix],
    }
    if label is not None:
        out["label"] = label
    return out


def state_from_dict(data) -> DensityMatrix:
    if not isinstance(data, dict):
        raise StateFileError("state file must hold a JSON object")
    try:
        dims = [int(d) for d in data["dims"]]
        arr = np.asarray(data["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"malformed state record: {exc}") from exc
    if arr.ndim < 2 or arr.shape[-1] != 2:
        raise StateFileError(f"matrix entries must be [re, im] pairs, got array of shape {arr.shape}")
    z = arr[..., 0] + 1j * arr[..., 1]
    if z.ndim == 1:
        n = int(round(np.sqrt(z.size)))
        if n * n != z.size:
            raise DensityMatrixError("shape", f"{z.size} entries do not form a square matrix")
        z = z.reshape(n, n)
    return DensityMatrix.from_array(z, dims)


def save_state(rho: DensityMatrix, path, label: str | None = None) -> None:
    Path(path).write_text(json.dumps(state_to_dict(rho, label)) + "\n")


def load_state(path) -> DensityMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StateFileError(f"cannot parse state file {path}: {exc}") from exc
    return state_from_dict(data)
