"""Dense complex-matrix primitives and the validated density-matrix type.

Matrices are plain ``numpy.ndarray`` values (complex128, row-major).  Kronecker
products follow the standard block convention
``(a ⊗ b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

INPUT_TOL = 1e-8
INTERNAL_TOL = 1e-10


class DensityMatrixError(ValueError):
    """A matrix failed one of the density-matrix invariants."""

    def __init__(self, invariant: str, detail: str):
        self.invariant = invariant
        super().__init__(f"{invariant} violation: {detail}")


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def tensor_product(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_all(mats: Sequence) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, as_matrix(m))
    return out


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt pairing ``Tr(a† b)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"hs_inner needs equal square shapes, got {a.shape} and {b.shape}")
    return complex(np.vdot(a, b))


def hermiticity_residual(a) -> float:
    a = as_matrix(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def hermitian_eigenvalues(a, tol: float = INPUT_TOL) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix.

    Raises ``ValueError`` if ``a`` is not square or deviates from its adjoint
    by more than ``tol`` in any entry.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix is not square: {a.shape}")
    res = hermiticity_residual(a)
    if res > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {res:.3e})")
    return np.linalg.eigvalsh((a + a.conj().T) / 2)


def _check_perm(perm: Sequence[int], n: int) -> list[int]:
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"invalid permutation {perm} of {n} parties")
    return perm


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix acting on ``C^{d1} ⊗ ... ⊗ C^{dn}``.

    Construct through :meth:`from_array` to get validation; the bare
    constructor trusts its inputs.
    """

    dims: tuple[int, ...]
    matrix: np.ndarray

    @classmethod
    def from_array(cls, matrix, dims: Sequence[int] | None = None, tol: float = INPUT_TOL) -> "DensityMatrix":
        m = as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise DensityMatrixError("shape", f"matrix is not square: {m.shape}")
        dims = (m.shape[0],) if dims is None else tuple(int(d) for d in dims)
        if not dims or any(d < 2 for d in dims):
            raise DensityMatrixError("shape", f"subsystem dimensions must all be >= 2, got {list(dims)}")
        if int(np.prod(dims)) != m.shape[0]:
            raise DensityMatrixError(
                "shape", f"product of dims {list(dims)} = {int(np.prod(dims))} != matrix side {m.shape[0]}"
            )
        res = hermiticity_residual(m)
        if res > tol:
            raise DensityMatrixError("hermiticity", f"max |rho - rho^dagger| = {res:.3e}")
        tr = np.trace(m)
        if abs(tr - 1) > tol:
            raise DensityMatrixError("trace", f"trace = {tr.real:.12g}")
        lo = np.linalg.eigvalsh((m + m.conj().T) / 2)[0]
        if lo < -tol:
            raise DensityMatrixError("positivity", f"minimum eigenvalue {lo:.3e}")
        m = m.copy()
        m.setflags(write=False)
        return cls(dims, m)

    @property
    def side(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)


def partial_transpose(rho: DensityMatrix, block_index: int | Sequence[int]) -> np.ndarray:
    """Transpose the tensor factor(s) ``block_index`` of ``rho``."""
    n = rho.n_parties
    idx = [block_index] if np.isscalar(block_index) else list(block_index)
    for i in idx:
        if not 0 <= i < n:
            raise IndexError(f"block index {i} out of range for {n} parties")
    t = rho.matrix.reshape(rho.dims + rho.dims)
    axes = list(range(2 * n))
    for i in idx:
        axes[i], axes[n + i] = axes[n + i], axes[i]
    return t.transpose(axes).reshape(rho.side, rho.side)


def permute_subsystems(rho: DensityMatrix, perm: Sequence[int]) -> DensityMatrix:
    """Reorder tensor factors: party ``perm[k]`` of ``rho`` becomes party ``k``.

    Indices are 0-based.
    """
    n = rho.n_parties
    perm = _check_perm(perm, n)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    t = t.transpose(perm + [n + p for p in perm])
    m = np.ascontiguousarray(t.reshape(rho.side, rho.side))
    m.setflags(write=False)
    return DensityMatrix(tuple(rho.dims[p] for p in perm), m)


def regroup(rho: DensityMatrix, dims: Sequence[int]) -> DensityMatrix:
    """Reinterpret the same matrix with a coarser factorization ``dims``."""
    dims = tuple(int(d) for d in dims)
    if int(np.prod(dims)) != rho.side:
        raise ValueError(f"dims {list(dims)} do not multiply to {rho.side}")
    return DensityMatrix(dims, rho.matrix)
