"""Generalized Gell-Mann matrices, normalized to unit Hilbert-Schmidt norm."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DIM = 64


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """Orthonormal traceless Hermitian basis ``F_1..F_{d²-1}`` and their sum."""

    dim: int
    elements: np.ndarray  # shape (d²-1, d, d)
    sum: np.ndarray

    def __len__(self) -> int:
        return len(self.elements)

    def coefficients(self, h) -> np.ndarray:
        """Real expansion coefficients ``Tr(F_α H)`` of a Hermitian ``H``."""
        h = np.asarray(h, dtype=complex)
        return np.real(np.einsum("aij,ji->a", self.elements, h))


@lru_cache(maxsize=None)
def _build(d: int) -> tuple[np.ndarray, np.ndarray]:
    n = d * d - 1
    els = np.zeros((n, d, d), dtype=complex)
    s = 1 / np.sqrt(2)
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    a = 0
    for j, k in pairs:
        els[a, j, k] = els[a, k, j] = s
        a += 1
    for j, k in pairs:
        els[a, j, k] = -1j * s
        els[a, k, j] = 1j * s
        a += 1
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        els[a] = np.diag(diag / np.sqrt(l * (l + 1)))
        a += 1
    # left-to-right accumulation keeps the sum reproducible
    total = np.zeros((d, d), dtype=complex)
    for e in els:
        total = total + e
    els.setflags(write=False)
    total.setflags(write=False)
    return els, total


def gellmann_basis(d: int) -> OperatorBasis:
    """Return the generalized Gell-Mann basis for ``C^d``.

    Ordering: symmetric elements ``(|j⟩⟨k| + |k⟩⟨j|)/√2`` for ``j < k`` in
    lexicographic order, then the antisymmetric ``-i(|j⟩⟨k| - |k⟩⟨j|)/√2`` in
    the same order, then the diagonal elements ``D_1 .. D_{d-1}``.
    """
    if not isinstance(d, (int, np.integer)) or not 2 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in [2, {MAX_DIM}], got {d!r}")
    els, total = _build(int(d))
    return OperatorBasis(int(d), els, total)
