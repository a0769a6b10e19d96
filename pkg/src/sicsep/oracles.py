"""Independent checks: the PPT test and exhaustive enumeration of J.

Nothing here reuses the solver path in :mod:`sicsep.assignment` or the
einsum weight construction in :mod:`sicsep.criteria`; weights are formed from
explicit Kronecker products and selections are enumerated outright.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matcore import DensityMatrix, hermitian_eigenvalues, partial_transpose, tensor_all
from .sicpovm import GeneralSicPovm

NPT_TOL = 1e-10
DEFAULT_LIMIT = 10**6


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class PptReport:
    cut: tuple[int, ...]
    min_eigenvalue: float
    npt: bool

    def to_dict(self) -> dict:
        return {"cut": list(self.cut), "min_eigenvalue": self.min_eigenvalue, "npt": self.npt}


def ppt_check(rho: DensityMatrix, cut: int | Sequence[int] = 1) -> PptReport:
    """Partial transpose on the parties in ``cut`` (0-based) and its smallest eigenvalue."""
    cut = (int(cut),) if np.isscalar(cut) else tuple(int(c) for c in cut)
    if not cut or len(set(cut)) != len(cut) or len(cut) >= rho.n_parties:
        raise ValueError(f"invalid cut {list(cut)} for {rho.n_parties} parties")
    lo = float(hermitian_eigenvalues(partial_transpose(rho, cut), tol=1e-8)[0])
    return PptReport(cut, lo, lo < -NPT_TOL)


def explicit_weights(rho: DensityMatrix, povms: Sequence[GeneralSicPovm]) -> np.ndarray:
    """``Tr[(P_{j1} ⊗ .. ⊗ P_{jm}) ρ]`` for every index tuple, one Kronecker product at a time."""
    shape = tuple(len(p) for p in povms)
    w = np.empty(shape)
    for tup in itertools.product(*(range(s) for s in shape)):
        op = tensor_all([povms[i].operators[j] for i, j in enumerate(tup)])
        w[tup] = np.trace(op @ rho.matrix).real
    return w


def injection_count(shape: Sequence[int]) -> int:
    d = min(shape)
    anchor = list(shape).index(d)
    return math.prod(math.perm(s, d) for i, s in enumerate(shape) if i != anchor)


def brute_force_value(w, limit: int = DEFAULT_LIMIT) -> float:
    """Maximum over every injective selection of ``min(shape)`` tuples.

    The smallest coordinate is used in full, so rows are listed in its order
    and the other coordinates range over all ordered injections.
    """
    w = np.asarray(w, dtype=float)
    shape = w.shape
    count = injection_count(shape)
    if count > limit:
        raise EnumerationTooLarge(f"{count} injections exceed the limit {limit}")
    d = min(shape)
    anchor = list(shape).index(d)
    others = [i for i in range(w.ndim) if i != anchor]
    # the anchor coordinate runs 0..d-1 in row order
    w = np.moveaxis(w, anchor, 0)
    last = np.array(list(itertools.permutations(range(shape[others[-1]]), d)), dtype=int).reshape(-1, d)
    rows = np.arange(d)
    best = -np.inf
    for head in itertools.product(*(itertools.permutations(range(shape[i]), d) for i in others[:-1])):
        idx = (rows,) + tuple(np.asarray(h) for h in head)
        sub = w[idx]  # shape (d, s_last)
        vals = sub[rows[None, :], last].sum(axis=1)
        best = max(best, float(vals.max()))
    return best


def brute_force_j(rho: DensityMatrix, povms: Sequence[GeneralSicPovm], limit: int = DEFAULT_LIMIT) -> float:
    if len(povms) != rho.n_parties or any(p.dim != d for p, d in zip(povms, rho.dims)):
        raise ValueError(f"POVM dimensions {[p.dim for p in povms]} do not match state dims {list(rho.dims)}")
    shape = tuple(len(p) for p in povms)
    count = injection_count(shape)
    if count > limit:
        raise EnumerationTooLarge(f"{count} injections exceed the limit {limit}")
    return brute_force_value(explicit_weights(rho, povms), limit)
