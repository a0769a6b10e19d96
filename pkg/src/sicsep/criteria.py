"""Separability bounds from general SIC-POVM correlations, and detection verdicts.

For local POVMs ``P^(1) .. P^(m)`` the correlation functional

    J(ρ) = max Σ_{j=1}^{d} Tr[(P^(1)_{n_j} ⊗ .. ⊗ P^(m)_{n_j}) ρ],   d = min_i d_i²

is maximized over selections that never repeat an outcome of the same party.
Every fully separable state satisfies the additive bound (mean of the pure
state coincidence values) and the pairwise geometric bound; exceeding either
certifies entanglement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .assignment import (
    Assignment,
    as_weights,
    max_axial_assignment_exact,
    max_axial_assignment_heuristic,
    max_weight_matching,
)
from .matcore import DensityMatrix, permute_subsystems, regroup
from .sicpovm import GeneralSicPovm, check_a_range, pure_state_ic

DETECT_SLACK = 1e-12
THEOREMS = ("T1", "T2", "T3", "T4")
MODES = ("exact", "heuristic")


def normalize_theorem(theorem) -> str:
    t = str(theorem).upper()
    if not t.startswith("T"):
        t = "T" + t
    if t not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")
    return t


def _terms(dims: Sequence[int], avals: Sequence[float]) -> list[float]:
    if len(dims) != len(avals):
        raise ValueError(f"{len(dims)} dimensions but {len(avals)} purity parameters")
    if len(dims) < 2:
        raise ValueError("need at least two subsystems")
    for d, a in zip(dims, avals):
        check_a_range(int(d), float(a))
    return [pure_state_ic(int(d), float(a)) for d, a in zip(dims, avals)]


def bound_thm3(dims: Sequence[int], avals: Sequence[float]) -> float:
    terms = _terms(dims, avals)
    return sum(terms) / len(terms)


def bound_thm4(dims: Sequence[int], avals: Sequence[float]) -> float:
    roots = [math.sqrt(x) for x in _terms(dims, avals)]
    return min(roots[i] * roots[j] for i, j in combinations(range(len(roots)), 2))


def bound_thm1(d1: int, a1: float, d2: int, a2: float) -> float:
    return bound_thm3((d1, d2), (a1, a2))


def bound_thm2(d1: int, a1: float, d2: int, a2: float) -> float:
    return bound_thm4((d1, d2), (a1, a2))


def bound_for(theorem: str, povms: Sequence[GeneralSicPovm]) -> float:
    theorem = normalize_theorem(theorem)
    dims = [p.dim for p in povms]
    avals = [p.a for p in povms]
    if theorem in ("T1", "T3"):
        return bound_thm3(dims, avals)
    return bound_thm4(dims, avals)


def _check_dims(rho: DensityMatrix, povms: Sequence[GeneralSicPovm]) -> None:
    if len(povms) != rho.n_parties or any(p.dim != d for p, d in zip(povms, rho.dims)):
        raise ValueError(f"POVM dimensions {[p.dim for p in povms]} do not match state dims {list(rho.dims)}")


def weight_tensor(rho: DensityMatrix, povms: Sequence[GeneralSicPovm]) -> np.ndarray:
    """All joint outcome probabilities ``Tr[(⊗_i P^(i)_{j_i}) ρ]`` as an m-way array."""
    _check_dims(rho, povms)
    m = len(povms)
    letters = iter("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
    out_idx, row_idx, col_idx, ops = [], [], [], []
    for p in povms:
        j, a, b = next(letters), next(letters), next(letters)
        ops.append(f"{j}{a}{b}")
        out_idx.append(j)
        row_idx.append(a)
        col_idx.append(b)
    # Tr[(⊗P) ρ] = Σ P[a,b] ρ[b,a] per party
    spec = ",".join(ops) + "," + "".join(col_idx) + "".join(row_idx) + "->" + "".join(out_idx)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    w = np.einsum(spec, *[p.operators for p in povms], t, optimize=True)
    assert w.ndim == m
    return as_weights(w.real)


def j_bipartite(rho: DensityMatrix, pa: GeneralSicPovm, pb: GeneralSicPovm) -> tuple[float, Assignment]:
    if rho.n_parties != 2:
        raise ValueError(f"bipartite J needs a two-party state, got dims {list(rho.dims)}")
    best = max_weight_matching(weight_tensor(rho, [pa, pb]))
    return best.value, best


def j_multipartite(
    rho: DensityMatrix,
    povms: Sequence[GeneralSicPovm],
    mode: str = "exact",
    seed: int = 0,
    restarts: int = 32,
) -> tuple[float, str, Assignment]:
    """J over all parties; ``heuristic`` mode yields a lower bound on J."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    w = weight_tensor(rho, povms)
    if mode == "heuristic":
        best = max_axial_assignment_heuristic(w, restarts=restarts, seed=seed)
    elif w.ndim == 2:
        best = max_weight_matching(w)
    else:
        best = max_axial_assignment_exact(w)
    return best.value, mode, best


@dataclass(frozen=True)
class CriterionVerdict:
    theorem: str
    j_value: float
    j_mode: str
    bound: float
    detected: bool
    assignment: Assignment
    annotation: str = ""

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "j": self.j_value,
            "j_mode": self.j_mode,
            "bound": self.bound,
            "detected": self.detected,
            "assignment": self.assignment.to_list(),
        }
        if self.annotation:
            out["annotation"] = self.annotation
        return out


def _verdict(theorem: str, j: float, mode: str, bound: float, assignment: Assignment) -> CriterionVerdict:
    detected = j > bound + DETECT_SLACK
    note = "inconclusive" if mode == "heuristic" and not detected else ""
    return CriterionVerdict(theorem, j, mode, bound, detected, assignment, note)


def detect_bipartite(
    rho: DensityMatrix, pa: GeneralSicPovm, pb: GeneralSicPovm, theorem: str = "T1"
) -> CriterionVerdict:
    theorem = normalize_theorem(theorem)
    if theorem not in ("T1", "T2"):
        raise ValueError(f"bipartite detection uses T1 or T2, got {theorem}")
    j, assignment = j_bipartite(rho, pa, pb)
    return _verdict(theorem, j, "exact", bound_for(theorem, [pa, pb]), assignment)


def detect_multipartite(
    rho: DensityMatrix,
    povms: Sequence[GeneralSicPovm],
    theorem: str = "T3",
    mode: str = "exact",
    seed: int = 0,
    restarts: int = 32,
) -> CriterionVerdict:
    theorem = normalize_theorem(theorem)
    if theorem not in ("T3", "T4"):
        raise ValueError(f"multipartite detection uses T3 or T4, got {theorem}")
    j, mode, assignment = j_multipartite(rho, povms, mode, seed, restarts)
    return _verdict(theorem, j, mode, bound_for(theorem, povms), assignment)


@dataclass(frozen=True)
class PartitionSpec:
    """Blocks of 0-based party indices covering ``0..n-1``."""

    n: int
    blocks: tuple[tuple[int, ...], ...]
    block_dims: tuple[int, ...] = field(default=())

    @classmethod
    def make(cls, blocks: Sequence[Sequence[int]], dims: Sequence[int]) -> "PartitionSpec":
        blocks = tuple(tuple(int(i) for i in b) for b in blocks)
        n = len(dims)
        flat = [i for b in blocks for i in b]
        if any(len(b) == 0 for b in blocks) or sorted(flat) != list(range(n)):
            raise ValueError(f"blocks {[list(b) for b in blocks]} do not partition parties 0..{n - 1}")
        if len(blocks) < 2:
            raise ValueError("a partition needs at least two blocks")
        block_dims = tuple(math.prod(int(dims[i]) for i in b) for b in blocks)
        return cls(n, blocks, block_dims)

    @classmethod
    def parse(cls, text: str, dims: Sequence[int]) -> "PartitionSpec":
        """Parse ``"1;3,2"`` (1-based party indices, ``;`` within a block, ``,`` between blocks)."""
        try:
            blocks = [[int(tok) - 1 for tok in part.split(";")] for part in text.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad partition spec {text!r}: {exc}") from exc
        return cls.make(blocks, dims)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def permutation(self) -> list[int]:
        return [i for b in self.blocks for i in b]


def group_by_partition(rho: DensityMatrix, partition: PartitionSpec) -> DensityMatrix:
    """Reorder parties so each block is contiguous, then view each block as one party."""
    if partition.n != rho.n_parties:
        raise ValueError(f"partition covers {partition.n} parties but state has {rho.n_parties}")
    return regroup(permute_subsystems(rho, partition.permutation()), partition.block_dims)


def detect_k_nonseparable(
    rho: DensityMatrix,
    partition: PartitionSpec,
    povms: Sequence[GeneralSicPovm],
    theorem: str = "T3",
    mode: str = "exact",
    seed: int = 0,
    restarts: int = 32,
) -> CriterionVerdict:
    """Detection with respect to a fixed grouping of parties into ``k`` blocks.

    ``detected`` certifies that ``rho`` is not a mixture of states factoring
    across the given blocks.
    """
    if len(povms) != partition.k or any(p.dim != d for p, d in zip(povms, partition.block_dims)):
        raise ValueError(
            f"POVM dimensions {[p.dim for p in povms]} do not match block dims {list(partition.block_dims)}"
        )
    grouped = group_by_partition(rho, partition)
    theorem = normalize_theorem(theorem)
    if theorem in ("T1", "T2"):
        if partition.k != 2:
            raise ValueError(f"{theorem} needs a two-block partition, got {partition.k} blocks")
        return detect_bipartite(grouped, povms[0], povms[1], theorem)
    return detect_multipartite(grouped, povms, theorem, mode, seed, restarts)
