"""General SIC-POVMs built from an orthonormal traceless operator basis.

With ``F = Σ_α F_α`` the ``d²`` operators

    P_α     = I/d² + t (F - d(d+1) F_α),   α = 1 .. d²-1
    P_{d²}  = I/d² + t (d+1) F

sum to the identity and have ``Tr P_α² = a = 1/d³ + t²(d-1)(d+1)³`` and
``Tr P_α P_β = (1 - d a) / (d (d² - 1))`` for ``α ≠ β``.  They are positive
only for small enough ``|t|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .gellmann import MAX_DIM, gellmann_basis
from .matcore import DensityMatrix

SUM_TOL = 1e-10
OVERLAP_TOL = 1e-9
PSD_TOL = 1e-10
A_FORMULA_TOL = 1e-10
MIN_T = 1e-12


class SicPovmError(ValueError):
    pass


class PositivityViolation(SicPovmError):
    def __init__(self, index: int, eigenvalue: float, t: float):
        self.index = index
        self.eigenvalue = eigenvalue
        super().__init__(
            f"positivity violated: operator P_{index + 1} has minimum eigenvalue {eigenvalue:.6e} < -{PSD_TOL:g} "
            f"(t = {t!r} is too large)"
        )


class DegenerateParameter(SicPovmError):
    pass


class ParameterRangeError(SicPovmError):
    pass


def a_from_t(d: int, t: float) -> float:
    return 1 / d**3 + t * t * (d - 1) * (d + 1) ** 3


def cross_overlap(d: int, a: float) -> float:
    return (1 - d * a) / (d * (d * d - 1))


def pure_state_ic(d: int, a: float) -> float:
    """Index of coincidence of any pure state, ``(a d² + 1) / (d (d+1))``."""
    return (a * d * d + 1) / (d * (d + 1))


def check_a_range(d: int, a: float) -> None:
    lo, hi = 1 / d**3, 1 / d**2
    if not (a > lo and a <= hi + 1e-12):
        raise ParameterRangeError(f"a = {a!r} outside (1/d^3, 1/d^2] = ({lo!r}, {hi!r}] for d = {d}")


def _check_dim(d) -> int:
    if not isinstance(d, (int, np.integer)) or not 2 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in [2, {MAX_DIM}], got {d!r}")
    return int(d)


@dataclass(frozen=True, eq=False)
class GeneralSicPovm:
    dim: int
    t: float
    a: float
    operators: np.ndarray  # shape (d², d, d)

    def __len__(self) -> int:
        return len(self.operators)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "t": float(self.t),
            "a": float(self.a),
            "operators": [_matrix_to_pairs(p) for p in self.operators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeneralSicPovm":
        try:
            d = int(data["dim"])
            ops = np.array([_pairs_to_matrix(m, d) for m in data["operators"]])
            t, a = float(data["t"]), float(data["a"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SicPovmError(f"malformed POVM record: {exc}") from exc
        if ops.shape != (d * d, d, d):
            raise SicPovmError(f"expected {d * d} operators of side {d}, got array of shape {ops.shape}")
        ops.setflags(write=False)
        return cls(d, t, a, ops)


@lru_cache(maxsize=None)
def _directions(d: int) -> np.ndarray:
    """The traceless parts ``G_α`` with ``P_α = I/d² + t G_α``."""
    basis = gellmann_basis(d)
    g = np.empty((d * d, d, d), dtype=complex)
    g[:-1] = basis.sum[None] - d * (d + 1) * basis.elements
    g[-1] = (d + 1) * basis.sum
    g.setflags(write=False)
    return g


@lru_cache(maxsize=None)
def _direction_min_eigs(d: int) -> np.ndarray:
    return np.linalg.eigvalsh(_directions(d))[:, 0]


def build_from_t(d: int, t: float) -> GeneralSicPovm:
    d = _check_dim(d)
    t = float(t)
    if abs(t) < MIN_T:
        raise DegenerateParameter(f"|t| = {abs(t):.3e} < {MIN_T:g} gives a = 1/d^3, outside the open range")
    if t < 0:
        raise SicPovmError(f"only t > 0 is supported, got {t!r}")
    ops = np.eye(d, dtype=complex)[None] / d**2 + t * _directions(d)
    mins = np.linalg.eigvalsh(ops)[:, 0]
    worst = int(np.argmin(mins))
    if mins[worst] < -PSD_TOL:
        raise PositivityViolation(worst, float(mins[worst]), t)
    ops.setflags(write=False)
    povm = GeneralSicPovm(d, t, a_from_t(d, t), ops)
    check_a_range(d, povm.a)
    res = validate(povm)
    bad = first_violation(res)
    if bad is not None:
        raise SicPovmError(f"constructed POVM fails {bad}: residuals {res}")
    return povm


def build_from_a(d: int, a: float) -> GeneralSicPovm:
    d = _check_dim(d)
    check_a_range(d, a)
    t = math.sqrt(max(a - 1 / d**3, 0.0) / ((d - 1) * (d + 1) ** 3))
    return build_from_t(d, t)


@lru_cache(maxsize=None)
def max_t(d: int, tol: float = 1e-12) -> float:
    """Largest ``t > 0`` for which every operator stays positive semidefinite.

    Bisection on the smallest eigenvalue over all ``d²`` operators.  For
    ``t > 0`` that eigenvalue is ``1/d² + t·λ_min(G_α)``, so the spectra of
    the directions are computed once.
    """
    d = _check_dim(d)
    lam = _direction_min_eigs(d)

    def min_eig(t: float) -> float:
        return float(np.min(1 / d**2 + t * lam))

    lo, hi = 0.0, 1.0
    while min_eig(hi) >= 0:
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if min_eig(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo


@lru_cache(maxsize=None)
def default_povm(d: int) -> GeneralSicPovm:
    """The POVM at ``t = max_t(d)``, i.e. the largest feasible ``a``."""
    return build_from_t(d, max_t(d))


def conjugate(povm: GeneralSicPovm) -> GeneralSicPovm:
    ops = povm.operators.conj()
    ops.setflags(write=False)
    return GeneralSicPovm(povm.dim, povm.t, povm.a, ops)


def _side_check(povm: GeneralSicPovm, rho: DensityMatrix) -> None:
    if rho.side != povm.dim:
        raise ValueError(f"state side {rho.side} does not match POVM dimension {povm.dim}")


def probabilities(povm: GeneralSicPovm, rho: DensityMatrix) -> np.ndarray:
    """Outcome probabilities ``Tr(P_j ρ)``, ``j = 1 .. d²``."""
    _side_check(povm, rho)
    return np.real(np.einsum("aij,ji->a", povm.operators, rho.matrix))


def index_of_coincidence(povm: GeneralSicPovm, rho: DensityMatrix) -> float:
    p = probabilities(povm, rho)
    return float(np.dot(p, p))


def ic_closed_form(d: int, a: float, purity: float) -> float:
    return ((a * d**3 - 1) * purity + d * (1 - a * d)) / (d * (d * d - 1))


def purity_from_ic(povm: GeneralSicPovm, c: float) -> float:
    """Invert the coincidence identity for ``Tr ρ²``."""
    d, a = povm.dim, povm.a
    den = a * d**3 - 1
    if abs(den) <= 1e-12:
        raise DegenerateParameter(f"a d^3 - 1 = {den:.3e}; purity is not recoverable")
    return (c * d * (d * d - 1) - d * (1 - a * d)) / den


def validate(povm: GeneralSicPovm) -> dict:
    """Residuals of the defining conditions.

    Keys: ``identity_sum`` (max entry of ``Σ P - I``), ``self_overlap``
    (max ``|Tr P_α² - a|``), ``cross_overlap`` (max ``|Tr P_α P_β - c|``),
    ``min_eigenvalue`` and ``a_in_range``.
    """
    d, a = povm.dim, povm.a
    ops = np.asarray(povm.operators)
    gram = np.real(np.einsum("aij,bji->ab", ops, ops))
    off = ~np.eye(len(ops), dtype=bool)
    return {
        "identity_sum": float(np.max(np.abs(ops.sum(axis=0) - np.eye(d)))),
        "self_overlap": float(np.max(np.abs(np.diag(gram) - a))),
        "cross_overlap": float(np.max(np.abs(gram[off] - cross_overlap(d, a)))),
        "min_eigenvalue": float(np.min(np.linalg.eigvalsh(ops)[:, 0])),
        "a_in_range": bool(1 / d**3 < a <= 1 / d**2 + 1e-12),
    }


def first_violation(res: dict) -> str | None:
    if res["identity_sum"] > SUM_TOL:
        return "identity-sum"
    if res["self_overlap"] > OVERLAP_TOL:
        return "self-overlap"
    if res["cross_overlap"] > OVERLAP_TOL:
        return "cross-overlap"
    if res["min_eigenvalue"] < -PSD_TOL:
        return "positivity"
    if not res["a_in_range"]:
        return "a-range"
    return None


def _matrix_to_pairs(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _pairs_to_matrix(data, side: int | None = None) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError(f"entries must be [re, im] pairs, got trailing shape {arr.shape}")
    z = arr[..., 0] + 1j * arr[..., 1]
    if z.ndim == 1:
        n = math.isqrt(z.size)
        if n * n != z.size:
            raise ValueError(f"flat entry list of length {z.size} is not a square matrix")
        z = z.reshape(n, n)
    if z.ndim != 2 or (side is not None and z.shape != (side, side)):
        raise ValueError(f"bad matrix shape {z.shape}")
    return z


def save_povm(povm: GeneralSicPovm, path) -> None:
    Path(path).write_text(json.dumps(povm.to_dict()) + "\n")


def load_povm(path) -> GeneralSicPovm:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SicPovmError(f"cannot parse POVM file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SicPovmError(f"POVM file {path} must hold a JSON object")
    return GeneralSicPovm.from_dict(data)
