"""Hill-climb over pure 2x4 states for the largest J with default POVMs.

Used to check whether a three-qubit state can be flagged across the 1|23 cut
when a qubit POVM is paired with a four-level POVM at maximal t.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from sicsep.criteria import bound_thm1, bound_thm2, j_bipartite
from sicsep.matcore import DensityMatrix
from sicsep.sicpovm import conjugate, default_povm
from sicsep.states import rng_for


@dataclass(frozen=True)
class SearchConfig:
    dims: tuple[int, int] = (2, 4)
    starts: int = 50
    iters: int = 400
    conjugate_a: bool = False
    seed: int = 0


def pure_j(x, dims, pa, pb):
    n = dims[0] * dims[1]
    psi = x[:n] + 1j * x[n:]
    psi = psi / np.linalg.norm(psi)
    return j_bipartite(DensityMatrix(dims, np.outer(psi, psi.conj())), pa, pb)[0]


def search(cfg: SearchConfig) -> tuple[float, float, float]:
    pa, pb = default_povm(cfg.dims[0]), default_povm(cfg.dims[1])
    if cfg.conjugate_a:
        pa = conjugate(pa)
    rng = rng_for(cfg.seed)
    n = 2 * cfg.dims[0] * cfg.dims[1]
    best = -1.0
    for _ in range(cfg.starts):
        x = rng.standard_normal(n)
        f, step = pure_j(x, cfg.dims, pa, pb), 0.5
        for _ in range(cfg.iters):
            y = x + step * rng.standard_normal(n)
            g = pure_j(y, cfg.dims, pa, pb)
            if g > f:
                x, f = y, g
            else:
                step *= 0.99
        best = max(best, f)
    d1, d2 = cfg.dims
    return best, bound_thm1(d1, pa.a, d2, pb.a), bound_thm2(d1, pa.a, d2, pb.a)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--starts", type=int, default=50)
    ap.add_argument("--iters", type=int, default=400)
    ap.add_argument("--conjugate-a", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    best, b1, b2 = search(SearchConfig(starts=args.starts, iters=args.iters, conjugate_a=args.conjugate_a, seed=args.seed))
    print(f"best_j={best:.6f} bound_t1={b1:.6f} bound_t2={b2:.6f}")


if __name__ == "__main__":
    main()
