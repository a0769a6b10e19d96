"""Largest J minus bound over random separable states, per configuration and theorem.

Every margin must stay at or below zero for the bounds to hold; the script
reports the worst margin seen and how many states came within 1e-3 of a bound.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from sicsep.criteria import bound_thm1, bound_thm2, bound_thm3, bound_thm4, j_bipartite, j_multipartite
from sicsep.sicpovm import build_from_t, conjugate, max_t
from sicsep.states import random_separable, rng_for


@dataclass(frozen=True)
class SweepConfig:
    configs: tuple[tuple[int, ...], ...] = ((2, 2), (2, 3), (3, 3), (2, 2, 2))
    samples: int = 1000
    max_terms: int = 6
    seed: int = 0


def sweep(dims: tuple[int, ...], cfg: SweepConfig) -> dict[str, tuple[float, int]]:
    rng = rng_for(cfg.seed)
    worst: dict[str, float] = {}
    close: dict[str, int] = {}
    for i in range(cfg.samples):
        povms = [build_from_t(d, max_t(d) * rng.uniform(0.1, 1.0)) for d in dims]
        if i % 2 and dims[0] == dims[1] and len(dims) == 2:
            povms[1] = conjugate(povms[0])
        rho = random_separable(dims, 1 + i % cfg.max_terms, cfg.seed * 100_003 + i)
        dd, aa = [p.dim for p in povms], [p.a for p in povms]
        if len(dims) == 2:
            j = j_bipartite(rho, *povms)[0]
            bounds = {"T1": bound_thm1(dd[0], aa[0], dd[1], aa[1]), "T2": bound_thm2(dd[0], aa[0], dd[1], aa[1])}
        else:
            j = j_multipartite(rho, povms)[0]
            bounds = {}
        bounds |= {"T3": bound_thm3(dd, aa), "T4": bound_thm4(dd, aa)}
        for name, b in bounds.items():
            worst[name] = max(worst.get(name, -1.0), j - b)
            close[name] = close.get(name, 0) + (j - b > -1e-3)
    return {k: (worst[k], close[k]) for k in worst}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SweepConfig(samples=args.samples, seed=args.seed)
    print("dims,theorem,worst_margin,within_1e-3")
    for dims in cfg.configs:
        for name, (margin, n) in sweep(dims, cfg).items():
            print(f"{'x'.join(map(str, dims))},{name},{margin:.3e},{n}")


if __name__ == "__main__":
    main()
