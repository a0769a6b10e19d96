"""Detection onset of both bipartite bounds on isotropic states versus the PPT onset.

Prints one line per dimension: the analytic threshold 1/(d+1), the first grid
point flagged by each bound, and the first NPT grid point.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from sicsep.cli import scan_rows
from sicsep.oracles import ppt_check
from sicsep.states import isotropic


@dataclass(frozen=True)
class ThresholdConfig:
    dims: tuple[int, ...] = (2, 3, 4, 5)
    steps: int = 501
    a: float | None = None  # None: use the max-t POVM


def first(flags, ps):
    return next((p for f, p in zip(flags, ps) if f), None)


def run(cfg: ThresholdConfig) -> list[dict]:
    results = []
    for d in cfg.dims:
        t0 = time.perf_counter()
        rows = list(scan_rows(d, 0.0, 1.0, cfg.steps, cfg.a))
        ps = [r[0] for r in rows]
        npt = [ppt_check(isotropic(d, p), 1).npt for p in ps]
        results.append(
            {
                "d": d,
                "threshold": 1 / (d + 1),
                "onset_t1": first([r[4] for r in rows], ps),
                "onset_t2": first([r[5] for r in rows], ps),
                "onset_ppt": first(npt, ps),
                "seconds": time.perf_counter() - t0,
            }
        )
    return results


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--steps", type=int, default=501)
    ap.add_argument("--a", type=float)
    args = ap.parse_args()
    cfg = ThresholdConfig(tuple(args.dims), args.steps, args.a)
    print("d,threshold,onset_t1,onset_t2,onset_ppt,seconds")
    for r in run(cfg):
        print(f"{r['d']},{r['threshold']:.6f},{r['onset_t1']},{r['onset_t2']},{r['onset_ppt']},{r['seconds']:.2f}")


if __name__ == "__main__":
    main()
