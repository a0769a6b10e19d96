"""Command-line interface.

stdout carries exactly one JSON document (or a CSV table for scans);
diagnostics go to stderr.  Exit status 0 means the command ran, 2 means a
usage or validation error.  Detection outcomes live in the payload only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .assignment import SearchSpaceTooLarge
from .criteria import (
    DETECT_SLACK,
    PartitionSpec,
    bound_thm1,
    bound_thm2,
    detect_bipartite,
    detect_k_nonseparable,
    detect_multipartite,
    j_bipartite,
    normalize_theorem,
)
from .oracles import EnumerationTooLarge, brute_force_j, ppt_check
from .sicpovm import (
    build_from_a,
    build_from_t,
    conjugate,
    default_povm,
    first_violation,
    load_povm,
    max_t,
    save_povm,
    validate,
)
from .states import isotropic, load_state

EXIT_OK = 0
EXIT_ERROR = 2


class UsageError(ValueError):
    pass


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def _default_seed() -> int:
    return int(os.environ.get("SICSEP_SEED", "0"))


def cmd_povm_build(args) -> int:
    if args.max_t:
        povm = build_from_t(args.dim, max_t(args.dim))
    elif args.t is not None:
        povm = build_from_t(args.dim, args.t)
    else:
        povm = build_from_a(args.dim, args.a)
    if args.out:
        save_povm(povm, args.out)
    res = validate(povm)
    _emit({"dim": povm.dim, "t": povm.t, "a": povm.a, "min_eigenvalue": res["min_eigenvalue"]})
    return EXIT_OK


def cmd_povm_validate(args) -> int:
    povm = load_povm(args.path)
    res = validate(povm)
    _emit(res)
    bad = first_violation(res)
    if bad is not None:
        print(f"error: {bad} violation in {args.path}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _checked_povm(path):
    povm = load_povm(path)
    bad = first_violation(validate(povm))
    if bad is not None:
        raise UsageError(f"POVM file {path} fails the {bad} condition")
    return povm


def _resolve_povms(args, dims) -> list:
    if args.povm and args.auto:
        raise UsageError("give either --povm files or --auto, not both")
    if args.povm:
        povms = [_checked_povm(p) for p in args.povm]
        if args.conjugate_b and len(povms) == 1:
            povms = povms * 2
    elif args.auto:
        povms = [default_povm(int(d)) for d in dims]
    else:
        raise UsageError("POVMs required: pass --povm files or --auto")
    if args.conjugate_b:
        if len(dims) != 2 or dims[0] != dims[1]:
            raise UsageError(f"--conjugate-b needs two subsystems of equal dimension, got {list(dims)}")
        povms = [povms[0], conjugate(povms[0])]
    if len(povms) != len(dims) or any(p.dim != d for p, d in zip(povms, dims)):
        raise UsageError(f"POVM dimensions {[p.dim for p in povms]} do not match subsystem dims {list(dims)}")
    return povms


def cmd_detect(args) -> int:
    rho = load_state(args.state)
    theorem = normalize_theorem(args.theorem)
    seed = _default_seed() if args.seed is None else args.seed
    partition = PartitionSpec.parse(args.partition, rho.dims) if args.partition else None
    dims = partition.block_dims if partition else rho.dims
    povms = _resolve_povms(args, dims)
    if theorem in ("T1", "T2") and len(dims) != 2:
        raise UsageError(f"{theorem} applies to two subsystems, got {len(dims)}")
    if partition:
        verdict = detect_k_nonseparable(rho, partition, povms, theorem, args.mode, seed, args.restarts)
    elif theorem in ("T1", "T2"):
        verdict = detect_bipartite(rho, povms[0], povms[1], theorem)
    else:
        verdict = detect_multipartite(rho, povms, theorem, args.mode, seed, args.restarts)
    _emit(verdict.to_dict())
    return EXIT_OK


def scan_rows(d: int, p_start: float, p_end: float, steps: int, a: float | None = None):
    """Yield ``(p, j, bound_t1, bound_t2, detected_t1, detected_t2)`` on a uniform grid."""
    pa = default_povm(d) if a is None else build_from_a(d, a)
    pb = conjugate(pa)
    b1 = bound_thm1(d, pa.a, d, pb.a)
    b2 = bound_thm2(d, pa.a, d, pb.a)
    for i in range(steps):
        p = p_end if i == steps - 1 else p_start + i * (p_end - p_start) / (steps - 1)
        j, _ = j_bipartite(isotropic(d, p), pa, pb)
        yield p, j, b1, b2, j > b1 + DETECT_SLACK, j > b2 + DETECT_SLACK


def cmd_scan_isotropic(args) -> int:
    if not (0 <= args.p_start < args.p_end <= 1):
        raise UsageError(f"need 0 <= p-start < p-end <= 1, got {args.p_start}, {args.p_end}")
    if args.steps < 2:
        raise UsageError("steps must be >= 2")
    rows = ["p,j,bound_t1,bound_t2,detected_t1,detected_t2"]
    for p, j, b1, b2, t1, t2 in scan_rows(args.dim, args.p_start, args.p_end, args.steps, args.a):
        rows.append(f"{p:.12g},{j!r},{b1!r},{b2!r},{str(t1).lower()},{str(t2).lower()}")
    sys.stdout.write("\n".join(rows) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    rho = load_state(args.state)
    if args.ppt:
        try:
            cut = [int(tok) - 1 for tok in args.cut.split(";")]
        except ValueError as exc:
            raise UsageError(f"bad --cut {args.cut!r}") from exc
        rep = ppt_check(rho, cut)
        out = rep.to_dict()
        out["cut"] = [c + 1 for c in rep.cut]
        _emit(out)
    else:
        povms = _resolve_povms(args, rho.dims)
        _emit({"j": brute_force_j(rho, povms, args.limit)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sicsep", description="Entanglement detection with general SIC-POVMs.")
    sub = ap.add_subparsers(dest="command", required=True)

    povm = sub.add_parser("povm", help="build or validate a general SIC-POVM file")
    psub = povm.add_subparsers(dest="povm_command", required=True)
    b = psub.add_parser("build")
    b.add_argument("--dim", type=int, required=True)
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=float)
    g.add_argument("--a", type=float)
    g.add_argument("--max-t", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_povm_build)
    v = psub.add_parser("validate")
    v.add_argument("path")
    v.set_defaults(func=cmd_povm_validate)

    def povm_flags(p):
        p.add_argument("--povm", nargs="+", help="one POVM file per subsystem (or block)")
        p.add_argument("--auto", action="store_true", help="use t = max_t(d) on every subsystem")
        p.add_argument("--conjugate-b", action="store_true", help="second POVM = conjugate of the first")

    det = sub.add_parser("detect", help="evaluate a separability criterion on a state file")
    det.add_argument("--state", required=True)
    det.add_argument("--theorem", required=True, choices=["1", "2", "3", "4", "T1", "T2", "T3", "T4"])
    povm_flags(det)
    det.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    det.add_argument("--seed", type=int)
    det.add_argument("--restarts", type=int, default=32)
    det.add_argument("--partition", help='blocks of 1-based parties, e.g. "1;3,2"')
    det.set_defaults(func=cmd_detect)

    sc = sub.add_parser("scan-isotropic", help="CSV scan of J and both bounds over isotropic noise p")
    sc.add_argument("--dim", type=int, required=True)
    sc.add_argument("--p-start", type=float, default=0.0)
    sc.add_argument("--p-end", type=float, default=1.0)
    sc.add_argument("--steps", type=int, default=101)
    sc.add_argument("--a", type=float)
    sc.set_defaults(func=cmd_scan_isotropic)

    orc = sub.add_parser("oracle", help="independent PPT check or brute-force J")
    which = orc.add_mutually_exclusive_group(required=True)
    which.add_argument("--ppt", action="store_true")
    which.add_argument("--brute-j", action="store_true")
    orc.add_argument("--state", required=True)
    orc.add_argument("--cut", default="2", help='1-based parties to transpose, e.g. "2" or "1;3"')
    povm_flags(orc)
    orc.add_argument("--limit", type=int, default=10**6)
    orc.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SearchSpaceTooLarge, EnumerationTooLarge, OSError) as exc:
        # SicPovmError, DensityMatrixError and StateFileError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
