"""Maximum-weight selections of index tuples, injective in every coordinate.

Given an m-way nonnegative weight tensor of shape ``(s_1, .., s_m)`` we pick
``d = min s_i`` tuples, no index repeated within a coordinate, maximizing the
summed weight.  For ``m = 2`` this is rectangular bipartite matching and is
solved exactly with the Hungarian method.  For ``m >= 3`` it is the axial
multi-index assignment problem (NP-hard); we provide an exhaustive
branch-and-bound behind a size gate and a greedy/local-search heuristic.

Every solver returns its rows sorted lexicographically, and among optimal
solutions the exact solvers return the lexicographically smallest row list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NEG_TOL = 1e-12
TIE_TOL = 1e-13
MAX_NODES = 10**7


class SearchSpaceTooLarge(RuntimeError):
    def __init__(self, estimate: int, limit: int = MAX_NODES):
        self.estimate = estimate
        super().__init__(f"exact search would visit ~{estimate:.3e} leaves (limit {limit:.0e}); use heuristic mode")


@dataclass(frozen=True)
class Assignment:
    rows: tuple[tuple[int, ...], ...]
    value: float

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def as_weights(w) -> np.ndarray:
    """Validate a weight tensor; tiny negatives from round-off are clamped to 0."""
    w = np.asarray(w, dtype=float)
    if w.ndim < 2:
        raise ValueError(f"weight tensor needs arity >= 2, got shape {w.shape}")
    if w.size == 0:
        raise ValueError("empty weight tensor")
    lo = float(w.min())
    if lo < -NEG_TOL:
        raise ValueError(f"weight tensor has negative entry {lo:.3e}")
    return np.where(w < 0, 0.0, w)


def _finish(w: np.ndarray, rows) -> Assignment:
    rows = tuple(sorted(tuple(int(x) for x in r) for r in rows))
    value = 0.0
    for r in rows:
        value += float(w[r])
    return Assignment(rows, value)


def is_injective(a: Assignment, shape) -> bool:
    if a.size != min(shape):
        return False
    for c, s in enumerate(shape):
        col = [r[c] for r in a.rows]
        if len(set(col)) != len(col) or any(not 0 <= x < s for x in col):
            return False
    return True


# -- arity 2: Hungarian method ------------------------------------------------


def _hungarian(cost: np.ndarray):
    """Min-cost perfect matching on a square matrix via shortest augmenting paths.

    Returns ``(row_to_col, u, v)`` with dual potentials such that
    ``cost[i, j] - u[i] - v[j] >= 0`` everywhere and ``= 0`` on the matching.
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=int)  # p[j]: row (1-based) holding column j
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = cost[i0 - 1] - u[i0] - v[1:]
            upd = free[1:] & (cur < minv[1:])
            minv[1:][upd] = cur[upd]
            way[1:][upd] = j0
            cand = np.where(free, minv, np.inf)
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    row_to_col = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        row_to_col[p[j] - 1] = j - 1
    return row_to_col, u[1:], v[1:]


def _lexmin_tight_matching(tight: np.ndarray, match: np.ndarray, n_rows: int, n_cols: int) -> np.ndarray:
    """Lexicographically smallest perfect matching inside the tight-edge graph.

    ``match`` is any perfect matching of tight edges.  Rows ``< n_rows`` and
    columns ``< n_cols`` are real; the rest are padding.  Rows are fixed in
    order, each to its smallest real column that still admits a perfect
    completion, or to padding when no real column does.
    """
    n = tight.shape[0]
    match = match.copy()
    owner = np.empty(n, dtype=int)
    owner[match] = np.arange(n)
    fixed = np.zeros(n, dtype=bool)
    adj = [np.flatnonzero(tight[i]) for i in range(n)]

    def augment(r: int, seen: np.ndarray) -> bool:
        for j in adj[r]:
            if seen[j]:
                continue
            seen[j] = True
            o = owner[j]
            if o < 0 or (not fixed[o] and augment(o, seen)):
                match[r] = j
                owner[j] = r
                return True
        return False

    for i in range(n_rows):
        fixed[i] = True
        for c in adj[i]:
            if c >= n_cols or c == match[i]:
                break
            o = owner[c]
            if fixed[o]:
                continue
            old_match, old_owner = match.copy(), owner.copy()
            c0 = match[i]
            match[i] = c
            owner[c] = i
            owner[c0] = -1
            seen = np.zeros(n, dtype=bool)
            seen[c] = True
            if augment(o, seen):
                break
            match, owner = old_match, old_owner
    return match


def max_weight_matching(w) -> Assignment:
    """Globally optimal injective pairing of ``min(s1, s2)`` rows and columns."""
    w = as_weights(w)
    if w.ndim != 2:
        raise ValueError(f"max_weight_matching needs a matrix, got arity {w.ndim}")
    s1, s2 = w.shape
    n = max(s1, s2)
    pad = np.zeros((n, n))
    pad[:s1, :s2] = w
    row_to_col, u, v = _hungarian(-pad)
    reduced = -pad - u[:, None] - v[None, :]
    scale = max(1.0, float(pad.max()))
    tight = reduced <= TIE_TOL * scale
    tight[np.arange(n), row_to_col] = True
    match = _lexmin_tight_matching(tight, row_to_col, s1, s2)
    rows = [(i, int(match[i])) for i in range(s1) if match[i] < s2]
    return _finish(w, rows)


# -- arity >= 3: exact branch-and-bound ---------------------------------------


def leaf_estimate(shape) -> int:
    d = min(shape)
    est = math.comb(shape[0], d)
    for s in shape[1:]:
        est *= math.perm(s, d)
    return est


def max_axial_assignment_exact(w, max_nodes: int = MAX_NODES) -> Assignment:
    """Exhaustive branch-and-bound over lexicographically ordered row lists.

    Rows are built in increasing order of their first coordinate, so each
    unordered selection is visited once.  The bound for the open rows is the
    sum of the largest per-slice maxima over the still-unused indices.
    """
    w = as_weights(w)
    shape = w.shape
    m = w.ndim
    d = min(shape)
    est = leaf_estimate(shape)
    if est > max_nodes:
        raise SearchSpaceTooLarge(est, max_nodes)

    best_val = -np.inf
    best_rows: list[tuple[int, ...]] = []
    free = [np.ones(s, dtype=bool) for s in shape]
    rows: list[tuple[int, ...]] = []

    def dfs(start: int, partial: float) -> None:
        nonlocal best_val, best_rows
        remaining = d - len(rows)
        idx = [np.arange(start, shape[0])] + [np.flatnonzero(f) for f in free[1:]]
        sub = w[np.ix_(*idx)]
        if remaining == 1:
            vals = partial + sub.ravel()
            for flat in np.flatnonzero(vals > best_val + TIE_TOL):
                if vals[flat] > best_val + TIE_TOL:
                    best_val = float(vals[flat])
                    pos = np.unravel_index(flat, sub.shape)
                    best_rows = rows + [tuple(int(idx[c][pos[c]]) for c in range(m))]
            return
        slice_max = sub.reshape(sub.shape[0], -1).max(axis=1)
        if partial + np.sort(slice_max)[::-1][:remaining].sum() <= best_val + TIE_TOL:
            return
        # the next row's first index must leave room for the rows after it
        for a in range(shape[0] - remaining + 1 - start):
            i0 = start + a
            rest = sub[a]
            for flat in range(rest.size):
                pos = np.unravel_index(flat, rest.shape)
                tup = (i0,) + tuple(int(idx[c + 1][pos[c]]) for c in range(m - 1))
                rows.append(tup)
                for c in range(1, m):
                    free[c][tup[c]] = False
                dfs(i0 + 1, partial + float(rest[pos]))
                for c in range(1, m):
                    free[c][tup[c]] = True
                rows.pop()

    dfs(0, 0.0)
    return _finish(w, best_rows)


# -- heuristic ----------------------------------------------------------------


def _greedy(w: np.ndarray, order: np.ndarray) -> np.ndarray:
    d = min(w.shape)
    used = [np.zeros(s, dtype=bool) for s in w.shape]
    picked = []
    for flat in order:
        tup = np.unravel_index(flat, w.shape)
        if any(used[c][tup[c]] for c in range(w.ndim)):
            continue
        picked.append(tup)
        for c in range(w.ndim):
            used[c][tup[c]] = True
        if len(picked) == d:
            break
    return np.array(picked, dtype=int)


def _local_search(w: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Pairwise swaps per coordinate, plus swaps with unused indices, until stable."""
    d, m = rows.shape
    vals = np.array([w[tuple(r)] for r in rows])
    improved = True
    while improved:
        improved = False
        for c in range(m):
            for a in range(d):
                for b in range(a + 1, d):
                    ra, rb = rows[a].copy(), rows[b].copy()
                    ra[c], rb[c] = rb[c], ra[c]
                    va, vb = w[tuple(ra)], w[tuple(rb)]
                    if va + vb > vals[a] + vals[b] + TIE_TOL:
                        rows[a], rows[b] = ra, rb
                        vals[a], vals[b] = va, vb
                        improved = True
            if w.shape[c] > d:
                for a in range(d):
                    unused = np.setdiff1d(np.arange(w.shape[c]), rows[:, c])
                    for x in unused:
                        ra = rows[a].copy()
                        ra[c] = x
                        va = w[tuple(ra)]
                        if va > vals[a] + TIE_TOL:
                            rows[a] = ra
                            vals[a] = va
                            improved = True
                            break
    return rows


def max_axial_assignment_heuristic(w, restarts: int = 32, seed: int = 0) -> Assignment:
    """Greedy construction followed by 2-swap local search, best of ``restarts``.

    The first restart uses the plain descending-weight order; later ones
    perturb the greedy order with seeded log-normal noise.  The returned
    value is a lower bound on the exact optimum.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    w = as_weights(w)
    rng = np.random.default_rng(seed)
    flat = w.ravel()
    best: Assignment | None = None
    for r in range(restarts):
        key = flat if r == 0 else flat * np.exp(0.5 * rng.standard_normal(flat.size))
        order = np.argsort(-key, kind="stable")
        rows = _local_search(w, _greedy(w, order))
        cand = _finish(w, rows)
        if (
            best is None
            or cand.value > best.value + TIE_TOL
            or (abs(cand.value - best.value) <= TIE_TOL and cand.rows < best.rows)
        ):
            best = cand
    return best
