import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sicsep.assignment import (
    SearchSpaceTooLarge,
    as_weights,
    is_injective,
    max_axial_assignment_exact,
    max_axial_assignment_heuristic,
    max_weight_matching,
)
from sicsep.oracles import brute_force_value


def brute_lexmin(w):
    """Every injective selection, sorted rows; best value then smallest rows."""
    w = np.asarray(w)
    d = min(w.shape)
    best = None
    for firsts in itertools.combinations(range(w.shape[0]), d):
        for rest in itertools.product(*(itertools.permutations(range(s), d) for s in w.shape[1:])):
            rows = tuple(sorted(zip(firsts, *rest)))
            val = sum(w[r] for r in rows)
            if best is None or val > best[0] + 1e-13 or (abs(val - best[0]) <= 1e-13 and rows < best[1]):
                best = (val, rows)
    return best


def test_matching_examples():
    a = max_weight_matching(np.eye(2))
    assert a.value == 2 and a.rows == ((0, 0), (1, 1))
    # both permutations give 5; the lexicographic rule picks the diagonal
    a = max_weight_matching([[1, 2], [3, 4]])
    assert a.value == 5 and a.rows == ((0, 0), (1, 1))
    a = max_weight_matching([[1, 5, 2]])
    assert a.value == 5 and a.rows == ((0, 1),)


def test_matching_rejects_higher_arity():
    with pytest.raises(ValueError):
        max_weight_matching(np.ones((2, 2, 2)))


def test_negative_weights():
    assert as_weights([[-1e-13, 1.0], [0.5, 0.5]])[0, 0] == 0.0
    with pytest.raises(ValueError):
        as_weights([[-1e-6, 1.0], [0.5, 0.5]])


shapes = [(s1, s2) for s1 in range(1, 10) for s2 in range(1, 10) if s1 * s2 <= 81 and min(s1, s2) <= 6]


@pytest.mark.parametrize("shape", shapes)
def test_matching_equals_enumeration(shape):
    rng = np.random.default_rng(hash(shape) % 2**32)
    for _ in range(3):
        w = rng.random(shape)
        if rng.random() < 0.5:
            w = np.round(w * 2) / 2  # force ties
        a = max_weight_matching(w)
        assert is_injective(a, shape)
        assert abs(a.value - brute_force_value(w)) <= 1e-12


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32), st.booleans())
def test_matching_lexicographic_tie_break(s1, s2, seed, coarse):
    rng = np.random.default_rng(seed)
    w = rng.integers(0, 3, (s1, s2)).astype(float) if coarse else rng.random((s1, s2))
    val, rows = brute_lexmin(w)
    a = max_weight_matching(w)
    assert a.rows == rows
    assert abs(a.value - val) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32))
def test_value_invariant_under_relabeling(n, seed):
    rng = np.random.default_rng(seed)
    w = rng.random((n, n + 1))
    pr, pc = rng.permutation(n), rng.permutation(n + 1)
    a = max_weight_matching(w)
    b = max_weight_matching(w[np.ix_(pr, pc)])
    assert abs(a.value - b.value) <= 1e-12
    mapped = sum(w[pr[i], pc[j]] for i, j in b.rows)
    assert abs(mapped - a.value) <= 1e-12


def test_exact_examples():
    a = max_axial_assignment_exact(np.full((3, 3, 3), 0.25))
    assert a.value == 0.75 and a.rows == ((0, 0, 0), (1, 1, 1), (2, 2, 2))
    diag = np.zeros((4, 4, 4))
    diag[np.arange(4), np.arange(4), np.arange(4)] = 1
    assert max_axial_assignment_exact(diag).value == 4


def test_exact_matches_matching_on_200_matrices():
    rng = np.random.default_rng(11)
    for _ in range(200):
        s1, s2 = rng.integers(1, 6, 2)
        w = rng.random((s1, s2))
        a, b = max_weight_matching(w), max_axial_assignment_exact(w)
        assert a.rows == b.rows and a.value == b.value


@pytest.mark.parametrize("shape", [(2, 3, 3), (3, 3, 3), (4, 4, 4), (3, 4, 2), (2, 2, 2, 2), (3, 2, 3, 2)])
def test_exact_equals_enumeration(shape):
    rng = np.random.default_rng(sum(shape))
    for _ in range(3):
        w = rng.random(shape)
        val, rows = brute_lexmin(w)
        a = max_axial_assignment_exact(w)
        assert is_injective(a, shape)
        assert a.rows == rows
        assert abs(a.value - val) <= 1e-12


def test_exact_size_gate():
    with pytest.raises(SearchSpaceTooLarge) as info:
        max_axial_assignment_exact(np.ones((16, 16, 16)))
    assert info.value.estimate > 10**7


def test_heuristic_examples():
    diag = np.zeros((4, 4, 4))
    diag[np.arange(4), np.arange(4), np.arange(4)] = 1
    assert max_axial_assignment_heuristic(diag, 1, 0).value == 4
    rng = np.random.default_rng(3)
    w = rng.random((5, 5, 5))
    assert max_axial_assignment_heuristic(w, 32, 0).value >= max_axial_assignment_heuristic(w, 1, 0).value
    with pytest.raises(ValueError):
        max_axial_assignment_heuristic(w, 0, 0)


def test_heuristic_on_matrices():
    hits = 0
    for seed in range(100):
        w = np.random.default_rng(1000 + seed).random((4, 4))
        h = max_axial_assignment_heuristic(w, restarts=32, seed=seed)
        exact = max_weight_matching(w).value
        assert is_injective(h, w.shape)
        assert h.value <= exact + 1e-12
        hits += abs(h.value - exact) <= 1e-12
    assert hits >= 95


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 3, 3), (4, 4, 4), (2, 4, 3), (3, 3, 2, 2)]), st.integers(0, 2**32))
def test_heuristic_never_beats_exact(shape, seed):
    w = np.random.default_rng(seed).random(shape)
    h = max_axial_assignment_heuristic(w, 8, seed)
    assert is_injective(h, shape)
    assert h.value <= max_axial_assignment_exact(w).value + 1e-12
