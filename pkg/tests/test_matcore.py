import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from sicsep.matcore import (
    DensityMatrix,
    DensityMatrixError,
    hermitian_eigenvalues,
    hs_inner,
    partial_transpose,
    permute_subsystems,
    tensor_product,
)
from sicsep.states import maximally_entangled, random_density

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_tensor_product_examples():
    assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))
    assert_array_equal(tensor_product(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))
    # σx ⊗ σx has a 1 at [0, 3]: a[0,1] * b[0,1]
    assert tensor_product(SX, SX)[0, 3] == 1


def test_tensor_product_block_convention():
    a = np.arange(6).reshape(2, 3)
    b = np.arange(4).reshape(2, 2) + 10
    k = tensor_product(a, b)
    for i in range(2):
        for j in range(3):
            for r in range(2):
                for c in range(2):
                    assert k[i * 2 + r, j * 2 + c] == a[i, j] * b[r, c]


int_mats = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n).map(
        lambda xs, n=n: np.array(xs, dtype=complex).reshape(n, n)
    )
)


@given(int_mats, int_mats, int_mats)
def test_tensor_product_associative_on_integers(a, b, c):
    assert_array_equal(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c)))


@given(int_mats, int_mats)
def test_trace_is_multiplicative(a, b):
    lhs = np.trace(tensor_product(a, b))
    rhs = np.trace(a) * np.trace(b)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_hs_inner():
    assert hs_inner(np.eye(2), np.eye(2)) == 2
    assert abs(hs_inner(SX / np.sqrt(2), SY / np.sqrt(2))) <= 1e-15
    a = np.array([[1, 2], [0, 1]])
    assert hs_inner(a, a) == 6
    with pytest.raises(ValueError):
        hs_inner(np.eye(2), np.eye(3))


def test_hs_inner_hermitian_is_real():
    rng = np.random.default_rng(0)
    for _ in range(20):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert abs(hs_inner(g + g.conj().T, h + h.conj().T).imag) <= 1e-12


def test_hermitian_eigenvalues():
    assert_allclose(hermitian_eigenvalues(np.eye(3)), [1, 1, 1])
    assert_allclose(hermitian_eigenvalues(SZ), [-1, 1])
    assert_allclose(hermitian_eigenvalues([[2, 1], [1, 2]]), [1, 3], atol=1e-14)
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigenvalues([[0, 1], [0, 0]])


def test_eigenvalue_sum_matches_trace():
    rng = np.random.default_rng(1)
    for n in (2, 5, 16, 64):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = g + g.conj().T
        assert abs(hermitian_eigenvalues(h).sum() - np.trace(h).real) <= 1e-9 * n


def test_partial_transpose_examples():
    rng = np.random.default_rng(2)
    ra = random_density((2,), 2, 1).matrix
    rb = random_density((3,), 3, 2).matrix
    prod = DensityMatrix.from_array(np.kron(ra, rb), (2, 3))
    assert_allclose(partial_transpose(prod, 1), np.kron(ra, rb.T), atol=1e-15)
    bell = maximally_entangled(2)
    assert_allclose(hermitian_eigenvalues(partial_transpose(bell, 1)), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)
    diag = DensityMatrix.from_array(np.diag(rng.dirichlet(np.ones(6))), (2, 3))
    assert_array_equal(partial_transpose(diag, 0), diag.matrix)
    with pytest.raises(IndexError):
        partial_transpose(diag, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 2), (2, 3), (3, 2, 2)]), st.data())
def test_partial_transpose_involution_and_hermitian(seed, dims, data):
    rho = random_density(dims, 2, seed)
    k = data.draw(st.integers(0, len(dims) - 1))
    pt = partial_transpose(rho, k)
    assert np.max(np.abs(pt - pt.conj().T)) <= 1e-15
    again = partial_transpose(DensityMatrix(rho.dims, pt), k)
    assert_array_equal(again, rho.matrix)


def test_permute_subsystems():
    ra = random_density((2,), 2, 3).matrix
    rb = random_density((3,), 3, 4).matrix
    rho = DensityMatrix.from_array(np.kron(ra, rb), (2, 3))
    assert_array_equal(permute_subsystems(rho, [0, 1]).matrix, rho.matrix)
    swapped = permute_subsystems(rho, [1, 0])
    assert swapped.dims == (3, 2)
    assert_allclose(swapped.matrix, np.kron(rb, ra), atol=1e-15)
    assert_array_equal(permute_subsystems(swapped, [1, 0]).matrix, rho.matrix)
    with pytest.raises(ValueError):
        permute_subsystems(rho, [0, 0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.permutations([0, 1, 2]))
def test_permute_preserves_spectrum(seed, perm):
    rho = random_density((2, 3, 2), 4, seed)
    out = permute_subsystems(rho, perm)
    assert abs(np.trace(out.matrix) - 1) <= 1e-12
    assert_allclose(out.eigenvalues(), rho.eigenvalues(), atol=1e-10)


def test_density_validation():
    with pytest.raises(DensityMatrixError, match="trace"):
        DensityMatrix.from_array(0.9 * np.eye(2) / 2)
    with pytest.raises(DensityMatrixError, match="hermiticity"):
        DensityMatrix.from_array([[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(DensityMatrixError, match="positivity"):
        DensityMatrix.from_array([[1.5, 0], [0, -0.5]])
    with pytest.raises(DensityMatrixError, match="shape"):
        DensityMatrix.from_array(np.eye(4) / 4, (2, 3))
    rho = DensityMatrix.from_array(np.eye(6) / 6, (2, 3))
    assert abs(rho.eigenvalues().sum() - 1) <= 1e-8
