"""
Tests for the tensor and spectral kernel
"""

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.apps.linalg.exceptions import DimensionMismatchError, NotHermitianError, NotNormalizedError
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import (
    eigh,
    eigvalsh,
    expectation,
    is_psd,
    kron,
    kron_all,
    min_eigenpair,
    partial_trace,
    partial_transpose,
    partial_transpose_multi,
    permute_subsystems,
    projector,
    schmidt_decompose,
)
from src.common.utils import haar_random_state, random_density, random_hermitian, random_unitary
from src.common.validators import is_hermitian

seeds = st.integers(min_value=0, max_value=2**32 - 1)
QUBITS = BipartiteDims.of(2, 2)
QUTRITS = BipartiteDims.of(3, 3)


def bell(d: int = 2) -> np.ndarray:
    return np.eye(d).reshape(-1) / np.sqrt(d)


def cubic_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a 3x3 Hermitian matrix (trigonometric solution)."""
    q = np.trace(a).real / 3
    p1 = abs(a[0, 1]) ** 2 + abs(a[0, 2]) ** 2 + abs(a[1, 2]) ** 2
    p2 = sum((a[i, i].real - q) ** 2 for i in range(3)) + 2 * p1
    p = np.sqrt(p2 / 6)
    b = (a - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(b).real / 2, -1.0, 1.0)
    phi = np.arccos(r) / 3
    largest = q + 2 * p * np.cos(phi)
    smallest = q + 2 * p * np.cos(phi + 2 * np.pi / 3)
    return np.sort([smallest, 3 * q - largest - smallest, largest])


# ==============================================================================
# kron
# ==============================================================================

def test_kron_identity():
    np.testing.assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_diagonal():
    np.testing.assert_allclose(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))


@given(seed=seeds)
@hypothesis_settings(max_examples=25, deadline=None)
def test_kron_matches_index_formula(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    expected = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    expected[i * 3 + k, j * 3 + l] = a[i, j] * b[k, l]
    assert np.max(np.abs(kron(a, b) - expected)) <= 1e-12


@given(seed=seeds)
@hypothesis_settings(max_examples=25, deadline=None)
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_hermitian(2, rng) for _ in range(3))
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)
    np.testing.assert_allclose(kron_all(a, b, c), kron(a, kron(b, c)), atol=1e-12)


# ==============================================================================
# Partial transpose
# ==============================================================================

def test_partial_transpose_bell_is_half_swap():
    swap = np.eye(4)[[0, 2, 1, 3]]
    pt = partial_transpose(projector(bell()), QUBITS)
    np.testing.assert_allclose(pt, swap / 2, atol=1e-15)
    assert eigvalsh(pt)[0] == pytest.approx(-0.5, abs=1e-12)


def test_partial_transpose_of_product():
    rng = np.random.default_rng(7)
    rho, sigma = random_density(2, rng), random_density(3, rng)
    dims = BipartiteDims.of(2, 3)
    np.testing.assert_allclose(partial_transpose(kron(rho, sigma), dims), kron(rho, sigma.T), atol=1e-14)
    np.testing.assert_allclose(partial_transpose(kron(rho, sigma), dims, "A"), kron(rho.T, sigma), atol=1e-14)


@given(seed=seeds)
@hypothesis_settings(max_examples=50, deadline=None)
def test_partial_transpose_involution_and_invariants(seed):
    rng = np.random.default_rng(seed)
    m = random_hermitian(9, rng)
    pt = partial_transpose(m, QUTRITS)
    assert np.max(np.abs(partial_transpose(pt, QUTRITS) - m)) <= 1e-14
    np.testing.assert_allclose(pt, pt.conj().T, atol=1e-14)
    assert np.trace(pt) == pytest.approx(np.trace(m), abs=1e-12)


@given(seed=seeds)
@hypothesis_settings(max_examples=50, deadline=None)
def test_partial_transpose_spectrum_local_unitary_invariant(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(9, rng)
    local = kron(random_unitary(3, rng), random_unitary(3, rng))
    rotated = local @ rho @ local.conj().T
    np.testing.assert_allclose(
        eigvalsh(partial_transpose(rotated, QUTRITS)),
        eigvalsh(partial_transpose(rho, QUTRITS)),
        atol=1e-10,
    )


def test_partial_transpose_multi_matches_bipartite():
    rng = np.random.default_rng(3)
    m = random_hermitian(12, rng)
    dims = BipartiteDims.of(3, 4)
    np.testing.assert_allclose(partial_transpose_multi(m, [3, 4], [False, True]), partial_transpose(m, dims))
    full = partial_transpose_multi(m, [3, 4], [True, True])
    np.testing.assert_allclose(full, m.T)


def test_partial_transpose_rejects_wrong_side():
    with pytest.raises(DimensionMismatchError):
        partial_transpose(np.eye(5), QUBITS)


# ==============================================================================
# Partial trace and permutations
# ==============================================================================

def test_partial_trace_of_product():
    rng = np.random.default_rng(11)
    rho, sigma = random_density(3, rng), random_hermitian(2, rng)
    dims = BipartiteDims.of(3, 2)
    np.testing.assert_allclose(partial_trace(kron(rho, sigma), dims), rho * np.trace(sigma), atol=1e-14)
    np.testing.assert_allclose(partial_trace(kron(rho, sigma), dims, "A"), sigma, atol=1e-14)


def test_partial_trace_bell_is_maximally_mixed():
    np.testing.assert_allclose(partial_trace(projector(bell(3)), QUTRITS), np.eye(3) / 3, atol=1e-15)


@given(seed=seeds)
@hypothesis_settings(max_examples=25, deadline=None)
def test_partial_trace_preserves_trace_and_is_adjoint_to_kron(seed):
    rng = np.random.default_rng(seed)
    m = random_hermitian(6, rng)
    a = random_hermitian(2, rng)
    dims = BipartiteDims.of(2, 3)
    reduced = partial_trace(m, dims)
    assert abs(np.trace(reduced) - np.trace(m)) <= 1e-12
    assert np.trace(kron(a, np.eye(3)) @ m) == pytest.approx(np.trace(a @ reduced), abs=1e-12)


def test_permute_subsystems_reorders_factors():
    rng = np.random.default_rng(5)
    a, b, c = random_hermitian(2, rng), random_hermitian(3, rng), random_hermitian(2, rng)
    permuted = permute_subsystems(kron_all(a, b, c), [2, 3, 2], [2, 0, 1])
    np.testing.assert_allclose(permuted, kron_all(c, a, b), atol=1e-14)


# ==============================================================================
# Spectra
# ==============================================================================

def test_eigh_diagonal():
    spectrum = eigh(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(spectrum.eigenvalues, [1.0, 2.0, 3.0])


@pytest.mark.parametrize("solver", ["lapack", "jacobi"])
def test_eigh_pauli_x(solver):
    spectrum = eigh(np.array([[0, 1], [1, 0]]), solver)
    np.testing.assert_allclose(spectrum.eigenvalues, [-1.0, 1.0], atol=1e-14)
    # phase fixing makes the first entry real positive
    np.testing.assert_allclose(spectrum.eigenvectors[:, 0], [1 / np.sqrt(2), -1 / np.sqrt(2)], atol=1e-14)


@given(seed=seeds)
@hypothesis_settings(max_examples=50, deadline=None)
def test_eigh_matches_cubic_roots(seed):
    a = random_hermitian(3, np.random.default_rng(seed))
    for solver in ("lapack", "jacobi"):
        np.testing.assert_allclose(eigh(a, solver).eigenvalues, cubic_eigenvalues(a), atol=1e-10)


@pytest.mark.parametrize("solver", ["lapack", "jacobi"])
def test_eigh_reconstruction_and_orthonormality(solver):
    h = random_hermitian(16, np.random.default_rng(2024))
    spectrum = eigh(h, solver)
    v = spectrum.eigenvectors
    assert np.linalg.norm(h - spectrum.reconstruct()) <= 1e-12 * np.linalg.norm(h)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(16), atol=1e-12)
    assert np.all(np.diff(spectrum.eigenvalues) >= 0)


def test_eigh_degenerate_cluster_is_solver_independent():
    swap = np.eye(9)[[3 * (i % 3) + i // 3 for i in range(9)]]
    lapack, jacobi = eigh(swap, "lapack"), eigh(swap, "jacobi")
    np.testing.assert_allclose(lapack.eigenvalues, [-1] * 3 + [1] * 6, atol=1e-12)
    np.testing.assert_allclose(eigh(np.eye(4), "lapack").eigenvectors, eigh(np.eye(4), "jacobi").eigenvectors)
    np.testing.assert_allclose(lapack.eigenvalues, jacobi.eigenvalues, atol=1e-12)


def test_eigh_is_deterministic():
    h = random_hermitian(9, np.random.default_rng(1))
    first, second = eigh(h), eigh(h)
    assert np.array_equal(first.eigenvectors, second.eigenvectors)


def test_is_hermitian_tolerance():
    m = np.array([[1.0, 2.0 + 1e-11j], [2.0, 0.0]])
    assert is_hermitian(m)
    assert not is_hermitian(m, tol=1e-12)
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eigh(np.array([[0, 1], [0, 0]]))


def test_min_eigenpair_and_psd():
    h = np.diag([2.0, -1.0, 0.5])
    value, vector = min_eigenpair(h)
    assert value == pytest.approx(-1.0)
    assert expectation(h, vector) == pytest.approx(-1.0)
    assert not is_psd(h)
    assert is_psd(np.diag([1.0, -1e-12]))


# ==============================================================================
# Schmidt decomposition
# ==============================================================================

def test_schmidt_product_state():
    form = schmidt_decompose([0, 1, 0, 0], QUBITS)
    np.testing.assert_allclose(form.weights, [1.0, 0.0], atol=1e-15)
    assert form.rank == 1


def test_schmidt_bell_state():
    form = schmidt_decompose(bell(), QUBITS)
    np.testing.assert_allclose(form.weights, [0.5, 0.5], atol=1e-15)


@given(seed=seeds)
@hypothesis_settings(max_examples=25, deadline=None)
def test_schmidt_weights_are_reduced_spectrum(seed):
    rng = np.random.default_rng(seed)
    psi = haar_random_state(9, rng)
    form = schmidt_decompose(psi, QUTRITS)
    reduced = partial_trace(projector(psi), QUTRITS)
    np.testing.assert_allclose(form.weights, np.sort(eigvalsh(reduced))[::-1], atol=1e-10)
    assert form.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(form.weights) <= 1e-15)
    np.testing.assert_allclose(form.reassemble(), psi, atol=1e-12)
    np.testing.assert_allclose(form.left_basis.conj().T @ form.left_basis, np.eye(3), atol=1e-12)


def test_schmidt_rank_bounded_by_smaller_factor():
    rng = np.random.default_rng(9)
    form = schmidt_decompose(haar_random_state(8, rng), BipartiteDims.of(2, 4))
    assert form.rank <= 2
    assert form.weights.shape == (2,)


def test_schmidt_rejects_unnormalized():
    with pytest.raises(NotNormalizedError):
        schmidt_decompose([1, 0, 0, 1], QUBITS)
