"""
Tests for the distillation and worst-case output searches
"""

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.apps.channels.families import depolarizing_pair, identity_channel, random_channel
from src.apps.channels.service import apply, tensor
from src.apps.entanglement.exceptions import DimensionMismatchError, NotAStateError
from src.apps.entanglement.schemas import SeesawConfig
from src.apps.entanglement.seesaw import (
    rank_two_descent,
    refute_one_copy_undistillability,
    refute_output_distillability,
    worst_case_output_pt,
)
from src.apps.entanglement.service import isotropic_state, maximally_entangled, werner_state
from src.apps.linalg.schemas import BipartiteDims
from src.apps.linalg.service import (
    eigvalsh,
    expectation,
    kron,
    min_eigenvalue,
    partial_transpose,
    projector,
)
from src.common.utils import haar_random_state, random_density, random_isometry_columns, random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)
QUBITS = BipartiteDims.of(2, 2)
QUTRITS = BipartiteDims.of(3, 3)
SMALL = SeesawConfig(restarts=4, max_iters=300)


# ==============================================================================
# One-copy distillation witnesses
# ==============================================================================

def test_bell_state_witness():
    witness = refute_one_copy_undistillability(projector(maximally_entangled(2)), QUBITS, SMALL)
    assert witness is not None
    assert witness.value == pytest.approx(-0.5, abs=1e-9)
    assert witness.schmidt_rank == 2


def test_isotropic_witness():
    rho = isotropic_state(3, 0.5)
    witness = refute_one_copy_undistillability(rho, QUTRITS, SMALL)
    assert witness is not None
    assert witness.value == pytest.approx(-1 / 9, abs=1e-6)
    assert witness.schmidt_rank <= 2
    assert expectation(partial_transpose(rho, QUTRITS), witness.vector) == pytest.approx(witness.value, abs=1e-12)


def test_npt_werner_state_witness():
    witness = refute_one_copy_undistillability(werner_state(0.6), QUBITS, SMALL)
    assert witness is not None
    assert witness.value == pytest.approx((1 - 3 * 0.6) / 4, abs=1e-9)


def test_witness_requires_a_state():
    with pytest.raises(NotAStateError):
        refute_one_copy_undistillability(2 * np.eye(4), QUBITS)


@pytest.mark.parametrize("seed", range(50))
def test_ppt_states_have_no_witness(seed):
    rng = np.random.default_rng(seed)
    d_a, d_b = (2, 2) if seed % 2 else (3, 3)
    weights = rng.dirichlet(np.ones(3))
    rho = sum(w * kron(random_density(d_a, rng), random_density(d_b, rng)) for w in weights)
    assert refute_one_copy_undistillability(rho, BipartiteDims.of(d_a, d_b), SMALL) is None


@given(seed=seeds)
@hypothesis_settings(max_examples=20, deadline=None)
def test_rank_two_descent_never_increases(seed):
    rng = np.random.default_rng(seed)
    m = partial_transpose(random_density(9, rng), QUTRITS)
    right = random_isometry_columns(3, 2, rng)
    short, _, _, _ = rank_two_descent(m, QUTRITS, right, 1, 1e-12)
    longer, psi, _, _ = rank_two_descent(m, QUTRITS, right, 20, 1e-12)
    assert longer <= short + 1e-12
    assert longer >= min_eigenvalue(m) - 1e-12
    assert expectation(m, psi / np.linalg.norm(psi)) == pytest.approx(longer, abs=1e-10)


# ==============================================================================
# Worst-case outputs
# ==============================================================================

def test_identity_worst_case_is_bell():
    result = worst_case_output_pt(identity_channel(4), QUBITS, SMALL)
    assert result.min_value == pytest.approx(-0.5, abs=1e-9)
    assert result.all_converged


def test_worst_case_value_reverifies():
    ch = depolarizing_pair(2, 0.7)
    result = worst_case_output_pt(ch, cfg=SMALL)
    out_pt = partial_transpose(apply(ch, projector(result.worst_input)), ch.dims)
    assert expectation(out_pt, result.output_witness) == pytest.approx(result.min_value, abs=1e-10)


def test_depolarizing_pair_worst_case_matches_closed_form():
    result = worst_case_output_pt(depolarizing_pair(3, 0.5), cfg=SMALL)
    assert -1 / 72 - 1e-9 <= result.min_value <= -1 / 72 + 1e-5


def test_depolarizing_pair_below_binding_value_is_ppt():
    result = worst_case_output_pt(depolarizing_pair(3, 0.25), cfg=SMALL)
    assert result.min_value >= -1e-9


def test_worst_case_start_vector():
    start = maximally_entangled(2)
    result = worst_case_output_pt(identity_channel(4), QUBITS, SMALL.with_overrides(restarts=1), start=start)
    assert result.min_value == pytest.approx(-0.5, abs=1e-9)


def test_worst_case_cut_must_match():
    with pytest.raises(DimensionMismatchError):
        worst_case_output_pt(identity_channel(4), BipartiteDims.of(2, 3), SMALL)


@pytest.mark.parametrize("workers", [2, 4])
def test_worst_case_independent_of_workers(workers):
    ch = depolarizing_pair(2, 0.8)
    serial = worst_case_output_pt(ch, cfg=SMALL)
    threaded = worst_case_output_pt(ch, cfg=SMALL.with_overrides(workers=workers))
    assert threaded.min_value == serial.min_value
    np.testing.assert_array_equal(threaded.worst_input, serial.worst_input)


@given(seed=seeds)
@hypothesis_settings(max_examples=20, deadline=None)
def test_output_pt_minimum_is_concave(seed):
    rng = np.random.default_rng(seed)
    ch = tensor(random_channel(2, 2, rng), random_channel(2, 2, rng))
    rho, sigma = random_density(4, rng), random_density(4, rng)
    t = rng.uniform()

    def value(x):
        return min_eigenvalue(partial_transpose(apply(ch, x), QUBITS))

    assert value(t * rho + (1 - t) * sigma) >= t * value(rho) + (1 - t) * value(sigma) - 1e-12


@given(seed=seeds)
@hypothesis_settings(max_examples=20, deadline=None)
def test_depolarizing_pair_output_is_local_unitary_covariant(seed):
    rng = np.random.default_rng(seed)
    ch = depolarizing_pair(3, rng.uniform(-0.1, 1.0))
    psi = haar_random_state(9, rng)
    rotated = kron(random_unitary(3, rng), random_unitary(3, rng)) @ psi
    np.testing.assert_allclose(
        eigvalsh(partial_transpose(apply(ch, projector(rotated)), QUTRITS)),
        eigvalsh(partial_transpose(apply(ch, projector(psi)), QUTRITS)),
        atol=1e-10,
    )


# ==============================================================================
# Output distillability
# ==============================================================================

def test_identity_output_is_distillable():
    result = refute_output_distillability(identity_channel(9), QUTRITS, SMALL)
    assert result is not None
    assert result.witness.value == pytest.approx(-0.5, abs=1e-9)
    assert result.witness.schmidt_rank == 2


def test_depolarizing_pair_above_threshold_is_distillable():
    ch = depolarizing_pair(3, 0.6)
    result = refute_output_distillability(ch, cfg=SMALL)
    assert result is not None
    out_pt = partial_transpose(apply(ch, projector(result.worst_input)), ch.dims)
    assert expectation(out_pt, result.witness.vector) == pytest.approx(result.witness.value, abs=1e-10)
    assert result.witness.value < 0


def test_depolarizing_pair_below_binding_value_has_no_output_witness():
    assert refute_output_distillability(depolarizing_pair(3, 0.2), cfg=SMALL) is None
