import numpy as np
import pytest
from conftest import random_antisymmetric_state, random_pure_state

from schmidt_forge import (
    PsiACoefficients,
    PureState,
    antisymmetric_rank_parity,
    basis_index,
    doubling_bound_check,
    max_entangled,
    pair_block_matrix,
    psi_0a,
    psi_a,
    schmidt_decompose,
    youla_normal_form,
)
from schmidt_forge.errors import DomainError


def basis_state(d, i, j):
    v = np.zeros(d * d)
    v[basis_index(d, i, j)] = 1.0
    return PureState(d, v)


def test_product_state_has_rank_one():
    dec = schmidt_decompose(basis_state(3, 1, 1))
    assert dec.rank == 1
    np.testing.assert_allclose(dec.coefficients, [1.0])


def test_max_entangled_has_flat_spectrum():
    for d in (2, 3, 5):
        dec = schmidt_decompose(max_entangled(d))
        assert dec.rank == d
        np.testing.assert_allclose(dec.coefficients ** 2, np.full(d, 1 / d), atol=1e-15)


def test_paired_coefficients_of_pair_state():
    c1, c3 = np.sqrt(3 / 8), np.sqrt(1 / 8)
    dec = schmidt_decompose(psi_a(PsiACoefficients(4, [c1, c3])))
    np.testing.assert_allclose(dec.coefficients, [c1, c1, c3, c3], atol=1e-15)


def test_reconstruction_sweep():
    rng = np.random.default_rng(53)
    for _ in range(100):
        d = int(rng.integers(2, 9))
        state = random_pure_state(d, rng)
        dec = schmidt_decompose(state)
        assert dec.rank <= d
        assert abs(np.sum(dec.coefficients ** 2) - 1.0) <= 1e-10
        assert np.all(np.diff(dec.coefficients) <= 0)
        assert np.max(np.abs(dec.reconstruct() - state.amplitudes)) <= 1e-9
        gram_left = dec.left_vectors.conj().T @ dec.left_vectors
        gram_right = dec.right_vectors.conj().T @ dec.right_vectors
        np.testing.assert_allclose(gram_left, np.eye(dec.rank), atol=1e-12)
        np.testing.assert_allclose(gram_right, np.eye(dec.rank), atol=1e-12)


def test_rank_cutoff_is_relative():
    tiny = 1e-12
    matrix = np.diag([1.0, tiny])
    state = PureState(2, matrix.ravel() / np.linalg.norm(matrix))
    assert schmidt_decompose(state).rank == 1
    assert schmidt_decompose(state, tol=1e-15).rank == 2
    with pytest.raises(DomainError):
        schmidt_decompose(state, tol=0.0)


def test_normal_form_of_singlet():
    result = youla_normal_form(psi_a(PsiACoefficients(2, [1 / np.sqrt(2)])))
    np.testing.assert_allclose(result.coefficients, [1 / np.sqrt(2)], atol=1e-15)
    np.testing.assert_allclose(result.unitary, np.eye(2), atol=1e-14)
    assert result.residual <= 1e-14


def test_normal_form_of_equal_pair_state():
    result = youla_normal_form(psi_0a(4))
    np.testing.assert_allclose(result.coefficients, [0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(result.unitary, np.eye(4), atol=1e-14)
    assert result.residual <= 1e-10


def test_normal_form_rejects_symmetric_admixture():
    with pytest.raises(DomainError, match="not antisymmetric"):
        youla_normal_form(max_entangled(3))


def test_normal_form_random_sweep():
    rng = np.random.default_rng(59)
    for _ in range(30):
        d = int(rng.integers(2, 8))
        state = random_antisymmetric_state(d, rng)
        result = youla_normal_form(state)
        u = result.unitary
        assert np.max(np.abs(u.conj().T @ u - np.eye(d))) <= 1e-10
        a = state.amplitude_matrix()
        transformed = u.T @ a @ u
        assert np.max(np.abs(transformed - result.normal_form_matrix())) <= 1e-9
        assert result.residual <= 1e-9
        assert abs(2 * np.sum(result.coefficients ** 2) - 1.0) <= 1e-10
        assert np.all(result.coefficients >= 0)
        assert np.all(np.diff(result.coefficients) <= 1e-12)


def test_normal_form_matches_schmidt_coefficients():
    rng = np.random.default_rng(61)
    for _ in range(20):
        d = int(rng.integers(2, 8))
        state = random_antisymmetric_state(d, rng)
        paired = np.repeat(youla_normal_form(state).coefficients, 2)
        dec = schmidt_decompose(state)
        assert np.max(np.abs(paired[: dec.rank] - dec.coefficients)) <= 1e-9
        assert np.max(np.abs(paired[dec.rank :]), initial=0.0) <= 1e-9


def test_normal_form_odd_dimension_leaves_zero_line():
    rng = np.random.default_rng(67)
    for _ in range(10):
        state = random_antisymmetric_state(5, rng)
        result = youla_normal_form(state)
        assert result.coefficients.shape == (2,)
        assert np.all(result.coefficients > 1e-3)
        transformed = result.unitary.T @ state.amplitude_matrix() @ result.unitary
        assert np.max(np.abs(transformed[4, :])) <= 1e-9
        assert np.max(np.abs(transformed[:, 4])) <= 1e-9
    block = pair_block_matrix([0.3, 0.2], 5)
    assert block.shape == (5, 5)
    assert np.all(block[4, :] == 0) and np.all(block[:, 4] == 0)


def test_normal_basis_change_recovers_pair_state():
    rng = np.random.default_rng(71)
    for d in (4, 6):
        state = random_antisymmetric_state(d, rng)
        result = youla_normal_form(state)
        target = psi_a(PsiACoefficients.from_unnormalized(d, result.coefficients))
        moved = result.to_normal_basis(state)
        assert np.max(np.abs(moved.amplitudes - target.amplitudes)) <= 1e-9


def test_normal_form_json_fields():
    payload = youla_normal_form(psi_0a(4)).to_json_dict()
    assert set(payload) == {"local_dim", "unitary", "coefficients", "residual"}
    assert payload["coefficients"] == [0.5, 0.5]


def test_doubling_examples():
    assert doubling_bound_check(basis_state(3, 1, 2)) == (1, 2)
    assert doubling_bound_check(basis_state(3, 1, 1)) == (1, 0)


def test_doubling_sweep():
    rng = np.random.default_rng(73)
    for _ in range(100):
        before, after = doubling_bound_check(random_pure_state(6, rng))
        assert after <= 2 * before


def test_rank_parity():
    assert antisymmetric_rank_parity(psi_a(PsiACoefficients(2, [1 / np.sqrt(2)]))) == 2
    assert antisymmetric_rank_parity(psi_0a(6)) == 6
    rng = np.random.default_rng(79)
    for _ in range(20):
        rank = antisymmetric_rank_parity(random_antisymmetric_state(7, rng))
        assert rank % 2 == 0
        assert rank in (2, 4, 6)
    with pytest.raises(DomainError):
        antisymmetric_rank_parity(max_entangled(2))
