import numpy as np
import pytest
from conftest import random_psd

from schmidt_forge import (
    PsiACoefficients,
    antisymmetric_projector,
    basis_index,
    hermitian_eig,
    isotropic_state,
    max_entangled,
    min_eigenvalue,
    partial_transpose,
    psi_0a,
    psi_a,
    sigma_0,
    swap_operator,
    symmetric_projector,
    tau_conjugate,
    tau_operator,
)
from schmidt_forge.tensor_core import BipartiteOperator
from schmidt_forge.errors import DomainError, StructuralError


def random_coefficients(d, rng):
    return PsiACoefficients.from_unnormalized(d, rng.uniform(0.1, 1.0, size=d // 2))


def test_max_entangled_amplitudes():
    v = max_entangled(2).amplitudes
    np.testing.assert_allclose(v, np.array([1, 0, 0, 1]) / np.sqrt(2))
    overlap = max_entangled(3).amplitudes[basis_index(3, 1, 1)]
    assert overlap == pytest.approx(1 / np.sqrt(3))
    with pytest.raises(DomainError):
        max_entangled(1)


def test_max_entangled_is_swap_invariant():
    for d in range(2, 7):
        v = max_entangled(d).amplitudes
        np.testing.assert_allclose(swap_operator(d).entries @ v, v, atol=1e-15)


def test_isotropic_extremes():
    d = 3
    np.testing.assert_allclose(
        isotropic_state(d, 1.0).entries, max_entangled(d).projector().entries, atol=1e-15
    )
    np.testing.assert_allclose(
        isotropic_state(d, 1 / d ** 2).entries, np.eye(d * d) / d ** 2, atol=1e-16
    )
    for bad in (-0.1, 1.1):
        with pytest.raises(DomainError):
            isotropic_state(d, bad)


def test_isotropic_fraction_and_density_properties():
    rng = np.random.default_rng(23)
    for _ in range(50):
        d = int(rng.integers(2, 7))
        f = float(rng.uniform(0.0, 1.0))
        rho = isotropic_state(d, f)
        psi = max_entangled(d).amplitudes
        measured = float(np.real(psi.conj() @ rho.entries @ psi))
        assert abs(measured - f) <= 1e-12
        assert abs(rho.trace() - 1.0) <= 1e-12
        assert min_eigenvalue(rho) >= -1e-10


def test_psi_a_known_vectors():
    singlet = psi_a(PsiACoefficients(2, [1 / np.sqrt(2)]))
    expected = np.zeros(4)
    expected[basis_index(2, 1, 2)] = 1 / np.sqrt(2)
    expected[basis_index(2, 2, 1)] = -1 / np.sqrt(2)
    np.testing.assert_allclose(singlet.amplitudes, expected)

    np.testing.assert_allclose(
        psi_a(PsiACoefficients(4, [0.5, 0.5])).amplitudes, psi_0a(4).amplitudes
    )


def test_psi_a_is_antisymmetric():
    rng = np.random.default_rng(29)
    for d in (2, 4, 6, 8):
        v = psi_a(random_coefficients(d, rng)).amplitudes
        assert np.max(np.abs(swap_operator(d).entries @ v + v)) <= 1e-12


def test_psi_a_schmidt_values_occur_twice():
    c1, c3 = np.sqrt(3 / 8), np.sqrt(1 / 8)
    state = psi_a(PsiACoefficients(4, [c1, c3]))
    singular = np.linalg.svd(state.amplitude_matrix(), compute_uv=False)
    np.testing.assert_allclose(singular, [c1, c1, c3, c3], atol=1e-15)


def test_coefficient_validation():
    with pytest.raises(DomainError):
        PsiACoefficients(3, [0.5])
    with pytest.raises(StructuralError):
        PsiACoefficients(4, [0.5])
    with pytest.raises(DomainError):
        PsiACoefficients(4, [-0.5, 0.5])
    with pytest.raises(DomainError, match="sum of squared"):
        PsiACoefficients(4, [0.5, 0.6])
    scaled = PsiACoefficients.from_unnormalized(4, [3.0, 1.0])
    assert np.sum(scaled.values ** 2) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        PsiACoefficients.from_unnormalized(4, [0.0, 0.0])
    np.testing.assert_allclose(PsiACoefficients.equal(6).values, np.full(3, 1 / np.sqrt(6)))


def test_psi_0a_matches_stated_amplitudes():
    state = psi_0a(4)
    expected = np.zeros(16)
    for mu in (1, 3):
        expected[basis_index(4, mu, mu + 1)] = 0.5
        expected[basis_index(4, mu + 1, mu)] = -0.5
    np.testing.assert_allclose(state.amplitudes, expected)
    with pytest.raises(DomainError):
        psi_0a(3)


def test_psi_0a_has_full_schmidt_rank():
    for d in (2, 4, 6, 8):
        singular = np.linalg.svd(psi_0a(d).amplitude_matrix(), compute_uv=False)
        assert np.all(singular > 1e-12)
        np.testing.assert_allclose(singular, np.full(d, 1 / np.sqrt(d)), atol=1e-15)


def test_sigma_0_limits_and_errors():
    d = 4
    d_s = d * (d + 1) // 2
    np.testing.assert_allclose(
        sigma_0(d, 0.0).entries, symmetric_projector(d).entries / d_s, atol=1e-16
    )
    np.testing.assert_allclose(
        sigma_0(d, 1.0).entries, psi_0a(d).projector().entries, atol=1e-16
    )
    for bad in (-0.01, 1.01):
        with pytest.raises(DomainError):
            sigma_0(d, bad)
    with pytest.raises(DomainError):
        sigma_0(5, 0.1)


def test_sigma_0_is_a_density_operator_with_pinned_antisymmetric_part():
    rng = np.random.default_rng(31)
    for _ in range(10):
        d = int(rng.choice([2, 4, 6]))
        p = float(rng.uniform(0.0, 1.0))
        rho = sigma_0(d, p)
        assert abs(rho.trace() - 1.0) <= 1e-12
        assert np.max(np.abs(rho.entries - rho.entries.conj().T)) <= 1e-12
        assert min_eigenvalue(rho) >= -1e-10
        p_a = antisymmetric_projector(d).entries
        pinned = p_a @ rho.entries @ p_a
        target = p * psi_0a(d).projector().entries
        assert np.max(np.abs(pinned - target)) <= 1e-12


def test_sigma_0_ppt_threshold_sides():
    assert min_eigenvalue(partial_transpose(sigma_0(6, 0.125))) >= -1e-10
    assert min_eigenvalue(partial_transpose(sigma_0(6, 0.13))) < -1e-4


def test_tau_equal_coefficients_is_identity():
    np.testing.assert_allclose(
        tau_operator(PsiACoefficients.equal(4)).entries, np.eye(16), atol=1e-14
    )


def test_tau_site_factors():
    coeffs = PsiACoefficients(4, [np.sqrt(3 / 8), np.sqrt(1 / 8)])
    t = coeffs.site_factors()
    assert np.sum(t ** 4) == pytest.approx(4.0, abs=1e-12)
    rng = np.random.default_rng(37)
    for d in (4, 6, 8):
        t = random_coefficients(d, rng).site_factors()
        assert np.sum(t ** 4) == pytest.approx(d, abs=1e-12)


def test_tau_maps_equal_state_to_pair_state():
    rng = np.random.default_rng(41)
    for d in (4, 6):
        coeffs = random_coefficients(d, rng)
        mapped = tau_operator(coeffs).entries @ psi_0a(d).amplitudes
        assert np.max(np.abs(mapped - psi_a(coeffs).amplitudes)) <= 1e-12


def test_tau_conjugate_identity_and_dimension_check():
    d = 4
    op = sigma_0(d, 0.1)
    same = tau_conjugate(op, PsiACoefficients.equal(d))
    np.testing.assert_allclose(same.entries, op.entries, atol=1e-14)
    with pytest.raises(StructuralError):
        tau_conjugate(op, PsiACoefficients.equal(6))


def test_tau_conjugate_preserves_symmetric_support():
    rng = np.random.default_rng(43)
    d = 4
    conjugated = tau_conjugate(symmetric_projector(d), random_coefficients(d, rng))
    p_a = antisymmetric_projector(d).entries
    assert np.max(np.abs(p_a @ conjugated.entries @ p_a)) <= 1e-12


def test_tau_conjugate_preserves_psd_and_commutes_with_transpose():
    rng = np.random.default_rng(47)
    d = 4
    coeffs = random_coefficients(d, rng)
    for _ in range(20):
        psd = BipartiteOperator(d, random_psd(d * d, rng), hermitian=True)
        assert min_eigenvalue(tau_conjugate(psd, coeffs)) >= -1e-10
        raw = BipartiteOperator(d, rng.standard_normal((16, 16)))
        left = partial_transpose(tau_conjugate(raw, coeffs)).entries
        right = tau_conjugate(partial_transpose(raw), coeffs).entries
        assert np.max(np.abs(left - right)) <= 1e-12
