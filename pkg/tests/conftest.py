"""Shared random-input generators for the test suite."""

import numpy as np

from schmidt_forge import BipartiteOperator, PureState


def random_pure_state(d, rng):
    v = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
    return PureState(d, v / np.linalg.norm(v))


def random_antisymmetric_state(d, rng, real=False):
    m = rng.standard_normal((d, d))
    if not real:
        m = m + 1j * rng.standard_normal((d, d))
    a = (m - m.T) / 2
    return PureState(d, a.ravel() / np.linalg.norm(a))


def random_antisymmetric_density(d, rng, terms=2, real=False):
    weights = rng.uniform(0.2, 1.0, size=terms)
    weights = weights / weights.sum()
    rho = np.zeros((d * d, d * d), dtype=complex)
    for w in weights:
        psi = random_antisymmetric_state(d, rng, real=real)
        rho = rho + w * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return BipartiteOperator(d, rho, hermitian=True)


def random_unitary(d, rng):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(m)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_hermitian(n, rng):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2


def random_psd(n, rng):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return m @ m.conj().T / n
