"""Schmidt decomposition, numerical Schmidt rank, and the paired normal
form of antisymmetric pure states.

Every antisymmetric vector has a skew-symmetric amplitude matrix A, and a
unitary congruence U^T A U brings it to a direct sum of 2x2 blocks
[[0, c], [-c, 0]] with c >= 0 (plus a zero row and column when d is odd).
The Schmidt coefficients of the state are then the c values, each twice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import DomainError, ToleranceError
from .tensor_core import PureState, _entry_pairs

_ANTISYM_ATOL = 1e-9
_PROJECTION_ZERO_ATOL = 1e-12


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt data of a pure state: coefficients descending and above the
    rank cutoff, matching orthonormal local vectors as columns, and the rank.
    """

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        """Amplitude vector sum_i coeff_i |a_i> x |b_i>."""
        matrix = (self.left_vectors * self.coefficients) @ self.right_vectors.T
        return matrix.ravel()


@dataclass(frozen=True)
class NormalFormResult:
    """Unitary U and pair coefficients of the 2x2-block normal form.

    coefficients[k] sits at positions (2k, 2k+1) of U^T A U; trailing zeros
    stand for rank-deficient pairs. residual records max |U^T A U - N|
    against the ideal block matrix N.
    """

    local_dim: int
    unitary: np.ndarray
    coefficients: np.ndarray
    residual: float

    def normal_form_matrix(self) -> np.ndarray:
        return pair_block_matrix(self.coefficients, self.local_dim)

    def to_normal_basis(self, state: PureState) -> PureState:
        """Rewrite a state in the basis that block-diagonalizes this form.

        Both parties apply the same local transformation; for the state the
        normal form came from, the result is the pair state with these
        coefficients.
        """
        w = self.unitary.T
        return PureState(state.local_dim, np.kron(w, w) @ state.amplitudes)

    def to_json_dict(self) -> dict:
        return {
            "local_dim": self.local_dim,
            "unitary": _entry_pairs(self.unitary),
            "coefficients": [float(c) for c in self.coefficients],
            "residual": float(self.residual),
        }


def pair_block_matrix(coefficients, d: int) -> np.ndarray:
    """The d x d block matrix with [[0, c_k], [-c_k, 0]] on the diagonal."""
    n = np.zeros((d, d), dtype=complex)
    for k, c in enumerate(np.asarray(coefficients, dtype=float)):
        n[2 * k, 2 * k + 1] = c
        n[2 * k + 1, 2 * k] = -c
    return n


def _symmetric_residual(matrix: np.ndarray) -> float:
    """Norm of the symmetric part doubled: || V phi + phi || for amplitudes A."""
    return float(np.linalg.norm(matrix + matrix.T))


def schmidt_decompose(state: PureState, tol: float | None = None) -> SchmidtDecomposition:
    """Schmidt decomposition via the SVD of the amplitude matrix.

    Singular values at or below tol times the largest one count as zero;
    tol defaults to the package rank cutoff.
    """
    if tol is None:
        tol = config.RANK_RTOL
    if tol <= 0:
        raise DomainError(f"rank tolerance must be positive, got {tol!r}")
    matrix = state.amplitude_matrix()
    left, singular, right_h = np.linalg.svd(matrix)
    keep = singular > tol * singular[0]
    rank = int(np.count_nonzero(keep))
    return SchmidtDecomposition(
        coefficients=singular[:rank].copy(),
        left_vectors=left[:, :rank].copy(),
        right_vectors=right_h[:rank, :].T.copy(),
        rank=rank,
    )


def _checked_skew_part(state: PureState) -> np.ndarray:
    matrix = state.amplitude_matrix()
    sym = _symmetric_residual(matrix)
    if sym > _ANTISYM_ATOL:
        raise DomainError(
            f"state is not antisymmetric: || V phi + phi || = {sym:.3e} "
            f"exceeds {_ANTISYM_ATOL:.1e}"
        )
    return (matrix - matrix.T) / 2


def youla_normal_form(state: PureState, tol: float | None = None) -> NormalFormResult:
    """Unitary congruence of an antisymmetric state to paired block form.

    Deflation on the Hermitian matrix A^dag A: its top eigenvalue c^2 yields
    one invariant pair (u, -conj(A) conj(u) / c), which becomes the next two
    columns of U; the pair is split off and the procedure repeats. Blocks
    come out sorted descending in c. Within a degenerate eigenvalue group
    the pair is tied to the lowest original basis index, and each block's
    phase is fixed so its upper-right entry is real nonnegative, making the
    output deterministic.
    """
    if tol is None:
        tol = config.RANK_RTOL
    if tol <= 0:
        raise DomainError(f"rank tolerance must be positive, got {tol!r}")
    d = state.local_dim
    a = _checked_skew_part(state)
    scale = float(np.linalg.norm(a, 2))
    identity = np.eye(d, dtype=complex)

    columns = []
    coefficients = []
    basis = identity.copy()
    while basis.shape[1] >= 2:
        m = basis.shape[1]
        skew = basis.T @ a @ basis
        skew = (skew - skew.T) / 2
        gram = skew.conj().T @ skew
        gram = (gram + gram.conj().T) / 2
        evals, evecs = np.linalg.eigh(gram)
        c = float(np.sqrt(max(evals[-1], 0.0)))
        if c <= tol * scale:
            break
        group = evals >= evals[-1] - max(1e-12, 1e-10 * evals[-1])
        group_proj = evecs[:, group] @ evecs[:, group].conj().T
        u1 = None
        for k in range(d):
            candidate = group_proj @ basis.conj().T[:, k]
            norm = float(np.linalg.norm(candidate))
            if norm > 1e-8:
                u1 = candidate / norm
                break
        if u1 is None:
            raise ToleranceError("no basis vector overlaps the top eigenvalue group")
        full = basis @ u1
        anchor = full[np.argmax(np.abs(full))]
        u1 = u1 * (abs(anchor) / anchor)
        u2 = -(skew.conj() @ u1.conj()) / c
        columns.append(basis @ u1)
        columns.append(basis @ u2)
        coefficients.append(c)
        completed, _ = np.linalg.qr(np.column_stack([u1, u2, np.eye(m)]))
        basis = basis @ completed[:, 2:m]

    for k in range(basis.shape[1]):
        column = basis[:, k]
        anchor = column[np.argmax(np.abs(column))]
        if abs(anchor) > 0:
            column = column * (abs(anchor) / anchor)
        columns.append(column)

    unitary = np.column_stack(columns)
    padded = np.zeros(d // 2)
    padded[: len(coefficients)] = coefficients
    normal = unitary.T @ a @ unitary
    residual = float(np.max(np.abs(normal - pair_block_matrix(padded, d))))
    return NormalFormResult(d, unitary, padded, residual)


def doubling_bound_check(state: PureState) -> tuple[int, int]:
    """Schmidt ranks before and after projecting onto the antisymmetric
    subspace; the projected rank is 0 when the projection vanishes and can
    never exceed twice the original rank.
    """
    rank_before = schmidt_decompose(state).rank
    matrix = state.amplitude_matrix()
    projected = (matrix - matrix.T) / 2
    norm = float(np.linalg.norm(projected))
    if norm <= _PROJECTION_ZERO_ATOL:
        return rank_before, 0
    after = PureState(state.local_dim, projected.ravel() / norm)
    return rank_before, schmidt_decompose(after).rank


def antisymmetric_rank_parity(state: PureState) -> int:
    """Schmidt rank of an antisymmetric state, checked to be even.

    An odd numerical rank is mathematically impossible here and signals a
    misconfigured rank cutoff.
    """
    _checked_skew_part(state)
    rank = schmidt_decompose(state).rank
    if rank % 2 != 0:
        raise ToleranceError(
            f"antisymmetric state produced odd numerical Schmidt rank {rank}; "
            "the rank cutoff is misconfigured for this input"
        )
    return rank
