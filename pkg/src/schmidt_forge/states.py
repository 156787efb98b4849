"""Constructors for the state families used throughout the package.

The central objects are pair-correlated antisymmetric states: for even
local dimension d the vector with coefficient c_mu on the antisymmetric
pair (|mu, mu+1> - |mu+1, mu>) for odd mu, and mixtures of such states
with the normalized symmetric projector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import DomainError, StructuralError
from .tensor_core import (
    BipartiteOperator,
    PureState,
    symmetric_projector,
    _require_local_dim,
)

# Sum of squared pair coefficients for a normalized pair state: each c_mu
# appears on two amplitudes, so sum c_mu^2 = 1/2.
_COEFF_SQUARE_SUM = 0.5
_COEFF_SUM_ATOL = 1e-12


@dataclass(frozen=True)
class PsiACoefficients:
    """Pair coefficients c_mu >= 0 for odd mu in 1, 3, ..., d-1 (even d).

    values[k] is the coefficient of the pair (2k+1, 2k+2); normalization
    requires sum c_mu^2 = 1/2 within 1e-12.
    """

    local_dim: int
    values: np.ndarray

    def __post_init__(self):
        d = _require_local_dim(self.local_dim, minimum=2)
        if d % 2 != 0:
            raise DomainError(f"pair coefficients need an even local dimension, got {d}")
        v = np.array(self.values, dtype=float).ravel()
        if v.shape != (d // 2,):
            raise StructuralError(f"expected {d // 2} coefficients for d = {d}, got {v.shape[0]}")
        if np.any(v < 0):
            raise DomainError("pair coefficients must be nonnegative")
        total = float(np.sum(v ** 2))
        if abs(total - _COEFF_SQUARE_SUM) > _COEFF_SUM_ATOL:
            raise DomainError(
                f"sum of squared coefficients is {total!r}, expected {_COEFF_SQUARE_SUM} "
                f"within {_COEFF_SUM_ATOL:.1e}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "local_dim", d)
        object.__setattr__(self, "values", v)

    @classmethod
    def equal(cls, local_dim: int) -> "PsiACoefficients":
        """All pairs weighted equally: c_mu = 1/sqrt(d)."""
        d = _require_local_dim(local_dim, minimum=2)
        if d % 2 != 0:
            raise DomainError(f"equal pair coefficients need an even local dimension, got {d}")
        return cls(d, np.full(d // 2, 1.0 / np.sqrt(d)))

    @classmethod
    def from_unnormalized(cls, local_dim: int, values) -> "PsiACoefficients":
        """Rescale nonnegative weights so the squares sum to 1/2."""
        v = np.asarray(values, dtype=float).ravel()
        total = float(np.sum(v ** 2))
        if total <= 0.0:
            raise DomainError("cannot normalize all-zero coefficients")
        return cls(local_dim, v * np.sqrt(_COEFF_SQUARE_SUM / total))

    def site_factors(self) -> np.ndarray:
        """Per-site diagonal t with t_mu = t_{mu+1} = sqrt(c_mu) d^(1/4)."""
        d = self.local_dim
        t = np.repeat(np.sqrt(self.values), 2) * d ** 0.25
        return t


def max_entangled(d: int) -> PureState:
    """Uniform diagonal superposition sum_i |i,i> / sqrt(d)."""
    d = _require_local_dim(d, minimum=2)
    v = np.zeros(d * d)
    for i in range(d):
        v[i * d + i] = 1.0 / np.sqrt(d)
    return PureState(d, v)


def isotropic_state(d: int, fraction: float) -> BipartiteOperator:
    """Mixture of the maximally entangled projector with the normalized
    projector onto its orthogonal complement.

    fraction is the resulting overlap with the maximally entangled state
    and may take any value in [0, 1].
    """
    d = _require_local_dim(d, minimum=2)
    f = float(fraction)
    if not 0.0 <= f <= 1.0:
        raise DomainError(f"entanglement fraction must lie in [0, 1], got {f!r}")
    proj = max_entangled(d).projector().entries
    m = f * proj + (1.0 - f) * (np.eye(d * d) - proj) / (d ** 2 - 1)
    return BipartiteOperator(d, m, hermitian=True)


def psi_a(coeffs: PsiACoefficients) -> PureState:
    """Antisymmetric pair state with amplitude c_mu on |mu, mu+1> - |mu+1, mu>."""
    d = coeffs.local_dim
    v = np.zeros(d * d)
    for k, c in enumerate(coeffs.values):
        mu = 2 * k
        v[mu * d + (mu + 1)] = c
        v[(mu + 1) * d + mu] = -c
    return PureState(d, v)


def psi_0a(d: int) -> PureState:
    """Equal-coefficient antisymmetric pair state, Schmidt rank d."""
    return psi_a(PsiACoefficients.equal(d))


def sigma_0(d: int, p) -> BipartiteOperator:
    """Mix the equal-coefficient pair state with the normalized symmetric
    projector: p |psi><psi| + (1 - p) P_S / (d(d+1)/2).
    """
    d = _require_local_dim(d, minimum=2)
    w = float(p)
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"mixing weight must lie in [0, 1], got {w!r}")
    if d % 2 != 0:
        raise DomainError(f"the equal-coefficient pair state needs an even dimension, got {d}")
    d_s = d * (d + 1) // 2
    m = w * psi_0a(d).projector().entries + (1.0 - w) * symmetric_projector(d).entries / d_s
    return BipartiteOperator(d, m, hermitian=True)


def tau_operator(coeffs: PsiACoefficients) -> BipartiteOperator:
    """Diagonal product operator t x t built from the per-site factors.

    It maps psi_0a(d) to psi_a(coeffs) and satisfies sum_i t_i^4 = d.
    """
    t = coeffs.site_factors()
    return BipartiteOperator(coeffs.local_dim, np.diag(np.kron(t, t)), hermitian=True)


def tau_conjugate(op: BipartiteOperator, coeffs: PsiACoefficients) -> BipartiteOperator:
    """Sandwich an operator between tau on both sides: tau M tau."""
    if op.local_dim != coeffs.local_dim:
        raise StructuralError(
            f"operator dimension {op.local_dim} does not match coefficients "
            f"dimension {coeffs.local_dim}"
        )
    scale = np.kron(coeffs.site_factors(), coeffs.site_factors())
    m = scale[:, None] * op.entries * scale[None, :]
    return BipartiteOperator(op.local_dim, m, hermitian=op.hermitian)
