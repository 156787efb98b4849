"""Dense linear algebra on a two-factor d x d space.

Basis layout is fixed package-wide: the product ket |i,j> with 1-based
labels i, j in {1..d} sits at flat index (i-1)*d + (j-1). Vectors have
length d^2 and operators are dense (d^2, d^2) complex arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import DomainError, StructuralError


def _require_local_dim(d, minimum: int = 1) -> int:
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise DomainError(f"local dimension must be an integer, got {d!r}")
    if d < minimum:
        raise DomainError(f"local dimension must be at least {minimum}, got {d}")
    return int(d)


def basis_index(d: int, i: int, j: int) -> int:
    """Flat index of the product ket |i,j> for 1-based labels."""
    d = _require_local_dim(d)
    if not (1 <= i <= d and 1 <= j <= d):
        raise DomainError(f"labels must lie in 1..{d}, got ({i}, {j})")
    return (i - 1) * d + (j - 1)


def _entry_pairs(values: np.ndarray) -> list:
    flat = np.asarray(values, dtype=complex).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def _pairs_to_array(pairs, length: int) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape != (length, 2):
        raise StructuralError(f"expected {length} [re, im] pairs, got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


@dataclass(frozen=True)
class BipartiteOperator:
    """Operator on the two-factor space with a declared local dimension.

    Set hermitian=True only when max |M - M^dag| <= 1e-12; the flag is
    checked at construction and propagated by structure-preserving maps.
    """

    local_dim: int
    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        d = _require_local_dim(self.local_dim)
        m = np.array(self.entries, dtype=complex)
        if m.shape != (d * d, d * d):
            raise StructuralError(
                f"operator for local dimension {d} needs shape {(d * d, d * d)}, got {m.shape}"
            )
        if self.hermitian:
            asym = float(np.max(np.abs(m - m.conj().T)))
            if asym > config.HERMITIAN_FLAG_ATOL:
                raise DomainError(
                    f"hermitian flag set but max |M - M^dag| = {asym:.3e}"
                )
        m.setflags(write=False)
        object.__setattr__(self, "local_dim", d)
        object.__setattr__(self, "entries", m)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def to_json_dict(self) -> dict:
        return {"local_dim": self.local_dim, "entries": _entry_pairs(self.entries)}

    @classmethod
    def from_json_dict(cls, obj: dict, hermitian: bool = False) -> "BipartiteOperator":
        d = _require_local_dim(obj.get("local_dim"))
        flat = _pairs_to_array(obj.get("entries"), d ** 4)
        return cls(d, flat.reshape(d * d, d * d), hermitian=hermitian)


@dataclass(frozen=True)
class PureState:
    """Normalized vector on the two-factor space."""

    local_dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        d = _require_local_dim(self.local_dim)
        v = np.array(self.amplitudes, dtype=complex).ravel()
        if v.shape != (d * d,):
            raise StructuralError(
                f"state for local dimension {d} needs {d * d} amplitudes, got {v.shape[0]}"
            )
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > config.STATE_NORM_ATOL:
            raise DomainError(f"state norm {norm!r} is not 1 within {config.STATE_NORM_ATOL}")
        v.setflags(write=False)
        object.__setattr__(self, "local_dim", d)
        object.__setattr__(self, "amplitudes", v)

    @classmethod
    def normalized(cls, local_dim: int, amplitudes) -> "PureState":
        """Scale the given amplitudes to unit norm, rejecting the zero vector."""
        v = np.asarray(amplitudes, dtype=complex).ravel()
        norm = float(np.linalg.norm(v))
        if norm <= 0.0:
            raise DomainError("cannot normalize the zero vector")
        return cls(local_dim, v / norm)

    def amplitude_matrix(self) -> np.ndarray:
        """Amplitudes as the d x d matrix A with A[i-1, j-1] = <i,j|psi>."""
        d = self.local_dim
        return self.amplitudes.reshape(d, d).copy()

    def projector(self) -> BipartiteOperator:
        return BipartiteOperator(
            self.local_dim, np.outer(self.amplitudes, self.amplitudes.conj()), hermitian=True
        )

    def to_json_dict(self) -> dict:
        return {"local_dim": self.local_dim, "entries": _entry_pairs(self.amplitudes)}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PureState":
        d = _require_local_dim(obj.get("local_dim"))
        return cls(d, _pairs_to_array(obj.get("entries"), d * d))


@dataclass(frozen=True)
class SpectrumResult:
    """Eigendecomposition with ascending eigenvalues and a reconstruction residual."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=float)
        q = np.array(self.eigenvectors, dtype=complex)
        w.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", q)
        object.__setattr__(self, "residual", float(self.residual))


def exchange_from_json_dict(obj: dict):
    """Decode the interchange format, telling vectors from operators by length.

    A document with d^2 entries is a PureState, one with d^4 entries a
    BipartiteOperator.
    """
    if not isinstance(obj, dict):
        raise StructuralError("expected a JSON object with local_dim and entries")
    d = _require_local_dim(obj.get("local_dim"))
    entries = obj.get("entries")
    n = len(entries) if hasattr(entries, "__len__") else -1
    if n == d * d:
        return PureState.from_json_dict(obj)
    if n == d ** 4:
        return BipartiteOperator.from_json_dict(obj)
    raise StructuralError(
        f"entry count {n} matches neither a vector ({d * d}) nor an operator ({d ** 4}) "
        f"at local dimension {d}"
    )


def canonical_json_bytes(obj: dict) -> bytes:
    """Deterministic byte encoding used for digests and file output."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("ascii")


def swap_operator(d: int) -> BipartiteOperator:
    """Exchange operator V with V |i,j> = |j,i>."""
    d = _require_local_dim(d, minimum=2)
    v = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            v[j * d + i, i * d + j] = 1.0
    return BipartiteOperator(d, v, hermitian=True)


def symmetric_projector(d: int) -> BipartiteOperator:
    """Projector (I + V)/2 onto the symmetric subspace, rank d(d+1)/2."""
    d = _require_local_dim(d, minimum=2)
    v = swap_operator(d).entries
    return BipartiteOperator(d, (np.eye(d * d) + v) / 2, hermitian=True)


def antisymmetric_projector(d: int) -> BipartiteOperator:
    """Projector (I - V)/2 onto the antisymmetric subspace, rank d(d-1)/2."""
    d = _require_local_dim(d, minimum=2)
    v = swap_operator(d).entries
    return BipartiteOperator(d, (np.eye(d * d) - v) / 2, hermitian=True)


def symmetric_basis(d: int) -> np.ndarray:
    """Orthonormal basis of the symmetric subspace as the columns of a
    (d^2, d(d+1)/2) isometry B with B B^T = symmetric projector.

    Column order: |i,i> for i = 1..d, then (|i,j> + |j,i>)/sqrt(2) for i < j.
    """
    d = _require_local_dim(d, minimum=2)
    cols = []
    for i in range(d):
        e = np.zeros(d * d)
        e[i * d + i] = 1.0
        cols.append(e)
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros(d * d)
            e[i * d + j] = 1.0 / np.sqrt(2.0)
            e[j * d + i] = 1.0 / np.sqrt(2.0)
            cols.append(e)
    return np.column_stack(cols)


def partial_transpose(op: BipartiteOperator) -> BipartiteOperator:
    """Transpose the second factor: <i,l| M^G |k,j> = <i,j| M |k,l>."""
    d = op.local_dim
    m = op.entries.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)
    return BipartiteOperator(d, m, hermitian=op.hermitian)


def embed_operator(op: BipartiteOperator, d_target: int) -> BipartiteOperator:
    """Pad an operator into a larger local dimension on the first basis vectors."""
    d = op.local_dim
    dt = _require_local_dim(d_target)
    if dt < d:
        raise DomainError(f"target dimension {dt} is smaller than {d}")
    idx = np.array([i * dt + j for i in range(d) for j in range(d)])
    m = np.zeros((dt * dt, dt * dt), dtype=complex)
    m[np.ix_(idx, idx)] = op.entries
    return BipartiteOperator(dt, m, hermitian=op.hermitian)


def _checked_hermitian_part(op: BipartiteOperator) -> np.ndarray:
    m = op.entries
    asym = float(np.max(np.abs(m - m.conj().T)))
    if asym > config.HERMITICITY_ATOL:
        raise DomainError(
            f"operator is not Hermitian: max |M - M^dag| = {asym:.3e} "
            f"exceeds {config.HERMITICITY_ATOL:.1e}"
        )
    return (m + m.conj().T) / 2


def hermitian_eig(op: BipartiteOperator) -> SpectrumResult:
    """Full eigendecomposition of a Hermitian operator, eigenvalues ascending."""
    m = _checked_hermitian_part(op)
    w, q = np.linalg.eigh(m)
    residual = float(np.max(np.abs(m @ q - q * w))) if m.size else 0.0
    return SpectrumResult(w, q, residual)


def min_eigenvalue(op: BipartiteOperator) -> float:
    """Smallest eigenvalue of a Hermitian operator."""
    m = _checked_hermitian_part(op)
    return float(np.linalg.eigvalsh(m)[0])


def is_ppt(op: BipartiteOperator, tol: float | None = None) -> bool:
    """Whether the partial transpose is positive semidefinite within tol."""
    limit = config.PSD_ATOL if tol is None else float(tol)
    return min_eigenvalue(partial_transpose(op)) >= -limit
