"""Closed-form spectra and determinants for the symmetric-background mixture.

The partially transposed mixture sigma_0(d, p)^G has three eigenvalue
families with fixed multiplicities, and the determinant of its nontrivial
block reduces to a product formula. Everything here is scalar arithmetic:
when all inputs are rational (int or Fraction) the computation runs
exactly, otherwise in floating point. These routines act as the oracle
for the numerical modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError

_MAX_DIRECT_DIM = 12


def _lift(*values):
    """Promote to Fraction when every input is rational, else to float."""
    exact = all(
        isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values
    )
    if exact:
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)


def _require_even_dim(d, minimum: int = 2) -> int:
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise DomainError(f"dimension must be an integer, got {d!r}")
    if d < minimum or d % 2 != 0:
        raise DomainError(f"dimension must be an even integer >= {minimum}, got {d}")
    return int(d)


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Eigenvalue families (value, multiplicity) of the partially transposed
    mixture, with multiplicities summing to d^2.
    """

    local_dim: int
    p: object
    families: tuple
    total_dim: int

    def __post_init__(self):
        if sum(m for _, m in self.families) != self.total_dim:
            raise DomainError("family multiplicities must sum to the total dimension")
        if any(m < 0 for _, m in self.families):
            raise DomainError("multiplicities must be nonnegative")

    def eigenvalues(self) -> np.ndarray:
        """Expanded numerical spectrum, ascending."""
        values = [float(v) for v, m in self.families for _ in range(m)]
        return np.sort(np.array(values))

    def min_value(self):
        return min(v for v, m in self.families if m > 0)

    def trace(self):
        total = 0
        for v, m in self.families:
            total = total + v * m
        return total


@dataclass(frozen=True)
class DeterminantSymbols:
    """Scalar symbols of the block determinant: diagonal a, off-diagonal b,
    paired entry c, with the derived combinations e = a - b and f = a - c.
    """

    a: object
    b: object
    c: object

    @property
    def e(self):
        return self.a - self.b

    @property
    def f(self):
        return self.a - self.c

    @classmethod
    def from_sigma_params(cls, d: int, p, lam) -> "DeterminantSymbols":
        """Symbols of the shifted block of sigma_0(d, p)^G at eigenvalue shift lam."""
        d = _require_even_dim(d)
        p, lam = _lift(p, lam)
        den = d * (d + 1)
        b = (1 - p) / den
        a = 2 * (1 - p) / den - lam
        c = b - p / d
        return cls(a, b, c)


def closed_form_spectrum(d: int, p) -> ClosedFormSpectrum:
    """The three eigenvalue families of sigma_0(d, p)^G.

    family 1: (1 + p d) / (d(d+1)), multiplicity d(d+1)/2
    family 2: (1 - (d+2) p) / (d(d+1)), multiplicity (d+1)(d-2)/2
    family 3: (1 - 2 p) / d, multiplicity 1

    Family 3 is the root of a + (d-2) b + c = 0 in the block determinant,
    expanded with the a, b, c of DeterminantSymbols; it pins the trace of
    the family multiset to 1. For d = 2 family 2 is empty and is reported
    with multiplicity 0.
    """
    d = _require_even_dim(d)
    if not 0 <= p <= 1:
        raise DomainError(f"mixing weight must lie in [0, 1], got {p!r}")
    (p,) = _lift(p)
    den = d * (d + 1)
    family1 = (1 + p * d) / den
    family2 = (1 - (d + 2) * p) / den
    family3 = (1 - 2 * p) / d
    families = (
        (family1, d * (d + 1) // 2),
        (family2, (d + 1) * (d - 2) // 2),
        (family3, 1),
    )
    return ClosedFormSpectrum(d, p, families, d * d)


def ppt_threshold_analytic(d: int) -> Fraction:
    """Largest p at which sigma_0(d, p) stays PPT: 1/2 for d = 2, else 1/(d+2)."""
    d = _require_even_dim(d)
    if d == 2:
        return Fraction(1, 2)
    return Fraction(1, d + 2)


def _block_matrix(d: int, a, b, c) -> list:
    rows = [[b] * d for _ in range(d)]
    for i in range(d):
        rows[i][i] = a
    for k in range(0, d, 2):
        rows[k][k + 1] = c
        rows[k + 1][k] = c
    return rows


def _eliminate(rows, exact: bool):
    n = len(rows)
    sign = 1
    det = Fraction(1) if exact else 1.0
    for k in range(n):
        if exact:
            pivot_row = next((r for r in range(k, n) if rows[r][k] != 0), None)
        else:
            pivot_row = max(range(k, n), key=lambda r: abs(rows[r][k]))
            if rows[pivot_row][k] == 0:
                pivot_row = None
        if pivot_row is None:
            return det * 0
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        det = det * pivot
        for r in range(k + 1, n):
            factor = rows[r][k] / pivot
            if factor != 0:
                for col in range(k, n):
                    rows[r][col] = rows[r][col] - factor * rows[k][col]
    return sign * det


def determinant_direct(d: int, a, b, c):
    """Determinant of the d x d block matrix by dense Gaussian elimination.

    The matrix has a on the diagonal, c on the off-diagonal of each 2x2
    diagonal block (rows 2k, 2k+1), and b everywhere else.
    """
    d = _require_even_dim(d)
    if d > _MAX_DIRECT_DIM:
        raise DomainError(f"direct elimination is limited to d <= {_MAX_DIRECT_DIM}, got {d}")
    a, b, c = _lift(a, b, c)
    exact = isinstance(a, Fraction)
    return _eliminate(_block_matrix(d, a, b, c), exact)


def determinant_recurrence(d: int, a, b, c):
    """Determinant via the two-step recurrence
    D_{k+4} = (a-c)(a-2b+c) [2 D_{k+2} - (a-c)(a-2b+c) D_k],
    seeded by the directly computed D_2 and D_4.
    """
    d = _require_even_dim(d)
    a, b, c = _lift(a, b, c)
    d_prev = determinant_direct(2, a, b, c)
    if d == 2:
        return d_prev
    d_curr = determinant_direct(4, a, b, c)
    factor = (a - c) * (a - 2 * b + c)
    for _ in range(4, d, 2):
        d_prev, d_curr = d_curr, factor * (2 * d_curr - factor * d_prev)
    return d_curr


def determinant_closed_form(d: int, a, b, c):
    """Product form D_d = (a-c)^(d/2) (a-2b+c)^(d/2-1) (a+(d-2)b+c)."""
    d = _require_even_dim(d)
    a, b, c = _lift(a, b, c)
    half = d // 2
    return (a - c) ** half * (a - 2 * b + c) ** (half - 1) * (a + (d - 2) * b + c)


def two_by_two_block_eigs(d: int, p):
    """Eigenvalues of the repeated 2x2 block of sigma_0(d, p)^G:
    [[(1-p)/(d(d+1)), p/d], [p/d, (1-p)/(d(d+1))]].

    Returns ((1 + p d)/(d(d+1)), (1 - (d+2) p)/(d(d+1))); the blocks only
    occur for d >= 4.
    """
    d = _require_even_dim(d, minimum=4)
    (p,) = _lift(p)
    den = d * (d + 1)
    return (1 + p * d) / den, (1 - (d + 2) * p) / den
