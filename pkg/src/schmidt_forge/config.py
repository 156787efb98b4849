"""Global numerical tolerances.

Modules read these at call time, so assigning new values here reconfigures
the whole package. The environment variable SCHMIDT_FORGE_TOL seeds the
default solver tolerance used by the command line interface.
"""

import os

# Operators flagged or required to be Hermitian must satisfy
# max |M - M^dag| <= HERMITICITY_ATOL before an eigendecomposition runs.
HERMITICITY_ATOL = 1e-10

# Construction-time check for operators declared hermitian=True.
HERMITIAN_FLAG_ATOL = 1e-12

# A matrix counts as positive semidefinite when its minimum eigenvalue
# is at least -PSD_ATOL.
PSD_ATOL = 1e-9

# Pure-state vectors must be normalized to this absolute accuracy.
STATE_NORM_ATOL = 1e-12

# Relative singular-value cutoff for Schmidt ranks.
RANK_RTOL = 1e-9

# Defaults for the semidefinite solver.
DEFAULT_SOLVE_TOL = 1e-7
DEFAULT_MAX_ITERATIONS = 50000


def env_solve_tol() -> float:
    """Solver tolerance from SCHMIDT_FORGE_TOL, else DEFAULT_SOLVE_TOL."""
    raw = os.environ.get("SCHMIDT_FORGE_TOL")
    if raw is None:
        return DEFAULT_SOLVE_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"SCHMIDT_FORGE_TOL is not a number: {raw!r}") from None
    if value <= 0:
        raise ValueError(f"SCHMIDT_FORGE_TOL must be positive, got {value}")
    return value
