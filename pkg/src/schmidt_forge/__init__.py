"""Tools for PPT mixtures of antisymmetric states: exact partial-transpose
spectra, the maximal-overlap semidefinite program, paired normal forms, and
Schmidt-number certificates.
"""

from .certify import (
    CertificationMethod,
    InferenceStep,
    RULES,
    SchmidtCertificate,
    construct_half_d_state,
    infer_from_pppt,
    isotropic_witness,
    l_threshold,
)
from .errors import DomainError, StructuralError, ToleranceError
from .ppt_sdp import (
    CheckResult,
    PpptProblem,
    PpptResult,
    Residuals,
    SolveStatus,
    VerificationReport,
    embedding_monotonicity_check,
    mixing_monotonicity_check,
    solve_pppt,
    verify_pppt_result,
)
from .schmidt import (
    NormalFormResult,
    SchmidtDecomposition,
    antisymmetric_rank_parity,
    doubling_bound_check,
    pair_block_matrix,
    schmidt_decompose,
    youla_normal_form,
)
from .spectral_analytic import (
    ClosedFormSpectrum,
    DeterminantSymbols,
    closed_form_spectrum,
    determinant_closed_form,
    determinant_direct,
    determinant_recurrence,
    ppt_threshold_analytic,
    two_by_two_block_eigs,
)
from .states import (
    PsiACoefficients,
    isotropic_state,
    max_entangled,
    psi_0a,
    psi_a,
    sigma_0,
    tau_conjugate,
    tau_operator,
)
from .tensor_core import (
    BipartiteOperator,
    PureState,
    SpectrumResult,
    antisymmetric_projector,
    basis_index,
    embed_operator,
    exchange_from_json_dict,
    hermitian_eig,
    is_ppt,
    min_eigenvalue,
    partial_transpose,
    swap_operator,
    symmetric_basis,
    symmetric_projector,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteOperator",
    "CertificationMethod",
    "CheckResult",
    "ClosedFormSpectrum",
    "DeterminantSymbols",
    "DomainError",
    "InferenceStep",
    "NormalFormResult",
    "PpptProblem",
    "PpptResult",
    "PsiACoefficients",
    "PureState",
    "RULES",
    "Residuals",
    "SchmidtCertificate",
    "SchmidtDecomposition",
    "SolveStatus",
    "SpectrumResult",
    "StructuralError",
    "ToleranceError",
    "VerificationReport",
    "antisymmetric_projector",
    "antisymmetric_rank_parity",
    "basis_index",
    "closed_form_spectrum",
    "construct_half_d_state",
    "determinant_closed_form",
    "determinant_direct",
    "determinant_recurrence",
    "doubling_bound_check",
    "embed_operator",
    "embedding_monotonicity_check",
    "exchange_from_json_dict",
    "hermitian_eig",
    "infer_from_pppt",
    "is_ppt",
    "isotropic_state",
    "isotropic_witness",
    "l_threshold",
    "max_entangled",
    "min_eigenvalue",
    "mixing_monotonicity_check",
    "pair_block_matrix",
    "partial_transpose",
    "ppt_threshold_analytic",
    "psi_0a",
    "psi_a",
    "schmidt_decompose",
    "sigma_0",
    "solve_pppt",
    "swap_operator",
    "symmetric_basis",
    "symmetric_projector",
    "tau_conjugate",
    "tau_operator",
    "two_by_two_block_eigs",
    "verify_pppt_result",
    "youla_normal_form",
]
