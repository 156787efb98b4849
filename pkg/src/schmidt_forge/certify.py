"""Schmidt-number certificates from overlap thresholds and witnesses.

The threshold function L gives, for each r, the smallest maximal PPT
overlap compatible with antisymmetric states of Schmidt number r. A
measured overlap below L(r) therefore pushes the Schmidt number above r.
Certificates carry an auditable inference chain; every step names one
rule from the RULES table, and comparisons subtract an explicit tolerance
so solver noise can only weaken a bound, never strengthen it.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .errors import DomainError
from .spectral_analytic import ppt_threshold_analytic
from .states import sigma_0
from .tensor_core import (
    BipartiteOperator,
    canonical_json_bytes,
    min_eigenvalue,
    partial_transpose,
)

SCHEMA_VERSION = 1

RULES = {
    "antisymmetric-baseline": (
        "A state supported on the antisymmetric subspace is entangled, so its "
        "Schmidt number is at least 2."
    ),
    "even-schmidt-number": (
        "Antisymmetric pure states have even Schmidt rank, hence antisymmetric "
        "mixed states have even Schmidt number; bounds are reported as even numbers."
    ),
    "overlap-threshold": (
        "Antisymmetric states of Schmidt number at most r admit a PPT extension "
        "with overlap at least L(r); a maximal overlap below L(r) therefore "
        "forces the Schmidt number above r."
    ),
    "projection-doubling": (
        "Projecting onto the antisymmetric subspace at most doubles the Schmidt "
        "number, so a PPT state whose antisymmetric projection is proportional "
        "to a state of Schmidt number b has Schmidt number at least ceil(b/2)."
    ),
    "isotropic-fraction": (
        "An isotropic state in local dimension d with entanglement fraction F "
        "has Schmidt number at least r whenever F >= (r-1)/d."
    ),
    "equal-coefficient-rank": (
        "The equal-coefficient antisymmetric pair state in even local dimension "
        "d has Schmidt rank d."
    ),
    "ppt-at-mixing-threshold": (
        "At mixing weight p = 1/(d+2), d >= 4 even, the mixture of the "
        "equal-coefficient pair state with the normalized symmetric projector "
        "has a positive semidefinite partial transpose."
    ),
}


class CertificationMethod(enum.Enum):
    PPT_THRESHOLD = "PpptThreshold"
    ISOTROPIC_FRACTION = "IsotropicFraction"
    ANTISYM_PROJECTION = "AntisymProjection"


@dataclass(frozen=True)
class InferenceStep:
    rule: str
    statement: str

    def __post_init__(self):
        if self.rule not in RULES:
            raise DomainError(f"unknown inference rule {self.rule!r}")


@dataclass(frozen=True)
class SchmidtCertificate:
    """An auditable lower bound on the Schmidt number of a state."""

    input_digest: str
    method: CertificationMethod
    measured_value: float
    threshold_used: float
    schmidt_lower_bound: int
    inference_chain: tuple
    tolerance: float
    ppt_extension_bound: int | None = None

    def __post_init__(self):
        if self.schmidt_lower_bound < 1:
            raise DomainError("a Schmidt-number bound is at least 1")

    def to_json_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "input_digest": self.input_digest,
            "method": self.method.value,
            "measured_value": self.measured_value,
            "threshold_used": self.threshold_used,
            "schmidt_lower_bound": self.schmidt_lower_bound,
            "inference_chain": [
                {"rule": step.rule, "statement": step.statement}
                for step in self.inference_chain
            ],
            "tolerance": self.tolerance,
        }
        if self.ppt_extension_bound is not None:
            doc["ppt_extension_bound"] = self.ppt_extension_bound
        return doc


def _digest(payload: dict) -> str:
    blob = canonical_json_bytes(payload)
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def l_threshold(d: int) -> Fraction:
    """Overlap threshold L: 1/2 for d in {2, 3}, 1/(d+2) for even d >= 4,
    1/(d+1) for odd d >= 5. Non-increasing in d.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise DomainError(f"threshold dimension must be an integer >= 2, got {d!r}")
    if d in (2, 3):
        return Fraction(1, 2)
    if d % 2 == 0:
        return Fraction(1, d + 2)
    return Fraction(1, d + 1)


def infer_from_pppt(d: int, p_measured: float, tol: float) -> SchmidtCertificate:
    """Turn a verified maximal PPT overlap of an antisymmetric state into a
    Schmidt-number bound.

    Walks even r = 2, 4, ..., d; each strict comparison p < L(r) - tol
    raises the bound to r + 2. The caller is responsible for the overlap
    coming from an ambient dimension at least as large as d, otherwise the
    later comparisons are vacuous.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 2 or d % 2 != 0:
        raise DomainError(f"threshold dimension must be an even integer >= 2, got {d!r}")
    if tol < 0:
        raise DomainError(f"tolerance must be nonnegative, got {tol!r}")
    p = float(p_measured)
    if not 0.0 <= p <= 0.5 + tol:
        raise DomainError(f"overlap must lie in [0, 1/2 + tol], got {p!r}")

    chain = [
        InferenceStep("antisymmetric-baseline", RULES["antisymmetric-baseline"]),
        InferenceStep("even-schmidt-number", RULES["even-schmidt-number"]),
    ]
    bound = 2
    threshold = l_threshold(2)
    for r in range(2, d + 1, 2):
        level = l_threshold(r)
        if p < float(level) - tol:
            bound = r + 2
            threshold = level
            chain.append(
                InferenceStep(
                    "overlap-threshold",
                    f"measured overlap {p!r} < L({r}) = {float(level)!r} minus "
                    f"tolerance {tol!r}, so the Schmidt number is at least {r + 2}",
                )
            )
        else:
            break
    extension = (bound + 1) // 2
    chain.append(
        InferenceStep(
            "projection-doubling",
            f"any PPT state whose antisymmetric projection is proportional to the "
            f"input has Schmidt number at least {extension}",
        )
    )
    digest = _digest(
        {"method": "PpptThreshold", "dim": d, "p_measured": p, "tolerance": tol}
    )
    return SchmidtCertificate(
        input_digest=digest,
        method=CertificationMethod.PPT_THRESHOLD,
        measured_value=p,
        threshold_used=float(threshold),
        schmidt_lower_bound=bound,
        inference_chain=tuple(chain),
        tolerance=float(tol),
        ppt_extension_bound=extension,
    )


def isotropic_witness(d: int, fraction: float) -> SchmidtCertificate:
    """Schmidt-number bound of the isotropic state from its entanglement
    fraction: the largest r in 1..d with F >= (r-1)/d.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise DomainError(f"local dimension must be an integer >= 2, got {d!r}")
    f = float(fraction)
    if not 0.0 <= f <= 1.0:
        raise DomainError(f"entanglement fraction must lie in [0, 1], got {f!r}")
    bound = 1
    for r in range(d, 0, -1):
        if f >= (r - 1) / d:
            bound = r
            break
    chain = (
        InferenceStep(
            "isotropic-fraction",
            f"fraction {f!r} >= ({bound} - 1)/{d}, so the Schmidt number is at "
            f"least {bound}; larger r fail the comparison or exceed d",
        ),
    )
    digest = _digest({"method": "IsotropicFraction", "dim": d, "fraction": f})
    return SchmidtCertificate(
        input_digest=digest,
        method=CertificationMethod.ISOTROPIC_FRACTION,
        measured_value=f,
        threshold_used=(bound - 1) / d,
        schmidt_lower_bound=bound,
        inference_chain=chain,
        tolerance=0.0,
    )


def construct_half_d_state(d: int) -> tuple:
    """The PPT state at the mixing threshold together with its certificate.

    Returns sigma_0(d, 1/(d+2)) and a bound of d/2 on its Schmidt number;
    the PPT property of the constructed matrix is re-verified numerically
    before the certificate is issued.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 4 or d % 2 != 0:
        raise DomainError(
            f"the construction needs an even local dimension >= 4, got {d!r}"
        )
    p = float(ppt_threshold_analytic(d))
    state = sigma_0(d, p)
    ppt_floor = min_eigenvalue(partial_transpose(state))
    if ppt_floor < -config.PSD_ATOL:
        raise DomainError(
            f"constructed state failed its PPT re-verification: min eigenvalue "
            f"{ppt_floor:.3e}"
        )
    chain = (
        InferenceStep(
            "equal-coefficient-rank",
            f"the antisymmetric projection of the state is proportional to the "
            f"equal-coefficient pair state, which has Schmidt rank {d}",
        ),
        InferenceStep(
            "projection-doubling",
            f"the state's antisymmetric projection has Schmidt number {d}, so "
            f"the state itself has Schmidt number at least {d // 2}",
        ),
        InferenceStep(
            "ppt-at-mixing-threshold",
            f"partial transpose verified positive semidefinite at p = 1/{d + 2}: "
            f"min eigenvalue {ppt_floor:.3e}",
        ),
    )
    certificate = SchmidtCertificate(
        input_digest=_digest(state.to_json_dict()),
        method=CertificationMethod.ANTISYM_PROJECTION,
        measured_value=p,
        threshold_used=p,
        schmidt_lower_bound=d // 2,
        inference_chain=chain,
        tolerance=config.PSD_ATOL,
        ppt_extension_bound=d // 2,
    )
    return state, certificate
