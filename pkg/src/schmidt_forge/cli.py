"""Command line front-end.

Exit codes: 0 success, 1 usage or domain error, 2 solver non-convergence,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import config
from .certify import construct_half_d_state, infer_from_pppt, isotropic_witness
from .errors import DomainError
from .ppt_sdp import PpptProblem, SolveStatus, solve_pppt
from .schmidt import youla_normal_form
from .spectral_analytic import (
    DeterminantSymbols,
    closed_form_spectrum,
    determinant_closed_form,
    determinant_direct,
    determinant_recurrence,
    ppt_threshold_analytic,
)
from .states import (
    PsiACoefficients,
    isotropic_state,
    max_entangled,
    psi_0a,
    psi_a,
    sigma_0,
    tau_operator,
)
from .tensor_core import (
    BipartiteOperator,
    PureState,
    antisymmetric_projector,
    exchange_from_json_dict,
    hermitian_eig,
    min_eigenvalue,
    partial_transpose,
    swap_operator,
    symmetric_projector,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_VERIFY = 3

_SPECTRUM_ATOL = 1e-9
_DET_SWEEP_RTOL = 1e-8
_DET_SYMBOL_ATOL = 1e-12

_CONSTRUCT_FAMILIES = (
    "max-entangled",
    "isotropic",
    "psia",
    "psi0a",
    "sigma0",
    "tau",
    "symmetric-projector",
    "antisymmetric-projector",
    "swap",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated flag values for one invocation."""

    subcommand: str
    dim: int | None = None
    p: float | None = None
    fraction: float | None = None
    p_value: float | None = None
    coefficients: tuple | None = None
    normalize: bool = False
    family: str | None = None
    from_pppt: bool = False
    isotropic: bool = False
    construct_dim: int | None = None
    tol: float = config.DEFAULT_SOLVE_TOL
    max_iter: int = config.DEFAULT_MAX_ITERATIONS
    seed: int = 0
    dims: tuple = ()
    as_json: bool = False
    input_path: str | None = None
    output_path: str | None = None
    state_output_path: str | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError(f"--tol must be positive, got {self.tol!r}")
        if self.max_iter < 1:
            raise DomainError(f"--max-iter must be at least 1, got {self.max_iter!r}")
        if self.seed < 0:
            raise DomainError(f"--seed must be nonnegative, got {self.seed!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schmidt-forge", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    default_tol = config.env_solve_tol()

    c = sub.add_parser("construct", help="write a state or operator as exchange JSON")
    c.add_argument("family", choices=_CONSTRUCT_FAMILIES)
    c.add_argument("--dim", type=int, help="local dimension d")
    c.add_argument("--p", type=float, help="mixing weight for sigma0")
    c.add_argument("--f", dest="fraction", type=float, help="entanglement fraction")
    c.add_argument("--coeffs", type=float, nargs="+", help="pair coefficients for psia/tau")
    c.add_argument("--normalize", action="store_true",
                   help="rescale --coeffs instead of requiring exact normalization")
    c.add_argument("--out", dest="output_path", help="output file (default stdout)")

    n = sub.add_parser("normal-form", help="block normal form of an antisymmetric state")
    n.add_argument("--state", dest="input_path", required=True, help="state JSON file")
    n.add_argument("--out", dest="output_path")

    p = sub.add_parser("p-ppt", help="maximal PPT overlap of an antisymmetric state")
    p.add_argument("--state", dest="input_path", required=True,
                   help="state or operator JSON file")
    p.add_argument("--tol", type=float, default=default_tol)
    p.add_argument("--max-iter", dest="max_iter", type=int,
                   default=config.DEFAULT_MAX_ITERATIONS)
    p.add_argument("--out", dest="output_path")

    ce = sub.add_parser("certify", help="emit a Schmidt-number certificate")
    ce.add_argument("--from-pppt", dest="from_pppt", action="store_true",
                    help="infer from a measured overlap (--dim, --p-value)")
    ce.add_argument("--isotropic", action="store_true",
                    help="witness from an entanglement fraction (--dim, --f)")
    ce.add_argument("--construct", dest="construct_dim", type=int, metavar="DIM",
                    help="build the threshold mixture state and certify it")
    ce.add_argument("--dim", type=int)
    ce.add_argument("--p-value", dest="p_value", type=float)
    ce.add_argument("--f", dest="fraction", type=float)
    ce.add_argument("--tol", type=float, default=default_tol)
    ce.add_argument("--state-out", dest="state_output_path",
                    help="also write the constructed state JSON here")
    ce.add_argument("--out", dest="output_path")

    v = sub.add_parser("verify-appendix",
                       help="compare closed-form spectra and determinants with numerics")
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--p", type=float, required=True)
    v.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("reproduce", help="threshold table across dimensions")
    r.add_argument("--dims", type=int, nargs="+", default=[2, 4, 6, 8])
    r.add_argument("--tol", type=float, default=default_tol)
    r.add_argument("--max-iter", dest="max_iter", type=int,
                   default=config.DEFAULT_MAX_ITERATIONS)
    r.add_argument("--json", dest="as_json", action="store_true")
    r.add_argument("--out", dest="output_path")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    values = vars(args).copy()
    if "coeffs" in values:
        coeffs = values.pop("coeffs")
        values["coefficients"] = tuple(coeffs) if coeffs is not None else None
    if "dims" in values:
        values["dims"] = tuple(values["dims"])
    return RunConfig(**values)


def _emit_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is None:
        print(text)
    else:
        with open(path, "w", encoding="ascii") as handle:
            handle.write(text + "\n")


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="ascii") as handle:
        return json.load(handle)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def _pair_coefficients(cfg: RunConfig) -> PsiACoefficients:
    _require(cfg.dim is not None, f"construct {cfg.family} needs --dim")
    _require(cfg.coefficients is not None, f"construct {cfg.family} needs --coeffs")
    if cfg.normalize:
        return PsiACoefficients.from_unnormalized(cfg.dim, cfg.coefficients)
    return PsiACoefficients(cfg.dim, np.array(cfg.coefficients))


def cmd_construct(cfg: RunConfig) -> int:
    family = cfg.family
    if family == "max-entangled":
        _require(cfg.dim is not None, "construct max-entangled needs --dim")
        obj = max_entangled(cfg.dim)
    elif family == "isotropic":
        _require(cfg.dim is not None, "construct isotropic needs --dim")
        _require(cfg.fraction is not None, "construct isotropic needs --f")
        obj = isotropic_state(cfg.dim, cfg.fraction)
    elif family == "psia":
        obj = psi_a(_pair_coefficients(cfg))
    elif family == "psi0a":
        _require(cfg.dim is not None, "construct psi0a needs --dim")
        obj = psi_0a(cfg.dim)
    elif family == "sigma0":
        _require(cfg.dim is not None, "construct sigma0 needs --dim")
        _require(cfg.p is not None, "construct sigma0 needs --p")
        obj = sigma_0(cfg.dim, cfg.p)
    elif family == "tau":
        obj = tau_operator(_pair_coefficients(cfg))
    elif family == "symmetric-projector":
        _require(cfg.dim is not None, "construct symmetric-projector needs --dim")
        obj = symmetric_projector(cfg.dim)
    elif family == "antisymmetric-projector":
        _require(cfg.dim is not None, "construct antisymmetric-projector needs --dim")
        obj = antisymmetric_projector(cfg.dim)
    else:
        _require(cfg.dim is not None, "construct swap needs --dim")
        obj = swap_operator(cfg.dim)
    _emit_json(obj.to_json_dict(), cfg.output_path)
    return EXIT_OK


def cmd_normal_form(cfg: RunConfig) -> int:
    obj = exchange_from_json_dict(_load_json(cfg.input_path))
    _require(isinstance(obj, PureState), "normal-form expects a state vector JSON")
    result = youla_normal_form(obj)
    _emit_json(result.to_json_dict(), cfg.output_path)
    return EXIT_OK


def cmd_p_ppt(cfg: RunConfig) -> int:
    obj = exchange_from_json_dict(_load_json(cfg.input_path))
    if isinstance(obj, PureState):
        rho = obj.projector()
    else:
        rho = obj
    problem = PpptProblem(rho, tolerance=cfg.tol, max_iterations=cfg.max_iter)
    result = solve_pppt(problem)
    _emit_json(result.to_json_dict(), cfg.output_path)
    return EXIT_OK if result.status is SolveStatus.OPTIMAL else EXIT_SOLVER


def cmd_certify(cfg: RunConfig) -> int:
    modes = int(cfg.from_pppt) + int(cfg.isotropic) + int(cfg.construct_dim is not None)
    _require(modes == 1, "certify needs exactly one of --from-pppt, --isotropic, --construct")
    if cfg.from_pppt:
        _require(cfg.dim is not None, "certify --from-pppt needs --dim")
        _require(cfg.p_value is not None, "certify --from-pppt needs --p-value")
        certificate = infer_from_pppt(cfg.dim, cfg.p_value, cfg.tol)
    elif cfg.isotropic:
        _require(cfg.dim is not None, "certify --isotropic needs --dim")
        _require(cfg.fraction is not None, "certify --isotropic needs --f")
        certificate = isotropic_witness(cfg.dim, cfg.fraction)
    else:
        state, certificate = construct_half_d_state(cfg.construct_dim)
        if cfg.state_output_path is not None:
            _emit_json(state.to_json_dict(), cfg.state_output_path)
    _emit_json(certificate.to_json_dict(), cfg.output_path)
    return EXIT_OK


def _discrepancy(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1.0)


def cmd_verify_appendix(cfg: RunConfig) -> int:
    d, p = cfg.dim, cfg.p
    spectrum = closed_form_spectrum(d, p)
    numeric = hermitian_eig(partial_transpose(sigma_0(d, p))).eigenvalues
    closed = spectrum.eigenvalues()
    deviation = float(np.max(np.abs(closed - numeric)))
    failures = []

    print(f"spectrum of the partially transposed mixture, d={d}, p={p}")
    print(f"  {'family value':>14}  multiplicity")
    for value, mult in spectrum.families:
        print(f"  {float(value):>14.10f}  {mult}")
    print(f"  max |closed-form - numeric| over {d * d} sorted eigenvalues: {deviation:.3e}")
    if deviation > _SPECTRUM_ATOL:
        failures.append(f"spectrum deviation {deviation:.3e} exceeds {_SPECTRUM_ATOL:.1e}")
    floor = float(np.min(numeric))
    verdict = "PSD" if floor >= -config.PSD_ATOL else "not PSD"
    print(f"  min eigenvalue {floor:.3e} ({verdict}; informational)")

    if d > 12:
        print("determinant comparison skipped: direct elimination is limited to d <= 12")
        if failures:
            for line in failures:
                print(f"FAIL: {line}")
            return EXIT_VERIFY
        print("all comparisons within tolerance")
        return EXIT_OK

    print("determinant agreement: direct elimination vs recurrence vs closed form")
    shifts = [0.0] + [float(v) for v, m in spectrum.families if m > 0]
    for lam in shifts:
        symbols = DeterminantSymbols.from_sigma_params(d, p, lam)
        values = [
            determinant_direct(d, symbols.a, symbols.b, symbols.c),
            determinant_recurrence(d, symbols.a, symbols.b, symbols.c),
            determinant_closed_form(d, symbols.a, symbols.b, symbols.c),
        ]
        spread = max(values) - min(values)
        print(f"  shift {lam:+.10f}: closed form {values[2]:+.6e}, spread {spread:.3e}")
        if spread > _DET_SYMBOL_ATOL:
            failures.append(f"determinant paths differ by {spread:.3e} at shift {lam!r}")
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(20):
        a, b, c = rng.uniform(-2.0, 2.0, size=3)
        direct = determinant_direct(d, a, b, c)
        rec = determinant_recurrence(d, a, b, c)
        closed_val = determinant_closed_form(d, a, b, c)
        worst = max(worst, _discrepancy(direct, rec), _discrepancy(direct, closed_val))
    print(f"  20 random (a, b, c) draws (seed {cfg.seed}): max path discrepancy {worst:.3e}")
    if worst > _DET_SWEEP_RTOL:
        failures.append(f"random-sweep discrepancy {worst:.3e} exceeds {_DET_SWEEP_RTOL:.1e}")

    if failures:
        for line in failures:
            print(f"FAIL: {line}")
        return EXIT_VERIFY
    print("all comparisons within tolerance")
    return EXIT_OK


def cmd_reproduce(cfg: RunConfig) -> int:
    for d in cfg.dims:
        _require(
            isinstance(d, int) and d % 2 == 0 and 2 <= d <= 20,
            f"--dims entries must be even integers in 2..20, got {d!r}",
        )
    rows = []
    failed = False
    for d in cfg.dims:
        analytic = float(ppt_threshold_analytic(d))
        problem = PpptProblem(
            psi_0a(d).projector(), tolerance=cfg.tol, max_iterations=cfg.max_iter
        )
        result = solve_pppt(problem)
        if result.status is not SolveStatus.OPTIMAL:
            failed = True
        bound = None
        if d >= 4:
            _, certificate = construct_half_d_state(d)
            bound = certificate.schmidt_lower_bound
        rows.append({
            "dim": d,
            "analytic_threshold": analytic,
            "p_ppt": result.p_value,
            "gap": result.p_value - analytic,
            "certified_bound": bound,
            "status": result.status.value,
        })
    if cfg.as_json:
        _emit_json({"rows": rows}, cfg.output_path)
    else:
        print(f"{'d':>3} {'analytic':>12} {'p_ppt':>14} {'gap':>12} {'bound':>6} status")
        for row in rows:
            bound = "n/a" if row["certified_bound"] is None else str(row["certified_bound"])
            print(
                f"{row['dim']:>3} {row['analytic_threshold']:>12.8f} "
                f"{row['p_ppt']:>14.10f} {row['gap']:>+12.3e} {bound:>6} {row['status']}"
            )
    return EXIT_SOLVER if failed else EXIT_OK


_DISPATCH = {
    "construct": cmd_construct,
    "normal-form": cmd_normal_form,
    "p-ppt": cmd_p_ppt,
    "certify": cmd_certify,
    "verify-appendix": cmd_verify_appendix,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        return _DISPATCH[cfg.subcommand](cfg)
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
