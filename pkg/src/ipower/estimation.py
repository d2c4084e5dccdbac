"""End-to-end phase estimation in the worst-case (undisclosed generator) protocol.

A run encodes a true phase into a probe with a local generator, measures the
populations in the eigenbasis of the symmetric logarithmic derivative at a
reference phase, reconstructs the Fisher information from the measured
populations and the design eigenvalues, and infers the phase by least squares.
In exact mode the populations are the ideal ensemble expectation values; in
noisy mode each population receives an independent relative Gaussian
perturbation before renormalization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .correlations import SldDecomposition, interferometric_power, qfi, sld
from .errors import BasisMismatchError, NotIdentifiableError, ZeroInformationError
from .linalg import dagger, tensor
from .probes import ProbeFamily, make_probe, setting_hamiltonian
from .states import DensityMatrix, LocalHamiltonian

# Fisher information (or least-squares range) below this cutoff counts as the
# analytic zero of a pathological setting rather than numerical dust.
FLAT_CUTOFF = 1e-10

# Golden-section tolerance on the bracket width.
SEARCH_TOL = 1e-9

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

SWEEP_COLUMNS = (
    "s",
    "k",
    "p",
    "f_exp_over_4",
    "ip",
    "var",
    "nu_var_product",
    "phi_hat",
    "failed",
)


@dataclass(frozen=True)
class NoiseSpec:
    """Relative Gaussian population noise of width ``sigma``, seeded for replay."""

    sigma: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")


@dataclass(frozen=True)
class LeastSquaresResult:
    phi_hat: float
    residual: float
    failed: bool


@dataclass(frozen=True)
class EstimationRun:
    """Record of one protocol instance.

    ``phi_hat_mean`` and ``phi_hat_var`` are ``None`` when the run failed
    (flat least-squares landscape or vanishing Fisher information).
    """

    probe_label: str
    p: float
    setting_k: int
    phi0: float
    nu: int
    d_meas: tuple[float, ...]
    l_values: tuple[float, ...]
    phi_hat_mean: float | None
    phi_hat_var: float | None
    f_exp: float
    failed: bool
    seed: int | None

    def to_json_dict(self) -> dict:
        return {
            "probe_label": self.probe_label,
            "p": _round12(self.p),
            "setting_k": self.setting_k,
            "phi0": _round12(self.phi0),
            "nu": self.nu,
            "d_meas": [_round12(x) for x in self.d_meas],
            "l_values": [_round12(x) for x in self.l_values],
            "phi_hat_mean": _round12(self.phi_hat_mean),
            "phi_hat_var": _round12(self.phi_hat_var),
            "f_exp": _round12(self.f_exp),
            "failed": self.failed,
            "seed": self.seed,
        }


def theory_populations(
    rho: DensityMatrix,
    ham: LocalHamiltonian,
    basis: SldDecomposition,
    phi: float,
) -> np.ndarray:
    """Model populations <lambda_j| U(phi) rho U(phi)† |lambda_j>."""
    u_full = tensor(ham.phase_unitary(phi), np.eye(rho.d_b))
    encoded = u_full @ rho.matrix @ dagger(u_full)
    return np.einsum(
        "ji,jk,ki->i", basis.eigenbasis.conj(), encoded, basis.eigenbasis
    ).real


def measure_populations(
    rho: DensityMatrix,
    ham: LocalHamiltonian,
    phi_true: float,
    sldref: SldDecomposition,
    noise: NoiseSpec | None = None,
) -> np.ndarray:
    """Ensemble populations of the encoded state in the reference SLD eigenbasis.

    Exact mode (no noise, or sigma == 0) returns the ideal expectation values;
    noisy mode perturbs each population by an independent zero-mean Gaussian of
    relative width sigma, clamps to [0, 1] and renormalizes.
    """
    if sldref.dim != rho.dim:
        raise BasisMismatchError(
            f"measurement basis dimension {sldref.dim} != state dimension {rho.dim}"
        )
    d = theory_populations(rho, ham, sldref, phi_true)
    if noise is None or noise.sigma == 0.0:
        return d
    rng = np.random.default_rng(noise.seed)
    d = d * (1.0 + noise.sigma * rng.standard_normal(d.size))
    d = np.clip(d, 0.0, 1.0)
    total = d.sum()
    if total <= 0.0:
        return np.full(d.size, 1.0 / d.size)
    return d / total


def _golden_section(fun, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section minimization on [lo, hi]; returns (argmin, value)."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
    x = (a + b) / 2.0
    return x, fun(x)


def least_squares_estimate(
    d_meas: np.ndarray,
    rho: DensityMatrix,
    ham: LocalHamiltonian,
    sldref: SldDecomposition,
    interval: tuple[float, float] = (0.0, math.pi / 2.0),
    tol: float = SEARCH_TOL,
) -> LeastSquaresResult:
    """Phase inference by least squares against the population model.

    Minimizes sum_j (d_j_model(phi) - d_j_measured)^2 over the search interval
    with golden-section runs started on the four quarter subintervals plus a
    polish around the best point of a coarse scan.  When the objective is flat
    over the whole interval (range below ``FLAT_CUTOFF``) the estimation is
    unreliable and the result is flagged failed.
    """
    d_meas = np.asarray(d_meas, dtype=float)
    if d_meas.size != rho.dim:
        raise BasisMismatchError(
            f"got {d_meas.size} populations for dimension {rho.dim}"
        )

    def objective(phi: float) -> float:
        delta = theory_populations(rho, ham, sldref, phi) - d_meas
        return float(np.sum(delta * delta))

    lo, hi = interval
    scan = np.linspace(lo, hi, 33)
    scan_values = np.array([objective(x) for x in scan])
    if scan_values.max() - scan_values.min() < FLAT_CUTOFF:
        return LeastSquaresResult(math.nan, float(scan_values.min()), True)

    candidates = []
    quarters = np.linspace(lo, hi, 5)
    for a, b in zip(quarters[:-1], quarters[1:]):
        candidates.append(_golden_section(objective, a, b, tol))
    best_scan = int(np.argmin(scan_values))
    step = scan[1] - scan[0]
    candidates.append(
        _golden_section(
            objective,
            max(lo, scan[best_scan] - step),
            min(hi, scan[best_scan] + step),
            tol,
        )
    )
    # Exactly symmetric populations can zero the objective at two phases;
    # near-ties resolve deterministically toward the smaller phase.
    best_value = min(v for _, v in candidates)
    tie_band = best_value + 1e-12 * (scan_values.max() - scan_values.min())
    phi_hat, residual = min(
        (c for c in candidates if c[1] <= tie_band), key=lambda c: c[0]
    )
    return LeastSquaresResult(float(phi_hat), float(residual), False)


def estimator_statistics(
    d_meas: np.ndarray, l_values: np.ndarray, f_exp: float, nu: float
) -> float:
    """Variance of the optimal estimator over an ensemble of ``nu`` probes.

    Var = [sum_j l_j^2 d_j - (sum_j l_j d_j)^2] / (nu f_exp^2); with exact
    populations at the reference phase the linear term vanishes and the
    variance reduces to 1 / (nu f_exp).
    """
    if f_exp <= FLAT_CUTOFF:
        raise ZeroInformationError(
            f"reconstructed Fisher information {f_exp:.3e} is below {FLAT_CUTOFF:g}"
        )
    d = np.asarray(d_meas, dtype=float)
    l = np.asarray(l_values, dtype=float)
    second = float(np.sum(l * l * d))
    first = float(np.sum(l * d))
    return (second - first * first) / (nu * f_exp * f_exp)


def adaptive_localize(
    rho: DensityMatrix,
    ham: LocalHamiltonian,
    phi_true: float,
    max_iters: int = 10,
    tol: float = 1e-6,
) -> tuple[list[float], bool]:
    """Iterative localization of the phase, refining the measurement basis.

    Starts from a trial phase of zero; each round measures (exactly) in the
    SLD eigenbasis at the current trial phase and replaces the trial with the
    least-squares estimate.  Returns the trial sequence and whether some trial
    came within ``tol`` of the true phase.
    """
    if qfi(rho, ham) <= FLAT_CUTOFF:
        raise NotIdentifiableError("QFI vanishes for this probe and generator")
    trials = [0.0]
    converged = abs(trials[0] - phi_true) < tol
    while not converged and len(trials) < max_iters:
        basis = sld(rho, ham, trials[-1])
        populations = measure_populations(rho, ham, phi_true, basis)
        result = least_squares_estimate(populations, rho, ham, basis)
        if result.failed:
            break
        trials.append(result.phi_hat)
        converged = abs(trials[-1] - phi_true) < tol
    return trials, converged


def run_experiment(
    probe: ProbeFamily,
    k: int,
    phi_true: float,
    nu: float = 10**15,
    noise: NoiseSpec | None = None,
) -> EstimationRun:
    """One full protocol instance for a probe family and generator setting.

    The measurement basis is the SLD eigenbasis at the true phase (the
    adaptive pre-localization is assumed to have converged there).
    """
    noise = noise or NoiseSpec()
    rho = make_probe(probe)
    ham = setting_hamiltonian(k)
    reference = sld(rho, ham, phi_true)
    populations = measure_populations(rho, ham, phi_true, reference, noise)
    l_values = reference.eigenvalues
    f_exp = float(np.sum(l_values**2 * populations))
    fit = least_squares_estimate(populations, rho, ham, reference)
    failed = fit.failed or f_exp <= FLAT_CUTOFF
    if failed:
        mean, var = None, None
    else:
        mean = fit.phi_hat
        var = estimator_statistics(populations, l_values, f_exp, nu)
    return EstimationRun(
        probe_label=probe.label,
        p=probe.p,
        setting_k=int(k),
        phi0=float(phi_true),
        nu=int(nu),
        d_meas=tuple(float(x) for x in populations),
        l_values=tuple(float(x) for x in l_values),
        phi_hat_mean=mean,
        phi_hat_var=var,
        f_exp=f_exp,
        failed=failed,
        seed=noise.seed if noise.sigma > 0 else None,
    )


def run_sweep(
    labels,
    settings,
    p_values,
    phi_true: float,
    nu: float = 10**15,
    sigma: float = 0.0,
    seed: int | None = None,
) -> list[EstimationRun]:
    """Protocol runs over every (probe label, setting, p) combination.

    Rows are ordered by (label, setting, p); per-run noise seeds are derived
    from the root seed in that fixed order, so the output never depends on
    evaluation order.
    """
    combos = [
        (label, int(k), float(p))
        for label in sorted(labels)
        for k in sorted(settings)
        for p in sorted(np.asarray(p_values, dtype=float))
    ]
    root = np.random.default_rng(seed)
    run_seeds = root.integers(0, 2**63 - 1, size=len(combos))
    runs = []
    for (label, k, p), run_seed in zip(combos, run_seeds):
        noise = NoiseSpec(sigma, int(run_seed)) if sigma > 0 else NoiseSpec()
        runs.append(run_experiment(_family_for(label, p), k, phi_true, nu, noise))
    return runs


def _round12(x) -> float | None:
    """Round to 12 significant digits for stable, readable output files."""
    if x is None or math.isnan(x):
        return None
    return float(f"{float(x):.12g}")


def _fmt12(x) -> str:
    if x is None:
        return "nan"
    return f"{float(x):.12g}"


def _family_for(label: str, p: float) -> ProbeFamily:
    """Probe family instance for a label, attaching p only where it applies."""
    if label in ("sep", "bell"):
        return ProbeFamily(label)
    return ProbeFamily(label, (p,))


def sweep_rows(runs: list[EstimationRun]) -> list[dict]:
    """Tabular view of a sweep, one dict per run with the documented columns."""
    rows = []
    for run in runs:
        ip = interferometric_power(make_probe(_family_for(run.probe_label, run.p)))
        nu_var = None if run.phi_hat_var is None else run.nu * run.phi_hat_var
        rows.append(
            {
                "s": run.probe_label,
                "k": run.setting_k,
                "p": run.p,
                "f_exp_over_4": run.f_exp / 4.0,
                "ip": ip,
                "var": run.phi_hat_var,
                "nu_var_product": nu_var,
                "phi_hat": run.phi_hat_mean,
                "failed": run.failed,
            }
        )
    rows.sort(key=lambda r: (r["s"], r["k"], r["p"]))
    return rows


def sweep_csv_text(runs: list[EstimationRun]) -> str:
    """Render a sweep as CSV with the fixed column schema.

    Numbers carry 12 significant digits; the decimal separator is always '.'
    and the field separator ','.
    """
    lines = [",".join(SWEEP_COLUMNS)]
    for row in sweep_rows(runs):
        lines.append(
            ",".join(
                [
                    row["s"],
                    str(row["k"]),
                    _fmt12(row["p"]),
                    _fmt12(row["f_exp_over_4"]),
                    _fmt12(row["ip"]),
                    _fmt12(row["var"]),
                    _fmt12(row["nu_var_product"]),
                    _fmt12(row["phi_hat"]),
                    "true" if row["failed"] else "false",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def sweep_json_text(runs: list[EstimationRun]) -> str:
    """Render a sweep as a JSON array of run records (sorted by s, k, p)."""
    ordered = sorted(runs, key=lambda r: (r.probe_label, r.setting_k, r.p))
    return json.dumps([run.to_json_dict() for run in ordered], indent=1) + "\n"
