"""Seeded property suites behind the ``verify`` command.

Each family draws its own child generator from the root seed, so the outcome
of one family never depends on how many samples another family consumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import (
    TOL_SLD,
    interferometric_power,
    ip_grid_search,
    local_quantum_uncertainty,
    min_local_variance,
    qfi,
    sld,
)
from .estimation import (
    NoiseSpec,
    ProbeFamily,
    adaptive_localize,
    run_experiment,
    run_sweep,
)
from .linalg import TOL_EIG, TOL_RECON, dagger, eig_hermitian, tensor
from .probes import (
    classical_probe,
    discordant_probe,
    flip_angle_grid,
    make_probe,
    predicted_qfi,
    setting_hamiltonian,
)
from .sampling import (
    amplitude_damping_kraus,
    apply_channel_b,
    depolarizing_kraus,
    haar_unitary,
    random_classical_classical_state,
    random_classical_quantum_state,
    random_density_matrix,
    random_pure_density_matrix,
    remix_degenerate_eigenspaces,
)
from .states import DensityMatrix, LocalHamiltonian, evolve, hs_fidelity


@dataclass
class PropertyResult:
    name: str
    passed: bool
    trials: int
    failures: int
    worst: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: {self.trials - self.failures}/{self.trials} ok, "
            f"worst deviation {self.worst:.3e}"
        )


def _result(name, deviations, bound, trials=None) -> PropertyResult:
    devs = np.asarray(deviations, dtype=float)
    failures = int(np.sum(devs > bound))
    return PropertyResult(
        name=name,
        passed=failures == 0,
        trials=len(devs) if trials is None else trials,
        failures=failures,
        worst=float(devs.max()) if len(devs) else 0.0,
    )


def _rng(seed: int, family: int) -> np.random.Generator:
    return np.random.default_rng([seed, family])


def _random_bloch(rng) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def check_eig_roundtrip(seed=0, n=100) -> PropertyResult:
    rng = _rng(seed, 1)
    devs = []
    for _ in range(n):
        dim = int(rng.integers(2, 9))
        z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        herm = (z + dagger(z)) / 2.0
        vals, vecs = eig_hermitian(herm)
        recon = (vecs * vals) @ dagger(vecs)
        orth = np.max(np.abs(dagger(vecs) @ vecs - np.eye(dim)))
        devs.append(max(np.max(np.abs(recon - herm)), orth))
    return _result("eigendecomposition round trip", devs, TOL_RECON)


def check_partial_trace_factors(seed=0, n=50) -> PropertyResult:
    from .states import partial_trace

    rng = _rng(seed, 2)
    devs = []
    for _ in range(n):
        rho_a = random_density_matrix((2, 1), rng)
        rho_b = random_density_matrix((2, 1), rng)
        product = DensityMatrix.from_matrix(
            tensor(rho_a.matrix, rho_b.matrix), (2, 2)
        )
        devs.append(
            np.max(np.abs(partial_trace(product, "A").matrix - rho_a.matrix))
        )
        devs.append(
            np.max(np.abs(partial_trace(product, "B").matrix - rho_b.matrix))
        )
    return _result("partial trace of product states", devs, TOL_RECON)


def check_evolve_spectrum(seed=0, n=50) -> PropertyResult:
    rng = _rng(seed, 3)
    devs = []
    for _ in range(n):
        rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
        ham = LocalHamiltonian.from_bloch(_random_bloch(rng))
        phi = rng.uniform(0, 2 * np.pi)
        out = evolve(rho, ham, phi)
        devs.append(
            np.max(np.abs(np.sort(out.eigenvalues) - np.sort(rho.eigenvalues)))
        )
    return _result("evolution preserves the spectrum", devs, TOL_EIG)


def check_fidelity_properties(seed=0, n=50) -> PropertyResult:
    rng = _rng(seed, 4)
    devs = []
    for _ in range(n):
        a = random_density_matrix((2, 2), rng)
        b = random_density_matrix((2, 2), rng)
        devs.append(abs(hs_fidelity(a, b) - hs_fidelity(b, a)))
        pure = random_pure_density_matrix((2, 2), rng)
        devs.append(abs(hs_fidelity(pure, pure) - 1.0))
    return _result("Hilbert-Schmidt fidelity symmetry", devs, 1e-12)


def check_oracle_equivalence(seed=0, n=200) -> PropertyResult:
    rng = _rng(seed, 5)
    devs = []
    for _ in range(n):
        rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
        closed = interferometric_power(rho)
        value, _ = ip_grid_search(rho, 256, 512)
        if value < closed - 1e-12:
            devs.append(1.0)  # grid fell below the certified minimum
        else:
            devs.append(abs(value - closed))
    return _result("closed form vs sphere-grid minimization", devs, 5e-4)


def check_faithfulness(seed=0, n=50) -> PropertyResult:
    rng = _rng(seed, 6)
    devs = []
    for i in range(n):
        classical = (
            random_classical_quantum_state((2, 2), rng)
            if i % 2 == 0
            else random_classical_classical_state((2, 2), rng)
        )
        devs.append(interferometric_power(classical) / 1e-9)
    for _ in range(n):
        discordant = random_density_matrix((2, 2), rng)
        value = interferometric_power(discordant)
        devs.append(0.0 if value > 1e-6 else 2.0)
    return _result("faithfulness on classical vs discordant states", devs, 1.0)


def check_local_unitary_invariance(seed=0, n=100) -> PropertyResult:
    rng = _rng(seed, 7)
    devs = []
    for _ in range(n):
        rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
        u = tensor(haar_unitary(2, rng), haar_unitary(2, rng))
        rotated = DensityMatrix.from_matrix(u @ rho.matrix @ dagger(u), (2, 2))
        devs.append(
            abs(interferometric_power(rotated) - interferometric_power(rho))
        )
    return _result("local-unitary invariance", devs, 1e-9)


def check_channel_monotonicity(seed=0, n=100) -> PropertyResult:
    rng = _rng(seed, 8)
    devs = []
    for i in range(n):
        rho = random_density_matrix((2, 2), rng)
        if i % 2 == 0:
            kraus = depolarizing_kraus(rng.uniform(0, 1))
        else:
            kraus = amplitude_damping_kraus(rng.uniform(0, 1))
        degraded = apply_channel_b(rho, kraus)
        excess = interferometric_power(degraded) - interferometric_power(rho)
        devs.append(max(excess, 0.0))
    return _result("monotonicity under B-side channels", devs, 1e-9)


def check_pure_state_reduction(seed=0, n=50) -> PropertyResult:
    rng = _rng(seed, 9)
    devs = []
    for _ in range(n):
        pure = random_pure_density_matrix((2, 2), rng)
        ip = interferometric_power(pure)
        variance, _ = min_local_variance(pure)
        devs.append(abs(ip - variance))
        devs.append(abs(local_quantum_uncertainty(pure) - ip))
    return _result("pure-state reduction to minimal local variance", devs, 1e-6)


def check_hierarchy(seed=0, n=500) -> PropertyResult:
    rng = _rng(seed, 10)
    devs = []
    for _ in range(n):
        rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
        gap = local_quantum_uncertainty(rho) - interferometric_power(rho)
        devs.append(max(gap, 0.0))
    return _result("uncertainty lower-bounds the power", devs, 1e-10)


def check_sld_equation(seed=0, n=25) -> PropertyResult:
    rng = _rng(seed, 11)
    devs = []
    for _ in range(n):
        rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
        ham = (
            setting_hamiltonian(int(rng.integers(1, 4)))
            if rng.uniform() < 0.5
            else LocalHamiltonian.from_bloch(_random_bloch(rng))
        )
        phi0 = rng.uniform(0, np.pi / 2)
        decomposition = sld(rho, ham, phi0)
        encoded = evolve(rho, ham, phi0)
        h_full = tensor(ham.matrix, np.eye(rho.d_b))
        drho = -1j * (h_full @ encoded.matrix - encoded.matrix @ h_full)
        operator = decomposition.operator()
        residual = drho - (encoded.matrix @ operator + operator @ encoded.matrix) / 2.0
        devs.append(np.linalg.norm(residual, 2))
        devs.append(abs(np.trace(encoded.matrix @ operator).real))
        devs.append(
            abs(np.trace(encoded.matrix @ operator @ operator).real - qfi(rho, ham))
        )
    return _result("SLD defining equation and QFI consistency", devs, TOL_SLD)


def check_basis_independence(seed=0, n=30) -> PropertyResult:
    rng = _rng(seed, 12)
    devs = []
    for i in range(n):
        f = rng.uniform(0.1, 0.9)
        from .probes import werner_state

        rho = werner_state(f) if i % 2 == 0 else random_density_matrix(
            (2, 2), rng, env_dim=2
        )
        remixed = remix_degenerate_eigenspaces(rho, rng)
        devs.append(
            abs(interferometric_power(remixed) - interferometric_power(rho))
        )
    return _result("degenerate-eigenspace basis independence", devs, 1e-10)


def check_qfi_additive_invariance(seed=0, n=50) -> PropertyResult:
    from .correlations import qfi_scaling_check

    rng = _rng(seed, 13)
    devs = []
    for _ in range(n):
        rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
        ham = LocalHamiltonian.from_bloch(_random_bloch(rng))
        b = rng.uniform(-3, 3)
        devs.append(0.0 if qfi_scaling_check(rho, ham, 1.0, b) else 1.0)
        a = rng.uniform(-2, 2)
        devs.append(0.0 if qfi_scaling_check(rho, ham, a, b) else 1.0)
    return _result("QFI scaling and shift identity", devs, 0.5)


def check_probe_regression(seed=0, n=None) -> PropertyResult:
    grid = flip_angle_grid()
    devs = []
    for p in grid:
        probes = {"Q": discordant_probe(p), "C": classical_probe(p)}
        for label, rho in probes.items():
            devs.append(abs(rho.purity() - (1 + p * p) ** 2 / 4.0))
            for k in (1, 2, 3):
                devs.append(
                    abs(qfi(rho, setting_hamiltonian(k)) - predicted_qfi(label, p, k))
                )
        devs.append(abs(interferometric_power(probes["Q"]) - p * p))
        devs.append(interferometric_power(probes["C"]) / 10.0)  # must be <= 1e-10
    return _result("probe family analytic regression", devs, 1e-9)


def check_setting_landscape(seed=0, n=None) -> PropertyResult:
    from .correlations import qfi_sphere_grid

    p = 0.8
    devs = []
    for label, rho in (("Q", discordant_probe(p)), ("C", classical_probe(p))):
        thetas, phis, grid = qfi_sphere_grid(rho, 181, 360)
        bottom = np.unravel_index(np.argmin(grid), grid.shape)
        # Maximum attained at theta = 0 (grid max must not exceed the polar value).
        devs.append(max(grid.max() - grid[0, 0], 0.0))
        theta_min = thetas[bottom[0]]
        devs.append(abs(theta_min - np.pi / 2))
        if label == "C":
            phi_min = phis[bottom[1]] % np.pi
            devs.append(min(phi_min, np.pi - phi_min))
    return _result("worst/best-case landscape locations", devs, 0.02)


def check_guaranteed_precision(seed=0, n=None) -> PropertyResult:
    from .correlations import qfi_sphere_grid

    devs = []
    for p in (0.2, 0.5, 0.8, 1.0):
        for rho in (discordant_probe(p), classical_probe(p)):
            ip = interferometric_power(rho)
            _, _, grid = qfi_sphere_grid(rho, 64, 64)
            devs.append(max(ip - grid.min() / 4.0, 0.0))
    return _result("worst-case value certifies every direction", devs, 1e-9)


def check_cramer_rao_exact(seed=0, n=None) -> PropertyResult:
    runs = run_sweep(("Q", "C"), (1, 2, 3), flip_angle_grid(), math.pi / 4)
    devs = [
        abs(run.nu * run.phi_hat_var * run.f_exp - 1.0)
        for run in runs
        if not run.failed
    ]
    return _result("exact-mode Cramer-Rao saturation", devs, 1e-9)


def check_unbiasedness_exact(seed=0, n=None) -> PropertyResult:
    devs = []
    for phi_true in (math.pi / 8, math.pi / 4, 3 * math.pi / 8):
        for label in ("Q", "C"):
            for k in (1, 2, 3):
                for p in (0.13, 0.5, 0.9):
                    run = run_experiment(ProbeFamily(label, (p,)), k, phi_true)
                    if not run.failed:
                        devs.append(abs(run.phi_hat_mean - phi_true))
    return _result("exact-mode unbiasedness", devs, 1e-6)


def check_noise_robustness(seed=0, n=200) -> PropertyResult:
    grid = [p for p in flip_angle_grid() if p >= 0.3]
    rng = _rng(seed, 19)
    run_seeds = rng.integers(0, 2**63 - 1, size=n)
    hits = 0
    for i in range(n):
        p = grid[i % len(grid)]
        run = run_experiment(
            ProbeFamily("Q", (p,)),
            1,
            math.pi / 4,
            noise=NoiseSpec(0.05, int(run_seeds[i])),
        )
        if not run.failed and abs(run.phi_hat_mean - math.pi / 4) <= 0.05:
            hits += 1
    fraction = hits / n
    return PropertyResult(
        name="5 percent noise robustness",
        passed=fraction >= 0.95,
        trials=n,
        failures=n - hits,
        worst=1.0 - fraction,
    )


def check_adaptive_convergence(seed=0, n=20) -> PropertyResult:
    rng = _rng(seed, 20)
    devs = []
    found = 0
    while found < n:
        label = "Q" if rng.uniform() < 0.5 else "C"
        p = rng.uniform(0.05, 1.0)
        k = int(rng.integers(1, 4))
        rho = make_probe(ProbeFamily(label, (p,)))
        ham = setting_hamiltonian(k)
        if qfi(rho, ham) <= 0.1:
            continue
        found += 1
        trials, converged = adaptive_localize(rho, ham, math.pi / 4, max_iters=5)
        devs.append(0.0 if converged and len(trials) <= 5 else 1.0)
    return _result("adaptive localization within five rounds", devs, 0.5)


ALL_CHECKS = (
    (check_eig_roundtrip, 100),
    (check_partial_trace_factors, 50),
    (check_evolve_spectrum, 50),
    (check_fidelity_properties, 50),
    (check_oracle_equivalence, 200),
    (check_faithfulness, 50),
    (check_local_unitary_invariance, 100),
    (check_channel_monotonicity, 100),
    (check_pure_state_reduction, 50),
    (check_hierarchy, 500),
    (check_sld_equation, 25),
    (check_basis_independence, 30),
    (check_qfi_additive_invariance, 50),
    (check_probe_regression, None),
    (check_setting_landscape, None),
    (check_guaranteed_precision, None),
    (check_cramer_rao_exact, None),
    (check_unbiasedness_exact, None),
    (check_noise_robustness, 200),
    (check_adaptive_convergence, 20),
)


def run_all(seed: int = 0, scale: float = 1.0) -> list[PropertyResult]:
    """Run every property family; ``scale`` multiplies the ensemble sizes."""
    results = []
    for check, base in ALL_CHECKS:
        if base is None:
            results.append(check(seed))
        else:
            results.append(check(seed, max(1, int(round(base * scale)))))
    return results
