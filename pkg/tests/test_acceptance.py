"""Acceptance suite: one test per exit criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.  Every tolerance is pinned here; nothing is calibrated at runtime.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from ipower.correlations import (
    interferometric_power,
    ip_bell_diagonal,
    ip_grid_search,
    local_quantum_uncertainty,
    min_local_variance,
    qfi,
)
from ipower.estimation import NoiseSpec, ProbeFamily, adaptive_localize, run_experiment, run_sweep
from ipower.linalg import dagger, tensor
from ipower.probes import (
    bell_diagonal_state,
    classical_probe,
    discordant_probe,
    flip_angle_grid,
    make_probe,
    predicted_qfi,
    setting_hamiltonian,
)
from ipower.sampling import (
    amplitude_damping_kraus,
    apply_channel_b,
    depolarizing_kraus,
    haar_unitary,
    random_classical_classical_state,
    random_classical_quantum_state,
    random_density_matrix,
    random_pure_density_matrix,
)
from ipower.states import DensityMatrix

PI4 = math.pi / 4
P_GRID = flip_angle_grid()  # 37 points, p = cos(theta), theta = 0..90 deg by 2.5


@contextmanager
def criterion(number, description):
    try:
        yield
    except Exception:
        print(f"[FAIL] criterion {number:2d}: {description}")
        raise
    print(f"[PASS] criterion {number:2d}: {description}")


def test_criterion_01_precision_curves():
    with criterion(1, "qfi/4 matches the analytic curves on the 37-point grid"):
        assert len(P_GRID) == 37
        start = time.perf_counter()
        curves = {
            ("Q", 1): lambda p: 2 * p**2 / (1 + p**2),
            ("Q", 2): lambda p: p**2,
            ("Q", 3): lambda p: p**2,
            ("C", 1): lambda p: 2 * p**2 / (1 + p**2),
            ("C", 2): lambda p: p**2 / (1 + p**2),
            ("C", 3): lambda p: 0.0,
        }
        for p in P_GRID:
            probes = {"Q": discordant_probe(p), "C": classical_probe(p)}
            for (label, k), formula in curves.items():
                value = qfi(probes[label], setting_hamiltonian(k)) / 4.0
                assert abs(value - formula(p)) <= 1e-9, (label, k, p)
        assert time.perf_counter() - start < 5.0


def test_criterion_02_power_identity():
    with criterion(2, "power of the Q family is p^2, of the C family is 0"):
        for p in P_GRID:
            assert abs(interferometric_power(discordant_probe(p)) - p * p) <= 1e-9
            assert interferometric_power(classical_probe(p)) <= 1e-10


def test_criterion_03_werner_formula():
    with criterion(3, "Werner power equals 2 f^2 / (1 + f)"):
        for f in np.arange(0.0, 1.0 + 1e-12, 0.1):
            from ipower.probes import werner_state

            value = interferometric_power(werner_state(f))
            assert abs(value - 2 * f**2 / (1 + f)) <= 1e-9, f


def test_criterion_04_bell_diagonal_closed_form():
    with criterion(4, "Bell-diagonal closed form matches the spectral route"):
        rng = np.random.default_rng(40)
        accepted = 0
        while accepted < 100:
            c = rng.uniform(-1.0, 1.0, 3)
            eigs = np.array(
                [
                    1 + c[0] - c[1] + c[2],
                    1 - c[0] + c[1] + c[2],
                    1 + c[0] + c[1] - c[2],
                    1 - c[0] - c[1] - c[2],
                ]
            ) / 4.0
            if eigs.min() < 1e-6 or 1.0 - np.max(c**2) < 1e-6:
                continue  # outside the tetrahedron or in the degenerate band
            accepted += 1
            closed = ip_bell_diagonal(*c)
            spectral = interferometric_power(bell_diagonal_state(*c))
            assert abs(closed - spectral) <= 1e-8, tuple(c)


def test_criterion_05_oracle_equivalence():
    with criterion(5, "sphere-grid minimization agrees with the closed form"):
        rng = np.random.default_rng(50)
        start = time.perf_counter()
        for _ in range(200):
            rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
            closed = interferometric_power(rho)
            value, _ = ip_grid_search(rho, 256, 512)
            assert value >= closed - 1e-12
            assert abs(value - closed) <= 5e-4
        assert time.perf_counter() - start < 60.0


def test_criterion_06_hierarchy():
    with criterion(6, "power never falls below the local quantum uncertainty"):
        rng = np.random.default_rng(60)
        for _ in range(500):
            rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
            assert interferometric_power(rho) >= (
                local_quantum_uncertainty(rho) - 1e-10
            )


def test_criterion_07_measure_properties():
    with criterion(7, "faithfulness, unitary invariance, monotonicity, purity"):
        start = time.perf_counter()
        rng = np.random.default_rng(70)

        # Faithfulness: classical states vanish, generic states do not.
        for sampler in (
            random_classical_quantum_state,
            random_classical_classical_state,
        ):
            for _ in range(50):
                assert interferometric_power(sampler((2, 2), rng)) <= 1e-9
        for _ in range(50):
            assert interferometric_power(random_density_matrix((2, 2), rng)) > 1e-6

        # Invariance under local unitaries.
        for _ in range(100):
            rho = random_density_matrix((2, 2), rng, env_dim=int(rng.integers(1, 5)))
            u = tensor(haar_unitary(2, rng), haar_unitary(2, rng))
            rotated = DensityMatrix.from_matrix(u @ rho.matrix @ dagger(u), (2, 2))
            assert abs(
                interferometric_power(rotated) - interferometric_power(rho)
            ) <= 1e-9

        # Monotonicity under channels on the unshifted side.
        for i in range(100):
            rho = random_density_matrix((2, 2), rng)
            kraus = (
                depolarizing_kraus(rng.uniform(0, 1))
                if i % 2 == 0
                else amplitude_damping_kraus(rng.uniform(0, 1))
            )
            degraded = apply_channel_b(rho, kraus)
            assert interferometric_power(degraded) <= (
                interferometric_power(rho) + 1e-9
            )

        # Pure-state reduction to the minimal local variance.
        for _ in range(50):
            pure = random_pure_density_matrix((2, 2), rng)
            power = interferometric_power(pure)
            variance, _ = min_local_variance(pure)
            assert abs(power - variance) <= 1e-6
            assert abs(local_quantum_uncertainty(pure) - power) <= 1e-6

        assert time.perf_counter() - start < 120.0


def test_criterion_08_estimation_exact_mode():
    with criterion(8, "exact-mode estimation is unbiased and saturates Cramer-Rao"):
        runs = run_sweep(("Q", "C"), (1, 2, 3), P_GRID, PI4, nu=10**15)
        for run in runs:
            if run.probe_label == "C" and run.setting_k == 3:
                assert run.failed
                continue
            if run.p == 0.0 or run.f_exp <= 1e-10:
                assert run.failed  # no information at p = 0
                continue
            assert not run.failed, (run.probe_label, run.setting_k, run.p)
            assert abs(run.phi_hat_mean - PI4) <= 1e-6
            assert abs(run.nu * run.phi_hat_var * run.f_exp - 1.0) <= 1e-9
            f_th = predicted_qfi(run.probe_label, run.p, run.setting_k)
            assert run.phi_hat_var == pytest.approx(
                1.0 / (run.nu * f_th), rel=1e-9
            )


def test_criterion_09_qfi_saturates_power():
    with criterion(9, "reconstructed qfi/4 saturates the power for Q at k = 2, 3"):
        for p in P_GRID:
            power = interferometric_power(discordant_probe(p))
            for k in (2, 3):
                run = run_experiment(ProbeFamily("Q", (p,)), k, PI4)
                assert abs(run.f_exp / 4.0 - power) <= 1e-9


def test_criterion_10_adaptive_localization():
    with criterion(10, "adaptive localization reaches pi/4 within five rounds"):
        rho = discordant_probe(0.13)
        ham = setting_hamiltonian(1)
        trials, converged = adaptive_localize(rho, ham, PI4, max_iters=5)
        assert converged
        assert len(trials) <= 5
        assert abs(trials[-1] - PI4) <= 1e-6


def test_criterion_11_noise_robustness_substitute():
    # Hardware-correlated error scatter is not reproducible in simulation;
    # the agreed substitute is the seeded 5 percent relative-Gaussian model.
    with criterion(11, "95 percent of 5 percent-noise runs stay within 0.05 rad"):
        grid = [p for p in P_GRID if p >= 0.3]
        rng = np.random.default_rng(110)
        seeds = rng.integers(0, 2**63 - 1, size=200)
        hits = 0
        for i in range(200):
            run = run_experiment(
                ProbeFamily("Q", (grid[i % len(grid)],)),
                1,
                PI4,
                noise=NoiseSpec(0.05, int(seeds[i])),
            )
            if not run.failed and abs(run.phi_hat_mean - PI4) <= 0.05:
                hits += 1
        assert hits >= 190, f"only {hits}/200 runs within 0.05 rad"
