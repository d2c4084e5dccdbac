"""Seeded random ensembles: Haar unitaries, random states and local channels.

Used by the property-verification suites; everything takes an explicit
``numpy.random.Generator`` so results are reproducible and order-independent.
"""

from __future__ import annotations

import numpy as np

from .linalg import dagger, tensor
from .states import DensityMatrix

def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The R-diagonal phases are divided out so the distribution is exactly
    Haar rather than QR-convention dependent.
    """
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    phases = np.diag(r)
    return q * (phases / np.abs(phases)).conj()


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density_matrix(
    dims: tuple[int, int], rng: np.random.Generator, env_dim: int | None = None
) -> DensityMatrix:
    """Random mixed state: partial trace of a Haar pure state over an environment.

    ``env_dim`` controls the rank (1 gives a pure state); by default the
    environment matches the system dimension, which generically yields a
    full-rank state.
    """
    d = dims[0] * dims[1]
    env = d if env_dim is None else int(env_dim)
    psi = random_pure_state(d * env, rng).reshape(d, env)
    return DensityMatrix.from_matrix(psi @ dagger(psi), dims)


def random_pure_density_matrix(
    dims: tuple[int, int], rng: np.random.Generator
) -> DensityMatrix:
    psi = random_pure_state(dims[0] * dims[1], rng)
    return DensityMatrix.from_matrix(np.outer(psi, psi.conj()), dims)


def random_probability_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    w = rng.dirichlet(np.ones(n))
    return w / w.sum()


def random_classical_quantum_state(
    dims: tuple[int, int], rng: np.random.Generator
) -> DensityMatrix:
    """State diagonal in a random local basis on A: sum_j s_j |j><j| x chi_j."""
    d_a, d_b = dims
    u_a = haar_unitary(d_a, rng)
    weights = random_probability_vector(d_a, rng)
    blocks = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    for j in range(d_a):
        ket = u_a[:, j]
        chi = random_density_matrix((d_b, 1), rng).matrix
        blocks += weights[j] * tensor(np.outer(ket, ket.conj()), chi)
    return DensityMatrix.from_matrix(blocks, dims)


def random_classical_classical_state(
    dims: tuple[int, int], rng: np.random.Generator
) -> DensityMatrix:
    """State diagonal in a random product basis on A and B."""
    d_a, d_b = dims
    u_a = haar_unitary(d_a, rng)
    u_b = haar_unitary(d_b, rng)
    blocks = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    weights = random_probability_vector(d_a * d_b, rng).reshape(d_a, d_b)
    for j in range(d_a):
        ket_a = u_a[:, j]
        proj_a = np.outer(ket_a, ket_a.conj())
        for m in range(d_b):
            ket_b = u_b[:, m]
            blocks += weights[j, m] * tensor(proj_a, np.outer(ket_b, ket_b.conj()))
    return DensityMatrix.from_matrix(blocks, dims)


def remix_degenerate_eigenspaces(
    rho: DensityMatrix, rng: np.random.Generator, gap: float = 1e-8
) -> DensityMatrix:
    """Rotate the eigenvectors inside each degenerate eigenvalue cluster.

    The state is unchanged; only the stored spectral decomposition picks a
    different orthonormal basis for degenerate eigenspaces.  Downstream
    spectral formulas must be invariant under this remixing.
    """
    vals = rho.eigenvalues
    vecs = rho.eigenvectors.copy()
    start = 0
    while start < len(vals):
        stop = start + 1
        while stop < len(vals) and vals[stop] - vals[stop - 1] < gap:
            stop += 1
        if stop - start > 1:
            mix = haar_unitary(stop - start, rng)
            vecs[:, start:stop] = vecs[:, start:stop] @ mix
        start = stop
    return DensityMatrix.from_spectrum(vals, vecs, rho.dims)


def apply_channel_b(rho: DensityMatrix, kraus: list[np.ndarray]) -> DensityMatrix:
    """Apply a channel with the given Kraus operators on subsystem B."""
    eye_a = np.eye(rho.d_a)
    out = np.zeros_like(rho.matrix)
    for op in kraus:
        full = tensor(eye_a, op)
        out = out + full @ rho.matrix @ dagger(full)
    return DensityMatrix.from_matrix(out, rho.dims)


def depolarizing_kraus(strength: float, dim: int = 2) -> list[np.ndarray]:
    """Kraus operators of the qubit depolarizing channel of the given strength."""
    if dim != 2:
        raise ValueError("depolarizing channel implemented for qubits only")
    from .linalg import PAULIS

    ops = [np.sqrt(1.0 - 3.0 * strength / 4.0) * np.eye(2, dtype=complex)]
    ops += [np.sqrt(strength / 4.0) * s for s in PAULIS]
    return ops


def amplitude_damping_kraus(gamma: float) -> list[np.ndarray]:
    """Kraus operators of the qubit amplitude-damping channel."""
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return [k0, k1]
