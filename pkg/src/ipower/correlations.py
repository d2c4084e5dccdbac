"""Quantum Fisher information, SLD machinery and discord-type correlation measures.

The central quantities for a bipartite state rho with spectral decomposition
{q_i, |psi_i>} and a local generator H on subsystem A:

* ``qfi``            F = 4 sum_{i<l} (q_i - q_l)^2 / (q_i + q_l) |<psi_i|H x I|psi_l>|^2
* ``sld``            L, the symmetric logarithmic derivative at a reference phase
* ``interferometric_power``   the worst-case F/4 over all qubit generators of
  spectrum (-1, +1), computed as the smallest eigenvalue of a 3x3 quadratic form
* ``local_quantum_uncertainty``  the worst-case skew information over the same class

Pairs whose eigenvalue sum falls below ``RANK_CUTOFF`` are excluded from all
spectral sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import (
    DimensionMismatchError,
    InvalidCorrelationTripleError,
    SubsystemANotQubitError,
)
from .linalg import PAULIS, RANK_CUTOFF, TOL_PSD, dagger, eig_hermitian, tensor
from .states import DensityMatrix, LocalHamiltonian, evolve

TOL_CLOSED = 1e-9
TOL_SLD = 1e-9

# Below this value of 1 - ||C||_inf^2 the Bell-diagonal closed formula is
# singular and the spectral route is used instead.
BELL_DIAGONAL_DENOMINATOR_CUTOFF = 1e-9


def _pair_weights(q: np.ndarray) -> np.ndarray:
    """(q_i - q_l)^2 / (q_i + q_l) with vanishing-sum pairs dropped."""
    s = q[:, None] + q[None, :]
    d = q[:, None] - q[None, :]
    w = np.zeros_like(s)
    mask = s > RANK_CUTOFF
    w[mask] = d[mask] ** 2 / s[mask]
    return w


def _generator_in_eigenbasis(
    rho: DensityMatrix, ham: LocalHamiltonian
) -> np.ndarray:
    if ham.d_a != rho.d_a:
        raise DimensionMismatchError(
            f"Hamiltonian dimension {ham.d_a} != subsystem A dimension {rho.d_a}"
        )
    h_full = tensor(ham.matrix, np.eye(rho.d_b))
    v = rho.eigenvectors
    return dagger(v) @ h_full @ v


def _pauli_stack_in_eigenbasis(rho: DensityMatrix) -> np.ndarray:
    """sigma_m x I_B written in the eigenbasis of rho, stacked over m."""
    if rho.d_a != 2:
        raise SubsystemANotQubitError(
            f"subsystem A has dimension {rho.d_a}, closed form needs a qubit"
        )
    v = rho.eigenvectors
    eye_b = np.eye(rho.d_b)
    return np.stack([dagger(v) @ tensor(s, eye_b) @ v for s in PAULIS])


def qfi(rho: DensityMatrix, ham: LocalHamiltonian) -> float:
    """Quantum Fisher information of rho for the phase generated by H x I.

    For pure states this equals four times the variance of the generator.
    The value is invariant under a global phase of the eigenvectors and under
    adding multiples of the identity to H.
    """
    h_el = _generator_in_eigenbasis(rho, ham)
    w = _pair_weights(rho.eigenvalues)
    # 4 * sum_{i<l} == 2 * full double sum (the diagonal vanishes).
    return float(2.0 * np.sum(w * np.abs(h_el) ** 2))


@dataclass(frozen=True)
class SldDecomposition:
    """Eigenvalues and eigenbasis of the symmetric logarithmic derivative.

    The SLD solves d rho^phi / d phi = (rho^phi L + L rho^phi) / 2 at the
    reference phase.  Its eigenvalues do not depend on the reference phase;
    the eigenbasis rotates covariantly with the encoded state.
    """

    eigenvalues: np.ndarray
    eigenbasis: np.ndarray
    reference_phase: float
    setting: LocalHamiltonian

    @property
    def dim(self) -> int:
        return self.eigenbasis.shape[0]

    def operator(self) -> np.ndarray:
        """Reassemble the SLD matrix from its eigendecomposition."""
        return (self.eigenbasis * self.eigenvalues) @ dagger(self.eigenbasis)


def sld(rho: DensityMatrix, ham: LocalHamiltonian, phi0: float) -> SldDecomposition:
    """Symmetric logarithmic derivative of the encoded state at phase ``phi0``.

    The derivative of the encoded state is the commutator -i[H x I, rho^phi0];
    matrix elements of L between eigenvector pairs whose eigenvalue sum falls
    below the rank cutoff are set to zero (they are unconstrained by the
    defining equation).
    """
    encoded = evolve(rho, ham, phi0)
    q = encoded.eigenvalues
    v = encoded.eigenvectors
    h_el = _generator_in_eigenbasis(encoded, ham)
    s = q[:, None] + q[None, :]
    d = q[None, :] - q[:, None]  # q_j - q_i
    coeff = np.zeros_like(s)
    mask = s > RANK_CUTOFF
    coeff[mask] = 2.0 * d[mask] / s[mask]
    l_el = -1j * coeff * h_el
    l_matrix = v @ l_el @ dagger(v)
    l_vals, l_vecs = eig_hermitian(l_matrix)
    return SldDecomposition(l_vals, l_vecs, float(phi0), ham)


def qfi_quadratic_form(rho: DensityMatrix) -> np.ndarray:
    """Real symmetric 3x3 form Q with n^T Q n = qfi(rho, n . sigma) / 4.

    Entry (m, n) is half the double spectral sum of
    (q_i - q_l)^2/(q_i + q_l) <psi_i|sigma_m x I|psi_l><psi_l|sigma_n x I|psi_i>.
    Requires subsystem A to be a qubit; B may have any finite dimension.
    """
    s_el = _pauli_stack_in_eigenbasis(rho)
    w = _pair_weights(rho.eigenvalues)
    form = 0.5 * np.einsum("il,mil,nil->mn", w, s_el, s_el.conj()).real
    return (form + form.T) / 2.0


def interferometric_power(rho: DensityMatrix) -> float:
    """Worst-case qfi/4 over all qubit generators on A with spectrum (-1, +1).

    Equals the smallest eigenvalue of :func:`qfi_quadratic_form`; vanishes
    exactly on states that are classically correlated with respect to A.
    """
    smallest = float(np.linalg.eigvalsh(qfi_quadratic_form(rho))[0])
    return max(smallest, 0.0)


def _unit_vector(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


def bloch_directions(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Uniform (theta, phi) grid on the sphere, theta in [0, pi], phi in [0, 2 pi).

    Returns (thetas, phis, directions) with directions of shape
    (n_theta * n_phi, 3), ordered row-major in (theta, phi).
    """
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    ns = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    )
    return thetas, phis, ns.reshape(-1, 3)


def qfi_sphere_grid(
    rho: DensityMatrix, n_theta: int, n_phi: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """QFI landscape over generator directions n(theta, phi) on the Bloch sphere.

    Evaluates the spectral QFI sum independently at every grid direction and
    returns (thetas, phis, F) with F of shape (n_theta, n_phi).
    """
    thetas, phis, ns = bloch_directions(n_theta, n_phi)
    s_el = _pauli_stack_in_eigenbasis(rho)
    w = _pair_weights(rho.eigenvalues)
    b = np.einsum("gm,mil->gil", ns, s_el)
    f = 2.0 * np.einsum("il,gil->g", w, np.abs(b) ** 2).real
    return thetas, phis, f.reshape(n_theta, n_phi)


def ip_grid_search(
    rho: DensityMatrix, n_theta: int = 180, n_phi: int = 360
) -> tuple[float, np.ndarray]:
    """Brute-force minimization of qfi/4 over a Bloch-sphere grid.

    Returns ``(value, direction)`` where ``value`` is qfi(rho, n . sigma)/4 at
    the minimizing grid direction (ties broken by lowest grid index).  The
    grid value can exceed the true minimum by at most ~||Q||_2 * h^2 for grid
    spacing h, since the landscape is a quadratic form on the sphere; with the
    default 180 x 360 grid this bound is below 1e-3.
    """
    if n_theta < 64 or n_phi < 64:
        raise ValueError("grid must have at least 64 points per angle")
    thetas, phis, grid = qfi_sphere_grid(rho, n_theta, n_phi)
    flat = grid.reshape(-1)
    best = int(np.argmin(flat))
    i, j = divmod(best, n_phi)
    direction = _unit_vector(thetas[i], phis[j])
    return float(flat[best]) / 4.0, direction


def ip_bell_diagonal(c1: float, c2: float, c3: float) -> float:
    """Interferometric power of the Bell-diagonal state with correlations (c1, c2, c3).

    Uses the closed expression
    (||C||_2^2 - ||C||_inf^2 + 2 det C) / (1 - ||C||_inf^2); when the
    denominator degenerates (near-pure states) the spectral route on the
    explicit 4x4 matrix is used instead.
    """
    c = np.array([c1, c2, c3], dtype=float)
    eigs = np.array(
        [
            1 + c1 - c2 + c3,
            1 - c1 + c2 + c3,
            1 + c1 + c2 - c3,
            1 - c1 - c2 - c3,
        ]
    ) / 4.0
    if eigs.min() < -TOL_PSD:
        raise InvalidCorrelationTripleError(
            f"triple {tuple(c)} gives eigenvalues {np.sort(eigs)}"
        )
    sup_sq = float(np.max(c**2))
    if 1.0 - sup_sq < BELL_DIAGONAL_DENOMINATOR_CUTOFF:
        return interferometric_power(_bell_diagonal_state(c1, c2, c3))
    hs_sq = float(np.sum(c**2))
    det = float(np.prod(c))
    return (hs_sq - sup_sq + 2.0 * det) / (1.0 - sup_sq)


def _bell_diagonal_state(c1: float, c2: float, c3: float) -> DensityMatrix:
    matrix = np.eye(4, dtype=complex)
    for coefficient, pauli in zip((c1, c2, c3), PAULIS):
        matrix += coefficient * tensor(pauli, pauli)
    return DensityMatrix.from_matrix(matrix / 4.0, (2, 2))


def skew_information(rho: DensityMatrix, ham: LocalHamiltonian) -> float:
    """Wigner-Yanase skew information -1/2 Tr[[sqrt(rho), H x I]^2].

    Evaluated in the eigenbasis of rho as
    1/2 sum_{i,l} (sqrt(q_i) - sqrt(q_l))^2 |<psi_i|H x I|psi_l>|^2.
    Bounded above by qfi/4, with equality on pure states.
    """
    h_el = _generator_in_eigenbasis(rho, ham)
    root = np.sqrt(rho.eigenvalues)
    w = (root[:, None] - root[None, :]) ** 2
    return max(float(0.5 * np.sum(w * np.abs(h_el) ** 2)), 0.0)


def _skew_quadratic_form(rho: DensityMatrix) -> np.ndarray:
    """3x3 symmetric form K with n^T K n = skew_information(rho, n . sigma).

    Built by evaluating the skew information on the three axes and the three
    diagonal directions and polarizing the quadratic identity.
    """
    if rho.d_a != 2:
        raise SubsystemANotQubitError(
            f"subsystem A has dimension {rho.d_a}, closed form needs a qubit"
        )
    axes = np.eye(3)
    k = np.zeros((3, 3))
    for m in range(3):
        k[m, m] = skew_information(rho, LocalHamiltonian.from_bloch(axes[m]))
    for m in range(3):
        for n in range(m + 1, 3):
            u = (axes[m] + axes[n]) / np.sqrt(2.0)
            value = skew_information(rho, LocalHamiltonian.from_bloch(u))
            k[m, n] = k[n, m] = value - (k[m, m] + k[n, n]) / 2.0
    return k


def local_quantum_uncertainty(rho: DensityMatrix) -> float:
    """Worst-case skew information over qubit generators on A with spectrum (-1, +1).

    Lower-bounds the interferometric power for every state.
    """
    smallest = float(np.linalg.eigvalsh(_skew_quadratic_form(rho))[0])
    return max(smallest, 0.0)


def skew_grid_search(
    rho: DensityMatrix, n_theta: int = 128, n_phi: int = 256, refine: bool = True
) -> tuple[float, np.ndarray]:
    """Dense-grid minimization of the skew information over the Bloch sphere.

    Cross-checks :func:`local_quantum_uncertainty` without going through the
    polarized quadratic form; ``refine`` polishes the grid argmin with a
    direct simplex search on the angles.
    """
    thetas, phis, ns = bloch_directions(n_theta, n_phi)
    s_el = _pauli_stack_in_eigenbasis(rho)
    root = np.sqrt(rho.eigenvalues)
    w = (root[:, None] - root[None, :]) ** 2
    b = np.einsum("gm,mil->gil", ns, s_el)
    values = 0.5 * np.einsum("il,gil->g", w, np.abs(b) ** 2).real
    best = int(np.argmin(values))

    def of_angles(x):
        m = np.einsum("m,mil->il", _unit_vector(*x), s_el)
        return 0.5 * float(np.sum(w * np.abs(m) ** 2))

    i, j = divmod(best, n_phi)
    x0 = np.array([thetas[i], phis[j]])
    if refine:
        res = minimize(
            of_angles, x0, method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12}
        )
        x0 = res.x
    return of_angles(x0), _unit_vector(*x0)


def min_local_variance(
    rho: DensityMatrix, n_theta: int = 128, n_phi: int = 256, refine: bool = True
) -> tuple[float, np.ndarray]:
    """Minimum of Var(n . sigma x I) over unit Bloch vectors n, by direct search.

    The variance is evaluated literally as Tr[rho H^2] - Tr[rho H]^2 at every
    grid direction (no spectral shortcut), then polished with a simplex search
    when ``refine`` is set.  For pure states this equals the interferometric
    power.
    """
    if rho.d_a != 2:
        raise SubsystemANotQubitError(
            f"subsystem A has dimension {rho.d_a}, Bloch search needs a qubit"
        )
    eye_b = np.eye(rho.d_b)
    stack = np.stack([tensor(s, eye_b) for s in PAULIS])

    def variance(n):
        h = np.einsum("m,mij->ij", n, stack)
        first = np.trace(rho.matrix @ h).real
        second = np.trace(rho.matrix @ h @ h).real
        return float(second - first * first)

    thetas, phis, ns = bloch_directions(n_theta, n_phi)
    h_all = np.einsum("gm,mij->gij", ns, stack)
    first = np.einsum("gij,ji->g", h_all, rho.matrix).real
    second = np.einsum("gij,gjk,ki->g", h_all, h_all, rho.matrix).real
    values = second - first**2
    best = int(np.argmin(values))
    i, j = divmod(best, n_phi)
    x0 = np.array([thetas[i], phis[j]])

    def of_angles(x):
        return variance(_unit_vector(*x))

    if refine:
        res = minimize(
            of_angles, x0, method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12}
        )
        x0 = res.x
    return of_angles(x0), _unit_vector(*x0)


def qfi_scaling_check(
    rho: DensityMatrix, ham: LocalHamiltonian, a: float, b: float
) -> bool:
    """Check the identity qfi(rho, a H + b I) = a^2 qfi(rho, H)."""
    shifted = LocalHamiltonian.from_matrix(
        a * ham.matrix + b * np.eye(ham.d_a)
    )
    reference = a * a * qfi(rho, ham)
    return abs(qfi(rho, shifted) - reference) <= TOL_CLOSED * max(1.0, reference)
