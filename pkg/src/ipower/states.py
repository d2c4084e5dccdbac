"""Bipartite quantum states and local Hamiltonians.

A :class:`DensityMatrix` carries its spectral decomposition, computed once at
construction and reused by every spectral formula downstream.  All values are
immutable; operations return new objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadSubsystemError,
    DimensionMismatchError,
    NonHermitianError,
    NotPositiveSemidefiniteError,
    ZeroPurityError,
)
from .linalg import (
    PAULIS,
    TOL_EIG,
    TOL_HERM,
    TOL_NORM,
    TOL_PSD,
    TOL_RECON,
    TOL_TRACE,
    as_square_complex,
    dagger,
    eig_hermitian,
    is_hermitian,
    tensor,
)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class DensityMatrix:
    """Validated bipartite quantum state with cached spectral decomposition.

    Attributes
    ----------
    matrix : ndarray
        The (d, d) complex density matrix, d = dims[0] * dims[1].
    dims : tuple
        Subsystem dimensions (d_A, d_B).
    eigenvalues : ndarray
        Ascending real eigenvalues, clamped to [0, 1] and renormalized to
        unit sum.
    eigenvectors : ndarray
        Orthonormal eigenvectors as columns, paired with ``eigenvalues``.
    """

    matrix: np.ndarray
    dims: tuple[int, int]
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @classmethod
    def from_matrix(cls, matrix, dims: tuple[int, int]) -> "DensityMatrix":
        """Validate a raw matrix (Hermitian, unit trace, PSD) and diagonalize it."""
        arr = as_square_complex(matrix)
        d_a, d_b = int(dims[0]), int(dims[1])
        if d_a < 1 or d_b < 1 or d_a * d_b != arr.shape[0]:
            raise DimensionMismatchError(
                f"dims {dims} incompatible with matrix of size {arr.shape[0]}"
            )
        if not is_hermitian(arr, TOL_HERM):
            raise NonHermitianError("density matrix is not Hermitian")
        tr = np.trace(arr).real
        if abs(tr - 1.0) > TOL_TRACE:
            raise ValueError(f"trace must be 1, got {tr!r}")
        arr = (arr + dagger(arr)) / 2.0
        vals, vecs = eig_hermitian(arr)
        if vals[0] < -TOL_PSD:
            raise NotPositiveSemidefiniteError(
                f"minimum eigenvalue {vals[0]:.3e} below -{TOL_PSD:g}"
            )
        vals = np.clip(vals, 0.0, None)
        vals = vals / vals.sum()
        return cls(_freeze(arr), (d_a, d_b), _freeze(vals), _freeze(vecs))

    @classmethod
    def from_spectrum(
        cls, eigenvalues, eigenvectors, dims: tuple[int, int]
    ) -> "DensityMatrix":
        """Build a state from an explicit spectral decomposition.

        The decomposition must reconstruct a valid state: orthonormal vectors,
        nonnegative weights summing to one.
        """
        vals = np.asarray(eigenvalues, dtype=float)
        vecs = np.asarray(eigenvectors, dtype=complex)
        d = vecs.shape[0]
        if vecs.shape != (d, len(vals)) or len(vals) != d:
            raise DimensionMismatchError("spectrum shape does not match dimension")
        if np.max(np.abs(dagger(vecs) @ vecs - np.eye(d))) > 1e-8:
            raise ValueError("eigenvectors are not orthonormal")
        if vals.min() < -TOL_PSD:
            raise NotPositiveSemidefiniteError(f"negative weight {vals.min():.3e}")
        if abs(vals.sum() - 1.0) > TOL_TRACE:
            raise ValueError(f"weights must sum to 1, got {vals.sum()!r}")
        order = np.argsort(vals, kind="stable")
        vals = np.clip(vals[order], 0.0, None)
        vals = vals / vals.sum()
        vecs = vecs[:, order]
        matrix = (vecs * vals) @ dagger(vecs)
        d_a, d_b = int(dims[0]), int(dims[1])
        if d_a * d_b != d:
            raise DimensionMismatchError(f"dims {dims} incompatible with size {d}")
        return cls(_freeze(matrix), (d_a, d_b), _freeze(vals), _freeze(vecs))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def d_a(self) -> int:
        return self.dims[0]

    @property
    def d_b(self) -> int:
        return self.dims[1]

    def purity(self) -> float:
        """Tr[rho^2]."""
        return float(np.sum(self.eigenvalues**2))

    def to_json_dict(self) -> dict:
        """Serialize to the interchange schema {"dims", "re", "im"}."""
        return {
            "dims": [self.d_a, self.d_b],
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, payload: dict) -> "DensityMatrix":
        try:
            dims = tuple(int(x) for x in payload["dims"])
            re = np.asarray(payload["re"], dtype=float)
            im = np.asarray(payload["im"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed state payload: {exc}") from exc
        if len(dims) != 2:
            raise ValueError("dims must hold exactly two integers")
        if re.shape != im.shape:
            raise ValueError("re and im parts have different shapes")
        return cls.from_matrix(re + 1j * im, dims)

    @classmethod
    def from_json(cls, text: str) -> "DensityMatrix":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class LocalHamiltonian:
    """Hermitian generator acting on subsystem A.

    ``spectrum`` is the ascending eigenvalue list (the spectral class of the
    generator); ``bloch_vector`` is set exactly when the matrix equals
    n_x sigma_x + n_y sigma_y + n_z sigma_z for a unit 3-vector n.
    """

    matrix: np.ndarray
    spectrum: np.ndarray
    eigenvectors: np.ndarray
    bloch_vector: np.ndarray | None = None

    @classmethod
    def from_matrix(cls, matrix) -> "LocalHamiltonian":
        arr = as_square_complex(matrix)
        if not is_hermitian(arr, TOL_HERM):
            raise NonHermitianError("Hamiltonian is not Hermitian")
        arr = (arr + dagger(arr)) / 2.0
        vals, vecs = eig_hermitian(arr)
        bloch = None
        if arr.shape[0] == 2:
            n = np.array([np.trace(s @ arr).real / 2.0 for s in PAULIS])
            recon = sum(c * s for c, s in zip(n, PAULIS))
            if (
                abs(np.linalg.norm(n) - 1.0) <= TOL_NORM
                and np.max(np.abs(recon - arr)) <= TOL_HERM
            ):
                bloch = _freeze(n)
        return cls(_freeze(arr), _freeze(vals), _freeze(vecs), bloch)

    @classmethod
    def from_bloch(cls, n) -> "LocalHamiltonian":
        """Qubit generator n . sigma for a unit Bloch vector n."""
        n = np.asarray(n, dtype=float)
        if n.shape != (3,):
            raise ValueError("Bloch vector must have three components")
        norm = np.linalg.norm(n)
        if abs(norm - 1.0) > TOL_NORM:
            raise ValueError(f"Bloch vector must be unit length, |n| = {norm!r}")
        matrix = sum(c * s for c, s in zip(n, PAULIS))
        vals, vecs = eig_hermitian(matrix)
        return cls(_freeze(matrix), _freeze(vals), _freeze(vecs), _freeze(n))

    @property
    def d_a(self) -> int:
        return self.matrix.shape[0]

    def phase_unitary(self, phi: float) -> np.ndarray:
        """exp(-i phi H) on subsystem A, via the cached eigendecomposition."""
        return (self.eigenvectors * np.exp(-1j * phi * self.spectrum)) @ dagger(
            self.eigenvectors
        )


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Trace out one subsystem, keeping ``'A'`` or ``'B'``.

    The result is returned as a density matrix with a trivial second factor,
    dims (d, 1).
    """
    if keep not in ("A", "B"):
        raise BadSubsystemError(f"keep must be 'A' or 'B', got {keep!r}")
    d_a, d_b = rho.dims
    blocks = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        reduced = np.trace(blocks, axis1=1, axis2=3)
    else:
        reduced = np.trace(blocks, axis1=0, axis2=2)
    return DensityMatrix.from_matrix(reduced, (reduced.shape[0], 1))


def evolve(rho: DensityMatrix, ham: LocalHamiltonian, phi: float) -> DensityMatrix:
    """Apply the local phase shift (e^{-i phi H} ⊗ I) rho (e^{-i phi H} ⊗ I)†.

    The output reuses the input spectrum with rotated eigenvectors, so unitary
    invariance of the eigenvalues is exact.
    """
    if ham.d_a != rho.d_a:
        raise DimensionMismatchError(
            f"Hamiltonian dimension {ham.d_a} != subsystem A dimension {rho.d_a}"
        )
    u_full = tensor(ham.phase_unitary(phi), np.eye(rho.d_b))
    return DensityMatrix.from_spectrum(
        rho.eigenvalues, u_full @ rho.eigenvectors, rho.dims
    )


def hs_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Hilbert-Schmidt fidelity Tr[rho sigma] / sqrt(Tr[rho^2] Tr[sigma^2])."""
    if rho.dims != sigma.dims:
        raise DimensionMismatchError(f"dims differ: {rho.dims} vs {sigma.dims}")
    overlap = np.trace(rho.matrix @ sigma.matrix).real
    norms = np.trace(rho.matrix @ rho.matrix).real * np.trace(
        sigma.matrix @ sigma.matrix
    ).real
    if norms <= 0.0:
        raise ZeroPurityError("state with zero Hilbert-Schmidt norm")
    return float(overlap / np.sqrt(norms))


def save_state(rho: DensityMatrix, path) -> None:
    """Write a state to a JSON file (exact float round trip)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rho.to_json_dict(), fh)


def load_state(path) -> DensityMatrix:
    """Read a state from a JSON file written by :func:`save_state`."""
    with open(path, "r", encoding="utf-8") as fh:
        return DensityMatrix.from_json_dict(json.load(fh))
