"""Dense complex linear algebra primitives for finite-dimensional quantum states.

Everything operates on plain ``numpy.ndarray`` objects with ``complex128``
entries; matrices are row-major and square.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergenceError, NonHermitianError

# Tolerances used throughout the library.
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_NORM = 1e-10
TOL_PSD = 1e-9
TOL_EIG = 1e-9
TOL_ORTH = 1e-9
TOL_RECON = 1e-9

# Eigenvalue pairs whose sum falls below this cutoff are dropped from the
# spectral sums (the analytic formulas skip vanishing denominators).
RANK_CUTOFF = 1e-12

# Eigenvalues closer than this are treated as one degenerate cluster.
DEGENERACY_GAP = 1e-8

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_square_complex(m) -> np.ndarray:
    """Coerce input to a finite square complex matrix."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("matrix entries must be finite")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def is_hermitian(m: np.ndarray, tol: float = TOL_HERM) -> bool:
    """True when ``m`` equals its conjugate transpose within ``tol`` (max norm)."""
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two square matrices.

    Entry ((i*db + k), (j*db + l)) of the result is ``a[i, j] * b[k, l]``.
    """
    return np.kron(as_square_complex(a), as_square_complex(b))


def eig_hermitian(m, tol: float = TOL_HERM) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues in ascending
    order and orthonormal eigenvectors as the columns of the second array.
    Within clusters of eigenvalues closer than ``DEGENERACY_GAP`` the columns
    are reordered lexicographically by their rounded components, so the output
    is deterministic for bit-identical inputs.

    Raises
    ------
    NonHermitianError
        If ``m`` deviates from Hermiticity by more than ``tol``.
    NoConvergenceError
        If the underlying iteration fails to converge.
    """
    arr = as_square_complex(m)
    if not is_hermitian(arr, tol):
        raise NonHermitianError(
            f"matrix is not Hermitian within {tol:g} "
            f"(deviation {np.max(np.abs(arr - dagger(arr))):.3e})"
        )
    try:
        vals, vecs = np.linalg.eigh((arr + dagger(arr)) / 2.0)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    return vals, _sort_degenerate_clusters(vals, vecs)


def _sort_degenerate_clusters(vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Reorder eigenvector columns inside degenerate clusters deterministically."""
    n = len(vals)
    out = vecs.copy()
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[stop - 1] < DEGENERACY_GAP:
            stop += 1
        if stop - start > 1:
            cols = range(start, stop)
            keys = {
                j: tuple(
                    np.round(np.concatenate([vecs[:, j].real, vecs[:, j].imag]), 12)
                )
                for j in cols
            }
            order = sorted(cols, key=keys.get)
            out[:, start:stop] = vecs[:, order]
        start = stop
    return out


def expm_hermitian(h: np.ndarray, scale: complex = 1.0) -> np.ndarray:
    """``exp(scale * h)`` for Hermitian ``h`` via its eigendecomposition."""
    vals, vecs = eig_hermitian(h)
    return (vecs * np.exp(scale * vals)) @ dagger(vecs)
