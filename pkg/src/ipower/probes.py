"""Probe state families and benchmark generator settings.

Two iso-purity two-qubit families drive the estimation benchmark: the
discordant family ``Q`` and the classically correlated family ``C``, both
parameterized by a purity parameter p in [0, 1] (p = cos(theta) for a flip
angle theta).  Werner, Bell-diagonal, the pure Bell state and a maximally
discordant separable state complete the set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadSettingError,
    NotPositiveSemidefiniteError,
    ParameterOutOfRangeError,
)
from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, PAULIS, tensor
from .states import DensityMatrix, LocalHamiltonian

PROBE_LABELS = ("Q", "C", "werner", "belldiag", "sep", "bell")

_INV_SQRT2 = 1.0 / np.sqrt(2.0)

#: |Phi+> = (|00> + |11>)/sqrt(2)
BELL_PHI_PLUS = np.array([_INV_SQRT2, 0.0, 0.0, _INV_SQRT2], dtype=complex)


@dataclass(frozen=True)
class ProbeFamily:
    """A probe family label together with its parameters."""

    label: str
    params: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.label not in PROBE_LABELS:
            raise ParameterOutOfRangeError(
                f"unknown probe label {self.label!r}; choose from {PROBE_LABELS}"
            )
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))

    @property
    def p(self) -> float:
        """First family parameter (purity parameter, Werner weight, ...)."""
        return self.params[0] if self.params else float("nan")


def discordant_probe(p: float) -> DensityMatrix:
    """Discordant two-qubit probe with purity parameter p in [0, 1].

    Mixes the Bell state |Phi+> coherences into a diagonal background; its
    interferometric power is p^2 and its purity (1 + p^2)^2 / 4.
    """
    _check_unit_interval("p", p)
    m = np.array(
        [
            [1 + p * p, 0, 0, 2 * p],
            [0, 1 - p * p, 0, 0],
            [0, 0, 1 - p * p, 0],
            [2 * p, 0, 0, 1 + p * p],
        ],
        dtype=complex,
    )
    return DensityMatrix.from_matrix(m / 4.0, (2, 2))


def classical_probe(p: float) -> DensityMatrix:
    """Classically correlated two-qubit probe with the same purity as ``discordant_probe``.

    Diagonal in the product basis |±>|±>; its interferometric power vanishes
    for every p.
    """
    _check_unit_interval("p", p)
    m = np.array(
        [
            [1, p * p, p, p],
            [p * p, 1, p, p],
            [p, p, 1, p * p],
            [p, p, p * p, 1],
        ],
        dtype=complex,
    )
    return DensityMatrix.from_matrix(m / 4.0, (2, 2))


def werner_state(f: float) -> DensityMatrix:
    """Mixture f |Phi+><Phi+| + (1 - f) I/4, f in [0, 1]."""
    _check_unit_interval("f", f)
    m = f * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj()) + (1 - f) * np.eye(4) / 4.0
    return DensityMatrix.from_matrix(m, (2, 2))


def bell_diagonal_state(c1: float, c2: float, c3: float) -> DensityMatrix:
    """Two-qubit state with maximally mixed marginals and correlations (c1, c2, c3)."""
    m = np.eye(4, dtype=complex)
    for c, s in zip((c1, c2, c3), PAULIS):
        m += c * tensor(s, s)
    try:
        return DensityMatrix.from_matrix(m / 4.0, (2, 2))
    except NotPositiveSemidefiniteError as exc:
        raise NotPositiveSemidefiniteError(
            f"correlation triple ({c1}, {c2}, {c3}) lies outside the state tetrahedron"
        ) from exc


def separable_discordant_state() -> DensityMatrix:
    """(|00><00| + |+1><+1|)/2, a separable state with interferometric power 1/2."""
    zero_zero = np.zeros(4, dtype=complex)
    zero_zero[0] = 1.0
    plus_one = np.array([0.0, _INV_SQRT2, 0.0, _INV_SQRT2], dtype=complex)
    m = (
        np.outer(zero_zero, zero_zero.conj()) + np.outer(plus_one, plus_one.conj())
    ) / 2.0
    return DensityMatrix.from_matrix(m, (2, 2))


def bell_probe() -> DensityMatrix:
    """The pure Bell state |Phi+><Phi+|."""
    return DensityMatrix.from_matrix(
        np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj()), (2, 2)
    )


def make_probe(family: ProbeFamily) -> DensityMatrix:
    """Construct the density matrix of a probe family instance."""
    label, params = family.label, family.params
    if label == "Q":
        _expect_params(label, params, 1)
        return discordant_probe(params[0])
    if label == "C":
        _expect_params(label, params, 1)
        return classical_probe(params[0])
    if label == "werner":
        _expect_params(label, params, 1)
        return werner_state(params[0])
    if label == "belldiag":
        _expect_params(label, params, 3)
        return bell_diagonal_state(*params)
    if label == "sep":
        _expect_params(label, params, 0)
        return separable_discordant_state()
    _expect_params(label, params, 0)
    return bell_probe()


def setting_hamiltonian(k: int) -> LocalHamiltonian:
    """Benchmark generator for setting k: sigma_z, (sigma_x + sigma_y)/sqrt(2), sigma_x."""
    if k == 1:
        return LocalHamiltonian.from_matrix(SIGMA_Z)
    if k == 2:
        return LocalHamiltonian.from_matrix((SIGMA_X + SIGMA_Y) * _INV_SQRT2)
    if k == 3:
        return LocalHamiltonian.from_matrix(SIGMA_X)
    raise BadSettingError(f"setting must be 1, 2 or 3, got {k!r}")


def predicted_qfi(label: str, p: float, k: int) -> float:
    """Analytic QFI for the Q/C families under setting k.

    Q: 8 p^2/(1 + p^2), 4 p^2, 4 p^2 for k = 1, 2, 3;
    C: 8 p^2/(1 + p^2), 4 p^2/(1 + p^2), 0.
    """
    if label not in ("Q", "C"):
        raise ParameterOutOfRangeError(
            f"analytic curves exist for labels 'Q' and 'C', got {label!r}"
        )
    _check_unit_interval("p", p)
    if k not in (1, 2, 3):
        raise BadSettingError(f"setting must be 1, 2 or 3, got {k!r}")
    p2 = p * p
    if k == 1:
        return 8.0 * p2 / (1.0 + p2)
    if label == "Q":
        return 4.0 * p2
    if k == 2:
        return 4.0 * p2 / (1.0 + p2)
    return 0.0


def flip_angle_grid(
    start_deg: float = 0.0, stop_deg: float = 90.0, step_deg: float = 2.5
) -> np.ndarray:
    """Purity parameters p = cos(theta) for flip angles theta on a degree grid.

    The default sweep runs from 0 to 90 degrees in 2.5-degree steps
    (37 points), giving p from 1 down to 0.
    """
    if step_deg <= 0:
        raise ParameterOutOfRangeError("step must be positive")
    if stop_deg < start_deg:
        raise ParameterOutOfRangeError("stop must not precede start")
    count = int(round((stop_deg - start_deg) / step_deg))
    degrees = start_deg + step_deg * np.arange(count + 1)
    degrees = degrees[degrees <= stop_deg + 1e-12]
    if degrees.size == 0:
        raise ParameterOutOfRangeError("empty flip-angle grid")
    return np.cos(np.deg2rad(degrees))


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ParameterOutOfRangeError(f"{name} must lie in [0, 1], got {value!r}")


def _expect_params(label: str, params: tuple, count: int) -> None:
    if len(params) != count:
        raise ParameterOutOfRangeError(
            f"family {label!r} takes {count} parameter(s), got {len(params)}"
        )
