"""Closed-form 2x2 complex linear algebra for qubit states and POVMs.

All operators are plain (2, 2) complex numpy arrays; pure states are
length-2 complex amplitude vectors.  Nothing here goes beyond the 2x2
closed forms (characteristic roots, adjugate inverse), so results stay
within a few ulp of exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, PureStateError, VerificationError

__all__ = [
    "IDENTITY",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "INCONCLUSIVE",
    "Measurement",
    "PovmValidity",
    "pure_state_from_equator_angle",
    "projector",
    "orthogonal_state",
    "hermitian_part",
    "is_hermitian",
    "require_hermitian",
    "eigenvalues",
    "min_eigenvalue",
    "max_eigenvalue",
    "eigenvector",
    "spectral_norm",
    "bloch_decomposition",
    "from_bloch",
    "purity",
    "require_density_matrix",
    "born_probability",
    "validate_povm",
    "invert_qubit_density",
]

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: Label for the inconclusive ("?") outcome of an incomplete strategy.
INCONCLUSIVE = "?"

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-10
PURITY_TOL = 1e-9


def pure_state_from_equator_angle(phi: float) -> np.ndarray:
    """Equatorial pure state (|0> + e^{i phi}|1>)/sqrt(2)."""
    if not np.isfinite(phi):
        raise DomainError(f"equator angle must be finite, got {phi!r}")
    return np.array([1.0, np.exp(1j * phi)], dtype=complex) / np.sqrt(2.0)


def projector(psi: np.ndarray) -> np.ndarray:
    """Rank-1 projector |psi><psi|."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def orthogonal_state(psi: np.ndarray) -> np.ndarray:
    """The unique (up to phase) state orthogonal to ``psi``.

    Phase convention: first component of the result with magnitude above
    1e-14 is made real and positive.
    """
    psi = np.asarray(psi, dtype=complex)
    perp = np.array([-np.conj(psi[1]), np.conj(psi[0])])
    return _fix_phase(perp / np.linalg.norm(perp))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    for c in v:
        if abs(c) > 1e-14:
            return v * (np.conj(c) / abs(c))
    return v


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def require_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not is_hermitian(m, tol):
        raise DomainError("matrix is not Hermitian within tolerance")
    return m


def eigenvalues(m: np.ndarray) -> tuple[float, float]:
    """Both eigenvalues of a Hermitian 2x2 matrix, (smaller, larger).

    Closed form from the characteristic polynomial; no iterative solver.
    """
    m = require_hermitian(m)
    mid = 0.5 * (m[0, 0].real + m[1, 1].real)
    half_gap = 0.5 * (m[0, 0].real - m[1, 1].real)
    d = np.hypot(half_gap, abs(m[0, 1]))
    return mid - d, mid + d


def min_eigenvalue(m: np.ndarray) -> float:
    return eigenvalues(m)[0]


def max_eigenvalue(m: np.ndarray) -> float:
    return eigenvalues(m)[1]


def eigenvector(m: np.ndarray, eigval: float) -> np.ndarray:
    """Normalized eigenvector of a Hermitian 2x2 matrix for ``eigval``.

    Deterministic phase: first component with magnitude above 1e-14 is
    real positive.  For a (near-)degenerate matrix returns (1, 0).
    """
    m = require_hermitian(m)
    # The two columns of adj(m - eigval*I) both lie in the eigenspace.
    v1 = np.array([m[0, 1], eigval - m[0, 0]])
    v2 = np.array([eigval - m[1, 1], m[1, 0]])
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    n = np.linalg.norm(v)
    if n < 1e-14 * max(1.0, float(np.max(np.abs(m)))):
        return np.array([1.0, 0.0], dtype=complex)
    return _fix_phase(v / n)


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value (operator norm)."""
    return float(np.linalg.norm(np.asarray(m, dtype=complex), 2))


def bloch_decomposition(m: np.ndarray) -> tuple[float, np.ndarray]:
    """Decompose a Hermitian matrix as (t*I + v.sigma)/2.

    Returns ``(t, v)`` with t the trace and v the real Bloch 3-vector.
    """
    m = require_hermitian(m)
    t = float(np.trace(m).real)
    v = np.array(
        [
            2.0 * m[0, 1].real,
            -2.0 * m[0, 1].imag,
            float((m[0, 0] - m[1, 1]).real),
        ]
    )
    return t, v


def from_bloch(t: float, v: Sequence[float]) -> np.ndarray:
    """Inverse of :func:`bloch_decomposition`."""
    v = np.asarray(v, dtype=float)
    return 0.5 * (t * IDENTITY + v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)


def require_density_matrix(rho: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    rho = require_hermitian(rho, tol)
    if abs(np.trace(rho).real - 1.0) > tol:
        raise DomainError("density matrix must have unit trace")
    if min_eigenvalue(rho) < -tol:
        raise DomainError("density matrix must be positive semi-definite")
    return rho


def born_probability(
    state: np.ndarray,
    element: np.ndarray,
    tol: float = PSD_TOL,
    validate: bool = True,
) -> float:
    """Outcome probability Tr(rho pi) for density matrix and POVM element.

    Values within ``tol`` of [0, 1] are clamped to the interval; anything
    farther out is returned raw so construction bugs stay visible.
    """
    if validate:
        state = require_density_matrix(state, tol)
        element = require_hermitian(element, tol)
        if min_eigenvalue(element) < -tol:
            raise DomainError("POVM element must be positive semi-definite")
    p = float(np.trace(state @ element).real)
    if -tol <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + tol:
        return 1.0
    return p


@dataclass(frozen=True)
class PovmValidity:
    """Diagnostic report on positivity and completeness of a POVM."""

    is_valid: bool
    min_element_eigenvalue: float
    completeness_deviation: float


@dataclass(frozen=True)
class Measurement:
    """Labeled POVM: pairs of (label, 2x2 element).

    Labels are trine state indices 0/1/2 (the outcome identifies that
    state) or :data:`INCONCLUSIVE`.
    """

    elements: tuple[tuple[object, np.ndarray], ...]

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.elements)

    def element(self, label) -> np.ndarray:
        for lab, op in self.elements:
            if lab == label:
                return op
        raise KeyError(f"no element labeled {label!r}")

    def operators(self) -> list[np.ndarray]:
        return [op for _, op in self.elements]

    def validity(self, tol: float = PSD_TOL) -> PovmValidity:
        return validate_povm(self.operators(), tol)


def validate_povm(
    elements: Iterable[np.ndarray], tol: float = PSD_TOL
) -> PovmValidity:
    """Report minimum element eigenvalue and completeness deviation.

    This is a report, not a rejection: invalid sets simply come back with
    ``is_valid`` false.
    """
    ops = [require_hermitian(e, max(tol, HERMITICITY_TOL)) for e in elements]
    if not ops:
        raise DomainError("a POVM needs at least one element")
    min_eig = min(min_eigenvalue(op) for op in ops)
    deviation = spectral_norm(sum(ops) - IDENTITY)
    return PovmValidity(
        is_valid=(min_eig >= -tol and deviation <= tol),
        min_element_eigenvalue=min_eig,
        completeness_deviation=deviation,
    )


def invert_qubit_density(
    rho: np.ndarray, tol_purity: float = PURITY_TOL
) -> np.ndarray:
    """Exact inverse of a mixed qubit density matrix.

    Cross-checks the adjugate inverse against the antipodal Bloch form
    [1 - Tr(rho^2)]^{-1} (I - b.sigma); a mismatch beyond 1e-10 raises
    VerificationError.  A (numerically) pure state has no inverse.
    """
    rho = require_density_matrix(rho)
    pur = purity(rho)
    if pur >= 1.0 - tol_purity:
        raise PureStateError(
            f"density matrix is pure within tolerance (purity={pur!r})"
        )
    det = float((rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real)
    adjugate = np.trace(rho) * IDENTITY - rho
    inv = adjugate / det
    _, b = bloch_decomposition(rho)
    antipodal = (IDENTITY - from_bloch(0.0, 2.0 * b)) / (1.0 - pur)
    if np.max(np.abs(inv - antipodal)) > 1e-10 * max(1.0, spectral_norm(inv)):
        raise VerificationError("adjugate and antipodal inverses disagree")
    return inv
