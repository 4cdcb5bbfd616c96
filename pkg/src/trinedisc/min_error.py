"""Minimum-error discrimination of the trine ensemble, in closed form.

Two-outcome branch: a projective measurement in the equator plane at an
angle fixed by the ratio of the two largest priors.  Three-outcome
branch: the Lagrangian operator Gamma is solved from a 3x3 linear system
in its inverse-Bloch components, and the POVM elements are extracted from
the rank-1 structure of Gamma - p_j rho_j.  A quartic determinant in
(p0, p1) decides which branch is globally optimal, and every dispatched
measurement is re-verified against the Helstrom optimality conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegenerateError,
    DomainError,
    RankError,
    RegionError,
    VerificationError,
    ZeroPriorError,
)
from .qubit import (
    IDENTITY,
    Measurement,
    bloch_decomposition,
    eigenvalues,
    eigenvector,
    from_bloch,
    hermitian_part,
    min_eigenvalue,
    projector,
    pure_state_from_equator_angle,
    spectral_norm,
)
from .trine import Priors, transform_to_original, trine_projectors, trine_states

__all__ = [
    "GammaSolution",
    "HelstromReport",
    "OptimalResult",
    "BREAKDOWN_P",
    "theta_two_element",
    "two_element_measurement",
    "p_correct_two_element",
    "boundary_matrix",
    "boundary_determinant",
    "critical_delta",
    "gamma_three_element",
    "three_element_weights_raw",
    "three_element_measurement",
    "p_correct_three_element",
    "check_helstrom",
    "optimal_measurement",
]

#: Symmetric-prior breakdown point: at delta = 0 the third outcome's weight
#: changes sign here and the two-outcome measurement takes over.
BREAKDOWN_P = 4.0 / (9.0 + math.sqrt(3.0))

_TIE_TOL = 1e-12
_HELSTROM_TOL = 1e-9


def theta_two_element(priors: Priors) -> float:
    """Measurement angle of the optimal two-outcome strategy.

    atan2(-sqrt(3) p1, 2 p0 + p1) fixes the branch: theta in (-pi/2, 0],
    biasing the measurement toward the more likely state.
    """
    if priors.p0 + priors.p1 <= 0.0:
        raise DegenerateError("two-element measurement needs p0 + p1 > 0")
    return math.atan2(-math.sqrt(3.0) * priors.p1, 2.0 * priors.p0 + priors.p1)


def two_element_measurement(priors: Priors) -> Measurement:
    """Projective measurement identifying states 0 and 1 (canonical frame)."""
    theta = theta_two_element(priors)
    ket0 = pure_state_from_equator_angle(theta)
    ket1 = pure_state_from_equator_angle(theta + math.pi)
    return Measurement(((0, projector(ket0)), (1, projector(ket1))))


def p_correct_two_element(priors: Priors) -> float:
    """Success probability of the optimal two-outcome strategy.

    Evaluates (p0 + p1 + sqrt(p0^2 + p0 p1 + p1^2))/2 and cross-checks the
    equivalent (p, delta) form p + sqrt(3 p^2 + delta^2)/2.
    """
    p0, p1 = priors.p0, priors.p1
    value = 0.5 * (p0 + p1 + math.sqrt(p0 * p0 + p0 * p1 + p1 * p1))
    alt = priors.p + 0.5 * math.sqrt(3.0 * priors.p**2 + priors.delta**2)
    if abs(value - alt) > 1e-12:
        raise VerificationError(
            f"two-element success probability forms disagree: {value} vs {alt}"
        )
    return value


def boundary_matrix(priors: Priors) -> np.ndarray:
    """M = sum_i p_i rho_i pi_i - p2 rho_2 for the two-outcome measurement.

    Positivity of M is the remaining Helstrom condition for the
    two-outcome strategy to stay optimal once state 2 joins the ensemble.
    """
    m = two_element_measurement(priors)
    rhos = trine_projectors()
    gamma = priors.p0 * rhos[0] @ m.element(0) + priors.p1 * rhos[1] @ m.element(1)
    gamma = hermitian_part(gamma)
    return gamma - priors.p2 * rhos[2]


def boundary_determinant(priors: Priors) -> float:
    """det M as an explicit quartic polynomial in (p0, p1).

    Positive sign means the two-outcome measurement is globally optimal.
    """
    x, y = priors.p0, priors.p1
    return (
        -3.0 * x**4
        - 3.0 * y**4
        - 10.0 * x**3 * y
        - 10.0 * x * y**3
        + 6.0 * x**3
        + 6.0 * y**3
        - 13.0 * x**2 * y**2
        + 12.0 * x**2 * y
        + 12.0 * x * y**2
        - 3.0 * x**2
        - 3.0 * y**2
        - 2.0 * x * y
    )


def critical_delta(p: float) -> Optional[float]:
    """Boundary delta_c- separating two- from three-outcome optimality.

    Returns None when the root is complex, i.e. the three-outcome strategy
    is optimal for the whole admissible delta range at this p.
    """
    if not (1.0 / 3.0 - 1e-12 <= p <= 0.5 + 1e-12):
        raise DomainError(f"p must lie in [1/3, 1/2], got {p!r}")
    inner = 1.0 - 6.0 * p + 16.0 * p**2 - 24.0 * p**3 + 16.0 * p**4
    if inner < 0.0:
        return None
    radicand = 2.0 - 6.0 * p + 5.0 * p**2 - 2.0 * math.sqrt(inner)
    if radicand < 0.0:
        return None
    return math.sqrt(radicand)


@dataclass(frozen=True)
class GammaSolution:
    """Lagrangian operator for the three-outcome branch.

    ``(a, b_x, b_y)`` are the Bloch components of Gamma^{-1} = (a I + b.sigma)/2;
    ``p_corr`` = 4a/(a^2 - |b|^2) = Tr(Gamma).
    """

    a: float
    b_x: float
    b_y: float
    gamma: np.ndarray
    p_corr: float


def gamma_three_element(priors: Priors) -> GammaSolution:
    """Solve the three-outcome Lagrangian operator from the priors.

    The defining relations <psi_j| Gamma^{-1} |psi_j> = 1/p_j reduce, with
    the in-plane symmetry b_z = 0, to a linear system with the closed-form
    solution below; each relation is re-verified to 1e-10.
    """
    q = priors.canonical
    if min(q) <= 0.0:
        raise ZeroPriorError("three-element construction needs strictly positive priors")
    r0, r1, r2 = 1.0 / q[0], 1.0 / q[1], 1.0 / q[2]
    a = (2.0 / 3.0) * (r0 + r1 + r2)
    b_x = (2.0 / 3.0) * (2.0 * r0 - r1 - r2)
    b_y = (2.0 / math.sqrt(3.0)) * (r1 - r2)
    gamma_inv = from_bloch(a, (b_x, b_y, 0.0))
    b_sq = b_x * b_x + b_y * b_y
    # adjugate inverse: (a I + b.sigma)/2 inverts to 2 (a I - b.sigma)/(a^2-|b|^2)
    gamma = 4.0 * from_bloch(a, (-b_x, -b_y, 0.0)) / (a * a - b_sq)
    p_corr = 4.0 * a / (a * a - b_sq)
    if abs(p_corr - float(np.trace(gamma).real)) > 1e-10:
        raise VerificationError("Tr(Gamma) disagrees with 4a/(a^2-|b|^2)")
    for psi, qj in zip(trine_states(), q):
        val = float(np.real(np.vdot(psi, gamma_inv @ psi)))
        if abs(val - 1.0 / qj) > 1e-10 * max(1.0, 1.0 / qj):
            raise VerificationError("Gamma^{-1} expectation does not match 1/p_j")
    return GammaSolution(a, b_x, b_y, gamma, p_corr)


def three_element_weights_raw(
    priors: Priors,
) -> tuple[list[np.ndarray], np.ndarray, list[float]]:
    """Outcome directions and weights of the three-outcome construction.

    Returns ``(phis, weights, n_small_eigs)``: for each j the outcome state
    |phi_j>, the weight k_j solving completeness, and the smaller eigenvalue
    of N_j = Gamma - p_j rho_j (zero when N_j is exactly rank-1).  No
    validity checks: outside the three-outcome region some weight goes
    negative, which is exactly what the region diagnostics look at.
    """
    sol = gamma_three_element(priors)
    rhos = trine_projectors()
    phis = []
    small_eigs = []
    for qj, rho in zip(priors.canonical, rhos):
        n_j = sol.gamma - qj * rho
        lo, hi = eigenvalues(n_j)
        small_eigs.append(lo)
        phi_perp = eigenvector(n_j, hi)
        phis.append(np.array([-np.conj(phi_perp[1]), np.conj(phi_perp[0])]))
    # completeness sum_j k_j |phi_j><phi_j| = I in (trace, sigma_x, sigma_y)
    # components; all projectors are in-plane so sigma_z is trivially zero.
    cols = []
    for phi in phis:
        t, v = bloch_decomposition(projector(phi))
        cols.append([t, v[0], v[1]])
    system = np.array(cols, dtype=float).T
    weights = np.linalg.solve(system, np.array([2.0, 0.0, 0.0]))
    return phis, weights, small_eigs


def three_element_measurement(priors: Priors) -> Measurement:
    """Extract the optimal three-outcome POVM (canonical frame).

    Only meaningful where the boundary determinant is negative; elsewhere
    the construction would produce a non-positive element and raises
    RegionError instead.
    """
    det = boundary_determinant(priors)
    if det >= 0.0:
        raise RegionError(
            f"three-outcome construction is invalid for det(M) = {det!r} >= 0"
        )
    phis, weights, small_eigs = three_element_weights_raw(priors)
    scale = max(1.0, spectral_norm(gamma_three_element(priors).gamma))
    for lo in small_eigs:
        if abs(lo) > 1e-9 * scale:
            raise RankError(
                f"Gamma - p_j rho_j is not numerically rank-1 (residual {lo!r})"
            )
    if min(weights) < -1e-10:
        raise VerificationError(
            f"negative weight {min(weights)!r} inside the three-outcome region"
        )
    elements = tuple(
        (j, float(k) * projector(phi)) for j, (phi, k) in enumerate(zip(phis, weights))
    )
    total = sum(op for _, op in elements)
    if spectral_norm(total - IDENTITY) > 1e-10:
        raise VerificationError("reconstructed three-outcome POVM is not complete")
    return Measurement(elements)


def p_correct_three_element(priors: Priors) -> float:
    """Success probability of the three-outcome formula.

    Computed everywhere the priors are strictly positive, but only
    meaningful as a success probability where the boundary determinant is
    negative.  Cross-checked against the equivalent (p, delta) form.
    """
    q = priors.canonical
    if min(q) <= 0.0:
        raise ZeroPriorError("three-element formula needs strictly positive priors")
    p0, p1, p2 = q
    num = 2.0 * (p0 * p1 + p0 * p2 + p1 * p2)
    den = 2.0 - (p0 * p1 / p2 + p0 * p2 / p1 + p1 * p2 / p0)
    value = num / den
    p, d = priors.p, priors.delta
    alt_num = 2.0 * (1.0 - 2.0 * p) * (p * p - d * d) * (3.0 * p * p + d * d - 2.0 * p)
    alt_den = (
        9.0 * p**4 - 4.0 * p**3 + 6.0 * p**2 * d**2 - 12.0 * p * d**2 + 4.0 * d**2 + d**4
    )
    alt = alt_num / alt_den
    # the (p, delta) denominator cancels near p2 -> 0, so the cross-check
    # tolerance is looser than the formula's own accuracy
    if abs(value - alt) > 1e-8 * max(1.0, abs(value)):
        raise VerificationError(
            f"three-element success probability forms disagree: {value} vs {alt}"
        )
    return value


@dataclass(frozen=True)
class HelstromReport:
    """Worst-case residuals of the two Helstrom optimality conditions."""

    max_offdiag_residual: float
    min_global_eigenvalue: float
    passes: bool
    success_probability: float


def check_helstrom(
    probabilities: Sequence[float], m: Measurement, tol: float = _HELSTROM_TOL
) -> HelstromReport:
    """Verify the Helstrom conditions for a labeled measurement.

    ``probabilities[i]`` is the prior of trine state i and element labels
    refer to the same indexing.  Reports the largest operator norm of
    pi_i (p_i rho_i - p_j rho_j) pi_j over pairs, the smallest eigenvalue
    of sum_i p_i rho_i pi_i - p_j rho_j over j, and the success probability.
    """
    q = [float(x) for x in probabilities]
    rhos = trine_projectors()
    labeled = [(lab, op) for lab, op in m.elements if isinstance(lab, (int, np.integer))]
    offdiag = 0.0
    for i, (li, pi_i) in enumerate(labeled):
        for lj, pi_j in labeled[i + 1 :]:
            diff = q[li] * rhos[li] - q[lj] * rhos[lj]
            offdiag = max(offdiag, spectral_norm(pi_i @ diff @ pi_j))
    gamma = hermitian_part(
        sum(q[lab] * rhos[lab] @ op for lab, op in labeled)
    )
    min_eig = min(min_eigenvalue(gamma - q[j] * rhos[j]) for j in range(3))
    success = sum(
        q[lab] * float(np.trace(rhos[lab] @ op).real) for lab, op in labeled
    )
    return HelstromReport(
        max_offdiag_residual=offdiag,
        min_global_eigenvalue=min_eig,
        passes=(offdiag <= tol and min_eig >= -tol),
        success_probability=success,
    )


@dataclass(frozen=True)
class OptimalResult:
    """Dispatched minimum-error answer for one prior triple.

    ``measurement`` carries labels in the caller's original state order;
    ``theta`` is set for the two-outcome branch, ``gamma`` for the
    three-outcome branch.
    """

    strategy: str  # "two_element" | "three_element"
    measurement: Measurement
    p_correct: float
    boundary_determinant: float
    helstrom: HelstromReport
    theta: Optional[float] = None
    gamma: Optional[GammaSolution] = None


def optimal_measurement(priors: Priors) -> OptimalResult:
    """Globally optimal minimum-error measurement for arbitrary priors.

    Dispatches on the sign of the boundary determinant (ties and any zero
    prior go to the two-outcome branch), maps labels and operators back to
    the caller's state ordering, and attaches a Helstrom verification
    computed on the returned measurement; a failed verification is an
    internal inconsistency and raises VerificationError.
    """
    det = boundary_determinant(priors)
    if det >= -_TIE_TOL or priors.p2 <= 0.0:
        canonical_m = two_element_measurement(priors)
        strategy = "two_element"
        p_correct = p_correct_two_element(priors)
        theta, gamma = theta_two_element(priors), None
    else:
        canonical_m = three_element_measurement(priors)
        strategy = "three_element"
        p_correct = p_correct_three_element(priors)
        theta, gamma = None, gamma_three_element(priors)
    measurement = transform_to_original(canonical_m, priors.permutation)
    report = check_helstrom(priors.original, measurement)
    if not report.passes:
        raise VerificationError(
            "dispatched measurement fails the Helstrom conditions: "
            f"offdiag={report.max_offdiag_residual!r}, "
            f"min_eig={report.min_global_eigenvalue!r}"
        )
    if abs(report.success_probability - p_correct) > 1e-9:
        raise VerificationError(
            "closed-form success probability disagrees with the Born sum: "
            f"{p_correct} vs {report.success_probability}"
        )
    return OptimalResult(
        strategy=strategy,
        measurement=measurement,
        p_correct=p_correct,
        boundary_determinant=det,
        helstrom=report,
        theta=theta,
        gamma=gamma,
    )
