"""Maximum-confidence measurements for the trine ensemble.

Each outcome element is proportional to rho^{-1} rho_i rho^{-1}; the
Bayes posterior it achieves is scale invariant, so the common scale is
chosen maximal subject to the inconclusive completion staying positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    UndefinedError,
    VerificationError,
    ZeroOutcomeError,
)
from .qubit import (
    IDENTITY,
    INCONCLUSIVE,
    Measurement,
    invert_qubit_density,
    max_eigenvalue,
)
from .min_error import optimal_measurement
from .trine import Priors, ensemble_density, transform_to_original, trine_projectors

__all__ = [
    "ConfidenceReport",
    "mc_povm",
    "confidence",
    "mc_confidence_closed_form",
    "confidence_report",
    "min_error_confidence",
]

_PSD_TOL = 1e-10
_OUTCOME_TOL = 1e-14


def mc_povm(priors: Priors, tol: float = _PSD_TOL) -> Measurement:
    """Maximum-confidence POVM, completed with an inconclusive outcome.

    All three state elements are scaled by the largest common factor that
    keeps 1 - sum of elements positive; the remainder becomes the
    inconclusive element when it is nonzero.  Labels are in the caller's
    original state order.  Requires the ensemble density matrix to be
    mixed (raises PureStateError otherwise).
    """
    rho = ensemble_density(priors.canonical)
    rho_inv = invert_qubit_density(rho)
    raw = [rho_inv @ r @ rho_inv for r in trine_projectors()]
    total = sum(raw)
    scale = 1.0 / max_eigenvalue(total)
    elements = [(j, scale * e) for j, e in enumerate(raw)]
    leftover = IDENTITY - scale * total
    if max_eigenvalue(leftover) > tol:
        elements.append((INCONCLUSIVE, leftover))
    return transform_to_original(Measurement(tuple(elements)), priors.permutation)


def confidence(priors: Priors, m: Measurement, outcome_label) -> float:
    """Bayes posterior that the labeled outcome identified its state.

    p_i Tr(rho_i pi_i) / sum_j p_j Tr(rho_j pi_i), with labels and priors
    in the caller's original state order.  Invariant under positive
    rescaling of the element.
    """
    element = m.element(outcome_label)
    q = priors.original
    rhos = trine_projectors()
    joint = [q[j] * float(np.trace(rhos[j] @ element).real) for j in range(3)]
    ensemble_prob = sum(joint)
    if ensemble_prob <= _OUTCOME_TOL:
        raise ZeroOutcomeError(
            f"outcome {outcome_label!r} has vanishing ensemble probability"
        )
    return joint[outcome_label] / ensemble_prob


def mc_confidence_closed_form(priors: Priors, i: int) -> float:
    """Closed-form maximum confidence for identifying state ``i``.

    (1 + prod_{j!=i} p_j / (p_i sum_{j!=i} p_j))^{-1}, with the limits
    p_i = 0 -> 0 and (some p_j = 0, j != i) -> 1 taken exactly.
    """
    q = priors.original
    p_i = q[i]
    others = [q[j] for j in range(3) if j != i]
    if p_i >= 1.0:
        raise UndefinedError("confidence is undefined for a pure ensemble (p_i = 1)")
    if p_i == 0.0:
        return 0.0
    if min(others) == 0.0:
        return 1.0
    return 1.0 / (1.0 + (others[0] * others[1]) / (p_i * (others[0] + others[1])))


@dataclass(frozen=True)
class ConfidenceReport:
    """Maximum-confidence summary for one prior triple.

    ``per_state_confidence`` is indexed by the caller's original state
    order; ``inconclusive_probability`` depends on the maximal-strength
    scaling convention and is labeled as such in CLI output.
    """

    per_state_confidence: tuple[float, float, float]
    inconclusive_probability: float
    measurement: Measurement


def confidence_report(priors: Priors) -> ConfidenceReport:
    """Assemble the POVM and evaluate per-state confidence both ways."""
    m = mc_povm(priors)
    q = priors.original
    rhos = trine_projectors()
    per_state = []
    for i in range(3):
        bayes = confidence(priors, m, i)
        closed = mc_confidence_closed_form(priors, i)
        if abs(bayes - closed) > 1e-10:
            raise VerificationError(
                f"Bayes confidence {bayes} disagrees with closed form {closed}"
            )
        per_state.append(bayes)
    if INCONCLUSIVE in m.labels:
        pi_q = m.element(INCONCLUSIVE)
        inconclusive = sum(
            q[j] * float(np.trace(rhos[j] @ pi_q).real) for j in range(3)
        )
    else:
        inconclusive = 0.0
    return ConfidenceReport(tuple(per_state), inconclusive, m)


def min_error_confidence(priors: Priors) -> tuple[Optional[float], ...]:
    """Per-state confidence achieved by the minimum-error measurement.

    None for states without an outcome (the two-outcome branch never
    identifies the least likely state).
    """
    result = optimal_measurement(priors)
    out: list[Optional[float]] = []
    for i in range(3):
        if i in result.measurement.labels:
            out.append(confidence(priors, result.measurement, i))
        else:
            out.append(None)
    return tuple(out)
