"""The trine ensemble, its complements, and prior-probability handling.

The three signal states sit on the Bloch equator at 0, 2pi/3 and 4pi/3.
Priors are canonicalized to descending order p0 >= p1 >= p2 with the
permutation recorded, so every closed form downstream can assume the
ordering while callers keep their own state indexing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qubit import (
    INCONCLUSIVE,
    Measurement,
    bloch_decomposition,
    from_bloch,
    orthogonal_state,
    projector,
    pure_state_from_equator_angle,
)

__all__ = [
    "TRINE_ANGLES",
    "Priors",
    "TrineEnsemble",
    "trine_states",
    "trine_perps",
    "trine_projectors",
    "perp_projectors",
    "trine_measurement",
    "antitrine_measurement",
    "ensemble_density",
    "canonicalize_priors",
    "priors_from_p_delta",
    "random_priors",
    "transform_to_original",
    "make_ensemble",
]

TRINE_ANGLES = (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)

_SUM_TOL = 1e-9
_PARAM_TOL = 1e-12


def trine_states() -> list[np.ndarray]:
    return [pure_state_from_equator_angle(a) for a in TRINE_ANGLES]


def trine_perps() -> list[np.ndarray]:
    return [orthogonal_state(s) for s in trine_states()]


def trine_projectors() -> list[np.ndarray]:
    return [projector(s) for s in trine_states()]


def perp_projectors() -> list[np.ndarray]:
    return [projector(s) for s in trine_perps()]


def trine_measurement() -> Measurement:
    """The symmetric measurement along the signal states themselves."""
    return Measurement(
        tuple((j, (2.0 / 3.0) * p) for j, p in enumerate(trine_projectors()))
    )


def antitrine_measurement() -> Measurement:
    """Eliminatory measurement: outcome j rules out signal state j."""
    return Measurement(
        tuple((j, (2.0 / 3.0) * p) for j, p in enumerate(perp_projectors()))
    )


def ensemble_density(probabilities) -> np.ndarray:
    """Average state sum_i q_i |psi_i><psi_i| (state-order probabilities)."""
    q = np.asarray(probabilities, dtype=float)
    return sum(qi * p for qi, p in zip(q, trine_projectors()))


@dataclass(frozen=True)
class Priors:
    """Prior triple in canonical descending order plus the caller mapping.

    ``permutation[c]`` is the caller's original index of canonical slot c,
    so a measurement element labeled c in the canonical frame identifies
    the caller's state ``permutation[c]``.
    """

    p0: float
    p1: float
    p2: float
    permutation: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        triple = (self.p0, self.p1, self.p2)
        if any(q < -_PARAM_TOL for q in triple):
            raise DomainError(f"priors must be nonnegative, got {triple}")
        if abs(sum(triple) - 1.0) > _SUM_TOL:
            raise DomainError(f"priors must sum to 1, got {triple}")
        if not (self.p0 >= self.p1 - _PARAM_TOL >= self.p2 - 2 * _PARAM_TOL):
            raise DomainError(f"canonical order requires p0 >= p1 >= p2, got {triple}")
        if sorted(self.permutation) != [0, 1, 2]:
            raise DomainError(f"invalid permutation {self.permutation}")

    @property
    def p(self) -> float:
        return 0.5 * (self.p0 + self.p1)

    @property
    def delta(self) -> float:
        return 0.5 * (self.p0 - self.p1)

    @property
    def canonical(self) -> tuple[float, float, float]:
        return (self.p0, self.p1, self.p2)

    @property
    def original(self) -> tuple[float, float, float]:
        """The triple in the caller's original state order."""
        out = [0.0, 0.0, 0.0]
        for c, q in enumerate(self.canonical):
            out[self.permutation[c]] = q
        return tuple(out)


def canonicalize_priors(q0: float, q1: float, q2: float) -> Priors:
    """Sort a prior triple descending, remembering where each entry came from.

    The sort is stable, so equal priors keep their original relative order.
    Triples whose sum is within 1e-9 of 1 are renormalized.
    """
    triple = [float(q0), float(q1), float(q2)]
    if any(q < 0.0 for q in triple):
        raise DomainError(f"priors must be nonnegative, got {tuple(triple)}")
    total = sum(triple)
    if abs(total - 1.0) > _SUM_TOL:
        raise DomainError(f"priors must sum to 1 within 1e-9, got sum {total!r}")
    triple = [q / total for q in triple]
    order = sorted(range(3), key=lambda i: -triple[i])
    return Priors(
        triple[order[0]], triple[order[1]], triple[order[2]], tuple(order)
    )


def priors_from_p_delta(p: float, delta: float) -> Priors:
    """Build the canonical triple (p+delta, p-delta, 1-2p)."""
    if not (1.0 / 3.0 - _PARAM_TOL <= p <= 0.5 + _PARAM_TOL):
        raise DomainError(f"p must lie in [1/3, 1/2], got {p!r}")
    if delta < -_PARAM_TOL:
        raise DomainError(f"delta must be nonnegative, got {delta!r}")
    if delta > 3.0 * p - 1.0 + _PARAM_TOL:
        raise DomainError(f"delta={delta!r} violates delta <= 3p-1 = {3 * p - 1!r}")
    if delta > p + _PARAM_TOL:
        raise DomainError(f"delta={delta!r} violates delta <= p")
    return Priors(p + delta, p - delta, 1.0 - 2.0 * p)


def random_priors(rng: np.random.Generator) -> Priors:
    """Canonicalized prior triple drawn uniformly from the simplex."""
    q = rng.dirichlet((1.0, 1.0, 1.0))
    return canonicalize_priors(*q)


@dataclass(frozen=True)
class TrineEnsemble:
    states: tuple[np.ndarray, np.ndarray, np.ndarray]
    perps: tuple[np.ndarray, np.ndarray, np.ndarray]
    priors: Priors


def make_ensemble(priors: Priors) -> TrineEnsemble:
    return TrineEnsemble(tuple(trine_states()), tuple(trine_perps()), priors)


def _permutation_map(permutation) -> tuple[int, float]:
    """The equator symmetry phi -> eps*phi + alpha realizing a permutation.

    Even permutations are rotations by a multiple of 2pi/3; odd ones add a
    reflection.  The map sends trine angle c to trine angle permutation[c].
    """
    a, b, c = permutation
    even = (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    eps = 1 if even else -1
    alpha = TRINE_ANGLES[a]
    return eps, alpha


def transform_to_original(m: Measurement, permutation) -> Measurement:
    """Carry a canonical-frame measurement to the caller's state ordering.

    Element operators are rotated (and reflected, for odd permutations)
    in the equator plane so that alignment with canonical state c becomes
    alignment with original state permutation[c]; labels map the same way.
    """
    eps, alpha = _permutation_map(permutation)
    cos_a, sin_a = math.cos(alpha), math.sin(alpha)
    out = []
    for label, op in m.elements:
        t, v = bloch_decomposition(op)
        vx, vy = v[0], eps * v[1]
        v_new = (cos_a * vx - sin_a * vy, sin_a * vx + cos_a * vy, v[2])
        new_label = label if label == INCONCLUSIVE else permutation[label]
        out.append((new_label, from_bloch(t, v_new)))
    out.sort(key=lambda pair: (pair[0] == INCONCLUSIVE, str(pair[0])))
    return Measurement(tuple(out))
