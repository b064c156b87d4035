"""Orthogonalization time in closed form and the entanglement/speed bound.

The survival amplitude vanishes exactly when
``|c0|^2 + (|c1|^2 + |c2|^2) z + |c3|^2 z^2 = 0`` has a root on the unit
circle. Three regimes follow from the degree of that polynomial:

* generic (``|c3| != 0``): unit-circle roots iff ``|c0| = |c3|`` and
  ``|c0|^2 >= 1/4``; they are ``exp(+-i theta)`` with
  ``cos theta = 1 - 1/(2 |c0|^2)``.
* singular-linear (``c3 = 0``): the only candidate root is ``z = -1``,
  reached iff ``|c0|^2 = 1/2``, so ``tau = pi hbar / eps``.
* constant: the state is stationary up to phase.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .evolution import HamiltonianSpec, QslTimes, qsl_times
from .states import DomainError, PureState2Q, concurrence

DEFAULT_TOL = 1e-12
VIOLATION_MARGIN = 1e-12


class OrthoKind(str, enum.Enum):
    GENERIC = "Generic"
    SINGULAR_LINEAR = "SingularLinear"
    CONSTANT = "Constant"


@dataclass(frozen=True)
class OrthoClass:
    kind: OrthoKind
    reachable: bool
    condition_residual: float


@dataclass(frozen=True)
class SpeedReport:
    ortho: OrthoClass
    tau: Optional[float]
    qsl: QslTimes
    concurrence: float
    ratio: Optional[float]
    denominator_used: Optional[str]
    bound_rhs: float
    violates_eq5: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.ortho.kind.value,
            "reachable": self.ortho.reachable,
            "condition_residual": self.ortho.condition_residual,
            "tau": self.tau,
            "t_ml": self.qsl.t_ml,
            "t_mt": self.qsl.t_mt,
            "t_min": self.qsl.t_min,
            "t_min1": self.qsl.t_min1,
            "t_min_disagrees_with_t_min1": self.qsl.min_disagrees_with_min1,
            "concurrence": self.concurrence,
            "ratio": self.ratio,
            "denominator_used": self.denominator_used,
            "bound_rhs": self.bound_rhs,
            "violates_eq5": self.violates_eq5,
        }


def _classify_probs(p0: float, p12: float, p3: float, tol: float) -> OrthoClass:
    if p3 > tol:
        residual = max(abs(p0 - p3), max(0.0, 0.25 - p0))
        reachable = abs(p0 - p3) <= tol and p0 >= 0.25 - tol
        return OrthoClass(OrthoKind.GENERIC, reachable, residual)
    residual = abs(p0 - 0.5)
    if p12 > tol:
        return OrthoClass(OrthoKind.SINGULAR_LINEAR, residual <= tol, residual)
    return OrthoClass(OrthoKind.CONSTANT, False, residual)


def classify(state: PureState2Q, tol: float = DEFAULT_TOL) -> OrthoClass:
    """Sort the state into generic / singular-linear / constant and decide
    whether it ever becomes orthogonal to itself.

    ``condition_residual`` measures how far the populations are from the
    exact reachability condition of the detected regime.
    """
    p0, p1, p2, p3 = state.probs
    return _classify_probs(p0, p1 + p2, p3, tol)


def classify_batch(amps: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized reachability over rows of an ``(n, 4)`` amplitude array.

    Returns boolean masks ``(generic_reachable, singular_reachable)`` using
    the same rules as :func:`classify`.
    """
    p = np.abs(np.asarray(amps)) ** 2
    p0, p12, p3 = p[:, 0], p[:, 1] + p[:, 2], p[:, 3]
    generic = p3 > tol
    gen_ok = generic & (np.abs(p0 - p3) <= tol) & (p0 >= 0.25 - tol)
    sing_ok = ~generic & (p12 > tol) & (np.abs(p0 - 0.5) <= tol)
    return gen_ok, sing_ok


def generic_phase(p0: float, sign: float = 1.0) -> float:
    """First zero ``arccos(1 - 1/(2 p0))`` of a generic reachable state.

    ``sign=-1`` negates the cosine; it exists only so the verification
    harness can exercise its failure path.
    """
    return math.acos(min(1.0, max(-1.0, sign * (1.0 - 1.0 / (2.0 * p0)))))


def first_orthogonal_time(
    state: PureState2Q, ham: HamiltonianSpec = HamiltonianSpec(), tol: float = DEFAULT_TOL
) -> Optional[float]:
    """Earliest ``t > 0`` with ``<psi|psi(t)> = 0``, or ``None`` if never."""
    oc = classify(state, tol)
    if not oc.reachable:
        return None
    if oc.kind is OrthoKind.GENERIC:
        theta = generic_phase(state.probs[0])
    else:
        theta = math.pi
    return ham.time(theta)


def bound_rhs(c: float) -> float:
    """Lower bound on ``tau / T`` claimed for generic states at concurrence ``c``:
    ``sqrt(2 (1 + c)) / pi * arccos((c - 1) / (c + 1))``.

    Decreases from ``sqrt(2)`` at ``c = 0`` to 1 at ``c = 1``.
    """
    if not (0.0 <= c <= 1.0):
        raise DomainError(f"concurrence must lie in [0, 1], got {c!r}")
    return math.sqrt(2.0 * (1.0 + c)) / math.pi * math.acos((c - 1.0) / (c + 1.0))


def speed_report(
    state: PureState2Q, ham: HamiltonianSpec = HamiltonianSpec(), tol: float = DEFAULT_TOL
) -> SpeedReport:
    oc = classify(state, tol)
    tau = first_orthogonal_time(state, ham, tol)
    qsl = qsl_times(state, ham, tol)
    c = concurrence(state)
    rhs = bound_rhs(c)

    ratio = denom = None
    if tau is not None:
        # the generic bound is derived against t_min1; singular states have E = dE
        if qsl.t_min1 is not None:
            ratio, denom = tau / qsl.t_min1, "t_min1"
        elif qsl.t_min is not None:
            ratio, denom = tau / qsl.t_min, "t_min"
    violates = ratio is not None and ratio < rhs - VIOLATION_MARGIN
    return SpeedReport(oc, tau, qsl, c, ratio, denom, rhs, violates)
