"""Free evolution under ``H_A + H_B`` with per-qubit spectrum {0, eps}.

Basis energies are ``(0, eps, eps, 2 eps)``. Evolution uses the physical
sign ``exp(-i H t / hbar)``; the survival amplitude is therefore a
polynomial in ``exp(-i theta)`` with ``theta = eps t / hbar``. Its complex
conjugate is the polynomial in ``z = exp(+i theta)``
``|c0|^2 + (|c1|^2 + |c2|^2) z + |c3|^2 z^2``, which has the same zeros.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .states import PureState2Q


@dataclass(frozen=True)
class HamiltonianSpec:
    """Level splitting ``epsilon`` and action unit ``hbar``."""

    epsilon: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("epsilon", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v!r}")

    def phase(self, t):
        """Dimensionless phase ``theta = eps t / hbar``."""
        return self.epsilon * t / self.hbar

    def time(self, theta):
        """Inverse of :meth:`phase`."""
        return self.hbar * theta / self.epsilon


@dataclass(frozen=True)
class EnergyMoments:
    mean_e: float
    std_e: float


@dataclass(frozen=True)
class QslTimes:
    """Speed-limit times; ``None`` marks a degenerate (undefined) entry.

    ``t_ml`` is the mean-energy bound ``pi hbar / 2E``, ``t_mt`` the
    spread bound ``pi hbar / 2 dE``, ``t_min`` their minimum, and ``t_min1``
    the closed form ``pi hbar / (2 sqrt(2) eps |c0|)`` valid when
    ``|c0| = |c3|``.
    """

    t_ml: Optional[float]
    t_mt: Optional[float]
    t_min: Optional[float]
    t_min1: Optional[float]

    @property
    def min_disagrees_with_min1(self) -> bool:
        """True when ``t_min`` and ``t_min1`` both exist and differ."""
        if self.t_min is None or self.t_min1 is None:
            return False
        return abs(self.t_min - self.t_min1) > 1e-12 * max(self.t_min, self.t_min1)


def evolve(state: PureState2Q, t: float, ham: HamiltonianSpec = HamiltonianSpec()) -> PureState2Q:
    c0, c1, c2, c3 = state.c
    u = cmath.exp(-1j * ham.phase(t))
    return PureState2Q((c0, c1 * u, c2 * u, c3 * u * u))


def survival_amplitude(state: PureState2Q, theta):
    """``<psi|psi(t)>`` at phase ``theta``; accepts a scalar or an array."""
    p0, p1, p2, p3 = state.probs
    if np.ndim(theta) == 0:
        u = cmath.exp(-1j * float(theta))
        return p0 + (p1 + p2) * u + p3 * u * u
    u = np.exp(-1j * np.asarray(theta, dtype=float))
    return p0 + (p1 + p2) * u + p3 * (u * u)


def energy_moments(state: PureState2Q, ham: HamiltonianSpec = HamiltonianSpec()) -> EnergyMoments:
    _, p1, p2, p3 = state.probs
    eps = ham.epsilon
    p12 = p1 + p2
    mean = eps * p12 + 2.0 * eps * p3
    var = eps * eps * p12 + 4.0 * eps * eps * p3 - mean * mean
    return EnergyMoments(mean, math.sqrt(max(var, 0.0)))


def qsl_times(
    state: PureState2Q, ham: HamiltonianSpec = HamiltonianSpec(), tol: float = 1e-12
) -> QslTimes:
    m = energy_moments(state, ham)
    eps, hbar = ham.epsilon, ham.hbar
    t_ml = math.pi * hbar / (2.0 * m.mean_e) if m.mean_e > tol * eps else None
    t_mt = math.pi * hbar / (2.0 * m.std_e) if m.std_e > tol * eps else None
    present = [t for t in (t_ml, t_mt) if t is not None]
    t_min = min(present) if present else None

    a0, a3 = abs(state.c[0]), abs(state.c[3])
    t_min1 = None
    if abs(a0 - a3) <= tol and a0 > tol:
        t_min1 = math.pi * hbar / (2.0 * math.sqrt(2.0) * eps * a0)
    return QslTimes(t_ml, t_mt, t_min, t_min1)
