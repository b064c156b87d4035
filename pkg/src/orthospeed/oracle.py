"""Brute-force cross-checks that share no code path with the closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .evolution import HamiltonianSpec
from .states import PureState2Q

MIN_GRID = 2**10
DEFAULT_GRID = 2**20
MAX_CANDIDATES = 8


class InvalidGridError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    found: bool
    tau_numeric: Optional[float]
    min_magnitude: float
    theta_at_min: float


@lru_cache(maxsize=4)
def _phase_grid(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    theta = (2.0 * np.pi / n) * np.arange(1, n + 1)
    u = np.exp(-1j * theta)
    u2 = u * u
    for a in (theta, u, u2):
        a.setflags(write=False)
    return theta, u, u2


def _golden(f, lo: float, mid: float, hi: float, width: float) -> float:
    res = minimize_scalar(f, bracket=(lo, mid, hi), method="golden",
                          options={"xtol": width / max(abs(mid), 1.0)})
    return float(res.x)


def scan_tau(
    state: PureState2Q,
    ham: HamiltonianSpec = HamiltonianSpec(),
    grid_points: int = DEFAULT_GRID,
    zero_threshold: float = 1e-8,
    refine_tol: float = 1e-12,
) -> OracleResult:
    """Locate the first zero of ``|<psi|psi(t)>|`` over one period by grid search.

    The magnitude is evaluated directly from the basis populations on a
    uniform grid over ``(0, 2 pi]``. Grid local minima that could hide a zero
    are refined by golden-section search on the squared magnitude.

    A local minimum is a candidate when its grid value is at most
    ``10 * zero_threshold + L * h``, where ``h`` is the grid step and
    ``L = p12 + 2 p3`` bounds ``|dA/dtheta|``: a true zero anywhere in the
    bracket cannot leave a larger value at the grid point.
    """
    if grid_points < MIN_GRID:
        raise InvalidGridError(f"grid_points must be >= {MIN_GRID}, got {grid_points}")
    p0, p1, p2, p3 = (float(p) for p in state.probs)
    p12 = p1 + p2
    theta, u, u2 = _phase_grid(grid_points)
    h = 2.0 * math.pi / grid_points

    mag = np.abs(p0 + p12 * u + p3 * u2)
    left, right = np.roll(mag, 1), np.roll(mag, -1)
    is_min = (mag < left) & (mag <= right)
    gate = 10.0 * zero_threshold + (p12 + 2.0 * p3) * h
    idx = np.flatnonzero(is_min & (mag <= gate))
    idx = idx[np.argsort(mag[idx], kind="stable")][:MAX_CANDIDATES]

    def mag2(t: float) -> float:
        u1 = complex(math.cos(t), -math.sin(t))
        a = p0 + p12 * u1 + p3 * u1 * u1
        return a.real * a.real + a.imag * a.imag

    g = int(np.argmin(mag))
    best_theta, best_mag = float(theta[g]), float(mag[g])
    zeros = []
    for k in idx:
        mid = float(theta[k])
        t = _golden(mag2, mid - h, mid, mid + h, refine_tol)
        m = math.sqrt(mag2(t))
        if t <= 0.0:
            t += 2.0 * math.pi
        elif t > 2.0 * math.pi:
            t -= 2.0 * math.pi
        if (m, t) < (best_mag, best_theta):
            best_mag, best_theta = m, t
        if m <= zero_threshold:
            zeros.append(t)

    if zeros:
        return OracleResult(True, ham.time(min(zeros)), best_mag, best_theta)
    return OracleResult(False, None, best_mag, best_theta)


def reduced_density_matrix(state: PureState2Q) -> np.ndarray:
    """Partial trace over the second qubit."""
    psi = state.as_array().reshape(2, 2)
    return np.einsum("ab,cb->ac", psi, psi.conj())


def oracle_concurrence(state: PureState2Q) -> float:
    """Concurrence from the purity of the reduced state, ``sqrt(2 (1 - Tr rho_A^2))``."""
    rho = reduced_density_matrix(state)
    purity = float(np.real(np.trace(rho @ rho)))
    return min(1.0, max(0.0, math.sqrt(max(0.0, 2.0 * (1.0 - purity)))))


def oracle_concurrence_batch(amps: np.ndarray) -> np.ndarray:
    psi = np.asarray(amps).reshape(-1, 2, 2)
    rho = np.einsum("nab,ncb->nac", psi, psi.conj())
    purity = np.real(np.einsum("nab,nba->n", rho, rho))
    return np.clip(np.sqrt(np.clip(2.0 * (1.0 - purity), 0.0, None)), 0.0, 1.0)
