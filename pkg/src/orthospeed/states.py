"""Two-qubit pure states: construction, sampling and concurrence.

Amplitudes are ordered ``(c0, c1, c2, c3)`` over the computational basis
``|00>, |01>, |10>, |11>``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

NORM_TOL = 1e-12
ZERO_NORM = 1e-30


class StateError(ValueError):
    """Base class for invalid state input."""


class ZeroVectorError(StateError):
    pass


class NotNormalizedError(StateError):
    pass


class NonFiniteError(StateError):
    pass


class DomainError(ValueError):
    """A scalar parameter lies outside its admissible range."""


@dataclass(frozen=True)
class PureState2Q:
    """Normalized two-qubit pure state.

    Use :func:`make_state` rather than calling the constructor directly; the
    constructor only checks the norm.
    """

    c: tuple[complex, complex, complex, complex]

    def __post_init__(self) -> None:
        if len(self.c) != 4:
            raise StateError(f"expected 4 amplitudes, got {len(self.c)}")
        norm2 = sum(abs(a) ** 2 for a in self.c)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalizedError(f"sum |c_k|^2 = {norm2!r}")

    @property
    def probs(self) -> tuple[float, float, float, float]:
        """Basis populations ``|c_k|^2``."""
        return tuple(a.real * a.real + a.imag * a.imag for a in self.c)  # type: ignore[return-value]

    def as_array(self) -> np.ndarray:
        return np.array(self.c, dtype=np.complex128)

    def norm2(self) -> float:
        return sum(self.probs)


def _as_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise StateError(f"amplitude pair must be [re, im], got {value!r}")
        value = complex(float(value[0]), float(value[1]))
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite amplitude {z!r}")
    return z


def make_state(c0, c1, c2, c3, normalize: bool = False) -> PureState2Q:
    """Build a state from four amplitudes.

    Each amplitude may be a number or an ``(re, im)`` pair. With
    ``normalize=True`` the amplitudes are rescaled to unit norm, otherwise the
    norm must already be 1 to within ``NORM_TOL``.
    """
    amps = tuple(_as_complex(a) for a in (c0, c1, c2, c3))
    norm2 = sum(abs(a) ** 2 for a in amps)
    if normalize:
        if not norm2 > ZERO_NORM:
            raise ZeroVectorError("all amplitudes vanish")
        scale = 1.0 / math.sqrt(norm2)
        amps = tuple(a * scale for a in amps)
    elif norm2 <= ZERO_NORM:
        raise ZeroVectorError("all amplitudes vanish")
    elif abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalizedError(f"sum |c_k|^2 = {norm2!r}, pass normalize=True to rescale")
    return PureState2Q(amps)  # type: ignore[arg-type]


def concurrence(state: PureState2Q) -> float:
    """Pure-state concurrence ``2 |c0 c3 - c1 c2|``, clipped to ``[0, 1]``."""
    c0, c1, c2, c3 = state.c
    return min(2.0 * abs(c0 * c3 - c1 * c2), 1.0)


def concurrence_batch(amps: np.ndarray) -> np.ndarray:
    """Vectorized :func:`concurrence` over rows of an ``(n, 4)`` array."""
    amps = np.asarray(amps)
    return np.minimum(2.0 * np.abs(amps[:, 0] * amps[:, 3] - amps[:, 1] * amps[:, 2]), 1.0)


def family_state(x: float) -> PureState2Q:
    """``(|00> + sqrt(x)|01> + sqrt(1-x)|10>) / sqrt(2)`` for ``x`` in [0, 1].

    Every member has ``|c0|^2 = 1/2`` and ``c3 = 0``; its concurrence is
    ``sqrt(x (1 - x))``.
    """
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    return make_state(math.sqrt(0.5), math.sqrt(x / 2.0), math.sqrt((1.0 - x) / 2.0), 0.0)


def is_symmetric(state: PureState2Q, tol: float = 1e-12) -> bool:
    """True when the state is invariant under exchange of the two qubits."""
    return abs(state.c[1] - state.c[2]) <= tol


def haar_sample(rng: np.random.Generator) -> PureState2Q:
    """Draw one state uniformly from the unit sphere in C^4."""
    while True:
        g = rng.standard_normal(8)
        amps = g[0::2] + 1j * g[1::2]
        norm2 = float(np.vdot(amps, amps).real)
        if norm2 > ZERO_NORM:
            break
    amps /= math.sqrt(norm2)
    return PureState2Q(tuple(complex(a) for a in amps))  # type: ignore[arg-type]


def haar_batch(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` Haar-random states as rows of an ``(n, 4)`` complex array.

    Consumes the stream in the same order as ``n`` calls to
    :func:`haar_sample`, barring the (measure-zero) resampling branch.
    """
    g = rng.standard_normal((n, 8))
    amps = g[:, 0::2] + 1j * g[:, 1::2]
    norms = np.sqrt(np.sum(np.abs(amps) ** 2, axis=1))
    bad = norms <= math.sqrt(ZERO_NORM)
    while np.any(bad):
        g = rng.standard_normal((int(bad.sum()), 8))
        amps[bad] = g[:, 0::2] + 1j * g[:, 1::2]
        norms[bad] = np.sqrt(np.sum(np.abs(amps[bad]) ** 2, axis=1))
        bad = norms <= math.sqrt(ZERO_NORM)
    return amps / norms[:, None]


def random_phases(rng: np.random.Generator, k: int = 4) -> list[complex]:
    return [cmath.exp(1j * t) for t in rng.uniform(0.0, 2.0 * math.pi, k)]


def state_from_json(obj: dict) -> PureState2Q:
    """Parse ``{"c": [[re, im] x 4], "normalize": bool}``."""
    if not isinstance(obj, dict) or "c" not in obj:
        raise StateError('state object needs a "c" key')
    amps = obj["c"]
    if not isinstance(amps, Sequence) or len(amps) != 4:
        raise StateError('"c" must hold exactly 4 [re, im] pairs')
    for pair in amps:
        if not isinstance(pair, Sequence) or isinstance(pair, str) or len(pair) != 2:
            raise StateError(f"bad amplitude entry {pair!r}")
    normalize = obj.get("normalize", False)
    if not isinstance(normalize, bool):
        raise StateError('"normalize" must be a boolean')
    return make_state(*amps, normalize=normalize)


def state_to_json(state: PureState2Q) -> dict:
    return {"c": [[a.real, a.imag] for a in state.c], "normalize": False}
