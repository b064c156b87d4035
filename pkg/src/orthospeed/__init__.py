"""Orthogonalization times and speed limits for two-qubit pure states."""

from .evolution import (
    EnergyMoments,
    HamiltonianSpec,
    QslTimes,
    energy_moments,
    evolve,
    qsl_times,
    survival_amplitude,
)
from .oracle import OracleResult, oracle_concurrence, scan_tau
from .solver import (
    OrthoClass,
    OrthoKind,
    SpeedReport,
    bound_rhs,
    classify,
    first_orthogonal_time,
    speed_report,
)
from .states import (
    DomainError,
    NonFiniteError,
    NotNormalizedError,
    PureState2Q,
    ZeroVectorError,
    concurrence,
    family_state,
    haar_sample,
    is_symmetric,
    make_state,
)

__version__ = "0.1.0"
