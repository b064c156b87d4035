"""Family sweeps, Haar Monte Carlo and the closed-form vs. oracle check.

Randomness comes from a single integer master seed. Shard ``k`` of any
Monte Carlo run draws from ``SeedSequence(seed, spawn_key=(k,))`` and holds
a fixed number of samples, so the sampled values do not depend on how many
workers process the shards.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterator, Optional, TextIO

import numpy as np

from .evolution import HamiltonianSpec
from .oracle import DEFAULT_GRID, oracle_concurrence, scan_tau
from .solver import (
    OrthoKind,
    bound_rhs,
    classify,
    classify_batch,
    generic_phase,
    speed_report,
)
from .states import (
    DomainError,
    PureState2Q,
    concurrence,
    family_state,
    haar_batch,
    make_state,
)

SHARD_SIZE = 1 << 16
SWEEP_HEADER = ("x", "concurrence", "tau", "t_ml", "t_mt", "t_min", "bound_rhs", "ratio", "violates_eq5")
HAAR_KEYS = ("n", "seed", "tol", "frac_c3_small", "frac_generic_reachable",
             "frac_singular_reachable", "min_abs_c3")


def shard_rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shard,)))


# -- constructed reachable states --------------------------------------------

def _phased(rng: np.random.Generator, moduli) -> PureState2Q:
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, 4))
    return make_state(*(float(m) * complex(p) for m, p in zip(moduli, phases)))


def random_generic_reachable(rng: np.random.Generator) -> PureState2Q:
    """``|c0| = |c3|`` with ``|c0|^2`` uniform on [1/4, 1/2], random phases."""
    a = rng.uniform(0.25, 0.5)
    rest = 1.0 - 2.0 * a
    s = rng.uniform(0.0, rest)
    return _phased(rng, (math.sqrt(a), math.sqrt(s), math.sqrt(rest - s), math.sqrt(a)))


def random_singular_reachable(rng: np.random.Generator) -> PureState2Q:
    """``|c0|^2 = 1/2``, ``c3 = 0``, random split of the rest, random phases."""
    s = rng.uniform(0.0, 0.5)
    return _phased(rng, (math.sqrt(0.5), math.sqrt(s), math.sqrt(0.5 - s), 0.0))


# -- sweep ---------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    x: float
    concurrence: float
    tau: float
    t_ml: float
    t_mt: float
    t_min: float
    bound_rhs: float
    ratio: float
    violates_eq5: bool


def sweep_family(start: float, stop: float, steps: int,
                 ham: HamiltonianSpec = HamiltonianSpec()) -> list[SweepRow]:
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    if not (0.0 <= start < stop <= 1.0):
        raise DomainError(f"need 0 <= from < to <= 1, got [{start}, {stop}]")
    rows = []
    for i in range(steps):
        x = stop if i == steps - 1 else start + (stop - start) * i / (steps - 1)
        r = speed_report(family_state(x), ham)
        q = r.qsl
        rows.append(SweepRow(x, r.concurrence, r.tau, q.t_ml, q.t_mt, q.t_min,
                             r.bound_rhs, r.ratio, r.violates_eq5))
    return rows


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return format(v, ".17g")


def write_sweep_csv(rows: list[SweepRow], fh: TextIO) -> None:
    fh.write(",".join(SWEEP_HEADER) + "\n")
    for row in rows:
        d = asdict(row)
        fh.write(",".join(_fmt(d[k]) for k in SWEEP_HEADER) + "\n")


def read_sweep_csv(fh: TextIO) -> list[SweepRow]:
    lines = fh.read().splitlines()
    if tuple(lines[0].split(",")) != SWEEP_HEADER:
        raise ValueError(f"unexpected header {lines[0]!r}")
    rows = []
    for line in lines[1:]:
        f = line.split(",")
        rows.append(SweepRow(*(float(v) for v in f[:-1]), f[-1] == "true"))
    return rows


# -- Haar Monte Carlo ------------------------------------------------------------

@dataclass(frozen=True)
class HaarSummary:
    n: int
    seed: int
    tol: float
    frac_c3_small: float
    frac_generic_reachable: float
    frac_singular_reachable: float
    min_abs_c3: float

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in HAAR_KEYS}


def _haar_shard(seed: int, shard: int, size: int, tol: float, c3_small: float):
    amps = haar_batch(shard_rng(seed, shard), size)
    gen, sing = classify_batch(amps, tol)
    abs_c3 = np.abs(amps[:, 3])
    return (int(np.count_nonzero(abs_c3**2 < c3_small)), int(gen.sum()),
            int(sing.sum()), float(abs_c3.min()))


def haar_summary(n: int, seed: int, tol: float = 1e-9, c3_small: float = 1e-3,
                 workers: int = 1) -> HaarSummary:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    sizes = [min(SHARD_SIZE, n - k) for k in range(0, n, SHARD_SIZE)]
    jobs = [(seed, k, size, tol, c3_small) for k, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda a: _haar_shard(*a), jobs))
    else:
        parts = [_haar_shard(*a) for a in jobs]
    small = sum(p[0] for p in parts)
    gen = sum(p[1] for p in parts)
    sing = sum(p[2] for p in parts)
    return HaarSummary(n, seed, tol, small / n, gen / n, sing / n, min(p[3] for p in parts))


# -- closed form vs. oracle ----------------------------------------------------

TAU_TOL = 1e-6
CONCURRENCE_TOL = 1e-12
BOUND_TOL = 1e-9


@dataclass
class VerifyOutcome:
    n_pass: int = 0
    n_fail: int = 0
    max_tau_err: float = 0.0
    max_conc_err: float = 0.0

    @property
    def ok(self) -> bool:
        return self.n_fail == 0


def _check_state(state: PureState2Q, expected_kind: OrthoKind, ham: HamiltonianSpec,
                 grid_points: int, inject_fault: bool) -> tuple[list[str], float, float]:
    problems = []
    report = speed_report(state, ham)
    tau = report.tau
    if inject_fault and tau is not None and report.ortho.kind is OrthoKind.GENERIC:
        tau = ham.time(generic_phase(state.probs[0], sign=-1.0))

    oc = classify(state)
    if oc.kind is not expected_kind or not oc.reachable:
        problems.append(f"classified {oc.kind.value}, reachable={oc.reachable}")

    orc = scan_tau(state, ham, grid_points=grid_points)
    tau_err = math.inf
    if not orc.found:
        problems.append(f"oracle found no zero (min |A| = {orc.min_magnitude:.3g})")
    elif tau is None:
        problems.append("oracle found a zero the closed form denies")
    else:
        tau_err = abs(tau - orc.tau_numeric)
        if tau_err > TAU_TOL * ham.hbar / ham.epsilon:
            problems.append(f"tau closed={tau!r} oracle={orc.tau_numeric!r}")

    conc_err = abs(concurrence(state) - oracle_concurrence(state))
    if conc_err > CONCURRENCE_TOL:
        problems.append(f"concurrence mismatch {conc_err:.3g}")

    if report.ratio is None:
        problems.append("no speed ratio")
    elif expected_kind is OrthoKind.GENERIC:
        if report.ratio < bound_rhs(report.concurrence) - BOUND_TOL:
            problems.append(f"ratio {report.ratio!r} below bound {report.bound_rhs!r}")
    elif abs(report.ratio - 1.0) > 1e-12:
        problems.append(f"singular ratio {report.ratio!r} != 1")
    return problems, tau_err, conc_err


def iter_verify_states(n_generic: int, n_singular: int, seed: int
                       ) -> Iterator[tuple[OrthoKind, PureState2Q]]:
    rng = shard_rng(seed, 0)
    for _ in range(n_generic):
        yield OrthoKind.GENERIC, random_generic_reachable(rng)
    rng = shard_rng(seed, 1)
    for _ in range(n_singular):
        yield OrthoKind.SINGULAR_LINEAR, random_singular_reachable(rng)


def verify(n_generic: int, n_singular: int, seed: int,
           ham: HamiltonianSpec = HamiltonianSpec(), grid_points: int = DEFAULT_GRID,
           inject_fault: bool = False,
           on_failure: Optional[Callable[[PureState2Q, list[str]], None]] = None) -> VerifyOutcome:
    if n_generic < 1 or n_singular < 1:
        raise DomainError("state counts must be >= 1")
    out = VerifyOutcome()
    for kind, state in iter_verify_states(n_generic, n_singular, seed):
        problems, tau_err, conc_err = _check_state(state, kind, ham, grid_points, inject_fault)
        out.max_conc_err = max(out.max_conc_err, conc_err)
        if math.isfinite(tau_err):
            out.max_tau_err = max(out.max_tau_err, tau_err)
        if problems:
            out.n_fail += 1
            if on_failure is not None:
                on_failure(state, problems)
        else:
            out.n_pass += 1
    return out
