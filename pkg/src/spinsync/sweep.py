"""Batch evaluation of parameter points: sweeps, cuts, dynamics, CSV output.

Grid points are independent; results are always emitted in deterministic
grid order (epsilon-major for the tongue sweep), so CSV bodies are
byte-identical regardless of the worker count.  A failing point is recorded
in its row's status field and never aborts a sweep.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .correlations import mutual_information, negativity, purity, schmidt_analysis
from .first_order import SREL_COEFF, STEADY, coherences
from .liouvillian import (
    IntegrationStepError,
    NonUniqueSteadyStateError,
    SystemParams,
    evolve,
    steady_state,
)
from .operators import InvalidStateError, LinearSolveError, joint_index
from .phasespace import QuadratureSpec, max_s_rel, s_rel

SWEEP_CSV_HEADER = (
    "epsilon,delta,max_s_rel,phi_at_max,negativity,mutual_info,purity,"
    "schmidt_rank,s_rel_fo,negativity_fo,residual,status"
)
DYNAMICS_CSV_HEADER = "t,s_rel_peak,s_rel_peak_oracle,negativity,trace_error"


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated parameter point: numerics plus the first-order oracle."""

    epsilon: float
    delta: float
    max_s_rel: float
    phi_at_max: float
    negativity: float
    mutual_info: float
    purity: float
    schmidt_rank: int
    s_rel_fo: float
    negativity_fo: float
    residual: float
    status: str = "ok"


@dataclass(frozen=True)
class RegressionResult:
    """Ordinary least-squares fit y = slope*x + intercept."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int
    degenerate_variance: bool = False


@dataclass(frozen=True)
class DynamicsRow:
    """One sampled time of a dynamics trace."""

    t: float
    s_rel_peak: float
    s_rel_peak_oracle: float
    negativity: float
    trace_error: float


def _oracle_peaks(params: SystemParams) -> tuple[float, float]:
    mu = coherences(params, STEADY)
    amp = abs(mu.mu_plus + np.conj(mu.mu_minus))
    srel = SREL_COEFF * params.epsilon * amp
    neg = params.epsilon * (abs(mu.mu_plus) + abs(mu.mu_minus))
    return srel, neg


def evaluate_point(
    params: SystemParams, quad: QuadratureSpec = QuadratureSpec()
) -> tuple[SweepRecord, np.ndarray | None]:
    """Solve one point and fill a record; also return the state if solvable."""
    errors: list[str] = []
    s_rel_fo = negativity_fo = math.nan
    try:
        s_rel_fo, negativity_fo = _oracle_peaks(params)
    except ValueError as exc:
        errors.append(f"oracle: {exc}")

    rho = None
    vals = dict.fromkeys(
        ("max_s_rel", "phi_at_max", "negativity", "mutual_info", "purity",
         "residual"), math.nan
    )
    rank = 0
    try:
        rho, residual = steady_state(params, return_residual=True)
        phi_at_max, peak = max_s_rel(s_rel(rho, quad))
        vals.update(
            max_s_rel=peak,
            phi_at_max=phi_at_max,
            negativity=negativity(rho),
            mutual_info=mutual_information(rho),
            purity=purity(rho),
            residual=residual,
        )
        rank = schmidt_analysis(rho).rank
    except (NonUniqueSteadyStateError, LinearSolveError, InvalidStateError,
            ValueError) as exc:
        errors.append(f"solve: {exc}")

    record = SweepRecord(
        epsilon=params.epsilon,
        delta=params.delta,
        schmidt_rank=rank,
        s_rel_fo=s_rel_fo,
        negativity_fo=negativity_fo,
        status="ok" if not errors else "; ".join(errors),
        **vals,
    )
    return record, rho


def run_steady_point(
    params: SystemParams, quad: QuadratureSpec = QuadratureSpec()
) -> SweepRecord:
    """Evaluate one parameter point into a SweepRecord."""
    return evaluate_point(params, quad)[0]


def _validate_range(name: str, lo: float, hi: float) -> None:
    if not (np.isfinite(lo) and np.isfinite(hi) and lo <= hi):
        raise ValueError(f"invalid {name} range [{lo}, {hi}]")


def arnold_sweep(
    base: SystemParams,
    eps_range: tuple[float, float] = (0.0, 0.1),
    delta_range: tuple[float, float] = (-1.0, 1.0),
    steps: tuple[int, int] = (101, 101),
    quad: QuadratureSpec = QuadratureSpec(),
    jobs: int | None = None,
) -> list[SweepRecord]:
    """Evaluate the coupling-detuning grid in epsilon-major order."""
    _validate_range("epsilon", *eps_range)
    _validate_range("delta", *delta_range)
    if steps[0] < 2 or steps[1] < 2:
        raise ValueError("need at least 2 steps per axis")
    points = [
        replace(base, epsilon=float(eps), delta=float(delta))
        for eps in np.linspace(eps_range[0], eps_range[1], steps[0])
        for delta in np.linspace(delta_range[0], delta_range[1], steps[1])
    ]
    return _run_points(points, quad, jobs)


def balanced_cut_scan(
    base: SystemParams,
    ratio_range: tuple[float, float] = (1.0, 199.0),
    steps: int = 101,
    quad: QuadratureSpec = QuadratureSpec(),
    jobs: int | None = None,
) -> list[SweepRecord]:
    """Scan the damping of spin B with all other rates pinned and balanced.

    Requires a base whose A rates and B gain are all equal (the balanced-A
    configuration) with no detuning; gamma_d_b runs log-spaced over the
    ratio range.
    """
    if not (base.gamma_g_a == base.gamma_d_a == base.gamma_g_b):
        raise ValueError("cut requires gamma_g_a = gamma_d_a = gamma_g_b")
    if base.delta != 0.0:
        raise ValueError("cut is defined on resonance (delta = 0)")
    if not (0.0 < ratio_range[0] <= ratio_range[1] and np.isfinite(ratio_range[1])):
        raise ValueError(f"invalid ratio range {ratio_range}")
    if steps < 2:
        raise ValueError("need at least 2 steps")
    points = [
        replace(base, gamma_d_b=float(r))
        for r in np.geomspace(ratio_range[0], ratio_range[1], steps)
    ]
    return _run_points(points, quad, jobs)


def _run_points(
    points: list[SystemParams], quad: QuadratureSpec, jobs: int | None
) -> list[SweepRecord]:
    if jobs is not None and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(points) // (8 * jobs))
            return list(
                pool.map(run_steady_point, points, [quad] * len(points),
                         chunksize=chunk)
            )
    return [run_steady_point(p, quad) for p in points]


def dynamics_trace(
    params: SystemParams,
    t_max: float,
    samples: int = 11,
    quad: QuadratureSpec = QuadratureSpec(),
    dt: float | None = None,
) -> list[DynamicsRow]:
    """Evolve from both spins resting on their limit cycles, sampling measures.

    The initial state is the product of the two stabilized m=0 states; each
    sampled state is scored by its relative-phase peak (with the transient
    oracle peak alongside) and negativity.
    """
    rho0 = np.zeros((9, 9), dtype=complex)
    rho0[joint_index(0, 0), joint_index(0, 0)] = 1.0
    traj = evolve(params, rho0, t_max, dt=dt, samples=samples)
    rows = []
    for t, state, drift in zip(traj.times, traj.states, traj.trace_errors):
        mu = coherences(params, float(t))
        oracle = SREL_COEFF * params.epsilon * abs(mu.mu_plus + np.conj(mu.mu_minus))
        rows.append(
            DynamicsRow(
                t=float(t),
                s_rel_peak=max_s_rel(s_rel(state, quad))[1],
                s_rel_peak_oracle=float(oracle),
                negativity=negativity(state),
                trace_error=float(drift),
            )
        )
    return rows


def linear_regression(xs, ys) -> RegressionResult:
    """Least-squares line through (xs, ys) with explained-variance ratio."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("xs and ys must be equal-length 1-d sequences")
    if len(x) < 2:
        raise ValueError("need at least 2 points")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("regression inputs must be finite")
    x_var = float(np.sum((x - x.mean()) ** 2))
    if x_var == 0.0:
        raise ValueError("degenerate regression: xs are all equal")
    slope = float(np.sum((x - x.mean()) * (y - y.mean())) / x_var)
    intercept = float(y.mean() - slope * x.mean())
    ss_res = float(np.sum((y - slope * x - intercept) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return RegressionResult(slope=slope, intercept=intercept, r_squared=0.0,
                                n_points=len(x), degenerate_variance=True)
    return RegressionResult(
        slope=slope,
        intercept=intercept,
        r_squared=1.0 - ss_res / ss_tot,
        n_points=len(x),
    )


def _fmt(value: float) -> str:
    return "%.12g" % value


def _sanitize(status: str) -> str:
    return status.replace(",", ";").replace("\n", " ")


def write_sweep_csv(records: list[SweepRecord], path) -> None:
    """Write sweep records with the fixed column layout, 12 significant digits."""
    lines = [SWEEP_CSV_HEADER]
    for r in records:
        lines.append(",".join([
            _fmt(r.epsilon), _fmt(r.delta), _fmt(r.max_s_rel), _fmt(r.phi_at_max),
            _fmt(r.negativity), _fmt(r.mutual_info), _fmt(r.purity),
            str(r.schmidt_rank), _fmt(r.s_rel_fo), _fmt(r.negativity_fo),
            _fmt(r.residual), _sanitize(r.status),
        ]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_dynamics_csv(rows: list[DynamicsRow], path) -> None:
    """Write a dynamics trace with the fixed column layout."""
    lines = [DYNAMICS_CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            _fmt(r.t), _fmt(r.s_rel_peak), _fmt(r.s_rel_peak_oracle),
            _fmt(r.negativity), _fmt(r.trace_error),
        ]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
