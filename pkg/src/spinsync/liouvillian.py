"""Generator of the two-spin master equation, its steady state, and dynamics.

The density matrix is vectorized row-major, so vec(A rho B) = (A kron B^T)
vec(rho).  Each spin precesses at omega_j about Sz and is stabilized to the
m = 0 limit cycle by a gain channel (gamma_g/2) D[S+ Sz] pumping from below
and a damping channel (gamma_d/2) D[S- Sz] draining from above; the exchange
coupling i(eps/2)(Sp_A Sm_B - Sp_B Sm_A) is the only interaction.

Frequencies are parametrized as omega_A = omega_ref + delta, omega_B =
omega_ref; every steady-state quantity depends on delta only, which the test
suite checks by varying omega_ref.  All rates are in units of gamma_d_a.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import (
    LinearSolveError,
    embed,
    solve_linear,
    spin1_operators,
    validate_density_matrix,
)


class NonUniqueSteadyStateError(RuntimeError):
    """The generator kernel is not one-dimensional."""


class IntegrationStepError(RuntimeError):
    """Fixed-step integration failed; a smaller step is required."""


@dataclass(frozen=True)
class SystemParams:
    """Full parameter point of the master equation, rates in units of gamma_d_a."""

    gamma_g_a: float = 1.0
    gamma_d_a: float = 1.0
    gamma_g_b: float = 1.0
    gamma_d_b: float = 1.0
    epsilon: float = 0.0
    delta: float = 0.0
    omega_ref: float = 0.0

    def __post_init__(self):
        rates = {
            "gamma_g_a": self.gamma_g_a,
            "gamma_d_a": self.gamma_d_a,
            "gamma_g_b": self.gamma_g_b,
            "gamma_d_b": self.gamma_d_b,
            "epsilon": self.epsilon,
        }
        for name, value in rates.items():
            if not np.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if self.gamma_d_a <= 0.0:
            raise ValueError("gamma_d_a sets the unit scale and must be > 0")
        for name in ("delta", "omega_ref"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class Trajectory:
    """Sampled time evolution: times and the matching 9x9 states."""

    times: np.ndarray
    states: list[np.ndarray] = field(repr=False)
    trace_errors: np.ndarray = field(repr=False)


def _left(op: np.ndarray) -> np.ndarray:
    return np.kron(op, np.eye(9, dtype=complex))


def _right(op: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(9, dtype=complex), op.T)


def _dissipator_super(op: np.ndarray) -> np.ndarray:
    odo = op.conj().T @ op
    return np.kron(op, op.conj()) - 0.5 * (_left(odo) + _right(odo))


def trace_row(dim: int = 9) -> np.ndarray:
    """Row vector t with t @ vec(rho) = Tr rho."""
    return np.eye(dim, dtype=complex).reshape(-1)


def build_generator(params: SystemParams) -> np.ndarray:
    """Assemble the 81x81 matrix L with vec(rho_dot) = L @ vec(rho)."""
    sz, sp, sm = spin1_operators()
    sz_a, sz_b = embed(sz, "A"), embed(sz, "B")
    sp_a, sp_b = embed(sp, "A"), embed(sp, "B")
    sm_a, sm_b = embed(sm, "A"), embed(sm, "B")

    omega_a = params.omega_ref + params.delta
    omega_b = params.omega_ref
    ham = omega_a * sz_a + omega_b * sz_b
    ham = ham + 0.5j * params.epsilon * (sp_a @ sm_b - sp_b @ sm_a)

    gen = -1j * (_left(ham) - _right(ham))
    channels = (
        (params.gamma_g_a, embed(sp @ sz, "A")),
        (params.gamma_d_a, embed(sm @ sz, "A")),
        (params.gamma_g_b, embed(sp @ sz, "B")),
        (params.gamma_d_b, embed(sm @ sz, "B")),
    )
    for rate, jump in channels:
        if rate != 0.0:
            gen = gen + 0.5 * rate * _dissipator_super(jump)
    return gen


KERNEL_RATIO_THRESHOLD = 1e-8


def steady_state(
    params: SystemParams, *, return_residual: bool = False
) -> np.ndarray | tuple[np.ndarray, float]:
    """Unique steady state of the generator, as a valid 9x9 density matrix.

    Solved as an augmented least-squares system: the 81 generator rows plus
    the trace row, right-hand side (0, ..., 0, 1).  The kernel is verified
    one-dimensional through the two smallest singular values of L before
    trusting the solution.
    """
    gen = build_generator(params)
    gen_scale = float(np.max(np.abs(gen)))

    singular = np.linalg.svd(gen, compute_uv=False)
    if singular[-2] < KERNEL_RATIO_THRESHOLD * gen_scale:
        raise NonUniqueSteadyStateError(
            "steady state is not unique: two smallest singular values "
            f"{singular[-1]:.3e}, {singular[-2]:.3e} against scale {gen_scale:.3e}"
        )

    augmented = np.vstack([gen, trace_row()[None, :]])
    rhs = np.zeros(82, dtype=complex)
    rhs[-1] = 1.0
    vec, _ = solve_linear(augmented, rhs)

    rho = vec.reshape(9, 9)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real

    residual = float(np.linalg.norm(gen @ rho.reshape(-1)))
    tol = 1e-10 * (1.0 + gen_scale)
    if residual > tol:
        raise LinearSolveError(
            f"steady-state residual {residual:.3e} exceeds {tol:.3e}", residual
        )
    validate_density_matrix(rho)
    if return_residual:
        return rho, residual
    return rho


def default_time_step(params: SystemParams) -> float:
    """Conservative fixed step: stiffness is set by the largest rate present."""
    scale = max(
        params.gamma_g_a,
        params.gamma_d_a,
        params.gamma_g_b,
        params.gamma_d_b,
        abs(params.delta),
        abs(params.omega_ref + params.delta),
        abs(params.omega_ref),
        params.epsilon,
        1.0,
    )
    return 1e-3 / scale

def _rk4_step_matrix(gen: np.ndarray, h: float) -> np.ndarray:
    # Classical RK4 applied to the linear system vec' = L vec collapses to a
    # fixed one-step matrix: sum of (hL)^k / k! for k = 0..4.
    dim = gen.shape[0]
    step = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, 5):
        term = (h / k) * (gen @ term)
        step = step + term
    return step


MAX_TRACE_DRIFT = 1e-6
MAX_STATE_NORM = 1e3


def evolve(
    params: SystemParams,
    rho0: np.ndarray,
    t_max: float,
    dt: float | None = None,
    samples: int = 11,
) -> Trajectory:
    """Fixed-step RK4 integration of the master equation from rho0.

    States are re-Hermitized at the sample points.  dt is an upper bound on
    the step; the actual step evenly divides the sampling interval.  A trace
    drift beyond 1e-6 or a norm blow-up aborts with IntegrationStepError.
    """
    if t_max < 0.0:
        raise ValueError("t_max must be >= 0")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    validate_density_matrix(rho0, herm_tol=1e-8, trace_tol=1e-8, psd_tol=1e-8)
    if dt is None:
        dt = default_time_step(params)
    if dt <= 0.0:
        raise ValueError("dt must be > 0")

    if t_max == 0.0 or samples == 1:
        times = np.array([0.0])
        rho = 0.5 * (rho0 + rho0.conj().T)
        return Trajectory(
            times=times,
            states=[rho],
            trace_errors=np.array([abs(np.trace(rho).real - 1.0)]),
        )

    times = np.linspace(0.0, t_max, samples)
    seg = times[1] - times[0]
    n_sub = max(1, int(np.ceil(seg / dt - 1e-12)))
    h = seg / n_sub

    gen = build_generator(params)
    step = _rk4_step_matrix(gen, h)

    vec = rho0.reshape(-1).astype(complex)
    states = []
    trace_errors = np.empty(samples)

    def record(index: int, v: np.ndarray) -> None:
        rho = v.reshape(9, 9)
        rho = 0.5 * (rho + rho.conj().T)
        states.append(rho)
        trace_errors[index] = abs(np.trace(rho).real - 1.0)

    record(0, vec)
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, samples):
            for _ in range(n_sub):
                vec = step @ vec
            if not np.all(np.isfinite(vec)) or np.max(np.abs(vec)) > MAX_STATE_NORM:
                raise IntegrationStepError(
                    f"state norm blew up by t = {times[i]:.3g}; "
                    f"use a smaller step than dt = {h:.3e}"
                )
            record(i, vec)
            if trace_errors[i] > MAX_TRACE_DRIFT:
                raise IntegrationStepError(
                    f"trace drift {trace_errors[i]:.3e} at t = {times[i]:.3g} "
                    f"exceeds {MAX_TRACE_DRIFT:.1e}; use a smaller step than dt = {h:.3e}"
                )

    return Trajectory(times=times, states=states, trace_errors=trace_errors)
