"""Backward-Euler finite-difference solvers.

Single-subdomain window solves with an interface condition (prescribed
flux or the implicit bulk/Robin form), the monolithic coupled solver
used as reference oracle, and the stationary (equilibrium) solver.

Cell-centered layout, index 0 adjacent to the interface.  The implicit
step solves

    (1/dt + i f) U^{n+1} - nu (U_{m+1} - 2 U_m + U_{m-1})^{n+1} / h^2
        = g + U^n / dt

in the interior.  The outer Dirichlet value U(H_j) = U_inf is imposed at
the outer face through the ghost-cell reflection U_ghost = 2 U_inf - U_last,
and the interface face flux of the first cell is replaced by the active
interface condition.  Each step is one complex tridiagonal solve.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import PicardNoConvergence, SingularPivotError, ZeroJumpError
from .friction import (ZERO_JUMP_FLOOR, LinearConstant, LinearizedQuadratic,
                       Quadratic)
from .model import ATMOSPHERE, OCEAN

#: relative tolerance of the Picard iteration on the frozen friction
PICARD_TOL = 1e-12
PICARD_MAX_ITERS = 100


@dataclass
class SubdomainState:
    """Cell-center velocities of one subdomain at one time level."""

    side: str
    u: np.ndarray

    def __post_init__(self):
        self.u = np.asarray(self.u, dtype=complex)
        if not np.all(np.isfinite(self.u.view(float))):
            raise ValueError("subdomain state contains non-finite values")


@dataclass
class Trajectory:
    """One subdomain over a whole window.

    u has shape (n_t + 1, n): level 0 is the initial condition.
    interface_flux[n-1] stores nu_j dU_j/dz(0, t^n) for n = 1 .. n_t.
    """

    side: str
    u: np.ndarray
    interface_flux: np.ndarray

    def state(self, level):
        return SubdomainState(self.side, self.u[level])

    @property
    def n_levels(self):
        return self.u.shape[0]


@dataclass
class PrescribedFlux:
    """Interface condition: nu_j dU_j/dz(0, t^n) = trace[n-1]."""

    trace: np.ndarray

    def __post_init__(self):
        self.trace = np.asarray(self.trace, dtype=complex)


@dataclass
class RobinBulk:
    """Bulk condition of the atmosphere column:

        nu_a dU_a/dz(0, t^n) = alpha_trace[n-1] * (theta * U_a(h_a/2, t^n)
                                                   + data_trace[n-1])

    The theta part is implicit in the unknown first-cell value; data
    gathers everything built from previous-iterate traces.
    """

    theta: float
    alpha_trace: np.ndarray
    data_trace: np.ndarray

    def __post_init__(self):
        self.alpha_trace = np.asarray(self.alpha_trace, dtype=float)
        self.data_trace = np.asarray(self.data_trace, dtype=complex)
        if np.any(self.alpha_trace < 0):
            raise ValueError("alpha_trace must be nonnegative")
        if self.alpha_trace.shape != self.data_trace.shape:
            raise ValueError("alpha_trace and data_trace lengths differ")


def _tridiag_solve(lower, diag, upper, rhs):
    """Solve the complex tridiagonal system; fail loudly on bad pivots."""
    n = diag.shape[0]
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = upper
    ab[1] = diag
    ab[2, :-1] = lower
    try:
        x = solve_banded((1, 1), ab, rhs, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SingularPivotError(str(exc)) from exc
    if not np.all(np.isfinite(x.view(float))):
        raise SingularPivotError("tridiagonal solve produced non-finite values")
    return x


def _base_system(side, params, grid, dt):
    """Constant part of the implicit step: (lower, diag, upper, beta)."""
    h = grid.h(side)
    n = grid.n(side)
    beta = params.nu(side) / h**2
    a = 1.0 / dt + 1j * params.f
    diag = np.full(n, a + 2.0 * beta, dtype=complex)
    diag[0] = a + beta
    diag[-1] = a + 3.0 * beta
    lower = np.full(n - 1, -beta, dtype=complex)
    upper = np.full(n - 1, -beta, dtype=complex)
    return lower, diag, upper, beta


def step_subdomain(state, cond, level, params, grid, dt):
    """Advance one subdomain from t^{level-1} to t^{level} (level >= 1).

    The interface trace values of `cond` at index level-1 apply.  Returns
    the new state; the imposed interface flux is recoverable from the
    condition (see solve_subdomain_window).
    """
    side = state.side
    h = grid.h(side)
    lower, diag, upper, beta = _base_system(side, params, grid, dt)
    rhs = params.g(side) + state.u / dt
    rhs[-1] += 2.0 * beta * params.u_inf(side)
    k = level - 1
    if isinstance(cond, PrescribedFlux):
        # ocean: interface is the upper face (+flux/h); atmosphere: lower (-flux/h)
        sign = 1.0 if side == OCEAN else -1.0
        rhs[0] += sign * cond.trace[k] / h
    elif isinstance(cond, RobinBulk):
        if side != ATMOSPHERE:
            raise ValueError("the bulk Robin condition applies to the "
                             "atmosphere column only")
        diag = diag.copy()
        diag[0] += cond.theta * cond.alpha_trace[k] / h
        rhs[0] -= cond.alpha_trace[k] * cond.data_trace[k] / h
    else:
        raise TypeError(f"unknown interface condition {type(cond).__name__}")
    u_new = _tridiag_solve(lower, diag, upper, rhs)
    return SubdomainState(side, u_new)


def solve_subdomain_window(initial, cond, params, grid, time):
    """Iterate step_subdomain over the whole window.

    Records the imposed interface flux nu_j dU_j/dz(0, t^n) per level;
    for RobinBulk it is evaluated with the solved first-cell value.
    """
    side = initial.side
    n = grid.n(side)
    n_t = time.n_t
    if isinstance(cond, PrescribedFlux) and cond.trace.shape[0] != n_t:
        raise ValueError("interface trace length differs from n_t")
    if isinstance(cond, RobinBulk) and cond.alpha_trace.shape[0] != n_t:
        raise ValueError("interface trace length differs from n_t")
    u = np.empty((n_t + 1, n), dtype=complex)
    u[0] = initial.u
    flux = np.empty(n_t, dtype=complex)
    state = initial
    for level in range(1, n_t + 1):
        state = step_subdomain(state, cond, level, params, grid, time.dt)
        u[level] = state.u
        k = level - 1
        if isinstance(cond, PrescribedFlux):
            flux[k] = cond.trace[k]
        else:
            flux[k] = cond.alpha_trace[k] * (cond.theta * state.u[0]
                                             + cond.data_trace[k])
    return Trajectory(side=side, u=u, interface_flux=flux)


def _coupled_base(params, grid, dt):
    """Global tridiagonal of the coupled step, cells ordered top to
    bottom: a_{n_a-1} .. a_0, o_0 .. o_{n_o-1}.  The four interface
    coupling entries are left for the caller."""
    n_a, n_o = grid.n_a, grid.n_o
    n = n_a + n_o
    beta_a = params.nu_a / grid.h_a**2
    beta_o = params.nu_o / grid.h_o**2
    a = (1.0 / dt if dt is not None else 0.0) + 1j * params.f
    diag = np.empty(n, dtype=complex)
    lower = np.empty(n - 1, dtype=complex)
    upper = np.empty(n - 1, dtype=complex)
    diag[:n_a] = a + 2.0 * beta_a
    diag[0] = a + 3.0 * beta_a
    diag[n_a - 1] = a + beta_a
    diag[n_a:] = a + 2.0 * beta_o
    diag[n_a] = a + beta_o
    diag[-1] = a + 3.0 * beta_o
    lower[:n_a - 1] = -beta_a
    lower[n_a - 1:] = -beta_o
    upper[:n_a - 1] = -beta_a
    upper[n_a - 1:] = -beta_o
    return lower, diag, upper, beta_a, beta_o


def _friction_pieces(friction, params, jump):
    """(implicit alpha, extra explicit flux, frozen value) of the bulk
    flux F = nu_a dU_a/dz(0) = alpha_imp * jump + extra for the current
    Picard iterate."""
    if isinstance(friction, LinearConstant):
        return friction.alpha_c, 0.0 + 0.0j, 0.0 + 0.0j
    if isinstance(friction, Quadratic):
        alpha = params.c_d * abs(jump)
        return alpha, 0.0 + 0.0j, complex(alpha)
    if isinstance(friction, LinearizedQuadratic):
        fr = friction
        extra = (fr.flux_e - 1.5 * fr.alpha_e * fr.jump_e
                 + 0.5 * fr.alpha_e * fr.kappa * np.conj(jump - fr.jump_e))
        return 1.5 * fr.alpha_e, extra, complex(extra)
    raise TypeError(f"unknown friction law {type(friction).__name__}")


def _coupled_solve(base, params, grid, friction, rhs_base, jump_guess):
    """One coupled solve with Picard iteration on the frozen part of the
    friction law.  Returns (w_global, jump, flux)."""
    lower0, diag0, upper0, beta_a, beta_o = base
    n_a = grid.n_a
    h_a, h_o = grid.h_a, grid.h_o
    eps = params.epsilon
    jump = jump_guess
    frozen_prev = None
    residual = np.inf
    for _ in range(PICARD_MAX_ITERS):
        alpha, extra, frozen = _friction_pieces(friction, params, jump)
        diag = diag0.copy()
        lower = lower0.copy()
        upper = upper0.copy()
        rhs = rhs_base.copy()
        # atmosphere first cell: lower face flux F = alpha*jump + extra
        diag[n_a - 1] += alpha / h_a
        upper[n_a - 1] = -alpha / h_a
        rhs[n_a - 1] -= extra / h_a
        # ocean first cell: upper face flux eps * F
        diag[n_a] += eps * alpha / h_o
        lower[n_a - 1] = -eps * alpha / h_o
        rhs[n_a] += eps * extra / h_o
        w = _tridiag_solve(lower, diag, upper, rhs)
        jump = w[n_a - 1] - w[n_a]
        if isinstance(friction, LinearConstant):
            break
        if frozen_prev is not None:
            residual = abs(frozen - frozen_prev)
            if residual <= PICARD_TOL * max(abs(frozen_prev), 1e-30):
                break
        frozen_prev = frozen
    else:
        raise PicardNoConvergence(
            f"friction Picard iteration did not converge in "
            f"{PICARD_MAX_ITERS} iterations", residual)
    # flux exactly as present in the solved equations (alpha of the last solve)
    flux = alpha * jump + extra
    return w, jump, flux


def solve_monolithic(params, grid, time, friction, initial):
    """Reference oracle: solve the coupled problem without iteration.

    Both columns are advanced simultaneously; the interface cells of the
    global tridiagonal carry the bulk flux with opposite signs so that
    rho_o nu_o phi_o(0) = rho_a nu_a phi_a(0) holds by construction.
    Nonlinear friction is resolved per step by Picard iteration.

    Returns (atmosphere Trajectory, ocean Trajectory).
    """
    init_a, init_o = initial
    n_a, n_o, n_t = grid.n_a, grid.n_o, time.n_t
    base = _coupled_base(params, grid, time.dt)
    beta_a, beta_o = base[3], base[4]
    u_a = np.empty((n_t + 1, n_a), dtype=complex)
    u_o = np.empty((n_t + 1, n_o), dtype=complex)
    u_a[0] = init_a.u
    u_o[0] = init_o.u
    flux_a = np.empty(n_t, dtype=complex)
    wa, wo = init_a.u.copy(), init_o.u.copy()
    jump = wa[0] - wo[0]
    for level in range(1, n_t + 1):
        rhs = np.empty(n_a + n_o, dtype=complex)
        rhs[:n_a] = params.g_a + wa[::-1] / time.dt
        rhs[n_a:] = params.g_o + wo / time.dt
        rhs[0] += 2.0 * beta_a * params.u_inf_a
        rhs[-1] += 2.0 * beta_o * params.u_inf_o
        w, jump, flux = _coupled_solve(base, params, grid, friction, rhs, jump)
        wa = w[:n_a][::-1].copy()
        wo = w[n_a:].copy()
        u_a[level] = wa
        u_o[level] = wo
        flux_a[level - 1] = flux
    traj_a = Trajectory(ATMOSPHERE, u_a, flux_a)
    traj_o = Trajectory(OCEAN, u_o, params.epsilon * flux_a)
    return traj_a, traj_o


def compute_equilibrium(params, grid, friction=Quadratic()):
    """Stationary state of the coupled problem.

    Solves i f U - diffusion = g with the outer Dirichlet values and the
    bulk interface condition, iterating Picard on the friction exactly
    as the monolithic stepper does.  Returns (atmosphere state, ocean
    state, alpha_e) with alpha_e = c_d |interface jump| regardless of
    the friction law used for the solve.

    Raises ZeroJumpError when the converged interface jump vanishes
    (the drag-law linearization is undefined there).
    """
    n_a = grid.n_a
    base = _coupled_base(params, grid, None)
    beta_a, beta_o = base[3], base[4]
    rhs = np.empty(n_a + grid.n_o, dtype=complex)
    rhs[:n_a] = params.g_a
    rhs[n_a:] = params.g_o
    rhs[0] += 2.0 * beta_a * params.u_inf_a
    rhs[-1] += 2.0 * beta_o * params.u_inf_o
    jump0 = params.u_inf_a - params.u_inf_o
    w, jump, _ = _coupled_solve(base, params, grid, friction, rhs, jump0)
    if abs(jump) < ZERO_JUMP_FLOOR:
        raise ZeroJumpError("stationary interface jump is numerically zero")
    ua = SubdomainState(ATMOSPHERE, w[:n_a][::-1].copy())
    uo = SubdomainState(OCEAN, w[n_a:].copy())
    alpha_e = params.c_d * abs(jump)
    return ua, uo, alpha_e
