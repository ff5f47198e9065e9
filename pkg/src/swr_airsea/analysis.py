"""Closed-form convergence factors of the interface iteration and their
low/high-frequency asymptotics.

For a constant friction coefficient alpha_c the per-frequency factor is

    xi(omega) = | (1 - theta) + eps * h_a lambda_o / (h_o lambda_a) |
                / | nu_a chi_a / (alpha_c h_a lambda_a) - theta |

with eps = rho_a / rho_o.  Everything depends on omega only through
omega + f, so sweep grids are logarithmic in omega + f.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrequencyError, DivisionDegeneracyError
from .model import GridSpec, PhysicalParams, chi, lambda_root

#: below this |omega + f| the lambda_o / lambda_a ratio is treated as
#: indeterminate and spectral evaluations refuse to proceed
DEFAULT_FREQ_FLOOR = 1e-12

_DENOM_FLOOR = 1e-300


@dataclass(frozen=True)
class XiQuery:
    """One convergence-factor evaluation request.

    alpha_c is the constant friction coefficient with the density
    rho_a already divided out (units m s^-1), i.e. the coefficient
    multiplying the velocity jump in nu_a * dU_a/dz(0) = alpha_c * jump.
    """

    params: PhysicalParams
    grid: GridSpec
    theta: float
    alpha_c: float
    omega: float

    def __post_init__(self):
        if not self.alpha_c > 0:
            raise ValueError("alpha_c must be strictly positive")
        if not np.isfinite(self.theta):
            raise ValueError("theta must be finite")


def _check_floor(omega, f, floor):
    if np.any(np.abs(np.asarray(omega) + f) < floor):
        raise DegenerateFrequencyError(
            f"|omega + f| below the degeneracy floor {floor:g}")


def xi_linear_values(params, grid, theta, alpha_c, omegas,
                     floor=DEFAULT_FREQ_FLOOR):
    """Vectorized xi over an array of frequencies (constant friction)."""
    _check_floor(omegas, params.f, floor)
    eps = params.epsilon
    lam_a = lambda_root(chi(omegas, grid.h_a, params.nu_a, params.f))
    lam_o = lambda_root(chi(omegas, grid.h_o, params.nu_o, params.f))
    num = (1.0 - theta) + eps * grid.h_a * lam_o / (grid.h_o * lam_a)
    den = params.nu_a * chi(omegas, grid.h_a, params.nu_a, params.f) \
        / (alpha_c * grid.h_a * lam_a) - theta
    if np.any(np.abs(den) < _DENOM_FLOOR):
        raise DivisionDegeneracyError("convergence-factor denominator vanished")
    return np.abs(num / den)


def xi_linear(query, floor=DEFAULT_FREQ_FLOOR):
    """Convergence factor of the iteration with constant friction."""
    return float(xi_linear_values(query.params, query.grid, query.theta,
                                  query.alpha_c, query.omega, floor=floor))


def xi0_linear(theta, eps, nu_a, nu_o):
    """Low-frequency limit (1/theta) |1 - theta + eps sqrt(nu_a/nu_o)|."""
    if theta == 0:
        raise ZeroDivisionError("xi0 is infinite at theta = 0 "
                                "(the iteration diverges)")
    return abs(1.0 - theta + eps * np.sqrt(nu_a / nu_o)) / abs(theta)


def xi0_quadratic(theta, eps, nu_a, nu_o):
    """Low-frequency limit for the linearized quadratic friction:
    (1/theta) |3/2 - theta + (3/2) eps sqrt(nu_a/nu_o)|."""
    if theta == 0:
        raise ZeroDivisionError("xi0 is infinite at theta = 0 "
                                "(the iteration diverges)")
    return abs(1.5 - theta + 1.5 * eps * np.sqrt(nu_a / nu_o)) / abs(theta)


def theta_opt_linear(eps, nu_a, nu_o):
    """Relaxation parameter zeroing the low-frequency limit (constant
    friction): 1 + eps sqrt(nu_a/nu_o)."""
    return 1.0 + eps * np.sqrt(nu_a / nu_o)


def theta_opt_quadratic(eps, nu_a, nu_o):
    """Same for linearized quadratic friction: (3/2)(1 + eps sqrt(nu_a/nu_o))."""
    return 1.5 * (1.0 + eps * np.sqrt(nu_a / nu_o))


def xi_dnwr(omega, theta_dnwr, params, grid, floor=DEFAULT_FREQ_FLOOR):
    """Convergence factor of the Dirichlet-Neumann waveform-relaxation
    comparison algorithm, |1 - theta (1 - eps h_a lambda_o / (lambda_a h_o))|.
    """
    _check_floor(omega, params.f, floor)
    lam_a = lambda_root(chi(omega, grid.h_a, params.nu_a, params.f))
    lam_o = lambda_root(chi(omega, grid.h_o, params.nu_o, params.f))
    ratio = params.epsilon * grid.h_a * lam_o / (lam_a * grid.h_o)
    return float(np.abs(1.0 - theta_dnwr * (1.0 - ratio)))


def sup_xi(params, grid, theta, alpha_c, omegas, floor=DEFAULT_FREQ_FLOOR):
    """Grid-based sup of xi over an omega list: (max value, argmax omega).

    Purely a sweep; no continuous maximization is attempted.
    """
    omegas = np.asarray(omegas, dtype=float)
    if omegas.size == 0:
        raise ValueError("omega grid must be nonempty")
    values = xi_linear_values(params, grid, theta, alpha_c, omegas, floor=floor)
    k = int(np.argmax(values))
    return float(values[k]), float(omegas[k])


def omega_plus_f_sweep(lo=1e-10, hi=1e2, n=200):
    """Default logarithmic sweep grid in omega + f (not omega)."""
    return np.logspace(np.log10(lo), np.log10(hi), n)


@dataclass(frozen=True)
class XiSweepRow:
    """One tabulated frequency of a sweep, with the asymptotes attached
    for plotting and a flag for rows beyond the time-discrete Nyquist
    frequency pi/dt (meaningless in a discrete-in-time experiment)."""

    omega: float
    xi_linear: float
    xi_dnwr: float
    xi0_linear: float
    xi0_quadratic: float
    beyond_nyquist: bool = False


def sweep_xi(params, grid, theta, alpha_c, omega_plus_f_values,
             dt=None, floor=DEFAULT_FREQ_FLOOR):
    """Tabulate xi_linear and xi_dnwr over a grid of omega + f values.

    Returns (rows, skipped) where skipped counts grid entries below the
    degeneracy floor.  When dt is given, rows with |omega| > pi/dt are
    marked beyond_nyquist.
    """
    f = params.f
    x0l = xi0_linear(theta, params.epsilon, params.nu_a, params.nu_o)
    x0q = xi0_quadratic(theta, params.epsilon, params.nu_a, params.nu_o)
    rows = []
    skipped = 0
    for wpf in np.asarray(omega_plus_f_values, dtype=float):
        if abs(wpf) < floor:
            skipped += 1
            continue
        omega = wpf - f
        xl = float(xi_linear_values(params, grid, theta, alpha_c, omega,
                                    floor=floor))
        xd = xi_dnwr(omega, theta, params, grid, floor=floor)
        beyond = bool(dt is not None and abs(omega) > np.pi / dt)
        rows.append(XiSweepRow(omega=omega, xi_linear=xl, xi_dnwr=xd,
                               xi0_linear=x0l, xi0_quadratic=x0q,
                               beyond_nyquist=beyond))
    return rows, skipped
