"""Waveform-relaxation driver over a time window.

One iteration solves the atmosphere column with the bulk interface
condition built from previous-iterate traces (implicit part
theta * alpha * U_a(h_a/2)), then the ocean column with the flux trace
scaled by the density ratio so that rho_o nu_o phi_o(0) = rho_a nu_a
phi_a(0) holds exactly.  Error norms are the discrete space-time L2

    err^2 = sum_n sum_m |U^k - U^ref|^2 h dt

measured against a monolithic reference or, when none is given, against
the iteration's own fixed point (the run is then replayed once).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SwrError
from .friction import LinearConstant, LinearizedQuadratic, Quadratic
from .model import ATMOSPHERE, OCEAN
from .solver import PrescribedFlux, RobinBulk, Trajectory, solve_subdomain_window

#: reference types recorded in ConvergenceReport.reference
REF_MONOLITHIC = "monolithic"
REF_FIXED_POINT = "fixed-point"


@dataclass(frozen=True)
class SwrConfig:
    """Iteration controls.

    tol is the L2 stopping threshold: on err_total when a reference is
    given, on the iterate-to-iterate interface-trace change otherwise.
    noise_amplitude is the half-width (m/s) of the uniform white noise
    applied independently to real and imaginary parts of the first-guess
    interface traces.
    """

    theta: float
    max_iters: int = 40
    tol: float = 1e-12
    noise_amplitude: float = 1.0
    seed: int = 1234

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be strictly positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.noise_amplitude < 0:
            raise ValueError("noise_amplitude must be nonnegative")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class ConvergenceReport:
    """Per-iteration error norms of one run.

    Arrays are indexed by iteration (row 0 is k = 1).  ratio[k] is
    err_total[k]/err_total[k-1]; the first entry is NaN.  The interface
    error traces (atmosphere first-cell value minus reference, one array
    of length n_t per iteration) feed the spectral diagnostics.
    """

    theta: float
    seed: int
    friction: str
    reference: str
    err_atm: np.ndarray = field(default_factory=lambda: np.empty(0))
    err_oce: np.ndarray = field(default_factory=lambda: np.empty(0))
    err_total: np.ndarray = field(default_factory=lambda: np.empty(0))
    ratio: np.ndarray = field(default_factory=lambda: np.empty(0))
    interface_errors_atm: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    diverged: bool = False


def make_initial_guess(eq_value_a, eq_value_o, n_t, config):
    """First-guess interface traces: white noise around the interface
    values of the initial condition.

    Real and imaginary parts are drawn uniformly from
    [-noise_amplitude, +noise_amplitude] with numpy's PCG64 generator
    seeded by SeedSequence([seed, stream]); stream 0 is the atmosphere
    trace, stream 1 the ocean trace.  Runs are bit-reproducible.
    """
    traces = []
    for stream, center in ((0, eq_value_a), (1, eq_value_o)):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([int(config.seed), stream])))
        z = rng.uniform(-config.noise_amplitude, config.noise_amplitude, (2, n_t))
        traces.append(center + z[0] + 1j * z[1])
    return traces[0], traces[1]


def linear_robin_data(theta, trace_a, trace_o):
    """Explicit part of the bulk condition for the constant and drag
    laws: (1 - theta) U_a^{k-1} - U_o^{k-1} (per time level)."""
    return (1.0 - theta) * trace_a - trace_o


def _robin_condition(friction, params, theta, trace_a, trace_o, n_t):
    """Build the atmosphere RobinBulk condition from previous-iterate
    interface traces according to the active friction law."""
    if isinstance(friction, LinearConstant):
        alpha = np.full(n_t, friction.alpha_c)
        data = linear_robin_data(theta, trace_a, trace_o)
    elif isinstance(friction, Quadratic):
        alpha = params.c_d * np.abs(trace_a - trace_o)
        data = linear_robin_data(theta, trace_a, trace_o)
    elif isinstance(friction, LinearizedQuadratic):
        fr = friction
        alpha = np.full(n_t, fr.alpha_e)
        da = trace_a - fr.u_e_a
        do = trace_o - fr.u_e_o
        # operator on deltas, re-assembled to full fields:
        # the implicit part theta*alpha_e*U_a^k carries -theta*u_e_a here,
        # and the equilibrium flux is added back through flux_e/alpha_e
        data = (-theta * fr.u_e_a + (1.5 - theta) * da - 1.5 * do
                + 0.5 * fr.kappa * np.conj(da - do) + fr.flux_e / fr.alpha_e)
    else:
        raise TypeError(f"unknown friction law {type(friction).__name__}")
    return RobinBulk(theta=theta, alpha_trace=alpha, data_trace=data)


def _space_time_l2(u, ref, h, dt):
    """Discrete L2 over space and time of u - ref (levels 1..n_t)."""
    d = u[1:] - ref[1:]
    return math.sqrt(float(np.sum(d.real**2 + d.imag**2)) * h * dt)


def _friction_name(friction):
    return {LinearConstant: "linear", Quadratic: "quadratic",
            LinearizedQuadratic: "linearized"}[type(friction)]


def _iterate(params, grid, time, friction, config, initial, n_iters,
             reference=None, stop_on_err=None):
    """Core loop shared by both passes of run_swr.

    Yields nothing; returns (report arrays, trajectory pair, K) where K
    is the number of iterations actually performed.  When reference is
    None only interface-change norms are tracked (err arrays are the
    change norms); otherwise errors are measured against the reference.
    """
    init_a, init_o = initial
    n_t = time.n_t
    trace_a, trace_o = make_initial_guess(init_a.u[0], init_o.u[0], n_t, config)
    err_a, err_o, err_t = [], [], []
    traces_err = []
    pair = None
    for k in range(1, n_iters + 1):
        cond_a = _robin_condition(friction, params, config.theta,
                                  trace_a, trace_o, n_t)
        traj_a = solve_subdomain_window(init_a, cond_a, params, grid, time)
        cond_o = PrescribedFlux(params.epsilon * traj_a.interface_flux)
        traj_o = solve_subdomain_window(init_o, cond_o, params, grid, time)
        if not (np.all(np.isfinite(traj_a.u.view(float)))
                and np.all(np.isfinite(traj_o.u.view(float)))):
            raise SwrError(f"non-finite state at waveform iteration {k} "
                           f"(theta={config.theta}, seed={config.seed})")
        new_a = traj_a.u[1:, 0].copy()
        new_o = traj_o.u[1:, 0].copy()
        change = math.sqrt((float(np.sum(np.abs(new_a - trace_a)**2))
                            + float(np.sum(np.abs(new_o - trace_o)**2))) * time.dt)
        trace_a, trace_o = new_a, new_o
        pair = (traj_a, traj_o)
        if reference is None:
            err_a.append(math.nan)
            err_o.append(math.nan)
            err_t.append(change)
            if change <= (stop_on_err if stop_on_err is not None else config.tol):
                return err_a, err_o, err_t, traces_err, pair, k
        else:
            ref_a, ref_o = reference
            ea = _space_time_l2(traj_a.u, ref_a.u, grid.h_a, time.dt)
            eo = _space_time_l2(traj_o.u, ref_o.u, grid.h_o, time.dt)
            err_a.append(ea)
            err_o.append(eo)
            err_t.append(math.hypot(ea, eo))
            traces_err.append(traj_a.u[1:, 0] - ref_a.u[1:, 0])
            if stop_on_err is not None and err_t[-1] <= stop_on_err:
                return err_a, err_o, err_t, traces_err, pair, k
    return err_a, err_o, err_t, traces_err, pair, n_iters


def run_swr(params, grid, time, friction, config, initial, reference=None):
    """Run the waveform relaxation; returns (report, trajectory pair).

    initial is the (atmosphere, ocean) pair of initial states shared by
    every iteration; reference is a (Trajectory, Trajectory) pair from
    solve_monolithic or None.  Without a reference the loop stops when
    the interface-trace change drops below config.tol and the run is
    replayed once to measure errors against its own final iterate.
    Divergence is not an error: the run then ends at max_iters with the
    diverged flag set.
    """
    report = ConvergenceReport(theta=config.theta, seed=config.seed,
                               friction=_friction_name(friction),
                               reference=(REF_MONOLITHIC if reference is not None
                                          else REF_FIXED_POINT))
    if reference is not None:
        ea, eo, et, traces, pair, k = _iterate(
            params, grid, time, friction, config, initial, config.max_iters,
            reference=reference, stop_on_err=config.tol)
        converged = bool(et[-1] <= config.tol)
        stalled = et
    else:
        # pass 1: iterate to the fixed point; pass 2: replay against it
        _, _, changes, _, pair_ref, k_ref = _iterate(
            params, grid, time, friction, config, initial, config.max_iters,
            reference=None)
        converged = bool(changes[-1] <= config.tol)
        ea, eo, et, traces, pair, k = _iterate(
            params, grid, time, friction, config, initial, k_ref,
            reference=pair_ref, stop_on_err=None)
        stalled = changes
    report.err_atm = np.asarray(ea)
    report.err_oce = np.asarray(eo)
    report.err_total = np.asarray(et)
    ratio = np.full(k, math.nan)
    for i in range(1, k):
        if et[i - 1] > 0:
            ratio[i] = et[i] / et[i - 1]
    report.ratio = ratio
    report.interface_errors_atm = traces
    report.iterations = k
    report.converged = converged
    report.diverged = bool(not converged and k == config.max_iters
                           and stalled[-1] > stalled[0])
    return report, pair


def empirical_xi(e_prev, e_curr, dt):
    """Per-frequency contraction measured from two successive interface
    error traces: |DFT(e^k)(omega_m)| / |DFT(e^{k-1})(omega_m)| at
    omega_m = 2 pi m / T, m = 1 .. n_t/2.

    Bins where the denominator is below 1e-14 of the largest bin are
    skipped.  The ratio is iteration-independent only for the constant
    friction law.  Returns (omegas, ratios).
    """
    e_prev = np.asarray(e_prev, dtype=complex)
    e_curr = np.asarray(e_curr, dtype=complex)
    if e_prev.shape != e_curr.shape or e_prev.ndim != 1:
        raise ValueError("error traces must be 1-d arrays of equal length")
    n_t = e_prev.shape[0]
    t_total = n_t * dt
    spec_prev = np.abs(np.fft.fft(e_prev))
    spec_curr = np.abs(np.fft.fft(e_curr))
    m = np.arange(1, n_t // 2 + 1)
    keep = spec_prev[m] >= 1e-14 * spec_prev.max()
    m = m[keep]
    omegas = 2.0 * np.pi * m / t_total
    return omegas, spec_curr[m] / spec_prev[m]
