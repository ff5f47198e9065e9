"""Waveform relaxation for a coupled ocean-atmosphere diffusion column
with bulk (drag-law) interface conditions, plus the semi-discrete
spectral convergence analysis."""

from .analysis import (XiQuery, XiSweepRow, omega_plus_f_sweep, sup_xi,
                       sweep_xi, theta_opt_linear, theta_opt_quadratic,
                       xi0_linear, xi0_quadratic, xi_dnwr, xi_linear,
                       xi_linear_values)
from .config import ExperimentConfig, build_config, load_config
from .errors import (ConfigError, DegenerateFrequencyError,
                     DivisionDegeneracyError, PicardNoConvergence,
                     SingularPivotError, SwrError, ZeroJumpError)
from .friction import LinearConstant, LinearizedQuadratic, Quadratic
from .model import (ATMOSPHERE, OCEAN, GridSpec, PhysicalParams,
                    SpectralPoint, TimeSpec, chi, lambda_root, mode_ratio,
                    spectral_point)
from .solver import (PrescribedFlux, RobinBulk, SubdomainState, Trajectory,
                     compute_equilibrium, solve_monolithic,
                     solve_subdomain_window, step_subdomain)
from .swr import (ConvergenceReport, SwrConfig, empirical_xi,
                  linear_robin_data, make_initial_guess, run_swr)

__version__ = "0.1.0"
