"""Physical parameters, grids and the spectral primitives of the
semi-discrete scheme.

The model couples two vertical diffusion columns (atmosphere above,
ocean below) through a bulk friction law at z = 0.  Velocities are
complex, U = u + i v.  All quantities are SI.

Grid layout is cell-centered: atmosphere cell centers sit at
z_m = h_a/2 + m h_a (m = 0 .. n_a-1), ocean cell centers at
z_m = -h_o/2 - m h_o.  Index 0 is always the cell adjacent to the
interface, and the surface-layer edges coincide with the first cell
centers (delta_a = h_a/2, delta_o = -h_o/2).
"""

from dataclasses import dataclass, field

import numpy as np

ATMOSPHERE = "atmosphere"
OCEAN = "ocean"

SIDES = (ATMOSPHERE, OCEAN)


@dataclass(frozen=True)
class PhysicalParams:
    """Fluid constants of the coupled problem.

    f          : Coriolis frequency (s^-1)
    nu_a, nu_o : constant turbulent viscosities (m^2 s^-1)
    rho_a, rho_o : densities (kg m^-3)
    c_d        : drag coefficient (dimensionless)
    u_inf_a, u_inf_o : far-field geostrophic velocities (complex, m s^-1)
    g_a, g_o   : forcing terms (complex, m s^-2)
    """

    f: float
    nu_a: float
    nu_o: float
    rho_a: float
    rho_o: float
    c_d: float
    u_inf_a: complex
    u_inf_o: complex
    g_a: complex
    g_o: complex

    def __post_init__(self):
        for name in ("nu_a", "nu_o", "rho_a", "rho_o", "c_d"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @classmethod
    def geostrophic(cls, f, nu_a, nu_o, rho_a, rho_o, c_d, u_inf_a, u_inf_o):
        """Construct with geostrophic forcing g_j = i f u_inf_j."""
        return cls(f=f, nu_a=nu_a, nu_o=nu_o, rho_a=rho_a, rho_o=rho_o,
                   c_d=c_d, u_inf_a=complex(u_inf_a), u_inf_o=complex(u_inf_o),
                   g_a=1j * f * complex(u_inf_a), g_o=1j * f * complex(u_inf_o))

    @property
    def epsilon(self):
        """Density ratio rho_a / rho_o (the small coupling parameter)."""
        return self.rho_a / self.rho_o

    def nu(self, side):
        return self.nu_a if side == ATMOSPHERE else self.nu_o

    def rho(self, side):
        return self.rho_a if side == ATMOSPHERE else self.rho_o

    def u_inf(self, side):
        return self.u_inf_a if side == ATMOSPHERE else self.u_inf_o

    def g(self, side):
        return self.g_a if side == ATMOSPHERE else self.g_o


@dataclass(frozen=True)
class GridSpec:
    """Cell widths and cell counts of the two staggered columns."""

    h_a: float
    h_o: float
    n_a: int
    n_o: int

    def __post_init__(self):
        if not (self.h_a > 0 and self.h_o > 0):
            raise ValueError("cell widths must be strictly positive")
        if self.n_a < 2 or self.n_o < 2:
            raise ValueError("need at least two cells per subdomain "
                             "(the interface condition uses the flux at z = +-h_j)")

    @property
    def extent_a(self):
        return self.n_a * self.h_a

    @property
    def extent_o(self):
        return -self.n_o * self.h_o

    def h(self, side):
        return self.h_a if side == ATMOSPHERE else self.h_o

    def n(self, side):
        return self.n_a if side == ATMOSPHERE else self.n_o

    def cell_centers(self, side):
        """Cell-center coordinates, index 0 adjacent to the interface."""
        if side == ATMOSPHERE:
            return self.h_a / 2 + self.h_a * np.arange(self.n_a)
        return -self.h_o / 2 - self.h_o * np.arange(self.n_o)


@dataclass(frozen=True)
class TimeSpec:
    """Uniform time axis: n_t steps of size dt over (0, T]."""

    dt: float
    n_t: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be strictly positive")
        if self.n_t < 1:
            raise ValueError("n_t must be at least 1")

    @property
    def t_final(self):
        return self.n_t * self.dt


def chi(omega, h, nu, f):
    """Nondimensional frequency symbol i (omega + f) h^2 / nu.

    Purely imaginary for real omega; vanishes iff omega + f = 0.
    Accepts scalar or array omega.
    """
    if not (h > 0 and nu > 0):
        raise ValueError("h and nu must be strictly positive")
    return 1j * (np.asarray(omega) + f) * h * h / nu


def mode_ratio(chi_value):
    """Per-cell ratio r = lambda + 1 of the interface-decaying mode.

    r is the root of r^2 - (2 + chi) r + 1 = 0 with |r| <= 1, so that
    the mode amplitude r^m stays bounded away from the interface.  Both
    radicals are taken with the principal branch, and r is evaluated as
    2 / ((2 + chi) + sqrt(chi) sqrt(chi + 4)), the exact cofactor form
    of (chi - sqrt(chi)sqrt(chi + 4))/2 + 1 that stays accurate when
    |chi| is large and |r| is tiny.
    """
    c = np.asarray(chi_value, dtype=complex)
    r = 2.0 / ((2.0 + c) + np.sqrt(c) * np.sqrt(c + 4.0))
    bad = np.abs(r) > 1.0 + 1e-12
    if np.any(bad):
        raise ArithmeticError("mode_ratio produced |lambda + 1| > 1; "
                              "branch selection failed")
    if r.ndim == 0:
        return complex(r)
    return r


def lambda_root(chi_value):
    """Decay-mode root lambda = (chi - sqrt(chi) sqrt(chi + 4)) / 2.

    Satisfies |lambda + 1| <= 1 with equality only at chi = 0.  Prefer
    mode_ratio() when lambda + 1 itself is needed: lambda is within one
    rounding unit of -1 at large |chi| and the +1 cancellation then
    costs accuracy.
    """
    r = mode_ratio(chi_value)
    return r - 1.0


@dataclass(frozen=True)
class SpectralPoint:
    """chi and lambda of both subdomains at one temporal frequency.

    r_a and r_o carry lambda_j + 1 at full precision (see mode_ratio).
    """

    omega: float
    chi_a: complex
    chi_o: complex
    lambda_a: complex = field(init=False)
    lambda_o: complex = field(init=False)
    r_a: complex = field(init=False)
    r_o: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "r_a", mode_ratio(self.chi_a))
        object.__setattr__(self, "r_o", mode_ratio(self.chi_o))
        object.__setattr__(self, "lambda_a", self.r_a - 1.0)
        object.__setattr__(self, "lambda_o", self.r_o - 1.0)


def spectral_point(params, grid, omega):
    """Build the SpectralPoint of a configuration at frequency omega."""
    return SpectralPoint(
        omega=omega,
        chi_a=complex(chi(omega, grid.h_a, params.nu_a, params.f)),
        chi_o=complex(chi(omega, grid.h_o, params.nu_o, params.f)),
    )
