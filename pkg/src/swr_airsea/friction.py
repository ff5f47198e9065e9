"""Interface friction laws.

The bulk transmission condition reads nu_a dU_a/dz(0,t) = alpha * (jump
of velocity across the surface layer), with alpha either a constant, the
drag law c_d |jump| evaluated on the previous iterate, or the
linearization of the drag law around a stationary state.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroJumpError

#: interface jumps smaller than this are treated as zero (the modulus in
#: the drag law is then not differentiable)
ZERO_JUMP_FLOOR = 1e-12


@dataclass(frozen=True)
class LinearConstant:
    """alpha = alpha_c, a constant (units m s^-1, rho_a divided out)."""

    alpha_c: float

    def __post_init__(self):
        if not self.alpha_c > 0:
            raise ValueError("alpha_c must be strictly positive")


@dataclass(frozen=True)
class Quadratic:
    """alpha = c_d |U_a(h_a/2,t) - U_o(-h_o/2,t)|, the nonlinear drag law."""


@dataclass(frozen=True)
class LinearizedQuadratic:
    """Drag law linearized around a stationary state.

    Acting on deltas dU = U - U^e, the transmission operator is

        nu_a dphi_a^k = alpha_e ( (3/2 - theta) dU_a^{k-1} + theta dU_a^k
                                  - (3/2) dU_o^{k-1}
                                  + (1/2) kappa conj(dU_a^{k-1} - dU_o^{k-1}) )

    with kappa = jump_e / conj(jump_e) and alpha_e = c_d |jump_e|.
    Stores only the interface values of the stationary profiles; the full
    profiles live with the initial condition.
    """

    u_e_a: complex
    u_e_o: complex
    alpha_e: float
    jump_e: complex = field(init=False)
    kappa: complex = field(init=False)
    flux_e: complex = field(init=False)

    def __post_init__(self):
        jump = complex(self.u_e_a) - complex(self.u_e_o)
        if abs(jump) <= ZERO_JUMP_FLOOR:
            raise ZeroJumpError("stationary interface jump is zero; "
                                "the drag law cannot be linearized")
        object.__setattr__(self, "jump_e", jump)
        object.__setattr__(self, "kappa", jump / np.conj(jump))
        object.__setattr__(self, "flux_e", self.alpha_e * jump)

    @classmethod
    def from_equilibrium(cls, eq_atmosphere, eq_ocean, alpha_e):
        """Build from the two equilibrium profiles returned by
        compute_equilibrium (interface cells are index 0)."""
        return cls(u_e_a=complex(eq_atmosphere.u[0]),
                   u_e_o=complex(eq_ocean.u[0]),
                   alpha_e=alpha_e)
