"""Radial solutions of widely degenerate p-Laplace Dirichlet problems on a ball.

Thin Python layer over the C++ core: rearrangements (f*, f**), Lorentz
quasi-norms, the explicit radial solutions and their derivatives, the flux
field, and the L^q / Sobolev regularity probes.
"""

try:
    from ._degenrad import *  # noqa: F401,F403
    from ._degenrad import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree builds put the extension on PYTHONPATH
    from _degenrad import *  # noqa: F401,F403

__all__ = [
    "BallDomain",
    "RadialDatum",
    "Rearrangement",
    "RadialSolution",
    "HessianEigenvalues",
    "unit_ball_volume",
    "h_alpha",
    "h_alpha_vec",
    "b_fun",
    "b_inv",
    "critical_q_gradient",
    "critical_q_hessian",
    "critical_r_hp2",
    "lq_norm",
    "hp2_sobolev_energy",
    "pde_residual",
    "weak_residual",
    "flux_p_invariance",
    "eps_convergence_study",
    "p_limit_study",
]
