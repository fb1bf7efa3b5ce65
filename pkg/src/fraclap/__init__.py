"""Solver for the homogeneous Dirichlet problem of the fractional Laplacian.

The operator (-Delta)^s (0 < s < 1) on a bounded domain is recast as the
classical Laplacian composed with a weakly singular volume potential of
the smooth unknown phi, where the solution factorizes as u = d^s phi with
d a smooth boundary-vanishing function.  Inverting the Laplacian with
layer potentials yields coupled volume/boundary integral equations with
only weakly singular kernels and smooth unknowns, discretized here by
Nystroem collocation on global polar-type grids (2D) and Chebyshev
collocation (1D).  A brute-force evaluator of the hypersingular
principal-value definition serves as an independent cross-check.
"""

from .special import coeff_C_ns, coeff_C_s_1d, coeff_c_ns, gamma_fn, jacobi_p
from .geometry import (
    BoundaryCurve,
    DomainGeometry,
    Interval1D,
    VolumeGrid,
    boundary_nodes,
    make_annulus,
    make_disc,
    make_kite,
)
from .quadrature import (
    PeriodicLogRule,
    RadialPowerRule,
    gauss_jacobi_nodes,
    kress_log_weights,
    radial_power_rule,
    singular_1d_weights,
    volumetric_singular_quad,
)
from .potentials import (
    DiscreteOperator,
    HoleBasis,
    assemble_boundary_D,
    assemble_boundary_S,
    assemble_Fs,
    assemble_V,
    eval_DL_domain,
    eval_SL_domain,
    solve_hole_basis,
)
from .solver1d import Problem1D, Solution1D, double_primitive, solve_1d
from .solver2d import Problem2D, Solution2D, solve_2d, verify_composition
from .oracle import OracleConfig, frac_lap_direct_1d, frac_lap_radial_2d
from .manufactured import (
    ConvergenceReport,
    JacobiFamilySpec,
    disc_exact_u,
    error_metrics,
    family_rhs,
    noc,
)

__version__ = "0.1.0"

__all__ = [
    "gamma_fn", "jacobi_p", "coeff_c_ns", "coeff_C_ns", "coeff_C_s_1d",
    "BoundaryCurve", "DomainGeometry", "Interval1D", "VolumeGrid",
    "boundary_nodes", "make_disc", "make_kite", "make_annulus",
    "PeriodicLogRule", "RadialPowerRule", "gauss_jacobi_nodes",
    "kress_log_weights", "radial_power_rule", "singular_1d_weights",
    "volumetric_singular_quad",
    "DiscreteOperator", "HoleBasis", "assemble_V", "assemble_Fs",
    "assemble_boundary_S", "assemble_boundary_D", "eval_SL_domain",
    "eval_DL_domain", "solve_hole_basis",
    "Problem1D", "Solution1D", "double_primitive", "solve_1d",
    "Problem2D", "Solution2D", "solve_2d", "verify_composition",
    "OracleConfig", "frac_lap_direct_1d", "frac_lap_radial_2d",
    "JacobiFamilySpec", "ConvergenceReport", "family_rhs", "disc_exact_u",
    "error_metrics", "noc",
]
