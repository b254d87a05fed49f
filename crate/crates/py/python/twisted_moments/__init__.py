"""Twisted second moments of Dirichlet L-functions, the Estermann function
and the reciprocity formulas that connect them.

Signs and parities are passed as the strings ``"+"`` and ``"-"``.
"""

from ._native import (
    ContinuedFraction,
    EstermannKernel,
    cotangent_sum,
    dedekind_sum,
    estermann_d,
    eta,
    euclid_chain,
    f_pm,
    gamma,
    hurwitz_zeta,
    moment_m,
    moment_mstar,
    moment_mstar_j,
    moment_rows,
    moment_two_twists,
    psi,
    psi_tilde,
    reciprocal_series,
    residual_rows,
    riemann_zeta,
    run_verification,
    young_error,
)

__all__ = [
    "ContinuedFraction",
    "EstermannKernel",
    "cotangent_sum",
    "dedekind_sum",
    "estermann_d",
    "eta",
    "euclid_chain",
    "f_pm",
    "gamma",
    "hurwitz_zeta",
    "moment_m",
    "moment_mstar",
    "moment_mstar_j",
    "moment_rows",
    "moment_two_twists",
    "psi",
    "psi_tilde",
    "reciprocal_series",
    "residual_rows",
    "riemann_zeta",
    "run_verification",
    "young_error",
]
