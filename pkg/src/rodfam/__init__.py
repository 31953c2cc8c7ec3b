"""Exact computer algebra for Rodrigues-type analytic function families.

Families Theta_n(x) = alpha^phi1(x) d^n/dx^n [psi(x) beta^(-phi2(x))] are
represented by their reduced kernels q_n, polynomials over the symbolic
ring Q[La, Lb, n^].  The package constructs the kernels, verifies the
generating-function and recurrence identities exactly, synthesizes the
annihilating linear differential equations, and assembles bilateral and
bilinear generating functions with Apostol-Bernoulli partners.
"""

from .bilateral import (ApostolBernoulliOmega, BilateralSpec, BiPoly,
                        OmegaFamily, TableOmega, ThetaOmega,
                        apostol_bernoulli, apostol_bernoulli_series,
                        lambda_series, load_bilateral, phi_poly,
                        verify_apostol_partner, verify_bilateral,
                        verify_bilinear)
from .families import (AnalyticFunction, BuiltinFunction, ExactnessError,
                       FamilySpec, JetOrderError, PolyFunction, SpecError,
                       TaylorTableFunction, load_family, make_family,
                       parse_function, poly_function)
from .genfun import genfun_lhs, genfun_rhs, verify_genfun
from .ode import (OdeSpec, closed_form_ode, compare_odes, ladder_coeffs,
                  ode_residual, quartic_example_ode, synthesize_ode,
                  verify_ode)
from .rational import Q, format_rational, rational
from .recurrences import RecurrenceId, applicable_ids, residual, sweep
from .report import VerificationReport
from .ring import LA, LB, NN, Poly, SymCoeff, rational_poly
from .rodrigues import (clear_kernel_cache, reduced_derivative,
                        reduced_kernel, reduced_kernels, theta_eval,
                        theta_jet)
from .series import (TruncatedSeries, poly_taylor_shift, series_exp,
                     series_inverse, series_mul)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction", "ApostolBernoulliOmega", "BiPoly", "BilateralSpec",
    "BuiltinFunction", "ExactnessError", "FamilySpec", "JetOrderError",
    "LA", "LB", "NN", "OdeSpec", "OmegaFamily", "Poly", "PolyFunction", "Q",
    "RecurrenceId", "SpecError", "SymCoeff", "TableOmega",
    "TaylorTableFunction", "ThetaOmega", "TruncatedSeries",
    "VerificationReport", "apostol_bernoulli", "apostol_bernoulli_series",
    "applicable_ids", "clear_kernel_cache", "closed_form_ode",
    "compare_odes", "format_rational", "genfun_lhs", "genfun_rhs",
    "ladder_coeffs", "lambda_series", "load_bilateral", "load_family",
    "make_family", "ode_residual", "parse_function", "phi_poly",
    "poly_function", "poly_taylor_shift", "quartic_example_ode", "rational",
    "rational_poly", "reduced_derivative", "reduced_kernel",
    "reduced_kernels", "residual", "series_exp", "series_inverse",
    "series_mul", "sweep", "synthesize_ode", "theta_eval", "theta_jet",
    "verify_apostol_partner", "verify_bilateral", "verify_bilinear",
    "verify_genfun", "verify_ode",
]
