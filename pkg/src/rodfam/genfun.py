"""Exponential generating function of a family, verified in reduced form.

Dividing the generating identity by the prefactor alpha^phi1 * beta^(-phi2(x))
leaves an identity between polynomial-coefficient series in t:

    sum_n q_n(x) t^n / n!  =  psi(x+t) * exp(-Lb * (phi2(x+t) - phi2(x))).

Both sides are computed exactly over Q[La, Lb][x] up to a requested t-order;
La never occurs (the prefactor cancels it), which the verifier asserts.
"""

from __future__ import annotations

from .families import FamilySpec
from .rational import Q
from .report import VerificationReport, report_from_series
from .ring import LB
from .rodrigues import reduced_kernels
from .series import TruncatedSeries, poly_taylor_shift, series_exp


def genfun_lhs(family: FamilySpec, order: int) -> TruncatedSeries:
    """sum_{n <= order} q_n t^n / n! with Poly-in-x coefficients."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    kernels = reduced_kernels(family, order)
    acc = {}
    fact = Q(1)
    for n, q in enumerate(kernels):
        if n:
            fact = fact * n
        if q:
            acc[(n,)] = q / fact
    return TruncatedSeries(("t",), (order,), acc, False)


def genfun_rhs(family: FamilySpec, order: int) -> TruncatedSeries:
    """psi(x+t) * exp(-Lb * (phi2(x+t) - phi2(x))) to the given t-order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    psi = family.psi.as_poly()
    phi2 = family.phi2.as_poly()
    shift_psi = poly_taylor_shift(psi, order)
    shift_phi2 = poly_taylor_shift(phi2, order)
    # phi2(x+t) - phi2(x) has no constant t-term, so exp applies exactly
    increment = shift_phi2 - TruncatedSeries.build(("t",), (order,),
                                                  {(0,): phi2})
    exponent = increment.scale(-LB)
    return shift_psi * series_exp(exponent)


def verify_genfun(family: FamilySpec, order: int) -> VerificationReport:
    """Exact comparison of both sides; reports the first differing t-order."""
    lhs = genfun_lhs(family, order)
    rhs = genfun_rhs(family, order)
    if any(c.uses_symbol(0) for c in rhs.coeffs.values()):
        raise AssertionError("generating function must not involve La")
    return report_from_series("genfun", lhs - rhs, order)
