"""Reduced kernels, evaluation, and jets of the derivative ladder."""

from __future__ import annotations

import math
import random
import threading

import pytest

from rodfam.families import SpecError, TaylorTableFunction, make_family, poly_function
from rodfam.rational import Q
from rodfam.rodrigues import (clear_kernel_cache, reduced_derivative,
                              reduced_kernel, reduced_kernels, theta_eval,
                              theta_jet)
from rodfam.ring import LA, LB, Poly, rational_poly
from rodfam.series import TruncatedSeries, series_exp

from conftest import random_family

HERMITE = make_family([0, 0, 1], [0, 0, 1])  # phi1 = phi2 = x^2, psi = 1


def hermite_oracle(n_max: int) -> list:
    """Physicists' Hermite polynomials via H_{n+1} = 2x H_n - 2n H_{n-1}."""
    h = [Poly.one(), rational_poly([0, 2])]
    for n in range(1, n_max):
        h.append(rational_poly([0, 2]) * h[n] - h[n - 1].scale(2 * n))
    return h[:n_max + 1]


def test_hermite_ladder_oracle_values():
    q = reduced_kernels(HERMITE, 4)
    assert q[0] == Poly.one()
    assert q[1] == Poly.monomial(LB * -2, 1)
    assert q[2] == Poly.monomial(LB * LB * 4, 2) + Poly.const(LB * -2)
    assert q[3] == (Poly.monomial(LB ** 3 * -8, 3)
                    + Poly.monomial(LB * LB * 12, 1))
    assert q[4] == (Poly.monomial(LB ** 4 * 16, 4)
                    + Poly.monomial(LB ** 3 * -48, 2)
                    + Poly.const(LB * LB * 12))


def test_hermite_kernels_match_three_term_recurrence():
    oracle = hermite_oracle(8)
    for n in range(9):
        q = reduced_kernel(HERMITE, n).subs_symbols(lb=Q(1))
        assert q == oracle[n].scale(Q((-1) ** n)), f"n = {n}"


def test_kernel_degree_law():
    rng = random.Random(31)
    for _ in range(10):
        fam = random_family(rng, max_degree=4)
        d0 = fam.psi.as_poly().degree
        d2 = fam.phi2.as_poly().degree
        for n in (0, 1, 3, 5):
            assert reduced_kernel(fam, n).degree == d0 + n * (d2 - 1)


def test_constant_phi2_degenerates_to_plain_derivatives():
    fam = make_family([0, 1], [5], psi=[0, 0, 0, 1])  # phi2 = 5, psi = x^3
    assert reduced_kernel(fam, 2) == rational_poly([0, 6])
    assert reduced_kernel(fam, 4) == Poly.zero()


def test_reduced_derivative_formula():
    fam = make_family([0, 0, 1], [0, 0, 0, 1], psi=[1, 1])
    p = rational_poly([0, 0, 1])
    expected = (rational_poly([0, 2])
                + (rational_poly([0, 2]).scale(LA)
                   - rational_poly([0, 0, 3]).scale(LB)) * p)
    assert reduced_derivative(fam, p) == expected


def test_hkdf_kernels_match_two_variable_hermite():
    # phi1 = phi2 = -x^2: q_n(x/2) at Lb = 1 is H_n(x, 1) with EGF exp(xt + t^2)
    fam = make_family([0, 0, -1], [0, 0, -1])
    egf = series_exp(TruncatedSeries.build(("t",), (6,), {
        (1,): Poly.x(), (2,): Poly.one(),
    }))
    fact = Q(1)
    for n in range(7):
        if n:
            fact = fact * n
        expected = egf.coefficient(n).scale(fact)
        got = reduced_kernel(fam, n).subs_symbols(lb=Q(1)).scale_arg(Q(1, 2))
        assert got == expected, f"n = {n}"


def test_theta_eval_hermite_values():
    fam = make_family([0, 0, 1], [0, 0, 1], alpha=math.e, beta=math.e)
    # Theta_n = (-1)^n H_n for exp bases; H_2(1) = 2, H_3(1/2) = -5
    assert theta_eval(fam, 2, 1.0) == pytest.approx(2.0)
    assert theta_eval(fam, 3, 0.5) == pytest.approx(5.0)
    assert theta_eval(fam, 0, 0.3) == pytest.approx(1.0)


def test_theta_eval_requires_numeric_bases():
    with pytest.raises(SpecError):
        theta_eval(HERMITE, 1, 0.0)


def test_theta_jet_matches_shifted_kernel():
    for x0 in (Q(0), Q(1, 2), Q(-2)):
        for n in (0, 1, 3):
            jet = theta_jet(HERMITE, n, x0, 4)
            q = reduced_kernel(HERMITE, n)
            fact = Q(1)
            deriv = q
            for j in range(5):
                if j:
                    fact = fact * j
                    deriv = deriv.derivative()
                expected = deriv.eval_rational(x0) / fact
                assert jet.coefficient(j) == Poly.const(expected), (x0, n, j)


def test_theta_jet_numeric_matches_exact():
    fam = make_family([0, 0, 1], [0, 1, 2], psi=[1, 1], alpha=2.0, beta=3.0)
    lb = fam.log_beta()
    exact = theta_jet(fam, 3, Q(1, 4), 5)
    numeric = theta_jet(fam, 3, 0.25, 5, numeric=True)
    for j in range(6):
        want = exact.coefficient(j).eval_float(0.0, lb=lb)
        assert numeric.coefficient(j) == pytest.approx(want, abs=1e-12)


def test_theta_jet_numeric_needs_numeric_beta():
    with pytest.raises(SpecError):
        theta_jet(HERMITE, 1, 0.0, 2, numeric=True)


def test_theta_jet_budget_is_order_plus_n():
    # psi known only to order 4 at 0: order + n <= 4 works, 5 does not
    psi = TaylorTableFunction(Q(0), (Q(1), Q(1), Q(1), Q(1), Q(1)))
    fam = make_family([0, 0, 1], [0, 0, 1])
    fam = type(fam)(phi1=fam.phi1, phi2=fam.phi2, psi=psi,
                    alpha=None, beta=None)
    jet = theta_jet(fam, 2, Q(0), 2)
    assert jet.orders == (2,)
    from rodfam.families import JetOrderError
    with pytest.raises(JetOrderError):
        theta_jet(fam, 2, Q(0), 3)


def test_kernel_cache_is_thread_safe():
    clear_kernel_cache()
    results = []

    def work():
        results.append(reduced_kernels(HERMITE, 40))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    clear_kernel_cache()
    assert reduced_kernel(HERMITE, 40) == results[0][40]
