"""Truncated multivariate series with polynomial coefficients."""

from __future__ import annotations

import math
import random

import pytest

from rodfam.rational import Q
from rodfam.ring import LA, LB, Poly, rational_poly
from rodfam.series import (TruncatedSeries, poly_taylor_shift, series_exp,
                           series_inverse, series_mul)


def _exp_series(order: int) -> TruncatedSeries:
    """sum_n t^n / n!, exact."""
    fact = Q(1)
    entries = {}
    for n in range(order + 1):
        if n:
            fact = fact * n
        entries[(n,)] = Poly.const(1 / fact)
    return TruncatedSeries.build(("t",), (order,), entries)


def test_exp_square_oracle():
    # (sum t^n/n!)^2 = sum 2^n t^n/n!: coefficients 1, 2, 2, 4/3 ...
    e = _exp_series(3)
    sq = series_mul(e, e)
    assert sq.coefficient(0) == Poly.one()
    assert sq.coefficient(1) == Poly.const(2)
    assert sq.coefficient(2) == Poly.const(2)
    assert sq.coefficient(3) == Poly.const(Q(4, 3))


def test_series_exp_hermite_exponent():
    # exp(-Lb (2 x t + t^2)) = 1 - 2 Lb x t + (2 Lb^2 x^2 - Lb) t^2 + O(t^3)
    u = TruncatedSeries.build(("t",), (2,), {
        (1,): Poly.monomial(LB * -2, 1),
        (2,): Poly.const(-LB),
    })
    e = series_exp(u)
    assert e.coefficient(0) == Poly.one()
    assert e.coefficient(1) == Poly.monomial(LB * -2, 1)
    assert e.coefficient(2) == Poly.monomial(LB * LB * 2, 2) + Poly.const(-LB)


def test_series_exp_requires_zero_constant():
    u = TruncatedSeries.one(("t",), (3,))
    with pytest.raises(ValueError):
        series_exp(u)


def test_series_exp_times_exp_of_negation_is_one():
    rng = random.Random(21)
    for _ in range(8):
        entries = {}
        for n in range(1, 13):
            coeffs = [Q(rng.randint(-5, 5), rng.choice((1, 2, 3)))
                      for _ in range(rng.randint(0, 3))]
            p = rational_poly(coeffs) if coeffs else Poly.zero()
            if rng.random() < 0.3:
                p = p + Poly.const(LB * rng.randint(-2, 2))
            if p:
                entries[(n,)] = p
        u = TruncatedSeries.build(("t",), (12,), entries)
        prod = series_exp(u) * series_exp(-u)
        assert prod == TruncatedSeries.one(("t",), (12,))


def test_series_inverse_bernoulli_oracle():
    # inverse of sum t^k/(k+1)! carries B_k/k!: 1, -1/2, 1/12, 0, -1/720
    entries = {}
    fact = Q(1)
    for k in range(5):
        fact = fact * (k + 1)
        entries[(k,)] = Poly.const(1 / fact)
    inv = series_inverse(TruncatedSeries.build(("t",), (4,), entries))
    assert inv.coefficient(0) == Poly.one()
    assert inv.coefficient(1) == Poly.const(Q(-1, 2))
    assert inv.coefficient(2) == Poly.const(Q(1, 12))
    assert inv.coefficient(3) == Poly.zero()
    assert inv.coefficient(4) == Poly.const(Q(-1, 720))


def test_series_inverse_round_trip_random():
    rng = random.Random(22)
    for _ in range(8):
        entries = {(0,): Poly.const(Q(rng.choice((1, -1, 2, 3)), rng.choice((1, 2))))}
        for n in range(1, 10):
            coeffs = [Q(rng.randint(-4, 4)) for _ in range(rng.randint(0, 3))]
            p = rational_poly(coeffs) if coeffs else Poly.zero()
            if p:
                entries[(n,)] = p
        s = TruncatedSeries.build(("t",), (9,), entries)
        assert s * series_inverse(s) == TruncatedSeries.one(("t",), (9,))


def test_series_inverse_rejects_nonunit_constant():
    s = TruncatedSeries.build(("t",), (3,), {(1,): Poly.one()})
    with pytest.raises(ValueError):
        series_inverse(s)
    s = TruncatedSeries.build(("t",), (3,), {(0,): Poly.x()})
    with pytest.raises(ValueError):
        series_inverse(s)


def test_poly_taylor_shift_matches_composition():
    rng = random.Random(23)
    for _ in range(10):
        p = rational_poly([Q(rng.randint(-6, 6)) for _ in range(rng.randint(1, 6))])
        a = Q(rng.randint(-3, 3), rng.choice((1, 2)))
        shifted = poly_taylor_shift(p, max(p.degree, 0) if p else 0)
        # composition oracle: p(x + a) by Horner in Poly arithmetic
        xa = Poly.x() + Poly.const(a)
        comp = Poly.zero()
        for c in reversed(p.coeffs if p else ()):
            comp = comp * xa + Poly.const(c)
        summed = Poly.zero()
        for (j,), coef in shifted.coeffs.items():
            summed = summed + coef.scale(a ** j)
        assert summed == comp


def test_truncation_takes_min_orders():
    a = _exp_series(5)
    b = _exp_series(3)
    assert (a * b).orders == (3,)
    assert (a + b).orders == (3,)


def test_derivative_and_eval_var():
    # d/dt of exp-series drops one order and reproduces itself
    e = _exp_series(6)
    d = e.derivative("t")
    assert d.orders == (5,)
    for n in range(6):
        assert d.coefficient(n) == e.coefficient(n)
    at_zero = e.eval_var("t", Q(0))
    assert at_zero == Poly.one()


def test_lift_and_outer_product():
    sx = TruncatedSeries.build(("t",), (2,), {(0,): Poly.one(), (1,): Poly.x()})
    sy = TruncatedSeries.build(("eta",), (2,), {(1,): Poly.const(LA)})
    big = (sx.lift(("t", "eta"), (2, 2), 0) * sy.lift(("t", "eta"), (2, 2), 1))
    assert big.coefficient(1, 1) == Poly.monomial(LA, 1)
    assert big.coefficient(0, 1) == Poly.const(LA)
    assert big.coefficient(1, 0) == Poly.zero()


def test_build_rejects_out_of_range_exponents():
    with pytest.raises(ValueError):
        TruncatedSeries.build(("t",), (2,), {(3,): Poly.one()})
    with pytest.raises(ValueError):
        TruncatedSeries.build(("t",), (2,), {(0, 0): Poly.one()})


def test_numeric_mode_exp():
    u = TruncatedSeries.build(("t",), (8,), {(1,): 1.0}, numeric=True)
    e = series_exp(u)
    for n in range(9):
        assert e.coefficient(n) == pytest.approx(1.0 / math.factorial(n))


def test_first_nonzero_ordering():
    s = TruncatedSeries.build(("t", "eta"), (3, 3), {
        (2, 1): Poly.one(), (0, 3): Poly.one(), (3, 0): Poly.one(),
    })
    assert s.first_nonzero() == (0, 3)
