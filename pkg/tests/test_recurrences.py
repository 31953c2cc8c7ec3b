"""The six recurrence identities, exact residual sweeps, and corruption checks."""

from __future__ import annotations

import random

import pytest

from rodfam.families import BuiltinFunction, FamilySpec, SpecError, make_family
from rodfam.rational import Q
from rodfam.recurrences import (RecurrenceId, _Context, _residual_aa9,
                                _residual_aa10, _residual_cor21, applicable_ids,
                                residual, sweep)
from rodfam.report import report_from_poly_residuals
from rodfam.ring import Poly
from rodfam.rodrigues import theta_jet

from conftest import random_family

HERMITE = make_family([0, 0, 1], [0, 0, 1])

ALL_IDS = [RecurrenceId.AA9, RecurrenceId.AA10, RecurrenceId.COR21,
           RecurrenceId.THM23, RecurrenceId.AA11, RecurrenceId.COR22]


def test_hermite_sweep_all_six_verified():
    reports = sweep(HERMITE, 10)
    assert [r.identity for r in reports] == [i.value for i in ALL_IDS]
    for r in reports:
        assert r.verified and r.order == 10 and r.first_failure is None


def test_single_residuals_are_zero_polys():
    for rid in ALL_IDS:
        assert residual(rid, HERMITE, 5) == Poly.zero()


def test_random_families_sweep():
    rng = random.Random(51)
    for _ in range(4):
        fam = random_family(rng, max_degree=3)
        ids = applicable_ids(fam)
        psi_is_one = fam.psi.as_poly() == Poly.one()
        assert (RecurrenceId.COR22 in ids) == psi_is_one
        for report in sweep(fam, 8, ids):
            assert report.verified, report.identity


def test_cor22_requires_trivial_psi():
    fam = make_family([0, 1], [0, 0, 1], psi=[0, 1])
    with pytest.raises(SpecError):
        residual(RecurrenceId.COR22, fam, 3)
    assert RecurrenceId.COR22 not in applicable_ids(fam)


def test_string_ids_accepted():
    assert residual("AA11", HERMITE, 4) == Poly.zero()
    reports = sweep(HERMITE, 4, ids=["AA9", "THM23"])
    assert [r.identity for r in reports] == ["AA9", "THM23"]


def test_corruption_is_detected_and_localized():
    fam = make_family([0, 1, 1], [0, 0, 0, 1], psi=[1, 2])
    ctx = _Context(fam, 6)
    ctx.q[3] = ctx.q[3] + Poly.monomial(Q(1), 1)
    residuals = {n: _residual_aa9(ctx, n) for n in range(7)}
    report = report_from_poly_residuals("AA9", residuals, 6)
    assert not report.verified
    # q_3 first appears at index n = 2 (the sum reaches q_{n+1})
    assert report.first_failure["n"] == 2


def test_cor21_is_the_difference_of_aa9_and_aa10():
    # structural identity of the three sums; visible on corrupted data
    fam = make_family([0, 2, 1], [0, 0, 1], psi=[1, 0, 1])
    ctx = _Context(fam, 6)
    ctx.q[2] = ctx.q[2] + Poly.monomial(Q(3, 2), 2)
    ctx.q[4] = ctx.q[4] - Poly.one()
    saw_nonzero = False
    for n in range(7):
        r9 = _residual_aa9(ctx, n)
        r10 = _residual_aa10(ctx, n)
        r21 = _residual_cor21(ctx, n)
        assert r21 == r9 - r10, f"n = {n}"
        saw_nonzero = saw_nonzero or bool(r21)
    assert saw_nonzero


def test_every_identity_flags_a_corrupted_kernel():
    fam = make_family([0, 0, 1], [0, 0, 1])  # psi = 1 so COR22 applies
    for rid in ALL_IDS:
        ctx = _Context(fam, 5)
        ctx.q[3] = ctx.q[3] + Poly.one()
        from rodfam.recurrences import _RESIDUALS
        assert any(_RESIDUALS[rid](ctx, n) for n in range(6)), rid


def test_thm23_on_numeric_jets_of_builtin_family():
    # non-polynomial data: the ladder identity holds on jets to float accuracy
    fam = FamilySpec(phi1=BuiltinFunction("exp", Q(1, 2)),
                     phi2=BuiltinFunction("sin", Q(2)),
                     psi=BuiltinFunction("cos", Q(1)),
                     alpha=2.0, beta=3.0)
    la, lb, x0, order, n = fam.log_alpha(), fam.log_beta(), 0.5, 8, 3
    jq = theta_jet(fam, n, x0, order + 1, numeric=True)
    jq_next = theta_jet(fam, n + 1, x0, order, numeric=True)
    jphi1p = fam.phi1.jet_at_numeric(x0, order + 1).derivative("t")
    jphi2p = fam.phi2.jet_at_numeric(x0, order + 1).derivative("t")
    d_jet = (jq.derivative("t")
             + (jphi1p * jq).scale(la) - (jphi2p * jq).scale(lb))
    resid = d_jet - jq_next - (jphi1p * jq).scale(la)
    assert resid.truncate((order,)).max_abs() < 1e-10


def test_sweep_rejects_negative_bounds():
    with pytest.raises(ValueError):
        sweep(HERMITE, -1)
    with pytest.raises(ValueError):
        residual(RecurrenceId.AA9, HERMITE, -2)
