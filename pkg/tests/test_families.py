"""Family descriptors: parsing, validation, and jets."""

from __future__ import annotations

import json
import math

import pytest

from rodfam.families import (BuiltinFunction, ExactnessError, FamilySpec,
                             JetOrderError, PolyFunction, SpecError,
                             TaylorTableFunction, load_family, make_family,
                             parse_function, poly_function)
from rodfam.rational import Q
from rodfam.ring import Poly, rational_poly

# ---------------------------------------------------------------------------
# parsing


def test_parse_poly_function():
    f = parse_function({"poly": ["1", "-3/2", "0", "2"]})
    assert isinstance(f, PolyFunction)
    assert f.as_poly() == rational_poly([1, "-3/2", 0, 2])


def test_parse_builtin_function():
    f = parse_function({"builtin": "sin", "scale": "1/2"})
    assert isinstance(f, BuiltinFunction)
    assert f.kind == "sin" and f.scale == Q(1, 2)
    g = parse_function({"builtin": "exp"})
    assert g.scale == Q(1)


def test_parse_taylor_function():
    f = parse_function({"taylor": {"at": "1/2", "coeffs": ["1", "0", "-2"]}})
    assert isinstance(f, TaylorTableFunction)
    assert f.at == Q(1, 2) and f.declared_order == 2


def test_parse_rejects_unknown_keys():
    with pytest.raises(SpecError):
        parse_function({"poly": ["1"], "extra": 0})
    with pytest.raises(SpecError):
        parse_function({"builtin": "exp", "scael": "1"})
    with pytest.raises(SpecError):
        parse_function({"taylor": {"at": "0", "coeffs": ["1"], "x": 1}})
    with pytest.raises(SpecError):
        parse_function({"mystery": []})
    with pytest.raises(SpecError):
        parse_function({"builtin": "tan"})


def test_family_json_round_trip(tmp_path):
    fam = make_family([0, 0, 1], [0, 0, 1], alpha=2.0, beta=2.0)
    blob = fam.to_json()
    assert FamilySpec.from_json(blob) == fam
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(blob))
    assert load_family(path) == fam


def test_family_json_rejects_unknown_and_missing_keys():
    fam = make_family([0, 1], [0, 1])
    blob = fam.to_json()
    blob["surprise"] = 1
    with pytest.raises(SpecError):
        FamilySpec.from_json(blob)
    blob = fam.to_json()
    del blob["psi"]
    with pytest.raises(SpecError):
        FamilySpec.from_json(blob)


def test_family_validation():
    with pytest.raises(SpecError):
        make_family([0, 1], [0, 1], alpha=1.0)  # base 1 has log 0
    with pytest.raises(SpecError):
        make_family([0, 1], [0, 1], beta=-2.0)
    with pytest.raises(SpecError):
        make_family([0, 1], [0, 1], psi=[0])  # psi identically zero
    with pytest.raises(SpecError):
        FamilySpec(phi1=poly_function([0, 1]), phi2=poly_function([0, 1]),
                   psi=TaylorTableFunction(Q(0), (Q(0), Q(0))),
                   alpha=None, beta=None)


def test_symbolic_vs_numeric_bases():
    sym = make_family([0, 1], [0, 1])
    assert sym.is_symbolic
    with pytest.raises(SpecError):
        sym.log_beta()  # symbolic base has no numeric log
    num = make_family([0, 1], [0, 1], alpha=math.e, beta=4.0)
    assert not num.is_symbolic
    assert num.log_alpha() == pytest.approx(1.0)
    assert num.log_beta() == pytest.approx(math.log(4.0))


def test_cache_key_distinguishes_families():
    a = make_family([0, 0, 1], [0, 0, 1])
    b = make_family([0, 0, 1], [0, 0, 1], psi=[0, 1])
    c = make_family([0, 0, 1], [0, 0, 1], alpha=2.0, beta=2.0)
    assert len({a.cache_key(), b.cache_key(), c.cache_key()}) == 3
    assert a.cache_key() == make_family([0, 0, 1], [0, 0, 1]).cache_key()


# ---------------------------------------------------------------------------
# jets


def test_poly_jet_matches_shift():
    f = poly_function([1, 0, "1/2", -1])
    jet = f.jet_at(Q(1, 2), 3)
    # p(1/2 + t) coefficients: evaluate p and derivatives at 1/2
    p = f.as_poly()
    assert jet.coefficient(0) == Poly.const(p.eval_rational(Q(1, 2)).as_rational())
    assert jet.coefficient(1) == Poly.const(
        p.derivative().eval_rational(Q(1, 2)).as_rational())


def test_poly_jet_linearity():
    f = poly_function([1, 2, 3])
    g = poly_function([0, -1, 0, 4])
    both = poly_function([1, 1, 3, 4])
    jf, jg, jb = (h.jet_at(Q(2), 4) for h in (f, g, both))
    assert jf + jg == jb


def test_exp_jet_oracle():
    f = BuiltinFunction("exp", Q(1))
    jet = f.jet_at(0, 3)
    assert jet.coefficient(0) == Poly.one()
    assert jet.coefficient(1) == Poly.one()
    assert jet.coefficient(2) == Poly.const(Q(1, 2))
    assert jet.coefficient(3) == Poly.const(Q(1, 6))


def test_sin_cos_jets_at_zero():
    s = BuiltinFunction("sin", Q(1)).jet_at(0, 3)
    assert s.coefficient(0) == Poly.zero()
    assert s.coefficient(1) == Poly.one()
    assert s.coefficient(3) == Poly.const(Q(-1, 6))
    c = BuiltinFunction("cos", Q(2)).jet_at(0, 2)
    assert c.coefficient(0) == Poly.one()
    assert c.coefficient(2) == Poly.const(Q(-2))  # -(2^2)/2


def test_builtin_exact_jet_only_at_zero():
    f = BuiltinFunction("exp", Q(1))
    with pytest.raises(ExactnessError):
        f.jet_at(Q(1), 2)
    jet = f.jet_at_numeric(1.0, 2)
    assert jet.coefficient(0) == pytest.approx(math.e)
    assert jet.coefficient(2) == pytest.approx(math.e / 2)


def test_builtin_numeric_jet_matches_calculus():
    f = BuiltinFunction("sin", Q(3))
    jet = f.jet_at_numeric(0.7, 4)
    assert jet.coefficient(0) == pytest.approx(math.sin(2.1))
    assert jet.coefficient(1) == pytest.approx(3 * math.cos(2.1))
    assert jet.coefficient(2) == pytest.approx(-9 * math.sin(2.1) / 2)


def test_taylor_table_jet_rules():
    f = TaylorTableFunction(Q(1, 2), (Q(1), Q(0), Q(-2)))
    jet = f.jet_at(Q(1, 2), 2)
    assert jet.coefficient(2) == Poly.const(-2)
    with pytest.raises(ExactnessError):
        f.jet_at(Q(0), 1)
    with pytest.raises(JetOrderError):
        f.jet_at(Q(1, 2), 3)
    with pytest.raises(JetOrderError):
        f.jet_at_numeric(0.5, 5)


def test_describe_smoke():
    fam = make_family([0, 0, 1], [0, 0, 1])
    text = fam.describe()
    assert "phi1" in text and "psi" in text
