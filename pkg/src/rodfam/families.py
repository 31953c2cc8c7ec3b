"""Analytic function descriptors and family specifications.

A family is the data (phi1, phi2, psi, alpha, beta) defining
Theta_n(x) = alpha^phi1(x) * d^n/dx^n [ psi(x) * beta^(-phi2(x)) ].
The three functions are given by finite descriptors: exact polynomials,
a few builtin analytic kinds, or a finite Taylor table.  Bases alpha and
beta are either symbolic (their logarithms stay the formal symbols La, Lb)
or positive doubles different from 1.

Jets are Taylor expansions truncated to a requested order.  They are exact
(rational coefficients) whenever the descriptor allows it: polynomials
anywhere, builtins only at x0 = 0, tables only at their expansion point.
Elsewhere the numeric fallback returns double-precision jets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .rational import Q, format_rational, rational
from .ring import Poly, rational_poly
from .series import TruncatedSeries


class SpecError(ValueError):
    """Malformed or inconsistent family/spec input."""


class ExactnessError(ValueError):
    """An exact jet or polynomial form is unavailable for this request."""


class JetOrderError(ValueError):
    """A jet was requested beyond the order the descriptor can supply."""


# ======================================================================
# analytic function variants
# ======================================================================

class AnalyticFunction:
    """Base class; concrete variants implement jets and (maybe) a Poly form."""

    def jet_at(self, x0, order: int) -> TruncatedSeries:
        """Exact jet at rational x0: series in t for f(x0 + t), order given."""
        raise NotImplementedError

    def jet_at_numeric(self, x0: float, order: int) -> TruncatedSeries:
        """Double-precision jet; works wherever derivative data exists."""
        raise NotImplementedError

    @property
    def is_polynomial(self) -> bool:
        return False

    def as_poly(self) -> Poly:
        raise ExactnessError(f"{self.describe()} is not a polynomial")

    def describe(self) -> str:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


@dataclass(frozen=True)
class PolyFunction(AnalyticFunction):
    """Exact polynomial with rational coefficients."""

    poly: Poly

    def __post_init__(self):
        if not self.poly.is_rational_poly:
            raise SpecError("polynomial descriptor must have rational coefficients")

    def jet_at(self, x0, order: int) -> TruncatedSeries:
        if order < 0:
            raise JetOrderError("jet order must be nonnegative")
        x0 = rational(x0)
        acc = {}
        deriv = self.poly
        fact = Q(1)
        for j in range(order + 1):
            if not deriv:
                break
            if j:
                fact = fact * j
            value = deriv.eval_rational(x0).as_rational() / fact
            if value:
                acc[(j,)] = Poly.const(value)
            deriv = deriv.derivative()
        return TruncatedSeries(("t",), (order,), acc, False)

    def jet_at_numeric(self, x0: float, order: int) -> TruncatedSeries:
        if order < 0:
            raise JetOrderError("jet order must be nonnegative")
        acc = {}
        deriv = self.poly
        fact = 1.0
        for j in range(order + 1):
            if not deriv:
                break
            if j:
                fact *= j
            value = deriv.eval_float(float(x0)) / fact
            if value:
                acc[(j,)] = value
            deriv = deriv.derivative()
        return TruncatedSeries(("t",), (order,), acc, True)

    @property
    def is_polynomial(self) -> bool:
        return True

    def as_poly(self) -> Poly:
        return self.poly

    def describe(self) -> str:
        return f"poly({self.poly})"

    def to_json(self):
        return {"poly": [format_rational(c.as_rational())
                         for c in self.poly.coeffs]}


_BUILTIN_KINDS = ("exp", "sin", "cos")

# derivative cycles at 0 for sin/cos: value of the j-th derivative before
# scaling, as (coefficient pattern over j mod 4)
_SIN_CYCLE = (0, 1, 0, -1)
_COS_CYCLE = (1, 0, -1, 0)


@dataclass(frozen=True)
class BuiltinFunction(AnalyticFunction):
    """f(x) = exp(s*x), sin(s*x) or cos(s*x) with a rational scale s."""

    kind: str
    scale: Q

    def __post_init__(self):
        if self.kind not in _BUILTIN_KINDS:
            raise SpecError(f"unknown builtin kind {self.kind!r}")
        object.__setattr__(self, "scale", rational(self.scale))

    def jet_at(self, x0, order: int) -> TruncatedSeries:
        if order < 0:
            raise JetOrderError("jet order must be nonnegative")
        if rational(x0) != 0:
            raise ExactnessError(
                f"builtin {self.kind} has exact jets only at x0 = 0")
        s = self.scale
        acc = {}
        power = Q(1)
        fact = Q(1)
        for j in range(order + 1):
            if j:
                fact = fact * j
                power = power * s
            if self.kind == "exp":
                num = power
            elif self.kind == "sin":
                num = power * _SIN_CYCLE[j % 4]
            else:
                num = power * _COS_CYCLE[j % 4]
            if num:
                acc[(j,)] = Poly.const(num / fact)
        return TruncatedSeries(("t",), (order,), acc, False)

    def jet_at_numeric(self, x0: float, order: int) -> TruncatedSeries:
        if order < 0:
            raise JetOrderError("jet order must be nonnegative")
        s = float(self.scale)
        u = s * float(x0)
        acc = {}
        power = 1.0
        fact = 1.0
        for j in range(order + 1):
            if j:
                fact *= j
                power *= s
            if self.kind == "exp":
                val = power * math.exp(u)
            elif self.kind == "sin":
                cyc = (math.sin(u), math.cos(u), -math.sin(u), -math.cos(u))
                val = power * cyc[j % 4]
            else:
                cyc = (math.cos(u), -math.sin(u), -math.cos(u), math.sin(u))
                val = power * cyc[j % 4]
            if val:
                acc[(j,)] = val / fact
        return TruncatedSeries(("t",), (order,), acc, True)

    def describe(self) -> str:
        return f"{self.kind}({format_rational(self.scale)}*x)"

    def to_json(self):
        return {"builtin": self.kind, "scale": format_rational(self.scale)}


@dataclass(frozen=True)
class TaylorTableFunction(AnalyticFunction):
    """Finite Taylor data: coefficients of f(at + t) up to a declared order.

    The table is the only knowledge of f, so jets exist solely at the
    declared expansion point and up to the declared order.
    """

    at: Q
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "at", rational(self.at))
        object.__setattr__(self, "coeffs",
                           tuple(rational(c) for c in self.coeffs))
        if not self.coeffs:
            raise SpecError("taylor table needs at least one coefficient")

    @property
    def declared_order(self) -> int:
        return len(self.coeffs) - 1

    def jet_at(self, x0, order: int) -> TruncatedSeries:
        if order < 0:
            raise JetOrderError("jet order must be nonnegative")
        if rational(x0) != self.at:
            raise ExactnessError(
                f"taylor table is anchored at {format_rational(self.at)}; "
                f"jets elsewhere would fabricate unknown coefficients")
        if order > self.declared_order:
            raise JetOrderError(
                f"jet order {order} exceeds declared order {self.declared_order}")
        acc = {}
        for j, c in enumerate(self.coeffs[:order + 1]):
            if c:
                acc[(j,)] = Poly.const(c)
        return TruncatedSeries(("t",), (order,), acc, False)

    def jet_at_numeric(self, x0: float, order: int) -> TruncatedSeries:
        if float(x0) != float(self.at):
            raise ExactnessError(
                "taylor table supplies jets only at its expansion point")
        if order > self.declared_order:
            raise JetOrderError(
                f"jet order {order} exceeds declared order {self.declared_order}")
        acc = {}
        for j, c in enumerate(self.coeffs[:order + 1]):
            if c:
                acc[(j,)] = float(c)
        return TruncatedSeries(("t",), (order,), acc, True)

    def describe(self) -> str:
        return (f"taylor(at={format_rational(self.at)}, "
                f"order={self.declared_order})")

    def to_json(self):
        return {"taylor": {"at": format_rational(self.at),
                           "coeffs": [format_rational(c) for c in self.coeffs]}}


def parse_function(obj) -> AnalyticFunction:
    """Parse one function descriptor from its JSON object form."""
    if not isinstance(obj, dict):
        raise SpecError(f"function descriptor must be an object, got {obj!r}")
    if "poly" in obj:
        extra = set(obj) - {"poly"}
        if extra:
            raise SpecError(f"unknown keys in poly descriptor: {sorted(extra)}")
        if not isinstance(obj["poly"], list):
            raise SpecError("poly descriptor needs a coefficient list")
        try:
            return PolyFunction(rational_poly(obj["poly"]))
        except (TypeError, ValueError) as exc:
            raise SpecError(f"bad poly coefficients: {exc}") from exc
    if "builtin" in obj:
        extra = set(obj) - {"builtin", "scale"}
        if extra:
            raise SpecError(f"unknown keys in builtin descriptor: {sorted(extra)}")
        try:
            scale = rational(obj.get("scale", 1))
        except (TypeError, ValueError) as exc:
            raise SpecError(f"bad builtin scale: {exc}") from exc
        return BuiltinFunction(obj["builtin"], scale)
    if "taylor" in obj:
        extra = set(obj) - {"taylor"}
        if extra:
            raise SpecError(f"unknown keys in taylor descriptor: {sorted(extra)}")
        body = obj["taylor"]
        if not isinstance(body, dict):
            raise SpecError("taylor descriptor needs an object body")
        extra = set(body) - {"at", "coeffs"}
        if extra:
            raise SpecError(f"unknown keys in taylor body: {sorted(extra)}")
        try:
            return TaylorTableFunction(rational(body.get("at", 0)),
                                       tuple(body.get("coeffs", ())))
        except (TypeError, ValueError) as exc:
            raise SpecError(f"bad taylor table: {exc}") from exc
    raise SpecError(f"unrecognized function descriptor keys: {sorted(obj)}")


# ======================================================================
# family specification
# ======================================================================

@dataclass(frozen=True)
class FamilySpec:
    """Data (phi1, phi2, psi, alpha, beta) of one Rodrigues-type family.

    alpha/beta are floats for numeric bases or None for symbolic bases.
    """

    phi1: AnalyticFunction
    phi2: AnalyticFunction
    psi: AnalyticFunction
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self):
        for name, base in (("alpha", self.alpha), ("beta", self.beta)):
            if base is None:
                continue
            if not (base > 0 and base != 1):
                raise SpecError(f"{name} must be positive and different from 1")
        if self.psi.is_polynomial and not self.psi.as_poly():
            raise SpecError("psi must not be identically zero")
        if (isinstance(self.psi, TaylorTableFunction)
                and not any(self.psi.coeffs)):
            raise SpecError("psi must not be identically zero")

    # ---- base handling -------------------------------------------------

    @property
    def is_symbolic(self) -> bool:
        return self.alpha is None or self.beta is None

    def log_alpha(self) -> float:
        if self.alpha is None:
            raise SpecError("alpha is symbolic; no numeric logarithm")
        return math.log(self.alpha)

    def log_beta(self) -> float:
        if self.beta is None:
            raise SpecError("beta is symbolic; no numeric logarithm")
        return math.log(self.beta)

    # ---- cache identity ------------------------------------------------

    def cache_key(self) -> tuple:
        return (
            json.dumps(self.phi1.to_json(), sort_keys=True),
            json.dumps(self.phi2.to_json(), sort_keys=True),
            json.dumps(self.psi.to_json(), sort_keys=True),
            repr(self.alpha),
            repr(self.beta),
        )

    def describe(self) -> str:
        base = lambda b: "symbolic" if b is None else repr(b)
        return (f"family(phi1={self.phi1.describe()}, "
                f"phi2={self.phi2.describe()}, psi={self.psi.describe()}, "
                f"alpha={base(self.alpha)}, beta={base(self.beta)})")

    # ---- JSON -----------------------------------------------------------

    def to_json(self) -> dict:
        def base(b):
            return "symbolic" if b is None else repr(b)
        return {"phi1": self.phi1.to_json(), "phi2": self.phi2.to_json(),
                "psi": self.psi.to_json(),
                "alpha": base(self.alpha), "beta": base(self.beta)}

    @staticmethod
    def from_json(obj) -> "FamilySpec":
        if not isinstance(obj, dict):
            raise SpecError("family spec must be a JSON object")
        extra = set(obj) - {"phi1", "phi2", "psi", "alpha", "beta"}
        if extra:
            raise SpecError(f"unknown keys in family spec: {sorted(extra)}")
        missing = {"phi1", "phi2", "psi"} - set(obj)
        if missing:
            raise SpecError(f"family spec missing keys: {sorted(missing)}")
        return FamilySpec(
            phi1=parse_function(obj["phi1"]),
            phi2=parse_function(obj["phi2"]),
            psi=parse_function(obj["psi"]),
            alpha=_parse_base(obj.get("alpha", "symbolic"), "alpha"),
            beta=_parse_base(obj.get("beta", "symbolic"), "beta"),
        )


def _parse_base(value, name: str):
    if value == "symbolic" or value is None:
        return None
    if isinstance(value, bool):
        raise SpecError(f"bad {name} value: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError as exc:
            raise SpecError(f"bad {name} value {value!r}") from exc
    raise SpecError(f"bad {name} value {value!r}")


def load_family(path) -> FamilySpec:
    """Read a family spec from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON in {path}: {exc}") from exc
    return FamilySpec.from_json(obj)


# convenience constructors used throughout the tests and bundled specs

def poly_function(coeffs) -> PolyFunction:
    """Polynomial descriptor from rational coefficients, lowest first."""
    return PolyFunction(rational_poly(coeffs))


def make_family(phi1, phi2, psi=(1,), alpha=None, beta=None) -> FamilySpec:
    """Family from plain coefficient lists (or AnalyticFunction instances)."""
    def wrap(f):
        return f if isinstance(f, AnalyticFunction) else poly_function(f)
    return FamilySpec(phi1=wrap(phi1), phi2=wrap(phi2), psi=wrap(psi),
                      alpha=alpha, beta=beta)
