"""Bilateral and bilinear generating functions.

A partner family Omega (Apostol-Bernoulli polynomials, another Theta family,
or an explicit table) and a coefficient rule a_k define

    Lambda(y; eta)   = sum_k a_k Omega_{mu + nu*k}(y) eta^k,
    Phi_n(x; y; zeta) = sum_{k <= n/p} a_k / (n-pk)! q_{n-pk}(x)
                                        Omega_{mu + nu*k}(y) zeta^k.

Setting zeta = eta / t^p and summing Phi_n t^n rearranges into the product
of the family's generating series in t with Lambda in eta.  The verifier
assembles the left side term by term from Phi and compares it, exactly, with
that product as a bivariate truncated series.  Coefficients of the bivariate
series are BiPoly values: polynomials in the two evaluation variables x, y
over the symbolic ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .families import FamilySpec, SpecError
from .genfun import genfun_lhs, genfun_rhs
from .rational import Q, format_rational, rational
from .report import VerificationReport, report_from_series
from .ring import Poly, SymCoeff, rational_poly
from .rodrigues import reduced_kernel
from .series import TruncatedSeries, series_inverse


class BiPoly:
    """Sparse polynomial in (x, y) with SymCoeff coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        # internal: takes ownership of a normalized dict (no zero values)
        self.terms = terms

    @staticmethod
    def zero() -> "BiPoly":
        return _BP_ZERO

    @staticmethod
    def from_x(p: Poly) -> "BiPoly":
        return BiPoly({(d, 0): c for d, c in enumerate(p.coeffs) if c})

    @staticmethod
    def from_y(p: Poly) -> "BiPoly":
        return BiPoly({(0, d): c for d, c in enumerate(p.coeffs) if c})

    @staticmethod
    def outer(px: Poly, py: Poly) -> "BiPoly":
        """px(x) * py(y)."""
        acc: dict = {}
        for i, a in enumerate(px.coeffs):
            if not a:
                continue
            for j, b in enumerate(py.coeffs):
                if not b:
                    continue
                prod = a * b
                if prod:
                    acc[(i, j)] = prod
        return BiPoly(acc)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        acc = dict(self.terms)
        for key, val in other.terms.items():
            cur = acc.get(key)
            if cur is None:
                acc[key] = val
            else:
                cur = cur + val
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
        return BiPoly(acc)

    def __neg__(self):
        return BiPoly({key: -val for key, val in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            acc: dict = {}
            for ka, va in self.terms.items():
                for kb, vb in other.terms.items():
                    key = (ka[0] + kb[0], ka[1] + kb[1])
                    prod = va * vb
                    if not prod:
                        continue
                    cur = acc.get(key)
                    if cur is None:
                        acc[key] = prod
                    else:
                        cur = cur + prod
                        if cur:
                            acc[key] = cur
                        else:
                            del acc[key]
            return BiPoly(acc)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, scalar) -> "BiPoly":
        scalar = SymCoeff.of(scalar) if not isinstance(scalar, SymCoeff) else scalar
        if not scalar:
            return _BP_ZERO
        acc = {}
        for key, val in self.terms.items():
            prod = val * scalar
            if prod:
                acc[key] = prod
        return BiPoly(acc)

    def transpose(self) -> "BiPoly":
        """Swap the roles of x and y."""
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def subs_symbols(self, la=None, lb=None, nn=None) -> "BiPoly":
        acc = {}
        for key, val in self.terms.items():
            image = val.subs(la=la, lb=lb, nn=nn)
            if image:
                acc[key] = image
        return BiPoly(acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms):
            mono = "*".join(s for s in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if s)
            text = f"({self.terms[(i, j)]})"
            parts.append(f"{text}*{mono}" if mono else text)
        return " + ".join(parts)

    __repr__ = __str__


_BP_ZERO = BiPoly({})


# ======================================================================
# Apostol-Bernoulli polynomials
# ======================================================================

def apostol_bernoulli_series(order: int, lam, n_max: int,
                             varname: str = "t") -> TruncatedSeries:
    """(t / (lam*e^t - 1))^order * e^{y t} with Poly-in-y coefficients.

    For lam = 1 the simple zero of e^t - 1 is cancelled against t before
    inverting; otherwise t/(lam*e^t - 1) carries an explicit factor t.
    """
    if order < 0:
        raise SpecError("apostol order must be nonnegative")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    lam = rational(lam)
    if lam == 1:
        # (e^t - 1)/t = sum t^k / (k+1)!
        denom = TruncatedSeries.build(
            (varname,), (n_max,),
            {(k,): Q(1) / factorial(k + 1) for k in range(n_max + 1)})
        base = series_inverse(denom)
    else:
        denom = TruncatedSeries.build(
            (varname,), (n_max,),
            {(k,): lam / factorial(k) - (1 if k == 0 else 0)
             for k in range(n_max + 1)})
        inv = series_inverse(denom)
        shifted = {(e[0] + 1,): c for e, c in inv.coeffs.items()
                   if e[0] + 1 <= n_max}
        base = TruncatedSeries((varname,), (n_max,), shifted, False)
    power = TruncatedSeries.one((varname,), (n_max,))
    for _ in range(order):
        power = power * base
    exp_yt = TruncatedSeries.build(
        (varname,), (n_max,),
        {(j,): Poly.monomial(Q(1) / factorial(j), j) for j in range(n_max + 1)})
    return power * exp_yt


class _ApostolCache:
    """Memoized Apostol-Bernoulli polynomials for one (order, lambda)."""

    def __init__(self, order: int, lam):
        self.order = order
        self.lam = rational(lam)
        self._polys: dict = {}

    def value(self, n: int) -> Poly:
        got = self._polys.get(n)
        if got is None:
            series = apostol_bernoulli_series(self.order, self.lam, n)
            got = self._polys[n] = series.coefficient(n) * factorial(n)
        return got


def apostol_bernoulli(n: int, order: int = 1, lam=1) -> Poly:
    """The n-th Apostol-Bernoulli polynomial of the given order, in y."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return _ApostolCache(order, lam).value(n)


# ======================================================================
# partner families
# ======================================================================

class OmegaFamily:
    """Indexed partner sequence Omega_j, each value a Poly in y."""

    def value(self, index: int) -> Poly:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    @staticmethod
    def parse(obj) -> "OmegaFamily":
        if not isinstance(obj, dict):
            raise SpecError("omega descriptor must be an object")
        if "apostol" in obj:
            extra = set(obj) - {"apostol"}
            if extra:
                raise SpecError(f"unknown omega keys: {sorted(extra)}")
            body = obj["apostol"]
            extra = set(body) - {"order", "lambda"}
            if extra:
                raise SpecError(f"unknown apostol keys: {sorted(extra)}")
            try:
                return ApostolBernoulliOmega(int(body.get("order", 1)),
                                             rational(body.get("lambda", 1)))
            except (TypeError, ValueError) as exc:
                raise SpecError(f"bad apostol descriptor: {exc}") from exc
        if "theta" in obj:
            extra = set(obj) - {"theta"}
            if extra:
                raise SpecError(f"unknown omega keys: {sorted(extra)}")
            return ThetaOmega(FamilySpec.from_json(obj["theta"]))
        if "table" in obj:
            extra = set(obj) - {"table"}
            if extra:
                raise SpecError(f"unknown omega keys: {sorted(extra)}")
            rows = obj["table"]
            if not isinstance(rows, list) or not rows:
                raise SpecError("omega table must be a nonempty list")
            try:
                return TableOmega(tuple(rational_poly(row) for row in rows))
            except (TypeError, ValueError) as exc:
                raise SpecError(f"bad omega table: {exc}") from exc
        raise SpecError(f"unrecognized omega descriptor: {sorted(obj)}")


class ApostolBernoulliOmega(OmegaFamily):
    def __init__(self, order: int, lam):
        if order < 0:
            raise SpecError("apostol order must be nonnegative")
        self.order = order
        self.lam = rational(lam)
        self._cache = _ApostolCache(order, self.lam)

    def value(self, index: int) -> Poly:
        return self._cache.value(index)

    def describe(self) -> str:
        return f"apostol(order={self.order}, lambda={format_rational(self.lam)})"

    def to_json(self):
        return {"apostol": {"order": self.order,
                            "lambda": format_rational(self.lam)}}


class ThetaOmega(OmegaFamily):
    def __init__(self, family: FamilySpec):
        self.family = family

    def value(self, index: int) -> Poly:
        return reduced_kernel(self.family, index)

    def describe(self) -> str:
        return f"theta({self.family.describe()})"

    def to_json(self):
        return {"theta": self.family.to_json()}


class TableOmega(OmegaFamily):
    def __init__(self, polys):
        self.polys = tuple(polys)
        if not self.polys:
            raise SpecError("omega table must be nonempty")

    def value(self, index: int) -> Poly:
        if not 0 <= index < len(self.polys):
            raise SpecError(f"omega table has no entry {index} "
                            f"(holds 0..{len(self.polys) - 1})")
        return self.polys[index]

    def describe(self) -> str:
        return f"table({len(self.polys)} entries)"

    def to_json(self):
        return {"table": [[format_rational(c.as_rational())
                           for c in p.coeffs] for p in self.polys]}


# ======================================================================
# bilateral specification and verification
# ======================================================================

@dataclass(frozen=True)
class BilateralSpec:
    """Partner data (Omega, a_k, mu, nu, p) for a bilateral series."""

    omega: OmegaFamily
    a_rule: tuple | None = None  # None: a_k = 1/k!; else explicit rationals
    mu: int = 0
    nu: int = 1
    p: int = 1

    def __post_init__(self):
        if self.mu < 0:
            raise SpecError("mu must be nonnegative")
        if self.nu < 1:
            raise SpecError("nu must be a positive integer")
        if self.p < 1:
            raise SpecError("p must be a positive integer")
        if self.a_rule is not None:
            rule = tuple(rational(a) for a in self.a_rule)
            if not rule or not all(rule):
                raise SpecError("explicit a-coefficients must be nonzero")
            object.__setattr__(self, "a_rule", rule)

    def a(self, k: int) -> Q:
        if self.a_rule is None:
            return Q(1) / factorial(k)
        if not 0 <= k < len(self.a_rule):
            raise SpecError(f"a-coefficient list has no entry {k}")
        return self.a_rule[k]

    def describe(self) -> str:
        rule = ("1/k!" if self.a_rule is None
                else [format_rational(a) for a in self.a_rule])
        return (f"bilateral(omega={self.omega.describe()}, a={rule}, "
                f"mu={self.mu}, nu={self.nu}, p={self.p})")

    def to_json(self) -> dict:
        return {"omega": self.omega.to_json(),
                "a": ("inverse_factorial" if self.a_rule is None
                      else [format_rational(a) for a in self.a_rule]),
                "mu": self.mu, "nu": self.nu, "p": self.p}

    @staticmethod
    def from_json(obj) -> "BilateralSpec":
        if not isinstance(obj, dict):
            raise SpecError("bilateral spec must be a JSON object")
        extra = set(obj) - {"omega", "a", "mu", "nu", "p"}
        if extra:
            raise SpecError(f"unknown keys in bilateral spec: {sorted(extra)}")
        if "omega" not in obj:
            raise SpecError("bilateral spec needs an omega descriptor")
        rule = obj.get("a", "inverse_factorial")
        if rule == "inverse_factorial":
            a_rule = None
        elif isinstance(rule, list):
            a_rule = tuple(rule)
        else:
            raise SpecError(f"bad a-rule: {rule!r}")
        def as_int(name, default):
            value = obj.get(name, default)
            if not isinstance(value, int) or isinstance(value, bool):
                raise SpecError(f"{name} must be an integer")
            return value
        return BilateralSpec(omega=OmegaFamily.parse(obj["omega"]),
                             a_rule=a_rule,
                             mu=as_int("mu", 0), nu=as_int("nu", 1),
                             p=as_int("p", 1))


def load_bilateral(path) -> BilateralSpec:
    import json
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON in {path}: {exc}") from exc
    return BilateralSpec.from_json(obj)


def lambda_series(spec: BilateralSpec, order: int,
                  varname: str = "eta") -> TruncatedSeries:
    """Lambda(y; eta) = sum_{k <= order} a_k Omega_{mu + nu k}(y) eta^k."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    acc = {}
    for k in range(order + 1):
        omega = spec.omega.value(spec.mu + spec.nu * k)
        term = omega.scale(spec.a(k))
        if term:
            acc[(k,)] = term
    return TruncatedSeries((varname,), (order,), acc, False)


def phi_poly(spec: BilateralSpec, family: FamilySpec, n: int,
             k_max: int | None = None) -> list:
    """Phi_n as a dense list over zeta powers of BiPoly values in (x, y).

    k_max caps the zeta power (useful when higher a_k are not defined);
    by default all floor(n/p) + 1 terms are produced.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    top = n // spec.p
    if k_max is not None:
        top = min(top, k_max)
    out = []
    for k in range(top + 1):
        j = n - spec.p * k
        weight = spec.a(k) / factorial(j)
        term = BiPoly.outer(reduced_kernel(family, j),
                            spec.omega.value(spec.mu + spec.nu * k))
        out.append(term.scale(weight))
    return out


def _phi_assembled(spec: BilateralSpec, family: FamilySpec,
                   order_t: int, order_eta: int) -> TruncatedSeries:
    """sum_n Phi_n(x; y; eta/t^p) t^n collected as a bivariate series."""
    acc: dict = {}
    for n in range(order_t + spec.p * order_eta + 1):
        for k, term in enumerate(phi_poly(spec, family, n, k_max=order_eta)):
            j = n - spec.p * k
            if j > order_t or not term:
                continue
            key = (j, k)
            cur = acc.get(key)
            if cur is None:
                acc[key] = term
            else:
                cur = cur + term
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
    return TruncatedSeries(("t", "eta"), (order_t, order_eta), acc, False)


def verify_bilateral(spec: BilateralSpec, family: FamilySpec,
                     order_t: int, order_eta: int) -> VerificationReport:
    """Exact check: Phi assembly equals (kernel series) x Lambda."""
    lhs = _phi_assembled(spec, family, order_t, order_eta)
    shape = (("t", "eta"), (order_t, order_eta))
    rhs = (genfun_lhs(family, order_t)
           .map_coefficients(BiPoly.from_x)
           .lift(*shape, axis=0)
           * lambda_series(spec, order_eta)
           .map_coefficients(BiPoly.from_y)
           .lift(*shape, axis=1))
    return report_from_series("bilateral", lhs - rhs, order_t,
                              details={"order_eta": order_eta,
                                       "spec": spec.describe()})


def verify_bilinear(family: FamilySpec, order_t: int, order_eta: int,
                    p: int = 1) -> VerificationReport:
    """Bilinear case: the partner is the same family at a second argument.

    The Phi assembly must match the product of the two closed-form
    generating series, one in (x, t) and one in (y, eta).
    """
    spec = BilateralSpec(omega=ThetaOmega(family), a_rule=None,
                         mu=0, nu=1, p=p)
    lhs = _phi_assembled(spec, family, order_t, order_eta)
    shape = (("t", "eta"), (order_t, order_eta))
    rhs = (genfun_rhs(family, order_t)
           .map_coefficients(BiPoly.from_x)
           .lift(*shape, axis=0)
           * genfun_rhs(family, order_eta)
           .map_coefficients(BiPoly.from_y)
           .lift(*shape, axis=1))
    return report_from_series("bilinear", lhs - rhs, order_t,
                              details={"order_eta": order_eta, "p": p})


def verify_apostol_partner(order: int, lam, order_eta: int) -> VerificationReport:
    """Lambda with a_k = 1/k!, mu = 0, nu = 1 over Apostol-Bernoulli values
    must reproduce the closed generating form (eta/(lam e^eta - 1))^order e^{y eta}."""
    spec = BilateralSpec(omega=ApostolBernoulliOmega(order, lam),
                         a_rule=None, mu=0, nu=1, p=1)
    lhs = lambda_series(spec, order_eta)
    rhs = apostol_bernoulli_series(order, lam, order_eta, varname="eta")
    return report_from_series("apostol-partner", lhs - rhs, order_eta,
                              details={"order": order,
                                       "lambda": format_rational(rational(lam))})
