"""Exact coefficient ring Q[La, Lb, n^] and dense univariate polynomials over it.

La and Lb stand for the logarithms of the two bases of a family; n^ is the
symbolic index used by the differential-equation synthesizer.  A SymCoeff is a
sparse sum of monomials La^e1 * Lb^e2 * n^e3 with rational coefficients; a Poly
is a dense list of SymCoeff values in the main variable, lowest degree first.
Both types are immutable: every operation returns a fresh value.
"""

from __future__ import annotations

from math import inf

from .rational import Q, format_rational, rational

# exponent triples are (e_La, e_Lb, e_n)
_ZERO_KEY = (0, 0, 0)

_Q0 = Q(0)
_Q1 = Q(1)


class SymCoeff:
    """Element of Q[La, Lb, n^], stored as {exponent triple: rational}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        # internal: takes ownership of a normalized dict (no zero values)
        self.terms = terms

    # ---- constructors -------------------------------------------------

    @staticmethod
    def of(value) -> "SymCoeff":
        if isinstance(value, SymCoeff):
            return value
        q = rational(value)
        return SymCoeff({_ZERO_KEY: q} if q else {})

    @staticmethod
    def monomial(coef, e_la: int = 0, e_lb: int = 0, e_n: int = 0) -> "SymCoeff":
        if min(e_la, e_lb, e_n) < 0:
            raise ValueError("negative symbol exponent")
        q = rational(coef)
        return SymCoeff({(e_la, e_lb, e_n): q} if q else {})

    # ---- predicates ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_rational(self) -> bool:
        return not self.terms or set(self.terms) == {_ZERO_KEY}

    def as_rational(self) -> Q:
        if not self.terms:
            return _Q0
        if set(self.terms) != {_ZERO_KEY}:
            raise ValueError(f"not a plain rational: {self}")
        return self.terms[_ZERO_KEY]

    def uses_symbol(self, axis: int) -> bool:
        """True if La (axis 0), Lb (axis 1) or n^ (axis 2) occurs."""
        return any(key[axis] for key in self.terms)

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_symcoeff(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
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
        return SymCoeff(acc)

    __radd__ = __add__

    def __neg__(self):
        return SymCoeff({key: -val for key, val in self.terms.items()})

    def __sub__(self, other):
        other = _as_symcoeff(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_symcoeff(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_symcoeff(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return _SC_ZERO
        if len(a) > len(b):
            a, b = b, a
        acc: dict = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                cur = acc.get(key)
                if cur is None:
                    acc[key] = va * vb
                else:
                    cur = cur + va * vb
                    if cur:
                        acc[key] = cur
                    else:
                        del acc[key]
        return SymCoeff(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = rational(other)
        if not q:
            raise ZeroDivisionError("division of SymCoeff by zero")
        inv = 1 / q
        return SymCoeff({key: val * inv for key, val in self.terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("SymCoeff exponent must be a nonnegative integer")
        result = _SC_ONE
        for _ in range(exponent):
            result = result * self
        return result

    # ---- substitution and evaluation ----------------------------------

    def subs(self, la=None, lb=None, nn=None) -> "SymCoeff":
        """Substitute exact rationals for any of La, Lb, n^."""
        vals = (None if la is None else rational(la),
                None if lb is None else rational(lb),
                None if nn is None else rational(nn))
        if all(v is None for v in vals):
            return self
        acc: dict = {}
        for (e1, e2, e3), coef in self.terms.items():
            exps = [e1, e2, e3]
            for axis, val in enumerate(vals):
                if val is not None:
                    coef = coef * val ** exps[axis]
                    exps[axis] = 0
            if not coef:
                continue
            key = tuple(exps)
            cur = acc.get(key)
            if cur is None:
                acc[key] = coef
            else:
                cur = cur + coef
                if cur:
                    acc[key] = cur
                else:
                    del acc[key]
        return SymCoeff(acc)

    def eval_float(self, la: float = 0.0, lb: float = 0.0, nn: float = 0.0) -> float:
        total = 0.0
        for (e1, e2, e3), coef in self.terms.items():
            total += float(coef) * la ** e1 * lb ** e2 * nn ** e3
        return total

    # ---- comparison, hashing, display ---------------------------------

    def __eq__(self, other):
        other = _as_symcoeff(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, reverse=True):
            coef = self.terms[key]
            body = "*".join(
                sym if e == 1 else f"{sym}^{e}"
                for sym, e in zip(("La", "Lb", "n"), key)
                if e
            )
            if body:
                if coef == 1:
                    text = body
                elif coef == -1:
                    text = f"-{body}"
                else:
                    text = f"{format_rational(coef)}*{body}"
            else:
                text = format_rational(coef)
            if parts and not text.startswith("-"):
                parts.append("+" + text)
            else:
                parts.append(text)
        return "".join(parts)

    __repr__ = __str__

    # ---- JSON terms (the wire format used by the CLI) -----------------

    def to_terms(self) -> list:
        return [
            {"La": key[0], "Lb": key[1], "n": key[2],
             "coef": format_rational(self.terms[key])}
            for key in sorted(self.terms)
        ]

    @staticmethod
    def from_terms(items: list) -> "SymCoeff":
        acc = _SC_ZERO
        for item in items:
            extra = set(item) - {"La", "Lb", "n", "coef"}
            if extra:
                raise ValueError(f"unknown SymCoeff term keys: {sorted(extra)}")
            acc = acc + SymCoeff.monomial(
                rational(item.get("coef", 0)),
                int(item.get("La", 0)), int(item.get("Lb", 0)), int(item.get("n", 0)),
            )
        return acc


def _as_symcoeff(value):
    if isinstance(value, SymCoeff):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, (int, Q)):
        return SymCoeff.of(value)
    return NotImplemented


_SC_ZERO = SymCoeff({})
_SC_ONE = SymCoeff({_ZERO_KEY: _Q1})

ZERO = _SC_ZERO
ONE = _SC_ONE
LA = SymCoeff.monomial(1, e_la=1)
LB = SymCoeff.monomial(1, e_lb=1)
NN = SymCoeff.monomial(1, e_n=1)


# ======================================================================
# dense univariate polynomials over SymCoeff
# ======================================================================

class Poly:
    """Polynomial in one main variable with SymCoeff coefficients.

    Coefficients are stored lowest degree first with no trailing zeros;
    the zero polynomial has an empty coefficient tuple and degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: tuple):
        # internal: takes a normalized tuple of SymCoeff
        self.coeffs = coeffs

    # ---- constructors -------------------------------------------------

    @staticmethod
    def of(values) -> "Poly":
        """Build from an iterable of coefficients, lowest degree first."""
        coeffs = [SymCoeff.of(v) if not isinstance(v, SymCoeff) else v
                  for v in values]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return Poly(tuple(coeffs))

    @staticmethod
    def zero() -> "Poly":
        return _P_ZERO

    @staticmethod
    def one() -> "Poly":
        return _P_ONE

    @staticmethod
    def const(value) -> "Poly":
        c = SymCoeff.of(value) if not isinstance(value, SymCoeff) else value
        return Poly((c,)) if c else _P_ZERO

    @staticmethod
    def x() -> "Poly":
        return _P_X

    @staticmethod
    def monomial(coef, degree: int) -> "Poly":
        if degree < 0:
            raise ValueError("negative degree")
        c = SymCoeff.of(coef) if not isinstance(coef, SymCoeff) else coef
        if not c:
            return _P_ZERO
        return Poly((_SC_ZERO,) * degree + (c,))

    # ---- structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -inf

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, degree: int) -> SymCoeff:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return _SC_ZERO

    @property
    def leading(self) -> SymCoeff:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def uses_symbol(self, axis: int) -> bool:
        return any(c.uses_symbol(axis) for c in self.coeffs)

    @property
    def is_rational_poly(self) -> bool:
        """True when every coefficient is a plain rational."""
        return all(c.is_rational for c in self.coeffs)

    # ---- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] = merged[i] + c
        while merged and not merged[-1]:
            merged.pop()
        return Poly(tuple(merged))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return _P_ZERO
            # flattened convolution: accumulate rationals keyed by
            # (degree, exponent triple) to avoid temporary SymCoeffs
            acc: list = [None] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                ta = ca.terms
                if not ta:
                    continue
                for j, cb in enumerate(b):
                    tb = cb.terms
                    if not tb:
                        continue
                    slot = acc[i + j]
                    if slot is None:
                        slot = acc[i + j] = {}
                    for ka, va in ta.items():
                        for kb, vb in tb.items():
                            key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                            cur = slot.get(key)
                            if cur is None:
                                slot[key] = va * vb
                            else:
                                cur = cur + va * vb
                                if cur:
                                    slot[key] = cur
                                else:
                                    del slot[key]
            coeffs = [SymCoeff(slot) if slot else _SC_ZERO for slot in acc]
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            return Poly(tuple(coeffs))
        scalar = _as_symcoeff(other)
        if scalar is NotImplemented:
            return NotImplemented
        return self.scale(scalar)

    __rmul__ = __mul__

    def scale(self, scalar) -> "Poly":
        scalar = SymCoeff.of(scalar) if not isinstance(scalar, SymCoeff) else scalar
        if not scalar:
            return _P_ZERO
        coeffs = [c * scalar for c in self.coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return Poly(tuple(coeffs))

    def __truediv__(self, other):
        q = rational(other)
        if not q:
            raise ZeroDivisionError("division of Poly by zero")
        return self.scale(1 / q)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Poly exponent must be a nonnegative integer")
        result = _P_ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ---- calculus and substitution ------------------------------------

    def derivative(self) -> "Poly":
        if len(self.coeffs) <= 1:
            return _P_ZERO
        return Poly(tuple(
            self.coeffs[d] * d for d in range(1, len(self.coeffs))
        ))

    def eval_rational(self, point) -> SymCoeff:
        """Horner evaluation at an exact rational point."""
        a = rational(point)
        acc = _SC_ZERO
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def eval_float(self, x: float, la: float = 0.0, lb: float = 0.0,
                   nn: float = 0.0) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c.eval_float(la=la, lb=lb, nn=nn)
        return acc

    def subs_symbols(self, la=None, lb=None, nn=None) -> "Poly":
        coeffs = [c.subs(la=la, lb=lb, nn=nn) for c in self.coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return Poly(tuple(coeffs))

    def scale_arg(self, factor) -> "Poly":
        """p(c*x): multiply the degree-d coefficient by c^d."""
        c = rational(factor)
        power = _Q1
        out = []
        for coef in self.coeffs:
            out.append(coef * power)
            power = power * c
        while out and not out[-1]:
            out.pop()
        return Poly(tuple(out))

    # ---- comparison and display ---------------------------------------

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            if d == 0:
                base = ""
            elif d == 1:
                base = "x"
            else:
                base = f"x^{d}"
            text = str(c)
            if len(c.terms) > 1:
                text = f"({text})"
            elif base and text == "1":
                text = ""
            elif base and text == "-1":
                text = "-"
            if base:
                text = f"{text}*{base}" if text not in ("", "-") else f"{text}{base}"
            if parts and not text.startswith("-"):
                parts.append("+" + text)
            else:
                parts.append(text)
        return "".join(parts)

    __repr__ = __str__

    # ---- JSON (the wire format used by the CLI) ------------------------

    def to_json(self) -> list:
        """List per degree (lowest first) of SymCoeff term lists."""
        return [c.to_terms() for c in self.coeffs]

    @staticmethod
    def from_json(items: list) -> "Poly":
        return Poly.of(SymCoeff.from_terms(terms) for terms in items)


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, (int, Q, SymCoeff)):
        return Poly.const(value)
    return NotImplemented


_P_ZERO = Poly(())
_P_ONE = Poly((_SC_ONE,))
_P_X = Poly((_SC_ZERO, _SC_ONE))


def rational_poly(values) -> Poly:
    """Build a Poly from rationals, rejecting symbolic input."""
    p = Poly.of(rational(v) for v in values)
    return p
