"""Truncated power series in one or two expansion variables.

Coefficients live in an exact domain (Poly over the symbolic ring) or, in
numeric mode, in double precision.  Truncation is per variable: every
coefficient with exponents inside the stated orders is exact (or correctly
rounded); nothing beyond the orders is stored.  Binary operations truncate
to the elementwise minimum of the two operand orders.
"""

from __future__ import annotations

from .rational import Q, rational
from .ring import Poly, SymCoeff


class TruncatedSeries:
    """Sparse table {exponent tuple: coefficient} under per-variable orders."""

    __slots__ = ("varnames", "orders", "coeffs", "numeric")

    def __init__(self, varnames, orders, coeffs, numeric=False):
        # internal: takes ownership of a normalized dict (no zero values,
        # no exponents beyond the orders)
        self.varnames = tuple(varnames)
        self.orders = tuple(orders)
        self.coeffs = coeffs
        self.numeric = numeric

    # ---- constructors -------------------------------------------------

    @staticmethod
    def build(varnames, orders, entries, numeric=False) -> "TruncatedSeries":
        """Build from {exponents: coefficient}, dropping zeros, checking range."""
        varnames = tuple(varnames)
        orders = tuple(orders)
        if len(varnames) != len(orders) or not varnames:
            raise ValueError("varnames and orders must align and be nonempty")
        if any(o < 0 for o in orders):
            raise ValueError("series orders must be nonnegative")
        acc = {}
        for exps, coef in entries.items():
            exps = (exps,) if isinstance(exps, int) else tuple(exps)
            if len(exps) != len(varnames):
                raise ValueError(f"exponent arity mismatch: {exps}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent: {exps}")
            if any(e > o for e, o in zip(exps, orders)):
                raise ValueError(f"exponent {exps} beyond orders {orders}")
            if not numeric and not isinstance(coef, Poly):
                coef = Poly.const(coef)
            if numeric:
                coef = float(coef)
            if coef:
                acc[exps] = coef
        return TruncatedSeries(varnames, orders, acc, numeric)

    @staticmethod
    def zero(varnames, orders, numeric=False) -> "TruncatedSeries":
        return TruncatedSeries(tuple(varnames), tuple(orders), {}, numeric)

    @staticmethod
    def one(varnames, orders, numeric=False) -> "TruncatedSeries":
        zero_key = (0,) * len(tuple(varnames))
        unit = 1.0 if numeric else Poly.one()
        return TruncatedSeries(tuple(varnames), tuple(orders), {zero_key: unit},
                               numeric)

    # ---- access -------------------------------------------------------

    def coefficient(self, *exps):
        """Coefficient at the given exponents (zero element if absent)."""
        if len(exps) != len(self.varnames):
            raise ValueError("exponent arity mismatch")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        if any(e > o for e, o in zip(exps, self.orders)):
            raise ValueError(f"exponent {exps} beyond orders {self.orders}")
        got = self.coeffs.get(tuple(exps))
        if got is not None:
            return got
        return 0.0 if self.numeric else Poly.zero()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self) -> float:
        """Largest absolute value among numeric coefficients."""
        if not self.numeric:
            raise ValueError("max_abs is for numeric series")
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def first_nonzero(self):
        """Lowest exponent tuple with a nonzero coefficient, or None.

        Ordered by total degree, then lexicographically.
        """
        if not self.coeffs:
            return None
        return min(self.coeffs, key=lambda e: (sum(e), e))

    # ---- structural ops -----------------------------------------------

    def truncate(self, orders) -> "TruncatedSeries":
        orders = tuple(orders)
        if len(orders) != len(self.orders):
            raise ValueError("order arity mismatch")
        if orders == self.orders:
            return self
        acc = {e: c for e, c in self.coeffs.items()
               if all(x <= o for x, o in zip(e, orders))}
        return TruncatedSeries(self.varnames, orders, acc, self.numeric)

    def map_coefficients(self, fn, numeric=None) -> "TruncatedSeries":
        numeric = self.numeric if numeric is None else numeric
        acc = {}
        for exps, coef in self.coeffs.items():
            image = fn(coef)
            if image:
                acc[exps] = image
        return TruncatedSeries(self.varnames, self.orders, acc, numeric)

    def lift(self, varnames, orders, axis: int) -> "TruncatedSeries":
        """Embed a one-variable series into a larger variable tuple."""
        if len(self.varnames) != 1:
            raise ValueError("lift starts from a one-variable series")
        varnames = tuple(varnames)
        orders = tuple(orders)
        if not 0 <= axis < len(varnames):
            raise ValueError("bad axis")
        if orders[axis] > self.orders[0]:
            raise ValueError("lift cannot extend the truncation order")
        acc = {}
        for (e,), coef in self.coeffs.items():
            if e > orders[axis]:
                continue
            exps = [0] * len(varnames)
            exps[axis] = e
            acc[tuple(exps)] = coef
        return TruncatedSeries(varnames, orders, acc, self.numeric)

    # ---- ring ops ------------------------------------------------------

    def _align(self, other) -> tuple:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if self.varnames != other.varnames:
            raise ValueError("series variable mismatch")
        if self.numeric != other.numeric:
            raise ValueError("cannot mix exact and numeric series")
        orders = tuple(min(a, b) for a, b in zip(self.orders, other.orders))
        return self.truncate(orders), other.truncate(orders), orders

    def __add__(self, other):
        a, b, orders = self._align(other)
        acc = dict(a.coeffs)
        for exps, coef in b.coeffs.items():
            cur = acc.get(exps)
            if cur is None:
                acc[exps] = coef
            else:
                cur = cur + coef
                if cur:
                    acc[exps] = cur
                else:
                    del acc[exps]
        return TruncatedSeries(self.varnames, orders, acc, self.numeric)

    def __neg__(self):
        return TruncatedSeries(self.varnames, self.orders,
                               {e: -c for e, c in self.coeffs.items()},
                               self.numeric)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b, orders = self._align(other)
        acc: dict = {}
        for ea, ca in a.coeffs.items():
            for eb, cb in b.coeffs.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                if any(e > o for e, o in zip(exps, orders)):
                    continue
                prod = ca * cb
                if not prod:
                    continue
                cur = acc.get(exps)
                if cur is None:
                    acc[exps] = prod
                else:
                    cur = cur + prod
                    if cur:
                        acc[exps] = cur
                    else:
                        del acc[exps]
        return TruncatedSeries(self.varnames, orders, acc, self.numeric)

    def scale(self, scalar) -> "TruncatedSeries":
        """Multiply every coefficient by a domain element."""
        if self.numeric:
            scalar = float(scalar)
        acc = {}
        for exps, coef in self.coeffs.items():
            prod = coef * scalar
            if prod:
                acc[exps] = prod
        return TruncatedSeries(self.varnames, self.orders, acc, self.numeric)

    # ---- calculus ------------------------------------------------------

    def derivative(self, varname: str) -> "TruncatedSeries":
        """Formal derivative; the order in that variable drops by one."""
        axis = self.varnames.index(varname)
        if self.orders[axis] == 0:
            raise ValueError(f"no {varname}-orders left to differentiate")
        orders = tuple(o - 1 if i == axis else o
                       for i, o in enumerate(self.orders))
        acc = {}
        for exps, coef in self.coeffs.items():
            e = exps[axis]
            if e == 0:
                continue
            new = tuple(x - 1 if i == axis else x for i, x in enumerate(exps))
            acc[new] = coef * e
        return TruncatedSeries(self.varnames, orders, acc, self.numeric)

    def eval_var(self, varname: str, value):
        """Substitute a scalar for one variable (exact rational or float).

        Collapses that dimension; with one variable the result is a plain
        coefficient.  Exactness caveat: substitution into a truncated series
        is exact only when the series terminates below its order.
        """
        axis = self.varnames.index(varname)
        point = float(value) if self.numeric else rational(value)
        rest_names = tuple(v for i, v in enumerate(self.varnames) if i != axis)
        acc: dict = {}
        for exps, coef in self.coeffs.items():
            rest = tuple(x for i, x in enumerate(exps) if i != axis)
            term = coef * point ** exps[axis]
            cur = acc.get(rest)
            if cur is None:
                if term:
                    acc[rest] = term
            else:
                cur = cur + term
                if cur:
                    acc[rest] = cur
                else:
                    del acc[rest]
        if not rest_names:
            got = acc.get(())
            if got is not None:
                return got
            return 0.0 if self.numeric else Poly.zero()
        rest_orders = tuple(o for i, o in enumerate(self.orders) if i != axis)
        return TruncatedSeries(rest_names, rest_orders, acc, self.numeric)

    # ---- comparison and display ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.varnames == other.varnames
                and self.orders == other.orders
                and self.numeric == other.numeric
                and self.coeffs == other.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exps in sorted(self.coeffs, key=lambda e: (sum(e), e)):
            coef = self.coeffs[exps]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.varnames, exps) if e
            )
            text = f"({coef})"
            parts.append(f"{text}*{mono}" if mono else text)
        return " + ".join(parts)

    __repr__ = __str__


# ======================================================================
# series-level operations
# ======================================================================

def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_exp(u: TruncatedSeries) -> TruncatedSeries:
    """exp of a one-variable series with zero constant term.

    Uses the derivative recurrence E' = u' E, i.e.
    n*E_n = sum_{k=1..n} k * u_k * E_{n-k}; division by n is exact.
    """
    if len(u.varnames) != 1:
        raise ValueError("series_exp expects a one-variable series")
    if u.coeffs.get((0,)):
        raise ValueError("series_exp needs a zero constant term")
    order = u.orders[0]
    unit = 1.0 if u.numeric else Poly.one()
    out = {(0,): unit}
    uk = {e[0]: c for e, c in u.coeffs.items()}
    for n in range(1, order + 1):
        total = None
        for k, coef in uk.items():
            if k < 1 or k > n:
                continue
            prev = out.get((n - k,))
            if prev is None:
                continue
            term = (coef * k) * prev
            total = term if total is None else total + term
        if total is not None and total:
            out[(n,)] = total / n
    return TruncatedSeries(u.varnames, u.orders, out, u.numeric)


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a one-variable series.

    The constant term must be a unit of the coefficient domain: a nonzero
    rational (constant Poly) in exact mode, a nonzero float in numeric mode.
    """
    if len(s.varnames) != 1:
        raise ValueError("series_inverse expects a one-variable series")
    c0 = s.coeffs.get((0,))
    if c0 is None or not c0:
        raise ValueError("series_inverse needs an invertible constant term")
    if s.numeric:
        inv0 = 1.0 / c0
    else:
        if c0.degree != 0 or not c0.coeffs[0].is_rational:
            raise ValueError("constant term must be a nonzero rational")
        inv0 = Poly.const(1 / c0.coeffs[0].as_rational())
    order = s.orders[0]
    sk = {e[0]: c for e, c in s.coeffs.items()}
    out = {(0,): inv0}
    for n in range(1, order + 1):
        total = None
        for k in range(1, n + 1):
            ck = sk.get(k)
            if ck is None:
                continue
            prev = out.get((n - k,))
            if prev is None:
                continue
            term = ck * prev
            total = term if total is None else total + term
        if total is not None and total:
            val = -(inv0 * total)
            if val:
                out[(n,)] = val
    return TruncatedSeries(s.varnames, s.orders, out, s.numeric)


def poly_taylor_shift(p: Poly, order: int, varname: str = "t") -> TruncatedSeries:
    """p(x + t) as a series in t: sum_j p^(j)(x)/j! t^j, j <= order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    acc = {}
    deriv = p
    fact = Q(1)
    for j in range(order + 1):
        if not deriv:
            break
        if j:
            fact = fact * j
        coef = deriv.scale(1 / fact) if j else deriv
        if coef:
            acc[(j,)] = coef
        deriv = deriv.derivative()
    return TruncatedSeries((varname,), (order,), acc, False)
