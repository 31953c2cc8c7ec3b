"""Exact rational scalars.

All exact arithmetic in this package runs over gmpy2's mpq type (arbitrary
precision, always in lowest terms).  This module pins the choice to one place
and provides the string forms used by the JSON interfaces: integers or
"p/q" with a nonzero denominator.
"""

from __future__ import annotations

from gmpy2 import mpq

Q = mpq

QLike = object  # ints, mpq, and anything mpq accepts


def rational(value) -> Q:
    """Coerce an int / mpq / "p/q" string to an exact rational."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, mpq)):
        return mpq(value)
    if isinstance(value, str):
        try:
            return mpq(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(q) -> str:
    """Render an exact rational as "p" or "p/q" (lowest terms)."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def binomial(n: int, k: int) -> int:
    """C(n, k) with the empty-sum convention: zero for k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    from math import comb

    return comb(n, k)
