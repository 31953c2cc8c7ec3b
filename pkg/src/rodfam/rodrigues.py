"""Reduced kernels of Rodrigues-type families.

Writing Theta_n = alpha^phi1 * beta^(-phi2) * q_n factors out the
transcendental prefactor; the reduced kernel q_n is a polynomial over the
symbolic ring and obeys the derivative ladder

    q_0 = psi,        q_{n+1} = q_n' - Lb * phi2' * q_n.

Differentiating Theta_n itself corresponds to the reduced derivative
D(q) = q' + (La*phi1' - Lb*phi2') q, used by every identity that involves
Theta_n'.  Kernels are always computed with symbolic La/Lb; numeric bases
substitute their logarithms at evaluation time only.
"""

from __future__ import annotations

import math
import threading

from .families import FamilySpec, SpecError
from .ring import LA, LB, Poly
from .series import TruncatedSeries

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _ladder(family: FamilySpec, n: int) -> list:
    """Kernels q_0..q_n, memoized per family digest."""
    if n < 0:
        raise ValueError("kernel index must be nonnegative")
    key = family.cache_key()
    with _CACHE_LOCK:
        chain = _CACHE.get(key)
        if chain is None:
            chain = _CACHE[key] = [family.psi.as_poly()]
        if len(chain) <= n:
            drop = family.phi2.as_poly().derivative().scale(LB)
            while len(chain) <= n:
                q = chain[-1]
                chain.append(q.derivative() - drop * q)
        return chain[:n + 1]


def reduced_kernel(family: FamilySpec, n: int) -> Poly:
    """q_n as a Poly over Q[La, Lb]; requires polynomial psi and phi2."""
    return _ladder(family, n)[n]


def reduced_kernels(family: FamilySpec, n_max: int) -> list:
    """[q_0, ..., q_n_max]."""
    return _ladder(family, n_max)


def clear_kernel_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def reduced_derivative(family: FamilySpec, p: Poly) -> Poly:
    """D(p) = p' + (La*phi1' - Lb*phi2') p, the kernel image of d/dx."""
    phi1p = family.phi1.as_poly().derivative()
    phi2p = family.phi2.as_poly().derivative()
    return p.derivative() + (phi1p.scale(LA) - phi2p.scale(LB)) * p


def theta_eval(family: FamilySpec, n: int, x0: float) -> float:
    """Theta_n(x0) for a numeric family with polynomial data."""
    if family.is_symbolic:
        raise SpecError("theta_eval needs numeric alpha and beta")
    la = family.log_alpha()
    lb = family.log_beta()
    phi1 = family.phi1.as_poly()
    phi2 = family.phi2.as_poly()
    q = reduced_kernel(family, n)
    prefactor = math.exp(la * phi1.eval_float(x0) - lb * phi2.eval_float(x0))
    return prefactor * q.eval_float(x0, la=la, lb=lb)


def theta_jet(family: FamilySpec, n: int, x0, order: int,
              numeric: bool = False) -> TruncatedSeries:
    """Jet of the reduced kernel q_n at x0 (prefactor excluded).

    Runs the derivative ladder on jets, so psi and phi2 need not be
    polynomials; they must supply jets of order n + order (+1 for phi2,
    which is differentiated once).  Exact mode keeps Lb symbolic; numeric
    mode needs a numeric beta and works in double precision.
    """
    if n < 0:
        raise ValueError("kernel index must be nonnegative")
    if order < 0:
        raise ValueError("jet order must be nonnegative")
    budget = order + n
    if numeric:
        if family.beta is None:
            raise SpecError("numeric jets need a numeric beta")
        lb = family.log_beta()
        jet_psi = family.psi.jet_at_numeric(x0, budget)
        jet_phi2p = family.phi2.jet_at_numeric(x0, budget + 1).derivative("t")
    else:
        lb = LB
        jet_psi = family.psi.jet_at(x0, budget)
        jet_phi2p = family.phi2.jet_at(x0, budget + 1).derivative("t")
    jet = jet_psi
    for _ in range(n):
        jet = jet.derivative("t") - (jet_phi2p * jet).scale(lb)
    return jet
