"""Finite recurrence identities satisfied by the kernels, checked exactly.

Each identity is expressed in reduced form: Theta_m is replaced by the
kernel q_m and Theta_m' by the reduced derivative D(q_m).  The residual of
an identity at index n is its left side minus its right side as a Poly over
Q[La, Lb]; a valid family gives the zero polynomial.

Identity tags (the wire names used in reports and on the CLI):

  AA9    t-direction recurrence: differentiating the generating series in t
         and clearing psi(x+t) by Leibniz smearing.
  AA10   x-direction analogue of AA9.
  COR21  the difference of the two directions (psi-smeared ladder).
  THM23  pure ladder: D(q_n) = q_{n+1} + La*phi1'*q_n.
  AA11   mixed relation combining both directions with the phi2 smear.
  COR22  psi = 1 collapse: q_{n+1} = -Lb * sum_k C(n,k) phi2^(k+1) q_{n-k}.
"""

from __future__ import annotations

from enum import Enum

from .families import FamilySpec, SpecError
from .rational import binomial
from .report import VerificationReport, report_from_poly_residuals
from .ring import LA, LB, Poly
from .rodrigues import reduced_derivative, reduced_kernels


class RecurrenceId(str, Enum):
    AA9 = "AA9"
    AA10 = "AA10"
    COR21 = "COR21"
    THM23 = "THM23"
    AA11 = "AA11"
    COR22 = "COR22"


class _Context:
    """Per-family caches shared across indices of a sweep."""

    def __init__(self, family: FamilySpec, n_max: int):
        self.family = family
        self.q = reduced_kernels(family, n_max + 1)
        self.dq = [reduced_derivative(family, q) for q in self.q]
        psi = family.psi.as_poly()
        self.psi_d = _derivative_chain(psi)
        self.phi2_d = _derivative_chain(family.phi2.as_poly())
        self.phi1p = family.phi1.as_poly().derivative()
        self.u = [q.scale(LA) * self.phi1p if self.phi1p else Poly.zero()
                  for q in self.q]
        self._qp: dict = {}
        self._dp: dict = {}
        self._up: dict = {}
        self._qpf: dict = {}
        self._dpf: dict = {}

    def psi_deriv(self, p: int) -> Poly:
        return self.psi_d[p] if p < len(self.psi_d) else Poly.zero()

    def phi2_deriv(self, j: int) -> Poly:
        return self.phi2_d[j] if j < len(self.phi2_d) else Poly.zero()

    # cached products; every sum below is assembled from these

    def qp(self, m: int, p: int) -> Poly:
        key = (m, p)
        got = self._qp.get(key)
        if got is None:
            got = self._qp[key] = self.q[m] * self.psi_deriv(p)
        return got

    def dp(self, m: int, p: int) -> Poly:
        key = (m, p)
        got = self._dp.get(key)
        if got is None:
            got = self._dp[key] = self.dq[m] * self.psi_deriv(p)
        return got

    def up(self, m: int, p: int) -> Poly:
        key = (m, p)
        got = self._up.get(key)
        if got is None:
            got = self._up[key] = self.u[m] * self.psi_deriv(p)
        return got

    def qpf(self, m: int, p: int, k: int) -> Poly:
        key = (m, p, k)
        got = self._qpf.get(key)
        if got is None:
            got = self._qpf[key] = self.qp(m, p) * self.phi2_deriv(k + 1)
        return got

    def dpf(self, m: int, p: int, k: int) -> Poly:
        key = (m, p, k)
        got = self._dpf.get(key)
        if got is None:
            got = self._dpf[key] = self.dp(m, p) * self.phi2_deriv(k + 1)
        return got


def _derivative_chain(p: Poly) -> list:
    chain = [p]
    while chain[-1]:
        chain.append(chain[-1].derivative())
    return chain


def _smear_sum(ctx: _Context, n: int) -> Poly:
    """The shared double sum sum_{k,p} C(n,k) C(n-k,p) q_{n-p-k} psi^(p) phi2^(k+1)."""
    acc = Poly.zero()
    for k in range(n + 1):
        if not ctx.phi2_deriv(k + 1):
            continue
        cnk = binomial(n, k)
        for p in range(n - k + 1):
            if not ctx.psi_deriv(p):
                continue
            c = cnk * binomial(n - k, p)
            acc = acc + ctx.qpf(n - p - k, p, k).scale(c)
    return acc


def _residual_aa9(ctx: _Context, n: int) -> Poly:
    acc = Poly.zero()
    for p in range(n + 1):
        c = binomial(n, p)
        term = ctx.qp(n - p + 1, p) - ctx.qp(n - p, p + 1)
        if term:
            acc = acc + term.scale(c)
    return acc + _smear_sum(ctx, n).scale(LB)


def _residual_aa10(ctx: _Context, n: int) -> Poly:
    acc = Poly.zero()
    for p in range(n + 1):
        c = binomial(n, p)
        term = ctx.dp(n - p, p) - ctx.up(n - p, p) - ctx.qp(n - p, p + 1)
        if term:
            acc = acc + term.scale(c)
    return acc + _smear_sum(ctx, n).scale(LB)


def _residual_cor21(ctx: _Context, n: int) -> Poly:
    acc = Poly.zero()
    for p in range(n + 1):
        c = binomial(n, p)
        term = (ctx.qp(n - p + 1, p) - ctx.qp(n - p, p + 1)
                - ctx.dp(n - p, p) + ctx.up(n - p, p) + ctx.qp(n - p, p + 1))
        if term:
            acc = acc + term.scale(c)
    return acc


def _residual_thm23(ctx: _Context, n: int) -> Poly:
    return ctx.dq[n] - ctx.q[n + 1] - ctx.u[n]


def _residual_aa11(ctx: _Context, n: int) -> Poly:
    acc = Poly.zero()
    for p in range(n + 1):
        c = binomial(n, p)
        term = (ctx.up(n - p + 1, p) + ctx.qp(n - p + 1, p + 1)
                - ctx.dp(n - p, p + 1))
        if term:
            acc = acc + term.scale(c)
    smear = Poly.zero()
    for k in range(n + 1):
        if not ctx.phi2_deriv(k + 1):
            continue
        cnk = binomial(n, k)
        for p in range(n - k + 1):
            if not ctx.psi_deriv(p):
                continue
            c = cnk * binomial(n - k, p)
            term = ctx.dpf(n - k - p, p, k) - ctx.qpf(n - k - p + 1, p, k)
            if term:
                smear = smear + term.scale(c)
    return acc + smear.scale(LB)


def _residual_cor22(ctx: _Context, n: int) -> Poly:
    if ctx.family.psi.as_poly() != Poly.one():
        raise SpecError("COR22 requires psi = 1")
    acc = Poly.zero()
    for k in range(n + 1):
        phi = ctx.phi2_deriv(k + 1)
        if not phi:
            continue
        acc = acc + (phi * ctx.q[n - k]).scale(binomial(n, k))
    return ctx.q[n + 1] + acc.scale(LB)


_RESIDUALS = {
    RecurrenceId.AA9: _residual_aa9,
    RecurrenceId.AA10: _residual_aa10,
    RecurrenceId.COR21: _residual_cor21,
    RecurrenceId.THM23: _residual_thm23,
    RecurrenceId.AA11: _residual_aa11,
    RecurrenceId.COR22: _residual_cor22,
}


def residual(rid: RecurrenceId, family: FamilySpec, n: int) -> Poly:
    """LHS - RHS of the named identity at index n, over Q[La, Lb]."""
    rid = RecurrenceId(rid)
    if n < 0:
        raise ValueError("index must be nonnegative")
    return _RESIDUALS[rid](_Context(family, n), n)


def applicable_ids(family: FamilySpec) -> list:
    """All six identities, or five when psi != 1 (COR22 needs psi = 1)."""
    ids = [RecurrenceId.AA9, RecurrenceId.AA10, RecurrenceId.COR21,
           RecurrenceId.THM23, RecurrenceId.AA11]
    if family.psi.as_poly() == Poly.one():
        ids.append(RecurrenceId.COR22)
    return ids


def sweep(family: FamilySpec, n_max: int, ids=None) -> list:
    """Residuals of the chosen identities for all n <= n_max.

    Returns one VerificationReport per identity; a nonzero residual is
    reported with its index and first nonzero coefficient.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if ids is None:
        ids = applicable_ids(family)
    else:
        ids = [RecurrenceId(i) for i in ids]
    ctx = _Context(family, n_max)
    reports = []
    for rid in ids:
        fn = _RESIDUALS[rid]
        residuals = {n: fn(ctx, n) for n in range(n_max + 1)}
        reports.append(report_from_poly_residuals(rid.value, residuals, n_max))
    return reports
