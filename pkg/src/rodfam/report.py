"""Verification reports shared by every identity checker.

The JSON wire form is fixed:
  { "identity": ..., "status": "verified" | "failed",
    "order": N, "first_failure": {...} | null }
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    identity: str
    status: str
    order: int
    first_failure: dict | None = None
    # extra context for human output (seeds, notes); not part of the wire form
    details: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "status": self.status,
            "order": self.order,
            "first_failure": self.first_failure,
        }


def report_from_series(identity: str, residual, order: int,
                       tolerance: float = 0.0,
                       details: dict | None = None) -> VerificationReport:
    """Report for a series residual; exact unless a tolerance is given."""
    failure = None
    if residual.numeric and tolerance > 0.0:
        bad = {e: c for e, c in residual.coeffs.items()
               if abs(c) > tolerance}
        if bad:
            exps = min(bad, key=lambda e: (sum(e), e))
            failure = _series_failure(residual.varnames, exps, bad[exps])
    elif not residual.is_zero:
        exps = residual.first_nonzero()
        failure = _series_failure(residual.varnames, exps,
                                  residual.coeffs[exps])
    return VerificationReport(
        identity=identity,
        status="failed" if failure else "verified",
        order=order,
        first_failure=failure,
        details=details or {},
    )


def _series_failure(varnames, exps, coef) -> dict:
    failure = {f"{v}_order": e for v, e in zip(varnames, exps)}
    failure["coefficient"] = str(coef)
    return failure


def report_from_poly_residuals(identity: str, residuals, order: int,
                               details: dict | None = None) -> VerificationReport:
    """Report for per-n polynomial residuals ({n: Poly})."""
    failure = None
    for n in sorted(residuals):
        poly = residuals[n]
        if poly:
            degree = next(d for d, c in enumerate(poly.coeffs) if c)
            failure = {"n": n, "x_degree": degree,
                       "coefficient": str(poly.coeffs[degree])}
            break
    return VerificationReport(
        identity=identity,
        status="failed" if failure else "verified",
        order=order,
        first_failure=failure,
        details=details or {},
    )
