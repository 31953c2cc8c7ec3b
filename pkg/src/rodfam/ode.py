"""Linear differential equations annihilating Theta_n, with symbolic index.

For psi = 1 and polynomial phi2 of degree m, shifting the COR22 recurrence
to index n+m-1 truncates it to finitely many terms; substituting the ladder
operators

    Theta_{n+j} = sum_i a_{j,i} Theta_n^(i),
    a_{j+1,i} = a_{j,i-1} + a_{j,i}' - La*phi1'*a_{j,i},   a_{0,0} = 1,

turns it into a monic order-m operator with coefficients in Q[La, Lb, n^][x]
that annihilates every Theta_n.  Closed forms for m = 2, 3, 4 are provided
independently and must match the synthesized operators coefficient by
coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .families import FamilySpec, SpecError
from .report import VerificationReport, report_from_poly_residuals
from .ring import LA, LB, NN, Poly, SymCoeff
from .rodrigues import reduced_derivative, reduced_kernel


@dataclass(frozen=True)
class OdeSpec:
    """Monic linear ODE sum_j c_j y^(j) = 0; coeffs run c_0..c_order."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("an OdeSpec needs at least one coefficient")
        if self.coeffs[-1] != Poly.one():
            raise ValueError("OdeSpec must be monic")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def substitute_index(self, n: int) -> "OdeSpec":
        """Replace the symbolic index n^ by a concrete integer."""
        return OdeSpec(tuple(c.subs_symbols(nn=n) for c in self.coeffs))

    def substitute_logs(self, la, lb) -> "OdeSpec":
        """Replace La and Lb by exact rationals."""
        return OdeSpec(tuple(c.subs_symbols(la=la, lb=lb)
                             for c in self.coeffs))

    def to_dict(self) -> dict:
        return {"order": self.order,
                "coeffs": [{"j": j, "poly": c.to_json()}
                           for j, c in enumerate(self.coeffs)]}

    @staticmethod
    def from_dict(obj: dict) -> "OdeSpec":
        extra = set(obj) - {"order", "coeffs"}
        if extra:
            raise ValueError(f"unknown keys in ode payload: {sorted(extra)}")
        entries = {item["j"]: Poly.from_json(item["poly"])
                   for item in obj["coeffs"]}
        order = int(obj["order"])
        if sorted(entries) != list(range(order + 1)):
            raise ValueError("ode payload must cover j = 0..order exactly")
        return OdeSpec(tuple(entries[j] for j in range(order + 1)))

    def __str__(self) -> str:
        parts = []
        for j in range(self.order, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            yterm = "y" + "'" * j if j <= 4 else f"y^({j})"
            text = str(c)
            if c == Poly.one():
                parts.append(yterm)
            else:
                parts.append(f"({text})*{yterm}")
        return " + ".join(parts) + " = 0"


def ladder_coeffs(family: FamilySpec, j_max: int) -> list:
    """Rows a[j][i] with Theta_{n+j} = sum_i a[j][i] * Theta_n^(i)."""
    if j_max < 0:
        raise ValueError("j_max must be nonnegative")
    w = family.phi1.as_poly().derivative().scale(LA)
    rows = [[Poly.one()]]
    for j in range(j_max):
        prev = rows[-1]
        cur = []
        for i in range(j + 2):
            term = Poly.zero()
            if i >= 1:
                term = term + prev[i - 1]
            if i <= j:
                term = term + prev[i].derivative() - w * prev[i]
            cur.append(term)
        rows.append(cur)
    return rows


def _binom_nhat(shift: int, k: int) -> SymCoeff:
    """C(n^ + shift, k) expanded as a polynomial in the symbol n^."""
    acc = SymCoeff.of(1)
    for i in range(k):
        acc = acc * (NN + (shift - i))
    return acc / factorial(k)


def _require_synthesizable(family: FamilySpec, m: int) -> Poly:
    if m < 1:
        raise SpecError("ode synthesis needs m >= 1")
    if family.psi.as_poly() != Poly.one():
        raise SpecError("ode synthesis requires psi = 1")
    phi2 = family.phi2.as_poly()
    if phi2.degree != m:
        raise SpecError(f"phi2 must have degree exactly m = {m}, "
                        f"got degree {phi2.degree}")
    family.phi1.as_poly()  # must be polynomial
    return phi2


def synthesize_ode(family: FamilySpec, m: int) -> OdeSpec:
    """Monic order-m operator annihilating Theta_n, index kept symbolic."""
    phi2 = _require_synthesizable(family, m)
    rows = ladder_coeffs(family, m)
    phi2_d = [phi2]
    for _ in range(m):
        phi2_d.append(phi2_d[-1].derivative())
    coeffs = list(rows[m])
    for k in range(m):
        weight = phi2_d[k + 1].scale(LB * _binom_nhat(m - 1, k))
        row = rows[m - 1 - k]
        for i in range(len(row)):
            if row[i]:
                coeffs[i] = coeffs[i] + weight * row[i]
    if coeffs[m] != Poly.one():
        raise AssertionError("synthesized operator failed to be monic")
    return OdeSpec(tuple(coeffs))


def closed_form_ode(family: FamilySpec, m: int) -> OdeSpec:
    """Explicit coefficient formulas for m = 2, 3, 4."""
    if m not in (2, 3, 4):
        raise SpecError("closed forms exist for m = 2, 3, 4 only")
    _require_synthesizable(family, m)
    A, B = LA, LB
    u1 = family.phi1.as_poly().derivative()
    u2 = u1.derivative()
    u3 = u2.derivative()
    u4 = u3.derivative()
    phi2 = family.phi2.as_poly()
    v1 = phi2.derivative()
    v2 = v1.derivative()
    v3 = v2.derivative()
    v4 = v3.derivative()
    n1 = NN + 1
    n2 = NN + 2
    n3 = NN + 3
    one = Poly.one()
    if m == 2:
        c1 = v1.scale(B) - u1.scale(A * 2)
        c0 = ((u1 * u1).scale(A * A) - u2.scale(A)
              - (u1 * v1).scale(A * B) + v2.scale(B * n1))
        return OdeSpec((c0, c1, one))
    if m == 3:
        c2 = v1.scale(B) - u1.scale(A * 3)
        c1 = (v2.scale(B * n2) - u2.scale(A * 3)
              - (u1 * v1).scale(A * B * 2) + (u1 * u1).scale(A * A * 3))
        c0 = (-(u1 * u1 * u1).scale(A ** 3)
              + (v1 * u1 * u1).scale(A * A * B)
              + (u1 * u2).scale(A * A * 3)
              - u3.scale(A)
              - (u2 * v1).scale(A * B)
              - (v2 * u1).scale(A * B * n2)
              + v3.scale(B * n1 * n2 / 2))
        return OdeSpec((c0, c1, c2, one))
    c3 = v1.scale(B) - u1.scale(A * 4)
    c2 = ((u1 * u1).scale(A * A * 6) - (u1 * v1).scale(A * B * 3)
          - u2.scale(A * 6) + v2.scale(B * n3))
    c1 = (-(u1 * u1 * u1).scale(A ** 3 * 4)
          + (v1 * u1 * u1).scale(A * A * B * 3)
          + (u1 * u2).scale(A * A * 12)
          - u3.scale(A * 4)
          - (u2 * v1).scale(A * B * 3)
          - (v2 * u1).scale(A * B * n3 * 2)
          + v3.scale(B * n2 * n3 / 2))
    c0 = ((u1 * u1 * u1 * u1).scale(A ** 4)
          - (u1 * u1 * u1 * v1).scale(A ** 3 * B)
          - (u1 * u1 * u2).scale(A ** 3 * 6)
          + (u1 * u3).scale(A * A * 4)
          + (u1 * u2 * v1).scale(A * A * B * 3)
          - (u3 * v1).scale(A * B)
          + (u2 * u2).scale(A * A * 3)
          - u4.scale(A)
          + (u1 * u1 * v2).scale(A * A * B * n3)
          - (u2 * v2).scale(A * B * n3)
          - (u1 * v3).scale(A * B * n2 * n3 / 2)
          + v4.scale(B * n1 * n2 * n3 / 6))
    return OdeSpec((c0, c1, c2, c3, one))


def ode_residual(ode: OdeSpec, family: FamilySpec, n: int) -> Poly:
    """sum_j c_j|_{n^ := n} D^j(q_n); the zero Poly certifies annihilation."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    fixed = ode.substitute_index(n)
    deriv = reduced_kernel(family, n)
    acc = fixed.coeffs[0] * deriv
    for j in range(1, len(fixed.coeffs)):
        deriv = reduced_derivative(family, deriv)
        if fixed.coeffs[j]:
            acc = acc + fixed.coeffs[j] * deriv
    return acc


# reference fourth-order equation for phi1 = phi2 = -x^4 with unit
# logarithms (alpha = beta = e), kept as an independent cross-check
def quartic_example_ode() -> OdeSpec:
    nn = NN
    c3 = Poly.of([0, 0, 0, 12])
    c2 = Poly.of([0, 0, nn * (-12) + 36, 0, 0, 0, SymCoeff.of(48)])
    c1 = Poly.of([0, nn * nn * (-12) + nn * (-60) + 24, 0, 0, 0,
                  nn * (-96) + 144, 0, 0, 0, SymCoeff.of(64)])
    c0 = Poly.of([nn ** 3 * (-4) + nn * nn * (-24) + nn * (-44), 0, 0, 0,
                  nn * nn * (-48) + nn * (-384), 0, 0, 0, nn * (-192)])
    return OdeSpec((c0, c1, c2, c3, Poly.one()))


def compare_odes(identity: str, left: OdeSpec, right: OdeSpec,
                 details: dict | None = None) -> VerificationReport:
    """Coefficient-by-coefficient equality of two operators."""
    failure = None
    if left.order != right.order:
        failure = {"left_order": left.order, "right_order": right.order}
    else:
        for j, (a, b) in enumerate(zip(left.coeffs, right.coeffs)):
            diff = a - b
            if diff:
                degree = next(d for d, c in enumerate(diff.coeffs) if c)
                failure = {"j": j, "x_degree": degree,
                           "coefficient": str(diff.coeffs[degree])}
                break
    return VerificationReport(
        identity=identity,
        status="failed" if failure else "verified",
        order=left.order,
        first_failure=failure,
        details=details or {},
    )


def verify_ode(family: FamilySpec, m: int, n_max: int = 6) -> list:
    """Suite reports: synthesis residuals, closed-form match, reference match.

    The closed-form comparison runs for m = 2, 3, 4; the printed reference
    equation is checked when the family is phi1 = phi2 = -x^4 (after
    substituting La = Lb = 1).  A constant phi1 is legal but degenerate,
    so reports flag it.
    """
    details = {}
    if not family.phi1.as_poly().derivative():
        details["phi1_constant"] = True
    ode = synthesize_ode(family, m)
    reports = []
    residuals = {n: ode_residual(ode, family, n) for n in range(n_max + 1)}
    reports.append(report_from_poly_residuals(
        "ode-residual", residuals, n_max, details=dict(details, m=m)))
    if m in (2, 3, 4):
        closed = closed_form_ode(family, m)
        reports.append(compare_odes("ode-closed-form", ode, closed,
                                    details=dict(details, m=m)))
    quartic = Poly.of([0, 0, 0, 0, -1])
    if (m == 4 and family.phi1.as_poly() == quartic
            and family.phi2.as_poly() == quartic):
        unit = ode.substitute_logs(1, 1)
        reports.append(compare_odes("ode-reference", unit,
                                    quartic_example_ode(),
                                    details=dict(details, m=m)))
    return reports
