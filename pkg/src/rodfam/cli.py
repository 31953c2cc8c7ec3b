"""Command-line front end.

Subcommands: compute, genfun, verify, ode, bilateral.  Exit codes:
0 = everything verified / computed, 1 = an identity check failed,
2 = bad usage or malformed input.  Output formats: pretty (default),
json, csv.  Family files are looked up literally first, then among the
bundled specs (hermite.json, hermite_symbolic.json, x4.json, hkdf.json).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .bilateral import load_bilateral, verify_bilateral
from .families import (ExactnessError, JetOrderError, SpecError, load_family)
from .genfun import verify_genfun
from .ode import synthesize_ode, verify_ode
from .recurrences import RecurrenceId, applicable_ids, sweep
from .ring import Poly
from .rodrigues import reduced_kernels, theta_eval

_SPEC_DIR = Path(__file__).parent / "specs"
_ORDER_CAP = 64

_SUITES = ("all", "genfun", "recurrences", "ode", "bilateral",
           "aa9", "aa10", "cor21", "thm23", "aa11", "cor22")


def resolve_family_path(name: str) -> Path:
    path = Path(name)
    if path.is_file():
        return path
    bundled = _SPEC_DIR / path.name
    if path.parent == Path(".") and bundled.is_file():
        return bundled
    raise SpecError(f"family spec not found: {name} "
                    f"(bundled: {', '.join(sorted(p.name for p in _SPEC_DIR.glob('*.json')))})")


def _check_cap(args, *values) -> None:
    for value in values:
        if value is not None and value > _ORDER_CAP and not args.allow_large:
            raise SpecError(
                f"requested order {value} exceeds the cap {_ORDER_CAP}; "
                f"pass --allow-large to override")


# ----------------------------------------------------------------------
# output helpers
# ----------------------------------------------------------------------

def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _csv_rows(rows) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    for row in rows:
        writer.writerow(row)
    sys.stdout.write(buffer.getvalue())


def _emit_reports(args, reports, extra: dict | None = None) -> int:
    payload = {"seed": args.seed,
               "reports": [r.to_dict() for r in reports]}
    if extra:
        payload.update(extra)
    if args.format == "json":
        _emit_json(payload)
    elif args.format == "csv":
        rows = [("identity", "status", "order", "first_failure")]
        for r in reports:
            rows.append((r.identity, r.status, r.order,
                         json.dumps(r.first_failure) if r.first_failure else ""))
        _csv_rows(rows)
    else:
        for r in reports:
            line = f"{r.identity:<16} {r.status:<9} order={r.order}"
            if r.details:
                notes = ", ".join(f"{k}={v}" for k, v in sorted(r.details.items()))
                line += f"  [{notes}]"
            print(line)
            if r.first_failure:
                print(f"    first failure: {r.first_failure}")
    return 0 if all(r.verified for r in reports) else 1


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------

def cmd_compute(args) -> int:
    family = load_family(resolve_family_path(args.family))
    _check_cap(args, args.n, args.n_max)
    if args.n is not None:
        indices = [args.n]
    else:
        indices = list(range(args.n_max + 1))
    if args.x0 is not None:
        if not args.numeric:
            raise SpecError("point evaluation needs --numeric "
                            "(kernels stay exact otherwise)")
        values = [(n, theta_eval(family, n, args.x0)) for n in indices]
        if args.format == "json":
            _emit_json({"family": family.to_json(), "x0": args.x0,
                        "values": [{"n": n, "value": v} for n, v in values]})
        elif args.format == "csv":
            _csv_rows([("n", "x0", "value")]
                      + [(n, args.x0, repr(v)) for n, v in values])
        else:
            for n, v in values:
                print(f"Theta_{n}({args.x0}) = {v!r}")
        return 0
    kernels = reduced_kernels(family, max(indices))
    rows = [(n, kernels[n]) for n in indices]
    if args.format == "json":
        _emit_json({"family": family.to_json(),
                    "kernels": [{"n": n, "degree": (q.degree if q else None),
                                 "poly": q.to_json()} for n, q in rows]})
    elif args.format == "csv":
        _csv_rows([("n", "degree", "kernel")]
                  + [(n, q.degree if q else "", str(q)) for n, q in rows])
    else:
        for n, q in rows:
            print(f"q_{n} = {q}")
    return 0


def cmd_genfun(args) -> int:
    family = load_family(resolve_family_path(args.family))
    _check_cap(args, args.order_t)
    report = verify_genfun(family, args.order_t)
    return _emit_reports(args, [report])


def cmd_verify(args) -> int:
    family = load_family(resolve_family_path(args.family))
    _check_cap(args, args.n_max, args.order_t, args.order_eta)
    suite = args.suite
    reports = []
    if suite in ("all", "genfun"):
        reports.append(verify_genfun(family, args.order_t))
    if suite in ("all", "recurrences"):
        ids = applicable_ids(family)
        reports.extend(sweep(family, args.n_max, ids))
    if suite in ("aa9", "aa10", "cor21", "thm23", "aa11", "cor22"):
        reports.extend(sweep(family, args.n_max, [RecurrenceId(suite.upper())]))
    if suite in ("all", "ode"):
        m = args.m
        psi_is_one = (family.psi.is_polynomial
                      and family.psi.as_poly() == Poly.one())
        if m is None:
            degree = family.phi2.as_poly().degree if family.phi2.is_polynomial else None
            if psi_is_one and isinstance(degree, int) and degree >= 1:
                m = degree
        if m is not None:
            reports.extend(verify_ode(family, m, n_max=min(args.n_max, 6)))
        elif suite == "ode":
            raise SpecError("ode suite needs --m (or a family with psi = 1 "
                            "and polynomial phi2 of degree >= 1)")
    if suite in ("all", "bilateral"):
        if args.spec is not None:
            spec = load_bilateral(args.spec)
            reports.append(verify_bilateral(spec, family,
                                            args.order_t, args.order_eta))
        elif suite == "bilateral":
            raise SpecError("bilateral suite needs --spec")
    if not reports:
        raise SpecError(f"nothing to verify for suite {suite!r}")
    return _emit_reports(args, reports, {"family": family.to_json()})


def cmd_ode(args) -> int:
    family = load_family(resolve_family_path(args.family))
    _check_cap(args, args.n_max)
    if args.m is None:
        raise SpecError("ode needs --m")
    ode = synthesize_ode(family, args.m)
    reports = verify_ode(family, args.m, n_max=args.n_max)
    if args.format == "json":
        payload = {"seed": args.seed, "ode": ode.to_dict(),
                   "reports": [r.to_dict() for r in reports]}
        _emit_json(payload)
        return 0 if all(r.verified for r in reports) else 1
    if args.format == "csv":
        rows = [("j", "coefficient")]
        rows += [(j, str(c)) for j, c in enumerate(ode.coeffs)]
        _csv_rows(rows)
        return 0 if all(r.verified for r in reports) else 1
    print(ode)
    return _emit_reports(args, reports)


def cmd_bilateral(args) -> int:
    family = load_family(resolve_family_path(args.family))
    _check_cap(args, args.order_t, args.order_eta)
    if args.spec is None:
        raise SpecError("bilateral needs --spec")
    spec = load_bilateral(args.spec)
    report = verify_bilateral(spec, family, args.order_t, args.order_eta)
    return _emit_reports(args, [report], {"spec": spec.to_json()})


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rodfam",
        description="Exact computation and verification for Rodrigues-type "
                    "analytic function families.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", required=True,
                        help="family spec JSON (path or bundled name)")
    common.add_argument("--format", choices=("pretty", "json", "csv"),
                        default="pretty")
    common.add_argument("--seed", type=int, default=0,
                        help="seed recorded in JSON output")
    common.add_argument("--allow-large", action="store_true",
                        help=f"lift the order cap of {_ORDER_CAP}")

    p = sub.add_parser("compute", parents=[common],
                       help="reduced kernels, or numeric point values")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--numeric", action="store_true",
                   help="evaluate Theta_n at --x0 (numeric bases required)")
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("genfun", parents=[common],
                       help="verify the generating-function identity")
    p.add_argument("--order-t", type=int, default=12)
    p.set_defaults(handler=cmd_genfun)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    p.add_argument("--suite", choices=_SUITES, default="all")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--order-t", type=int, default=12)
    p.add_argument("--order-eta", type=int, default=6)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--spec", default=None,
                   help="bilateral spec JSON (for the bilateral suite)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("ode", parents=[common],
                       help="synthesize the annihilating ODE")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n-max", type=int, default=6,
                   help="verify residuals for n up to this bound")
    p.set_defaults(handler=cmd_ode)

    p = sub.add_parser("bilateral", parents=[common],
                       help="verify a bilateral generating identity")
    p.add_argument("--spec", required=True)
    p.add_argument("--order-t", type=int, default=8)
    p.add_argument("--order-eta", type=int, default=8)
    p.set_defaults(handler=cmd_bilateral)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (SpecError, ExactnessError, JetOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
