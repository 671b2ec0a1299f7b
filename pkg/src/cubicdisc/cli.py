"""Command line front end: tables, expansions, divisor data, verification.

Exit codes: 0 when every executed check passes, 1 when any check fails or is
inconclusive, 2 on usage errors.  ``--corrupt`` deliberately damages one
input of the verification suite and exists so that negative controls can be
exercised end to end.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .borcherds import (DivisorVector, OmegaIsometry, SymmetryError,
                        divisor_data_dict, enumerate_divisor_vectors,
                        omega_isometry, omega_orbits, principal_part,
                        product_weight)
from .lattice import (CosetType, TYPE_ORDER, UniformityError,
                      cubic_surface_lattice, discriminant_group)
from .qseries import eta_series, monomial
from .report import FAIL, PASS, VerificationReport
from .weil import (FVector, PAIRING_VALUES, ReducedSMatrix, assemble_f,
                   check_S_numeric, check_T, check_eta_cube_identity,
                   check_proportionality, check_s_matrix_square,
                   check_triple_shift_identity, counting_table,
                   eta_cube_over_nine, eta_third_over_nine, reduce_s_matrix)

S_CHECK_POINTS = (1j, 2j, 0.5 + 1j)

CORRUPT_CHOICES = ("t-law", "s-matrix", "eta-cube", "triple-shift",
                   "weight", "principal-part", "divisor-orbits")


@dataclass
class RunConfig:
    command: str
    prec: Fraction = Fraction(12)
    tol: float = 1e-6
    bound: int = 3
    format: str = "text"
    corrupt: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "prec": str(self.prec),
            "tol": self.tol,
            "bound": self.bound,
            "format": self.format,
            "corrupt": self.corrupt,
        }


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

def _tampered_omega() -> OmegaIsometry:
    # rotation on four blocks, identity on the first: order 3 but not
    # fixed-point free, so orbit sums fail
    good = omega_isometry().matrix
    m = [list(row) for row in good]
    m[0][0:2] = [1, 0]
    m[1][0:2] = [0, 1]
    return OmegaIsometry(tuple(tuple(row) for row in m))


def verification_suite(config: RunConfig) -> list[VerificationReport]:
    """Run every check of the toolkit, honoring the corruption hook."""
    corrupt = config.corrupt
    prec = config.prec
    reports: list[VerificationReport] = []

    disc = discriminant_group(cubic_surface_lattice())
    try:
        table = counting_table(disc)
        reports.append(VerificationReport(
            "counting-table-uniformity", PASS,
            [f"count vectors constant on all {table.group_order} cosets within each type"]))
        s_matrix = reduce_s_matrix(table)
    except UniformityError as exc:
        reports.append(VerificationReport("counting-table-uniformity", FAIL, [str(exc)]))
        return reports

    if corrupt == "s-matrix":
        rows = [list(r) for r in s_matrix.entries]
        rows[0][1] += 1
        s_matrix = ReducedSMatrix(entries=tuple(tuple(r) for r in rows))

    f = assemble_f(prec)
    if corrupt == "t-law":
        comps = dict(f.components)
        comps[CosetType.T00] = comps[CosetType.T00] + monomial(Fraction(1, 3), 1)
        f = FVector(comps)
    elif corrupt == "weight":
        f = f.scale(2)
    elif corrupt == "principal-part":
        comps = dict(f.components)
        comps[CosetType.T1] = comps[CosetType.T1] + monomial(Fraction(-2, 3), 1)
        f = FVector(comps)

    reports.append(check_T(f))
    for tau in S_CHECK_POINTS:
        reports.append(check_S_numeric(f, tau, config.tol, s_matrix))

    eta_cubed = None
    if corrupt == "eta-cube":
        eta_cubed = eta_series(1, prec) ** 3 + monomial(Fraction(17, 8), 1)
    reports.append(check_eta_cube_identity(prec, eta_cubed))

    h = None
    if corrupt == "triple-shift":
        h = eta_cube_over_nine(prec) + monomial(1, 1)
    reports.append(check_triple_shift_identity(prec, g=None, h=h))

    reports.append(check_s_matrix_square(s_matrix))
    reports.append(check_proportionality(f, s_matrix))

    reports.append(_weight_report(f))
    reports.append(_principal_part_report(f))

    omega = _tampered_omega() if corrupt == "divisor-orbits" else omega_isometry()
    reports.append(divisor_orbit_report(config.bound, omega))
    return reports


def _weight_report(f: FVector) -> VerificationReport:
    w = product_weight(f)
    status = PASS if w == 12 else FAIL
    return VerificationReport(
        "borcherds-weight", status,
        [f"weight = (constant term of component 00)/2 = {w}", "expected 12"])


def _principal_part_report(f: FVector) -> VerificationReport:
    pp = principal_part(f)
    expected = ((CosetType.T2, Fraction(-1, 3), Fraction(1)),)
    status = PASS if pp.terms == expected else FAIL
    details = [f"principal part: type {t.label}, exponent {e}, coefficient {c}"
               for t, e, c in pp.terms] or ["principal part empty"]
    details.append("expected a single simple term: type 2, exponent -1/3, coefficient 1")
    return VerificationReport("principal-part", status, details)


def divisor_orbit_report(bound: int, omega: Optional[OmegaIsometry] = None,
                         vectors: Optional[list[DivisorVector]] = None) -> VerificationReport:
    """Enumerate norm -2/3 vectors and verify the order-3 orbit structure."""
    if vectors is None:
        vectors = enumerate_divisor_vectors(bound)
    try:
        orbits = omega_orbits(vectors, omega)
    except SymmetryError as exc:
        return VerificationReport("divisor-orbit-structure", FAIL, [str(exc)])
    closed = 3 * len(orbits)
    details = [
        f"{len(vectors)} norm -2/3 vectors at bound {bound}; "
        f"{closed} after rotation closure; {len(orbits)} orbits of size 3",
        "every orbit sums to zero with pairwise inner products 1/3",
        "each zero of the lift is simple; a hyperplane of the complex-hyperbolic "
        "subspace is the restriction of one 3-orbit, so the cube root has zeros "
        "of multiplicity 3/3 = 1",
    ]
    return VerificationReport("divisor-orbit-structure", PASS, details)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_table(config: RunConfig) -> tuple[list, list[VerificationReport]]:
    disc = discriminant_group(cubic_surface_lattice())
    table = counting_table(disc)
    result = {"kind": "table", **table.as_dict()}
    return [result], []


def _cmd_qexp(config: RunConfig) -> tuple[list, list[VerificationReport]]:
    f = assemble_f(config.prec)
    results = [{"kind": "series", "component": t.label, **f[t].serialize(),
                "display": str(f[t])} for t in TYPE_ORDER]
    return results, []


def _cmd_weight(config: RunConfig) -> tuple[list, list[VerificationReport]]:
    f = assemble_f(config.prec)
    w = product_weight(f)
    pp = principal_part(f)
    result = {"kind": "weight", "weight": str(w), **pp.as_dict()}
    return [result], [_weight_report(f), _principal_part_report(f)]


def _cmd_divisor(config: RunConfig) -> tuple[list, list[VerificationReport]]:
    vectors = enumerate_divisor_vectors(config.bound)
    orbits = omega_orbits(vectors)
    data = divisor_data_dict(vectors, orbits)
    return [{"kind": "divisors", **data}], [divisor_orbit_report(config.bound, vectors=vectors)]


def _cmd_verify(config: RunConfig) -> tuple[list, list[VerificationReport]]:
    return [], verification_suite(config)


def _cmd_all(config: RunConfig) -> tuple[list, list[VerificationReport]]:
    results = []
    for cmd in (_cmd_table, _cmd_qexp, _cmd_weight, _cmd_divisor):
        r, _ = cmd(config)
        results.extend(r)
    return results, verification_suite(config)


COMMANDS = {
    "table": _cmd_table,
    "qexp": _cmd_qexp,
    "weight": _cmd_weight,
    "divisor": _cmd_divisor,
    "verify": _cmd_verify,
    "all": _cmd_all,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_text(results: list, reports: list[VerificationReport], out) -> None:
    for item in results:
        kind = item["kind"]
        if kind == "table":
            print("counting table (cosets v by type and pairing with u):", file=out)
            print(f"{'u type':>8} {'pairing':>8} " +
                  " ".join(f"{t.label:>6}" for t in TYPE_ORDER), file=out)
            by_u = {}
            for e in item["entries"]:
                by_u.setdefault((e["u_type"], e["pairing"]), {})[e["v_type"]] = e["count"]
            for u in TYPE_ORDER:
                for p in PAIRING_VALUES:
                    row = by_u.get((u.label, str(p)))
                    if row:
                        print(f"{u.label:>8} {str(p):>8} " +
                              " ".join(f"{row[t.label]:>6}" for t in TYPE_ORDER), file=out)
        elif kind == "series":
            print(f"f_{item['component']} = {item['display']}", file=out)
        elif kind == "weight":
            print(f"weight of the lift: {item['weight']}", file=out)
            for t in item["terms"]:
                print(f"principal part: type {t['type']}, exponent {t['exponent']}, "
                      f"coefficient {t['coefficient']}", file=out)
        elif kind == "divisors":
            print(f"norm {item['norm']} vectors: {item['enumerated']} enumerated, "
                  f"{item['with_closure']} after closure, {len(item['orbits'])} orbits",
                  file=out)
    for rep in reports:
        print(rep.summary_line(), file=out)
        for line in rep.details:
            print(f"    {line}", file=out)


def _render_json(config: RunConfig, results: list,
                 reports: list[VerificationReport], out) -> None:
    payload = {
        "command": config.command,
        "config": config.as_dict(),
        "results": results + [r.as_dict() for r in reports],
    }
    json.dump(payload, out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=_fraction_arg, default=Fraction(12),
                        help="exponent precision bound for q-expansions (rational, default 12)")
    common.add_argument("--tol", type=float, default=1e-6,
                        help="numeric tolerance for the S-transformation check")
    common.add_argument("--bound", type=int, default=3,
                        help="numerator box bound for divisor vector enumeration")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--corrupt", choices=CORRUPT_CHOICES, default=None,
                        help="test hook: damage one verification input")

    parser = argparse.ArgumentParser(
        prog="cubicdisc",
        description="Exact data and verification for the cubic-surface discriminant form")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common],
                   help="the 48-entry coset counting table")
    sub.add_parser("qexp", parents=[common],
                   help="q-expansions of the weight -3 form's components")
    sub.add_parser("weight", parents=[common],
                   help="weight and principal part of the lifted form")
    sub.add_parser("divisor", parents=[common],
                   help="norm -2/3 vectors and their rotation orbits")
    sub.add_parser("verify", parents=[common],
                   help="run the full verification suite")
    sub.add_parser("all", parents=[common],
                   help="all data commands plus the verification suite")
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    """Execute a command line; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    config = RunConfig(command=args.command, prec=args.prec, tol=args.tol,
                       bound=args.bound, format=args.format, corrupt=args.corrupt)
    problem = None
    if config.prec <= 0:
        problem = "--prec must be positive"
    elif config.tol <= 0:
        problem = "--tol must be positive"
    elif config.bound < 1:
        problem = "--bound must be at least 1"
    elif config.command in ("qexp", "weight", "verify", "all") and config.prec < 3:
        problem = "--prec must be at least 3 for this command"
    elif config.command in ("verify", "all") and config.prec < Fraction(25, 8):
        problem = "--prec must be at least 25/8 for the verification suite"
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2

    results, reports = COMMANDS[config.command](config)
    if config.format == "json":
        _render_json(config, results, reports, sys.stdout)
    else:
        _render_text(results, reports, sys.stdout)
    return 0 if all(r.passed for r in reports) else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
