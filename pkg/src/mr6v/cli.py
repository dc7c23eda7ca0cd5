"""Command-line interface.

Exit codes: 0 success, 1 a verification suite failed, 2 a precondition was
violated (the error class name is written to stderr).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import formulas, homogeneous, thermo, verify
from .core import format_rational, parse_rational
from .errors import EmptyGrid, LatticeTooLarge, MR6VError, ParseError
from .oracle import Boundary, InhomParams

DEFAULT_MAX_N = 14

PROVENANCE = {
    "bruteforce": "direct R-matrix contraction, column by column",
    "mid-k1": "modified Izergin determinant K1 (m x m, column parameters)",
    "mid-k2": "modified Izergin determinant K2 (n x n, row parameters)",
    "mid-k3": "square-lattice determinant K3 of phi_beta(u_i - v_j)",
    "block": "block determinant mixing phi_beta and monomial rows/columns",
    "pdwbc": "partial domain-wall determinant with binomial multiplicity",
}


def max_lattice_height() -> int:
    raw = os.environ.get("MR6V_MAX_N", str(DEFAULT_MAX_N))
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"MR6V_MAX_N must be an integer, got {raw!r}") from None


# --- parameter loading ------------------------------------------------------------

def _rat(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise ParseError(f"{where}: rationals must be JSON strings")
    return parse_rational(value)


def _pair(value, where: str) -> tuple[Fraction, Fraction]:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected a list of two rationals")
    return (_rat(value[0], where), _rat(value[1], where))


def load_params(path: str) -> tuple[InhomParams, Boundary]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        c = _rat(data["c"], "c")
        u = [_rat(x, "u") for x in data["u"]]
        v = [_rat(x, "v") for x in data["v"]]
        bd = data["boundary"]
        b = Boundary(**{side: _pair(bd[side], side) for side in ("north", "south", "east", "west")})
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: missing or malformed field {exc}") from None
    return InhomParams(tuple(u), tuple(v), c), b


def parse_grid(text: str) -> tuple[str, str, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError("--grid expects start:stop:steps")
    try:
        steps = int(parts[2])
        float(parts[0]), float(parts[1])
    except ValueError:
        raise ParseError(f"bad grid {text!r}") from None
    if steps < 2:
        raise ParseError("grid steps must be >= 2")
    return parts[0], parts[1], steps


@contextlib.contextmanager
def output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


# --- subcommands --------------------------------------------------------------------

def cmd_z(args) -> int:
    if not args.params:
        raise ParseError("z needs --params")
    p, b = load_params(args.params)
    method = formulas.Method(args.method)
    if method is formulas.Method.BRUTEFORCE and p.n > max_lattice_height():
        raise LatticeTooLarge(f"n={p.n} exceeds MR6V_MAX_N={max_lattice_height()}")
    if method is formulas.Method.PDWBC:
        value = formulas.partition_pdwbc(p, args.k)
        note = f"{PROVENANCE['pdwbc']}, k={args.k}"
    else:
        value = formulas.partition(p, b, method)
        note = PROVENANCE[method.value]
    with output(args.out) as fh:
        fh.write(format_rational(value) + "\n")
        fh.write(f"provenance: {method.value}: {note}\n")
    return 0


def cmd_verify(args, names=None) -> int:
    results = verify.run_suites(args.seed, names=names, inject_fault=args.inject_fault)
    with output(args.out) as fh:
        for r in results:
            fh.write(r.line() + "\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_identities(args) -> int:
    return cmd_verify(args, names=verify.IDENTITY_SUITES)


def cmd_homog(args) -> int:
    if not args.params:
        raise ParseError("homog needs --params for the boundary vectors")
    if args.n is None or args.m is None or args.x is None:
        raise ParseError("homog needs --n, --m and --x")
    p, b = load_params(args.params)
    c = parse_rational(args.c) if args.c is not None else p.c
    h = homogeneous.HomogParams(parse_rational(args.x), c, args.n, args.m)
    z = homogeneous.partition_homogeneous(h, b)
    base = homogeneous.z0(h.n, h.m, b)
    lines = [f"Z = {format_rational(z)}", f"Z0 = {format_rational(base)}"]
    if c > 0:
        ft = homogeneous.finite_thermodynamics_from_weight(h.n, h.m, b, float(c), 1.0)
        lines += [f"{name} = {getattr(ft, name)!r}" for name in ("F_tot", "E_avg", "E_fluct", "C_V", "S")]
    else:
        lines.append("finite thermodynamics skipped: needs the Boltzmann weight c > 0")
    with output(args.out) as fh:
        fh.write("\n".join(lines) + "\n")
    return 0


def cmd_thermo_curves(args) -> int:
    if args.beta_tilde is None or args.grid is None:
        raise ParseError("thermo-curves needs --beta-tilde and --grid")
    beta_tilde = parse_rational(args.beta_tilde)
    start, stop, steps = parse_grid(args.grid)
    points = thermo.thermo_curve(beta_tilde, thermo.grid(start, stop, steps))
    if not any(pt.in_domain for pt in points):
        raise EmptyGrid("no grid point lies in the free-energy domain")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x_tilde", "F_tilde", "E_avg", "E_fluct_sq", "S"])
    for pt in points:
        writer.writerow(pt.csv_fields())
    with output(args.out) as fh:
        fh.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mr6v", description="Modified rational six-vertex model toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write to this file instead of stdout")
        return sp

    z = common(sub.add_parser("z", help="partition function of an inhomogeneous lattice"))
    z.add_argument("--method", default="block", choices=[m.value for m in formulas.Method])
    z.add_argument("--params", help="JSON file with c, u, v and boundary")
    z.add_argument("--k", type=int, default=0, help="north inward arrows for --method pdwbc")
    z.set_defaults(func=cmd_z)

    for name, func, help_text in [("verify", cmd_verify, "run every cross-verification suite"),
                                  ("identities", cmd_identities, "run the auxiliary identity suites only")]:
        sp = common(sub.add_parser(name, help=help_text))
        sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
        sp.add_argument("--inject-fault", choices=["binomial"], help=argparse.SUPPRESS)
        sp.set_defaults(func=func)

    h = common(sub.add_parser("homog", help="homogeneous partition function and finite thermodynamics"))
    h.add_argument("--params", help="JSON file; its boundary (and c unless --c is given) are used")
    h.add_argument("--n", type=int)
    h.add_argument("--m", type=int)
    h.add_argument("--x")
    h.add_argument("--c")
    h.set_defaults(func=cmd_homog)

    t = common(sub.add_parser("thermo-curves", help="CSV of infinite-lattice characteristics"))
    t.add_argument("--beta-tilde")
    t.add_argument("--grid", help="start:stop:steps, both ends included")
    t.set_defaults(func=cmd_thermo_curves)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MR6VError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
