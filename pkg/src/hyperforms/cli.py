"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails
(the report is still printed), 2 for usage or configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import group, identities, sequences, zetaforms
from .ball import evaluate_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_digits() -> int:
    raw = os.environ.get("HYPERFORMS_DIGITS")
    if raw is None:
        return 40
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"HYPERFORMS_DIGITS={raw!r} is not an integer")


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}")


def _int_range(text: str) -> list:
    """'3' -> [3]; '0:5' -> 0..5 inclusive; '1,4,7' -> list."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad integer range {text!r}")


def _fracs(text: str, k: int) -> list:
    parts = text.split(",")
    if len(parts) != k:
        raise UsageError(f"expected {k} comma-separated values, got {text!r}")
    return [_frac(p) for p in parts]


# -- output --------------------------------------------------------------------

def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


def _emit(payload, fmt: str, rows=None) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        records = rows if rows is not None else [payload]
        flat = [_flatten(r) for r in records]
        cols = sorted({k for r in flat for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in flat:
            w.writerow(r)
        sys.stdout.write(buf.getvalue())
    else:
        records = rows if rows is not None else [payload]
        for r in records:
            for k, v in sorted(_flatten(r).items()):
                sys.stdout.write(f"{k:32s} {v}\n")
            sys.stdout.write("\n")


# -- commands ------------------------------------------------------------------

def cmd_approx(args) -> tuple:
    fam = sequences.get_family(args.family)
    rows, ok = [], True
    for n in _int_range(args.n_range):
        form = sequences.build_form(fam, n)
        val = evaluate_form(form, args.digits)
        ser = sequences.series_value(fam, n, args.digits)
        match, _ = identities.compare_balls(val, ser, args.digits)
        ok &= match
        row = {"family": fam.name, "n": n, "form": form.to_json(), "value": val.to_json(),
               "series_value": ser.to_json(), "pass": match}
        if args.integrality:
            cert = sequences.certify_integrality(fam, n)
            ok &= cert.passed
            row["integrality"] = cert.to_json()
        rows.append(row)
    payload = {"family": fam.name, "digits": args.digits, "results": rows, "pass": ok}
    if args.recurrence:
        order, degree = (int(x) for x in args.recurrence.split(","))
        rec = sequences.fit_recurrence(fam, order, degree)
        payload["recurrence"] = None if rec is None else rec.to_json()
    return payload, rows, ok


def _identity_params(ident, extra: list) -> dict:
    params, it = {}, iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        name = tok[2:]
        if "=" in name:
            name, val = name.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise UsageError(f"missing value for --{name}")
        if name not in ident.params:
            raise UsageError(f"{ident.name} has parameters {', '.join(ident.params)}; got --{name}")
        params[name] = _frac(val)
    missing = [p for p in ident.params if p not in params]
    if missing:
        raise UsageError(f"missing parameters: {', '.join(missing)}")
    return params


def cmd_identity(args, extra) -> tuple:
    ident = _lookup_identity(args.identity)
    params = _identity_params(ident, extra)
    try:
        rep = identities.verify_identity(ident, params, args.digits)
    except identities.InadmissibleError as e:
        raise UsageError(f"inadmissible parameters: {e}")
    return rep.to_json(), None, rep.passed


def _lookup_identity(name):
    try:
        return identities.get_identity(name)
    except KeyError as e:
        raise UsageError(str(e.args[0]))


def cmd_sweep(args) -> tuple:
    ident = _lookup_identity(args.identity)
    res = identities.sweep(ident, args.count, args.digits, args.seed, workers=args.workers)
    payload = res.to_json()
    payload["pass"] = res.all_pass
    return payload, payload["reports"], res.all_pass


def _matrix_from_args(args):
    if args.record:
        return group.record_matrix(*_fracs(args.record, 3))
    if args.params:
        return group.build_matrix(*_fracs(args.params, 5))
    raise UsageError("give --params a1,a2,a3,b2,b3 or --record x,a,b")


def cmd_group(args) -> tuple:
    if args.action == "order":
        n = len(group.generate_group())
        return {"order": n, "pass": n == 120}, None, n == 120
    m = _matrix_from_args(args)
    if args.action == "matrix":
        return {"matrix": m.to_json(), "parameters": [str(x) for x in m.parameters()], "pass": True}, None, True
    if args.action == "reps":
        try:
            reps = group.classify_half_integer_reps(m)
        except ValueError as e:
            raise UsageError(str(e))
        rows = [r.to_json() for r in reps]
        return {"count": len(reps), "representatives": rows, "pass": True}, rows, True
    rep = group.orbit_invariant_check(m, args.digits)
    return rep.to_json(), None, rep.passed


def cmd_zeta(args) -> tuple:
    if args.action == "asymptotics":
        return cmd_asymptotics(args)
    if args.action == "theorem-table":
        rows = []
        for coll in (1, 2):
            for m in range(1, 22):
                rows.append(zetaforms.theorem_coefficients(m, coll).to_json())
        return {"coefficients": rows, "pass": True}, rows, True
    s = args.s
    rows, ok = [], True
    for n in _int_range(args.n_range):
        if args.action == "form":
            spec = zetaforms.ZetaFormSpec(s, n, args.variant, args.derivative)
            form = zetaforms.zeta_form(spec)
            val = evaluate_form(form, args.digits)
            direct = zetaforms.direct_value(spec, args.digits)
            match, _ = identities.compare_balls(val, direct, args.digits)
            ok &= match
            rows.append({"spec": spec.to_json(), "form": form.to_json(), "value": val.to_json(),
                         "direct_value": direct.to_json(), "pass": match})
        else:
            rep = zetaforms.integrality_check(s, n)
            ok &= rep.passed
            rows.append(rep.to_json())
    return {"s": s, "action": args.action, "results": rows, "pass": ok}, rows, ok


def cmd_asymptotics(args) -> tuple:
    res = zetaforms.asymptotics(args.s, args.digits)
    out = res.to_json()
    out["pass"] = res.separated
    return out, None, res.separated


def cmd_selftest(args) -> tuple:
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as e:  # a crash is a failed check, reported rather than raised
            ok = False
            name = f"{name} ({type(e).__name__}: {e})"
        checks.append({"check": name, "pass": ok})

    def pi2_forms():
        return (sequences.build_form("PI2_R", 0).to_json() == {"basis": ["pi4"], "coeffs": ["1/6"]}
                and sequences.build_form("PI2_R", 1).to_json()
                == {"basis": ["pi2", "pi4"], "coeffs": ["-125/4", "19/6"]})

    def log2_rec():
        r = sequences.fit_recurrence("LOG2_R", 2, 1)
        return r is not None and r.characteristic_polynomial() == [1, -6, 1]

    check("PI2_R forms at n = 0, 1", pi2_forms)
    check("LOG2_R recurrence", log2_rec)
    check("group order 120", lambda: len(group.generate_group()) == 120)
    check("TH_CAT at n=1, c=3/2, d=5/2",
          lambda: identities.verify_identity("TH_CAT", {"n": 1, "c": Fraction(3, 2), "d": Fraction(5, 2)}, 30).passed)
    check("zeta integrality s=8, n=2", lambda: zetaforms.integrality_check(8, 2).passed)
    check("kappa(1) = 1/14, 1/7", lambda: zetaforms.theorem_coefficients(1, 1).kappa == Fraction(1, 14)
          and zetaforms.theorem_coefficients(1, 2).kappa == Fraction(1, 7))
    if args.all:
        check("asymptotics s=40 separated", lambda: zetaforms.asymptotics(40, 30).separated)
        check("Catalan families agree n=0..3",
              lambda: all(sequences.cross_check("CATALAN_R", "CATALAN_WT", n, 40).passed for n in range(4)))
        check("log 2 families agree n=0..4",
              lambda: all(sequences.cross_check("LOG2_R", "LOG2_WT", n, 40).passed for n in range(5)))
        check("CATALAN_WT integrality n=1..6",
              lambda: all(sequences.certify_integrality("CATALAN_WT", n).passed for n in range(1, 7)))
        check("orbit invariant (1,1,1/2,5/2,2)",
              lambda: group.orbit_invariant_check(group.build_matrix(1, 1, Fraction(1, 2), Fraction(5, 2), 2), 30).passed)
        for name in ("TH_LN2", "TH_PI2", "T3240"):
            check(f"sweep {name} (5 points)", lambda name=name: identities.sweep(name, 5, 30, seed=0).all_pass)
    ok = all(c["pass"] for c in checks)
    return {"checks": checks, "pass": ok}, checks, ok


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperforms", allow_abbrev=False, description="Exact and certified checks of hypergeometric "
                                "approximations to Catalan's constant, log 2, pi^2 and zeta values.")
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--digits", type=int, default=None, help="working decimal digits (>= 10)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("approx", parents=[common], allow_abbrev=False, help="exact forms of an approximation family")
    a.add_argument("family", help=", ".join(sequences.FAMILIES))
    a.add_argument("--n-range", default="0:3", help="n, lo:hi or a comma list")
    a.add_argument("--recurrence", metavar="ORDER,DEGREE", help="also fit a recurrence")
    a.add_argument("--integrality", action="store_true", help="certify denominators where a scaling is known")

    i = sub.add_parser("identity", parents=[common], allow_abbrev=False, help="verify one identity; parameters as --name value")
    i.add_argument("identity")

    s = sub.add_parser("sweep", parents=[common], allow_abbrev=False, help="verify an identity at random admissible points")
    s.add_argument("identity")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)

    g = sub.add_parser("group", parents=[common], allow_abbrev=False, help="the order-120 group on parameter matrices")
    g.add_argument("action", choices=("order", "matrix", "orbit", "reps"))
    g.add_argument("--params", metavar="A1,A2,A3,B2,B3")
    g.add_argument("--record", metavar="X,A,B")

    z = sub.add_parser("zeta", parents=[common], allow_abbrev=False, help="zeta-value forms")
    z.add_argument("action", choices=("form", "integrality", "asymptotics", "theorem-table"))
    z.add_argument("--s", type=int, default=8)
    z.add_argument("--n-range", default="0:2")
    z.add_argument("--variant", choices=("R", "WT"), default="R")
    z.add_argument("--derivative", action="store_true")

    y = sub.add_parser("asymptotics", parents=[common], allow_abbrev=False, help="growth constants for even s")
    y.add_argument("--s", type=int, default=40)

    t = sub.add_parser("selftest", parents=[common], allow_abbrev=False, help="quick consistency checks")
    t.add_argument("--all", action="store_true", help="include slower checks")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        if extra and args.command != "identity":
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        if args.digits is None:
            args.digits = _default_digits()
        if args.digits < 10:
            raise UsageError("digits must be at least 10")
        if args.command == "identity":
            payload, rows, ok = cmd_identity(args, extra)
        else:
            handler = {"approx": cmd_approx, "sweep": cmd_sweep, "group": cmd_group, "zeta": cmd_zeta,
                       "asymptotics": cmd_asymptotics, "selftest": cmd_selftest}[args.command]
            payload, rows, ok = handler(args)
    except UsageError as e:
        print(f"hyperforms: error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError) as e:
        print(f"hyperforms: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, args.fmt, rows)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
