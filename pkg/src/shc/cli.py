"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 basis budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bv, calculus, classical, suites
from .complexes import (BudgetError, ChainVector, chain_dim, cochain_dim, get_budget,
                        set_budget)
from .linalg import Field, FieldError
from .triple import BUILTIN_NAMES, TripleError, builtin, load_json, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=BUILTIN_NAMES, help="use a builtin triple")
    src.add_argument("--input", metavar="FILE", help="read a triple from a JSON file")
    common.add_argument("--field", choices=("Q", "Fp"), help="override the field of the triple")
    common.add_argument("--prime", type=int, default=101, help="modulus for --field Fp (default 101)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--budget", type=int, help="cap on basis dimensions (default 10^6 or SHC_BUDGET)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    p = argparse.ArgumentParser(prog="shc", description=(
        "Secondary Hochschild (co)homology of a triple (A, B, eps): "
        "exact computations and identity verification."))
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check the triple axioms")
    for name, what in (("homology", "Betti numbers of the chain complex"),
                       ("cohomology", "Betti numbers of the cochain complex")):
        s = sub.add_parser(name, parents=[common], help=what)
        s.add_argument("--max-degree", type=_nonneg, default=3)
    s = sub.add_parser("verify", parents=[common], help="run identity suites")
    s.add_argument("--suite", required=True, choices=suites.SUITES + ("all",))
    s.add_argument("--max-degree", type=_nonneg, default=3)
    s.add_argument("--max-cochain-degree", type=_nonneg,
                   help="cap on cochain argument degrees (default depends on the suite)")
    s = sub.add_parser("classical", parents=[common],
                       help="compare with the classical Hochschild structure (dim B = 1)")
    s.add_argument("--max-degree", type=_nonneg, default=3)
    s = sub.add_parser("bvprobe", parents=[common], help="probe the BV structure induced by a cycle")
    s.add_argument("--class", dest="cls", default="unit", metavar="unit|FILE",
                   help="the cycle: 'unit' or a chain-vector JSON file")
    s.add_argument("--max-degree", type=_nonneg, help="top cohomology degree (default k + 1)")
    s = sub.add_parser("consistency", parents=[common],
                       help="compare Betti numbers over Q and over F_p")
    s.add_argument("--max-degree", type=_nonneg, default=2)
    return p


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("degree bounds must be non-negative")
    return n


def _load_triple(args):
    if args.builtin:
        t = builtin(args.builtin)
    else:
        path = Path(args.input)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
        t = load_json(text, name=path.stem)
    if args.field == "Q":
        t = t.with_field(Field.Q())
    elif args.field == "Fp":
        t = t.with_field(Field.Fp(args.prime))
    return t


def _require_valid(t):
    report = validate(t)
    if not report.ok:
        bad = ", ".join(f"{c.name} (witness {list(c.witness)})" for c in report.failures)
        raise InputError(f"triple fails validation: {bad}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


# -- commands ---------------------------------------------------------------------

def cmd_validate(args, t, out) -> int:
    report = validate(t)
    if args.json:
        out.write(_dump({"triple": t.name, "field": t.field.name, **report.to_dict()}) + "\n")
    else:
        out.write(f"triple {t.name or '-'}  field {t.field.name}\n")
        for c in report.checks:
            line = f"  {c.name:<22} {'pass' if c.passed else 'FAIL'}"
            if not c.passed:
                line += f"  witness {list(c.witness)}"
            out.write(line + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def _betti_text(report, out):
    out.write(f"triple {report.triple_name or '-'}  field {report.field_name}  {report.kind}\n")
    out.write(f"{'degree':>6} {'dim':>10} {'ker':>10} {'im in':>10} {'betti':>6}\n")
    for d in report.degrees:
        out.write(f"{d.degree:>6} {d.dim:>10} {d.dim_ker:>10} {d.rank_in:>10} {d.betti:>6}\n")
    out.write("betti " + ",".join(str(b) for b in report.betti) + "\n")


def cmd_homology(args, t, out) -> int:
    _require_valid(t)
    chain_dim(t, args.max_degree)
    report = calculus.homology(t, args.max_degree)
    if args.json:
        out.write(_dump(report.to_dict(t.field)) + "\n")
    else:
        _betti_text(report, out)
    return EXIT_OK


def cmd_cohomology(args, t, out) -> int:
    _require_valid(t)
    cochain_dim(t, args.max_degree)
    report = calculus.cohomology(t, args.max_degree)
    if args.json:
        out.write(_dump(report.to_dict(t.field)) + "\n")
    else:
        _betti_text(report, out)
    return EXIT_OK


def _suite_text(results, out):
    out.write(f"{'suite':<14} {'triple':<10} {'checks':>8} {'failures':>9}  status\n")
    for r in results:
        out.write(f"{r.suite:<14} {r.triple:<10} {r.checks:>8} {r.failure_count:>9}  "
                  f"{'pass' if r.passed else 'FAIL'}\n")
        for fl in r.flags:
            out.write(f"    flag: {fl}\n")
        for f in r.failures:
            out.write(f"    {f.operation} {json.dumps(f.inputs, sort_keys=True)}: "
                      f"expected {f.expected}, got {f.got}\n")


def cmd_verify(args, t, out) -> int:
    _require_valid(t)
    chain_dim(t, args.max_degree)
    names = suites.ALL_ORDER if args.suite == "all" else (args.suite,)
    results = [suites.verify(n, t, args.max_degree, seed=args.seed,
                             max_cochain_degree=args.max_cochain_degree) for n in names]
    if args.json:
        out.write(_dump([r.to_dict() for r in results] if args.suite == "all"
                        else results[0].to_dict()) + "\n")
    else:
        _suite_text(results, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_classical(args, t, out) -> int:
    _require_valid(t)
    chain_dim(t, args.max_degree)
    try:
        r = classical.classical_compare(t, args.max_degree, seed=args.seed)
    except classical.NotClassical as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        out.write(_dump(r.to_dict()) + "\n")
    else:
        _suite_text([r], out)
        if r.passed:
            out.write("secondary and classical matrices are equal\n")
    return EXIT_OK if r.passed else EXIT_FAIL


def cmd_bvprobe(args, t, out) -> int:
    _require_valid(t)
    if args.cls == "unit":
        c = bv.unit_class(t)
    else:
        path = Path(args.cls)
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from exc
        try:
            c = ChainVector.from_json_obj(t, doc)
        except (ValueError, IndexError, FieldError) as exc:
            raise InputError(f"bad chain vector in {path}: {exc}") from exc
    try:
        report = bv.bv_probe(t, c, args.max_degree)
    except bv.NotACycle as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        out.write(_dump(report.to_dict()) + "\n")
    else:
        out.write(f"triple {t.name or '-'}  field {t.field.name}  chain degree {report.chain_degree}\n")
        out.write(f"B[c] = 0: {'yes' if report.B_class_zero else 'no'}\n")
        for th in report.theta:
            out.write(f"  Theta_{th['degree']}: H^{th['degree']} ({th['cohomology_dim']}) -> "
                      f"H_{th['homology_degree']} ({th['homology_dim']})  rank {th['rank']}  "
                      f"{'bijective' if th['bijective'] else 'not bijective'}\n")
        out.write(report.summary() + "\n")
    return EXIT_FAIL if report.status == "applicable but identity fails" else EXIT_OK


def cmd_consistency(args, t, out) -> int:
    _require_valid(t)
    cochain_dim(t, args.max_degree + 1)
    r = calculus.field_consistency(t, args.max_degree)
    if args.json:
        out.write(_dump(r.to_dict()) + "\n")
    else:
        out.write(f"triple {t.name or '-'}  degrees <= {args.max_degree}\n")
        out.write(f"  Q    : {r.betti_q}\n")
        if r.agree:
            out.write(f"  F_{r.prime}: {r.betti_p}\n")
        if r.unlucky:
            out.write(f"  unlucky primes: {r.unlucky}\n")
        out.write("agree\n" if r.agree else "DISAGREE for every prime tried\n")
    return EXIT_OK if r.agree else EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "verify": cmd_verify,
    "classical": cmd_classical,
    "bvprobe": cmd_bvprobe,
    "consistency": cmd_consistency,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved_budget = get_budget()
    try:
        if args.budget is not None:
            if args.budget < 1:
                raise InputError("--budget must be positive")
            set_budget(args.budget)
        t = _load_triple(args)
        return COMMANDS[args.command](args, t, out)
    except BudgetError as exc:
        print(f"shc: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, TripleError, FieldError) as exc:
        print(f"shc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_budget(saved_budget)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
