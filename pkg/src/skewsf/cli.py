"""Command line front end: construction, invariants, classification, verify.

Exit codes: 0 success, 1 usage, 2 mathematical precondition failure,
3 resource bound exceeded.  Output is JSON by default (csv/plain via
--format) and byte-identical across runs with the same flags and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance, classify, semifield
from ._ints import prime_power_split
from .errors import (
    ParseError,
    PreconditionError,
    SizeBoundError,
    SkewsfError,
    StructuralError,
)
from .gf import build_tower
from .skewpoly import SkewRing, eigenring, factor_witness, is_irreducible, mzlm


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(doc, fmt: str, plain_lines=None):
    if fmt == "plain" and plain_lines is not None:
        for line in plain_lines:
            print(line)
    else:
        print(json.dumps(doc, sort_keys=True))


def _build_ring(args) -> SkewRing:
    try:
        p, h = prime_power_split(args.q)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    n = args.n
    sigma_s = args.sigma_s if args.sigma_s is not None else (1 if n > 1 else 0)
    return SkewRing(build_tower(p, h, n), sigma_s)


def cmd_semifield(args) -> int:
    ring = _build_ring(args)
    try:
        f = ring.parse(args.f)
    except ParseError as e:
        print(json.dumps({"kind": "error", "error": f"cannot parse f: {e}"}), file=sys.stderr)
        return 2
    if args.d is not None and f.degree != args.d:
        raise _UsageError(f"--d {args.d} does not match deg(f) = {f.degree}")
    f = f.monic()
    if not is_irreducible(f):
        doc = {"kind": "error", "error": "f is reducible", "f": list(f.coeffs)}
        wit = factor_witness(f)
        if wit is not None:
            a, b = wit
            doc["factorization"] = [list(a.coeffs), list(b.coeffs)]
        print(json.dumps(doc, sort_keys=True))
        return 2
    S = semifield.Semifield(f)
    params = {
        "q": args.q,
        "n": args.n,
        "d": f.degree,
        "sigma_s": ring.sigma_s,
        "f": list(f.coeffs),
    }
    if args.action == "nuclei":
        sizes = {}
        elements = {}
        for which, label in (("centre", "Z"), ("left", "Nl"), ("middle", "Nm"), ("right", "Nr")):
            members = semifield.nucleus(S, which)
            sizes[label] = len(members)
            elements[label] = list(members)
        doc = {"kind": "nuclei", "params": params, "sizes": sizes, "elements": elements}
        plain = [f"{k}: {sizes[k]}" for k in ("Z", "Nl", "Nm", "Nr")]
        _emit(doc, args.format, plain)
    elif args.action == "mzlm":
        h = mzlm(f)
        doc = {
            "kind": "mzlm",
            "params": params,
            "mzlm": {"coeffs": list(h.coeffs), "text": h.pretty()},
        }
        _emit(doc, args.format, [h.pretty()])
    elif args.action == "eigenring":
        E = eigenring(f)
        doc = {
            "kind": "eigenring",
            "params": params,
            "dimension": E.dimension,
            "basis": [list(b.coeffs) for b in E.basis],
            "elements": list(E.element_encodings()),
        }
        plain = [f"dimension {E.dimension} over F_{args.q}"] + [str(b) for b in E.basis]
        _emit(doc, args.format, plain)
    elif args.action == "table":
        T = S.table()
        if args.format == "json":
            doc = {"kind": "table", "params": params, "table": [[int(x) for x in row] for row in T]}
            _emit(doc, "json")
        else:
            header = "," + ",".join(str(i) for i in range(S.order))
            print(header)
            for i, row in enumerate(T):
                print(f"{i}," + ",".join(str(int(x)) for x in row))
    elif args.action == "check":
        rep = semifield.check_axioms(S, seed=args.seed)
        doc = {"kind": "check", "params": params, "report": rep.to_json(), "all_ok": rep.all_ok}
        plain = [f"S{i}: {'pass' if c.ok else 'FAIL'}" for i, c in enumerate((rep.s1, rep.s2, rep.s3, rep.s4), 1)]
        _emit(doc, args.format, plain)
        if not rep.all_ok:
            return 2
    return 0


def cmd_classify(args) -> int:
    try:
        prime_power_split(args.q)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    report = classify.orbit_decomposition(args.q, args.d, args.n)
    doc = {"kind": "classify", **report.to_json()}
    if args.reps:
        if args.n is None:
            raise _UsageError("--reps requires --n")
        reps = classify.class_representatives(args.q, args.n, args.d, args.sigma_s)
        doc["representatives"] = [
            {"descriptor": S.descriptor_json(), "f_text": str(S.f), "order": S.order}
            for S in reps
        ]
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
        return 0
    plain = [
        f"N({args.q},{args.d}) = {report.N}, theta = {report.theta}, M = {report.M}",
        f"bounds: {report.lower} <= M <= {report.upper}",
    ]
    for rep, size, elems in report.orbits:
        members = ", ".join(e.pretty() for e in elems)
        plain.append(f"orbit (size {size}): {members}")
    if args.reps:
        for entry in doc["representatives"]:
            plain.append(f"representative f = {entry['f_text']} (order {entry['order']})")
    _emit(doc, args.format, plain)
    return 0


def cmd_verify(args) -> int:
    keys = args.suites or None
    results = []
    for res in acceptance.run(keys, long=args.long, seed=args.seed):
        results.append(res)
    doc = {
        "kind": "verify",
        "all_passed": all(r.passed for r in results),
        "results": [r.to_json() for r in results],
        "not_reproducible": sorted({note for r in results for note in r.notes}),
    }
    if args.format == "plain":
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} criterion {r.criterion} [{r.key}]")
            for d in r.details:
                print(f"    {d}")
    else:
        print(json.dumps(doc, sort_keys=True))
    return 0 if doc["all_passed"] else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="skewsf", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    ps = sub.add_parser("semifield", help="invariants of one semifield S_f")
    ps.add_argument("--q", type=int, required=True, help="order of the fixed field F_q")
    ps.add_argument("--n", type=int, required=True, help="degree of K over F_q")
    ps.add_argument("--d", type=int, help="degree of f (validated against --f)")
    ps.add_argument("--sigma-s", type=int, dest="sigma_s", help="q-power exponent of sigma")
    ps.add_argument("--f", required=True, help="polynomial, e.g. '1 + 2*t + 1*t^2' or a JSON list")
    ps.add_argument("action", choices=["nuclei", "mzlm", "eigenring", "table", "check"])
    ps.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    ps.add_argument("--seed", type=int, default=0)
    ps.set_defaults(func=cmd_semifield)

    pc = sub.add_parser("classify", help="G-orbits on I(q,d) and representatives")
    pc.add_argument("--q", type=int, required=True)
    pc.add_argument("--d", type=int, required=True)
    pc.add_argument("--n", type=int, help="extension degree (enables the Odoni count and --reps)")
    pc.add_argument("--sigma-s", type=int, dest="sigma_s")
    pc.add_argument("--reps", action="store_true", help="construct one semifield per orbit")
    pc.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    pc.add_argument("--seed", type=int, default=0)
    pc.set_defaults(func=cmd_classify)

    pv = sub.add_parser("verify", help="run the acceptance battery")
    pv.add_argument("suites", nargs="*", help=f"suite names (default: all); known: {', '.join(acceptance.SUITES)}")
    pv.add_argument("--long", action="store_true", help="include the order-16 spread-set tightness scan")
    pv.add_argument("--format", choices=["json", "plain"], default="json")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--budget-ms", type=float, dest="budget_ms", help="budget for opt-in searches")
    pv.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    if not getattr(args, "func", None):
        parser.print_help()
        return 1
    if getattr(args, "budget_ms", None) is not None:
        os.environ["SKEWSF_BUDGET_MS"] = str(args.budget_ms)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except SizeBoundError as e:
        print(json.dumps({"kind": "error", "error": str(e)}), file=sys.stderr)
        return 3
    except (ParseError, PreconditionError, StructuralError) as e:
        print(json.dumps({"kind": "error", "error": str(e)}), file=sys.stderr)
        return 2
    except SkewsfError as e:
        print(json.dumps({"kind": "error", "error": str(e)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
