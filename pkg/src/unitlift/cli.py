"""``unitlift`` command line.

Exit codes: 0 success, 1 a verified identity failed, 2 the element is not a
unit, 3 invalid descriptor, element or chain, 4 resource cap exceeded.
"""

import argparse
import csv
import io
import json
import os
import sys

from .bench import bench_inversion
from .chain import chain_from_json, default_chain, validate_cnc
from .counting import count_units
from .errors import (
    NotAUnitError,
    PreconditionError,
    ResourceError,
    ShapeError,
    UnsupportedError,
    ValidationError,
)
from .lift import invert, lift_inverse, quotient_lift
from .oracle import (
    NOT_A_UNIT,
    EnumerableRing,
    brute_inverse,
    enumerate_units,
    gaussian_unit_count_report,
    verify_cardinality,
)
from .rings import GaussianMod, ring_from_json

EXIT_OK, EXIT_IDENTITY, EXIT_NOT_UNIT, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _load_json(text: str, what: str):
    """Inline JSON, or a path to a JSON file."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what} is not valid JSON: {exc}") from None


def _ring(args):
    return ring_from_json(_load_json(args.ring, "--ring"))


def _element(args, ring):
    if args.element is None:
        raise ValidationError("--element is required")
    return ring.element(_load_json(args.element, "--element"))


def _chain(args, ring):
    if getattr(args, "chain", None) is None:
        return None
    return chain_from_json(_load_json(args.chain, "--chain"), ring)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_invert(args, out):
    ring = _ring(args)
    x = _element(args, ring)
    cert = invert(x, _chain(args, ring))
    body = {"ring": ring.to_json(), "element": x.payload, "inverse": cert.inverse.payload,
            "certificate": cert.to_json()}
    if args.format == "text":
        out.write(f"{x.payload} ^ -1 = {cert.inverse.payload} in {ring!r} (method {cert.method})\n")
    elif args.format == "csv":
        out.write("element,inverse\n")
        out.write(f"{_dump(x.payload)},{_dump(cert.inverse.payload)}\n")
    else:
        out.write(_dump(body) + "\n")
    return EXIT_OK


def cmd_lift_trace(args, out):
    ring = _ring(args)
    x = _element(args, ring)
    chain = _chain(args, ring) or default_chain(ring)
    cert = lift_inverse(x, quotient_lift(x, chain), chain)
    levels = [{"level": i + 1, "ring": t.ring.to_json(), "residue": t.payload}
              for i, t in enumerate(cert.trace)]
    if args.format == "text":
        for lv in levels:
            out.write(f"level {lv['level']}: {lv['residue']} in {lv['ring']}\n")
    else:
        out.write(_dump(levels) + "\n")
    return EXIT_OK


def cmd_enumerate(args, out):
    ring = _ring(args)
    pairs = enumerate_units(ring)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["unit", "inverse"])
        for u, i in pairs:
            w.writerow([_dump(u.payload), _dump(i.payload)])
        out.write(buf.getvalue())
    elif args.format == "text":
        for u, i in pairs:
            out.write(f"{u.payload} -> {i.payload}\n")
        out.write(f"{len(pairs)} units\n")
    else:
        out.write(_dump({"ring": ring.to_json(), "count": len(pairs),
                         "units": [{"unit": u.payload, "inverse": i.payload} for u, i in pairs]}) + "\n")
    return EXIT_OK


def _breakdown_lines(b, indent=""):
    lines = []
    if "components" in b:
        lines.append(f"{indent}{b['units']} = product over CRT components")
        for c in b["components"]:
            lines.extend(_breakdown_lines(c, indent + "  "))
    else:
        lines.append(f"{indent}{b['units']} = |(R/N_1)*| * |N_1| = {b['quotient_units']} * "
                     f"{b['N_1_size']}  (N_1 = {b['N_1']}, quotient by {b['quotient_method']})")
    return lines


def cmd_count(args, out):
    ring = _ring(args)
    total, breakdown = count_units(ring)
    if args.format == "text":
        out.write(f"{total}\n")
        out.write("\n".join(_breakdown_lines(breakdown)) + "\n")
    elif args.format == "csv":
        out.write(f"units\n{total}\n")
    else:
        out.write(_dump({"units": total, "breakdown": breakdown}) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    ring = _ring(args)
    chain = _chain(args, ring) or default_chain(ring)
    validation = validate_cnc(chain)
    card = verify_cardinality(ring, chain)
    er = EnumerableRing(ring)
    mismatches, accepted_non_units, non_units = [], [], 0
    for x in er:
        expected = brute_inverse(x, er)
        try:
            got = invert(x, chain).inverse
        except NotAUnitError:
            got = NOT_A_UNIT
        if expected is NOT_A_UNIT:
            non_units += 1
            if got is not NOT_A_UNIT:
                accepted_non_units.append(x.payload)
        elif got != expected:
            mismatches.append(x.payload)
    identities = [{"identity": "CNC chain conditions", "ok": validation.ok,
                   "detail": validation.to_json()}]
    identities += card["checks"]
    identities.append({"identity": "lifted inverse = brute-force inverse for every unit",
                       "ok": not mismatches, "mismatches": mismatches})
    identities.append({"identity": "engine rejects every non-unit", "ok": not accepted_non_units,
                       "non_units": non_units, "accepted": accepted_non_units})
    report = {"ring": ring.to_json(), "units": card["units"], "identities": identities}
    if isinstance(ring, GaussianMod):
        report["gaussian_unit_count"] = gaussian_unit_count_report(ring.p, ring.k)
    ok = all(i["ok"] for i in identities)
    report["ok"] = ok
    if args.format == "text":
        for i in identities:
            out.write(f"{'PASS' if i['ok'] else 'FAIL'}  {i['identity']}\n")
        if "gaussian_unit_count" in report:
            g = report["gaussian_unit_count"]
            for name, c in g["claims"].items():
                out.write(f"{'PASS' if c['matches'] else 'FAIL'}  |units| = {name} = {c['value']} "
                          f"(enumerated {g['units']})\n")
    else:
        out.write(_dump(report) + "\n")
    return EXIT_OK if ok else EXIT_IDENTITY


def cmd_bench(args, out):
    report = bench_inversion({"n": args.n, "p": args.p, "k": args.k,
                              "trials": args.trials, "seed": args.seed})
    if args.format == "json":
        out.write(_dump(report.to_json()) + "\n")
    elif args.format == "text":
        out.write(report.to_markdown())
    else:
        out.write(report.to_csv())
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            fh.write(report.to_markdown())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitlift",
        description="Units and inverses in finite rings by lifting from quotients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, element=False, chain=False, fmt="json"):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ring", required=True, help="ring descriptor: inline JSON or a file path")
        if element:
            p.add_argument("--element", required=True, help="element payload as JSON")
        if chain:
            p.add_argument("--chain", help="CNC chain as JSON (default: maximal-ideal powers)")
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt)
        p.set_defaults(func=func)
        return p

    add("invert", cmd_invert, "invert an element, with certificate", element=True, chain=True)
    add("lift-trace", cmd_lift_trace, "per-level residues of the lifting", element=True, chain=True)
    add("enumerate", cmd_enumerate, "list every unit and its inverse (brute force)")
    add("count", cmd_count, "count units with the formula breakdown")
    add("verify", cmd_verify, "check the lifting identities against the oracle", chain=True)

    b = sub.add_parser("bench", help="benchmark three matrix inversion routes")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--format", choices=("json", "csv", "text"), default="csv")
    b.add_argument("--summary", help="also write the markdown summary to this path")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NotAUnitError as exc:
        extra = f" (fails modulo {exc.failing_prime})" if exc.failing_prime else ""
        err.write(f"not a unit: {exc}{extra}\n")
        return EXIT_NOT_UNIT
    except ResourceError as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return EXIT_RESOURCE
    except (ValidationError, ShapeError, PreconditionError, UnsupportedError) as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
