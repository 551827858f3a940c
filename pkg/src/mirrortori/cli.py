"""Command-line interface.

Subcommands operate on JSON documents (``--input``, path or ``-`` for
stdin) and emit a JSON report (``--json``, path or ``-`` for stdout).
Reports are byte-identical across runs for fixed inputs and flags; wall
time goes to stderr only.  Exit codes: 0 success, 1 a verification
failed, 2 malformed input or unusable arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .exact import QCMat
from .jsonio import (SchemaError, load_document, mat_to_json, parse_int_matrix,
                     parse_matrix, parse_vector, rat_to_json)
from .torus import DeltaShift, find_delta, mirror_partner
from .bundles import (BundleSpec, ConstructionFailed, build_unitary_set,
                      compute_rank, is_holomorphic, pullback_unitaries,
                      verify_pullback_cocycle)
from . import verify as verify_mod

DEFAULT_TOL = 1e-8


def _default_tol():
    env = os.environ.get("MIRRORTORI_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise SchemaError(f"MIRRORTORI_TOL is not a number: {env!r}")


def _emit(report, dest, exact):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


def _tprime_from_doc(doc):
    """Accept either an explicit base matrix or a shifted period matrix."""
    if "Tprime" in doc:
        return parse_matrix(doc["Tprime"], "Tprime"), None, None
    if "T" not in doc:
        raise SchemaError("document needs 'Tprime' or 'T'")
    t = parse_matrix(doc["T"], "T")
    if "delta" in doc:
        delta = parse_int_matrix(doc["delta"], "delta")
        shift = DeltaShift(delta=delta, T=t)
    else:
        shift = find_delta(t)
    dmat = QCMat.from_int(shift.delta)
    try:
        tprime = (dmat - t).inverse()
    except ValueError as e:
        raise SchemaError(f"T - delta is singular: {e}")
    return tprime, t, shift


def cmd_find_delta(args, exact):
    doc = load_document(args.input)
    if "T" not in doc:
        raise SchemaError("document needs a period matrix under 'T'")
    t = parse_matrix(doc["T"], "T")
    if t.rows != t.cols:
        raise SchemaError("'T' must be square")
    shift = find_delta(t, require_pd=not args.no_pd_check)
    det = (t - shift.as_qc()).det()
    report = {
        "command": "find-delta",
        "n": t.rows,
        "rank": t.rank(),
        "delta": [list(r) for r in shift.delta],
        "ones": shift.ones_count(),
        "det_shifted": [rat_to_json(det.re, exact), rat_to_json(det.im, exact)],
        "status": "pass",
    }
    return report, 0


def cmd_mirror(args, exact):
    doc = load_document(args.input)
    if "T" not in doc:
        raise SchemaError("document needs a period matrix under 'T'")
    t = parse_matrix(doc["T"], "T")
    if t.rows != t.cols:
        raise SchemaError("'T' must be square")
    shift = find_delta(t)
    partner = mirror_partner(t, shift)
    tprime = (shift.as_qc() - t).inverse()
    report = {
        "command": "mirror",
        "n": t.rows,
        "delta": [list(r) for r in shift.delta],
        "tau": mat_to_json(partner.tau, exact),
        "Tprime": mat_to_json(tprime, exact),
        "status": "pass",
    }
    return report, 0


def cmd_check_bundle(args, exact):
    doc = load_document(args.input)
    for key in ("r", "A"):
        if key not in doc:
            raise SchemaError(f"document needs '{key}'")
    if not isinstance(doc["r"], int) or doc["r"] < 1:
        raise SchemaError("'r' must be a positive integer")
    a = parse_int_matrix(doc["A"], "A")
    tprime, _, _ = _tprime_from_doc(doc)
    if tprime.rows != len(a):
        raise SchemaError("'A' and the period matrix disagree on size")
    rank = compute_rank(doc["r"], a)
    holo = is_holomorphic(a, tprime)
    report = {
        "command": "check-bundle",
        "r": doc["r"],
        "A": [list(row) for row in a],
        "holomorphic": holo,
        "elementary_divisors": list(rank.divisors),
        "rank": rank.rprime,
        "status": "pass" if holo else "fail",
    }
    return report, 0 if holo else 1


def cmd_build_unitaries(args, exact):
    doc = load_document(args.input)
    for key in ("r", "A"):
        if key not in doc:
            raise SchemaError(f"document needs '{key}'")
    if not isinstance(doc["r"], int) or doc["r"] < 1:
        raise SchemaError("'r' must be a positive integer")
    a = parse_int_matrix(doc["A"], "A")
    r = doc["r"]
    try:
        uset = build_unitary_set(r, a)
    except ConstructionFailed as e:
        return {"command": "build-unitaries", "r": r,
                "A": [list(row) for row in a],
                "error": str(e), "status": "fail"}, 1

    def monomials(ms):
        return [{"perm": list(m.perm), "root_exponents": list(m.exps)}
                for m in ms]

    ok = uset.verify(a)
    xi, theta = uset.det_phases_turns()
    report = {
        "command": "build-unitaries",
        "r": r,
        "A": [list(row) for row in a],
        "rank": uset.rprime,
        "matrix_size": uset.rprime,
        "root_order": uset.V[0].order if uset.V else 1,
        "V": monomials(uset.V),
        "U": monomials(uset.U),
        "det_phase_turns_V": [rat_to_json(x, exact) for x in xi],
        "det_phase_turns_U": [rat_to_json(x, exact) for x in theta],
        "relations_verified": ok,
        "status": "pass" if ok else "fail",
    }
    if "delta" in doc:
        delta = parse_int_matrix(doc["delta"], "delta")
        pulled = pullback_unitaries(uset, a, delta)
        cocycle = verify_pullback_cocycle(pulled, a, delta)
        report["pullback"] = {
            "V": monomials(pulled.V),
            "U": monomials(pulled.U),
            "cocycle_verified": cocycle,
        }
        if not cocycle:
            report["status"] = "fail"
    code = 0 if report["status"] == "pass" else 1
    return report, code


def cmd_verify(args, exact):
    name = args.suite
    if name not in verify_mod.SUITES + ("all",):
        raise SchemaError(
            f"unknown suite {name!r}; choose from "
            f"{', '.join(verify_mod.SUITES + ('all',))}")
    records = verify_mod.run_suite(name, seed=args.seed, samples=args.samples,
                                   tol=args.tol, bound=args.bound,
                                   delta_cases=args.delta_cases)
    failed = [r["name"] for r in records if r["status"] != "pass"]
    report = {
        "command": "verify",
        "suite": name,
        "config": {"seed": args.seed, "samples": args.samples,
                   "tol": args.tol, "bound": args.bound,
                   "delta_cases": args.delta_cases},
        "results": records,
        "failed": failed,
        "status": "pass" if not failed else "fail",
    }
    return report, 0 if not failed else 1


def cmd_enumerate(args, exact):
    if args.bound > 2:
        raise SchemaError("enumeration bound larger than 2 is not supported; "
                          "the search space grows too fast")
    specs = verify_mod.enumerate_specs(bound=args.bound, rmax=args.rmax)
    items = []
    for spec in specs:
        items.append({
            "r": spec.r,
            "A": [list(row) for row in spec.A],
            "rank": spec.rank.rprime,
            "elementary_divisors": list(spec.rank.divisors),
        })
    report = {
        "command": "enumerate",
        "bound": args.bound,
        "rmax": args.rmax,
        "count": len(items),
        "bundles": items,
        "status": "pass",
    }
    return report, 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="mirrortori",
        description="Mirror partners of complex tori with singular period "
                    "matrices: shifts, ranks, transition unitaries, and "
                    "verification suites.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", default="-",
                            help="JSON document path, or - for stdin")
        sp.add_argument("--json", dest="json_out", default="-",
                        help="report destination, or - for stdout")
        enc = sp.add_mutually_exclusive_group()
        enc.add_argument("--exact", dest="exact", action="store_true",
                         default=True,
                         help="rationals as p/q strings (default)")
        enc.add_argument("--float", dest="exact", action="store_false",
                         help="rationals as IEEE doubles")

    sp = sub.add_parser("find-delta",
                        help="integer shift making T - delta invertible")
    sp.add_argument("--no-pd-check", action="store_true",
                    help="skip the positive-definiteness check on Im T")
    common(sp)
    sp.set_defaults(func=cmd_find_delta)

    sp = sub.add_parser("mirror",
                        help="mirror partner data for a period matrix")
    common(sp)
    sp.set_defaults(func=cmd_mirror)

    sp = sub.add_parser("check-bundle",
                        help="holomorphy and rank of bundle data (r, A)")
    common(sp)
    sp.set_defaults(func=cmd_check_bundle)

    sp = sub.add_parser("build-unitaries",
                        help="transition unitaries for bundle data (r, A)")
    common(sp)
    sp.set_defaults(func=cmd_build_unitaries)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", help="suite name or 'all'")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=50,
                    help="sample points per intertwining check")
    sp.add_argument("--tol", type=float, default=None,
                    help="numerical tolerance (default: MIRRORTORI_TOL "
                         "or 1e-8)")
    sp.add_argument("--bound", type=int, default=1,
                    help="entry bound for enumerations")
    sp.add_argument("--delta-cases", type=int, default=500,
                    help="cases per rank class in the delta suite")
    common(sp, needs_input=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate",
                        help="holomorphic bundle data on the worked-example "
                             "torus with small entries")
    sp.add_argument("--bound", type=int, default=1,
                    help="max absolute entry of A (at most 2)")
    sp.add_argument("--rmax", type=int, default=2,
                    help="largest denominator r to include")
    common(sp, needs_input=False)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.monotonic()
    try:
        if getattr(args, "tol", None) is None and args.command == "verify":
            args.tol = _default_tol()
        report, code = args.func(args, args.exact)
    except SchemaError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (ValueError, NotImplementedError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    _emit(report, args.json_out, args.exact)
    sys.stderr.write(f"elapsed: {time.monotonic() - t0:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
