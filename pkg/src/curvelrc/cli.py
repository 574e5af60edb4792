"""Command-line front end.

Exit codes:
  0  success (verify: distance exact or certified and all checks pass)
  1  usage or unexpected error
  2  verification failed
  3  distance abstained (all other checks passed)
  4  recipe parameter error
  5  artifact could not be read
"""
from __future__ import annotations

import argparse
import json
import sys

from . import artifact, recipes
from .errors import ArtifactError, LRCError
from .repairsim import run_campaign
from .verify import DEFAULT_BUDGET, verify_code

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_ABSTAINED, EXIT_PARAM, EXIT_ARTIFACT = range(6)

FAMILY_ARGS = {
    "eff-involution": ("q", "h", "t", "m", "variant"),
    "eff-noninvolution": ("q", "t", "m", "variant"),
    "genus2-43": ("q", "t", "m"),
    "hyperelliptic": ("g", "q", "gprime", "t", "m"),
    "normtrace": ("qbar", "s", "b", "c", "bprime", "t", "m"),
    "hermitian": ("qbar", "s", "b", "bprime", "t", "m"),
}


def _plan_from_args(a):
    need = FAMILY_ARGS[a.family]
    missing = [n for n in need if getattr(a, n) is None and n != "variant"]
    if missing:
        raise SystemExit(f"--family {a.family} needs --{' --'.join(missing)}")
    mod = tuple(int(c) for c in a.modulus.split(",")) if a.modulus else None
    if a.family == "eff-involution":
        return recipes.eff_involution_plan(a.q, a.h, a.t, a.m, a.variant or "r3", modulus=mod)
    if a.family == "eff-noninvolution":
        return recipes.eff_noninvolution_plan(a.q, a.t, a.m, a.variant or "r3", modulus=mod)
    if a.family == "genus2-43":
        return recipes.genus2_plan(a.q, a.t, a.m, modulus=mod)
    if a.family == "hyperelliptic":
        return recipes.hyperell_plan(a.g, a.q, a.gprime, a.t, a.m, modulus=mod)
    if a.family == "normtrace":
        return recipes.normtrace_plan(a.qbar, a.s, a.b, a.c, a.bprime, a.t, a.m, modulus=mod)
    return recipes.hermitian_plan(a.qbar, a.s, a.b, a.bprime, a.t, a.m, modulus=mod)


def cmd_construct(a) -> int:
    try:
        plan = _plan_from_args(a)
        code = recipes.build_code(plan)
    except LRCError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARAM
    report = verify_code(code, distance=a.distance, budget=a.budget) if a.distance != "none" else None
    if a.out:
        artifact.save(code, a.out, report)
    print(f"[{code.n},{code.k},{code.d_designed}]_{code.q} ({code.r},{code.delta})-LRC, "
          f"ell = {plan.ell}, usable groups = {plan.usable}")
    if report is not None:
        print(report.summary())
    return EXIT_OK


def _exit_for(report) -> int:
    v = report.verdict
    if v == "failed" or (report.singleton_defect not in (0, None)):
        return EXIT_FAILED
    if v == "abstained":
        return EXIT_ABSTAINED
    return EXIT_OK


def cmd_verify(a) -> int:
    try:
        code = artifact.load(a.artifact)
    except (ArtifactError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARTIFACT
    report = verify_code(code, distance=a.distance, budget=a.budget)
    if a.json:
        print(json.dumps(report.to_dict(), indent=1))
    else:
        print(report.summary())
        for note in report.notes:
            print(f"  note: {note}")
    return _exit_for(report)


def cmd_repair_sim(a) -> int:
    try:
        code = artifact.load(a.artifact)
        with open(a.artifact) as fh:
            embedded = json.load(fh).get("verification", {}).get("verdict")
    except (ArtifactError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARTIFACT
    if embedded not in ("verified", "certified") and not a.force:
        print("error: artifact carries no passing verification; use --force", file=sys.stderr)
        return EXIT_USAGE
    if a.erasures > code.delta - 1 and not a.force:
        print(f"error: more than delta - 1 = {code.delta - 1} erasures; use --force", file=sys.stderr)
        return EXIT_USAGE
    sc = run_campaign(code, a.erasures, a.trials, a.seed, force=True)
    print(json.dumps(sc.to_dict(), indent=1, default=list))
    return EXIT_OK


def cmd_info(a) -> int:
    try:
        plan = _plan_from_args(a)
    except LRCError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARAM
    C = plan.curve
    info = {
        "family": a.family,
        "q": C.field.q,
        "rational_places": len(C.places()),
        "genus": C.genus,
        "r": plan.r,
        "delta": plan.delta,
        "ell": plan.ell,
        "usable_groups": plan.usable,
        "t_range": [1, plan.usable - 1],
        "group_size": len(plan.groups[0]) if plan.groups else None,
    }
    print(json.dumps(info, indent=1))
    return EXIT_OK


def _family_flags(p):
    p.add_argument("--family", required=True, choices=sorted(FAMILY_ARGS))
    for name in ("q", "h", "t", "m", "g", "gprime", "qbar", "s", "b", "c", "bprime"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--variant", choices=["r3", "r2"])
    p.add_argument("--modulus", help="field modulus coefficients c0,...,cs")


def build_parser():
    ap = argparse.ArgumentParser(prog="curvelrc", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("construct", help="build a code and write an artifact")
    _family_flags(c)
    c.add_argument("--out")
    c.add_argument("--distance", choices=["auto", "exhaustive", "certify", "none"], default="auto")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_construct)
    v = sub.add_parser("verify", help="re-verify an artifact")
    v.add_argument("artifact")
    v.add_argument("--distance", choices=["auto", "exhaustive", "certify"], default="auto")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    r = sub.add_parser("repair-sim", help="run a local repair campaign")
    r.add_argument("artifact")
    r.add_argument("--erasures", type=int, required=True)
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--force", action="store_true")
    r.set_defaults(func=cmd_repair_sim)
    i = sub.add_parser("info", help="family parameters without building the code")
    _family_flags(i)
    i.set_defaults(func=cmd_info)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
