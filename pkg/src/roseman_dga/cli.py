"""Command-line front end.

Exit codes: 0 on success (or a true comparison), 1 on a checked failure
(validation violation, d^2 != 0, relabel mismatch, count mismatch), 2 on
usage or I/O errors.  All subcommands write deterministic text reports;
--out additionally writes the machine-readable dump.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import fixtures
from .diagram import DiagramError, parse_diagram, serialize_diagram, validate_diagram
from .differential import VARIANTS, build_dga, check_d_squared, dump_dga, parse_dga_dump
from .invariants import (BudgetExceeded, characteristic_presentation, count_algebra_maps,
                         fingerprint, hr0_presentation)
from .moves import MoveError, MoveScript, dga_equal_up_to_relabel, run_move_script


def _load_diagram(path: str):
    if path.startswith("fixture:"):
        return fixtures.load_fixture(path.split(":", 1)[1])
    with open(path) as fh:
        return parse_diagram(fh.read())


def _write_out(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)


def _budget(args) -> int:
    env = os.environ.get("ROSEMAN_BUDGET")
    if env:
        return int(env)
    return args.budget


def cmd_validate(args):
    d = _load_diagram(args.diagram)
    report = validate_diagram(d)
    for line in report:
        print(line)
    if report:
        return 1
    print("valid %s: %d sheets, %d curves, %d triples, %d branches"
          % (d.name, d.sheet_count, len(d.curves), len(d.triples), len(d.branches)))
    return 0


def cmd_build(args):
    d = _load_diagram(args.diagram)
    dga = build_dga(d, args.variant)
    text = dump_dga(dga)
    _write_out(args, text)
    if not args.out:
        sys.stdout.write(text)
    return 0


def cmd_check_d2(args):
    d = _load_diagram(args.diagram)
    variants = [args.variant] if args.variant else list(VARIANTS)
    bad = 0
    for v in variants:
        dga = build_dga(d, v)
        failures = check_d_squared(dga)
        if failures:
            bad += 1
            for g, residue in failures:
                print("FAIL %s variant=%s d(d(%s)) = %s" % (d.name, v, g.name, residue),
                      file=sys.stderr)
        else:
            print("ok %s variant=%s (%d generators)" % (d.name, v, len(dga.diff)))
    return 1 if bad else 0


def cmd_run_script(args):
    d = _load_diagram(args.diagram)
    dga = build_dga(d, args.variant)
    with open(args.script) as fh:
        script = MoveScript.parse(fh.read())
    try:
        dga, trace = run_move_script(dga, script, strict=not args.no_strict)
    except MoveError as exc:
        for line in getattr(exc, "trace", []):
            print(line, file=sys.stderr)
        print("error: %s" % exc, file=sys.stderr)
        return 1
    for line in trace:
        print(line)
    _write_out(args, dump_dga(dga))
    return 0


def cmd_compare(args):
    with open(args.left) as fh:
        a = parse_dga_dump(fh.read())
    with open(args.right) as fh:
        b = parse_dga_dump(fh.read())
    mapping = {}
    for tok in (args.map or "").replace(",", " ").split():
        src, dst = tok.split("=", 1)
        mapping.setdefault(src[0], {})[int(src[1:])] = int(dst[1:])
    equal, why = dga_equal_up_to_relabel(a, b, mapping)
    if equal:
        print("equal")
        return 0
    print("different: %s" % why, file=sys.stderr)
    return 1


def cmd_count(args):
    d = _load_diagram(args.diagram)
    dga = build_dga(d, args.variant)
    pres = hr0_presentation(dga) if args.hr0 else characteristic_presentation(dga)
    try:
        mc = count_algebra_maps(pres, args.p, _budget(args))
    except BudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    print(mc.report_line())
    for deg in sorted(mc.layer_report):
        st = mc.layer_report[deg]
        print("layer deg=%d solves=%d nullities=%s"
              % (deg, st["solves"], ",".join(map(str, st["nullity"]))))
    _write_out(args, mc.report_line() + "\n")
    return 0 if mc.exact else 1


def cmd_hr0(args):
    d = _load_diagram(args.diagram)
    dga = build_dga(d, args.variant)
    text = hr0_presentation(dga).dump()
    _write_out(args, text)
    if not args.out:
        sys.stdout.write(text)
    return 0


def cmd_fingerprint(args):
    d = _load_diagram(args.diagram)
    primes = tuple(int(p) for p in args.primes.split(","))
    dga = build_dga(d, args.variant)
    pres_fn = hr0_presentation if args.hr0 else characteristic_presentation
    fp = fingerprint(dga, primes, _budget(args), presentation=pres_fn)
    text = fp.report() + "\n"
    _write_out(args, text)
    sys.stdout.write(text)
    return 0 if all(mc.exact for mc in fp.counts.values()) else 1


def make_parser():
    ap = argparse.ArgumentParser(prog="roseman-dga", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, help="check diagram incidence invariants")
    p.add_argument("diagram")

    p = add("build", cmd_build, help="build one variant's DGA and dump it")
    p.add_argument("diagram")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--out")

    p = add("check-d2", cmd_check_d2, help="verify d(d(g)) = 0 for every generator")
    p.add_argument("diagram")
    p.add_argument("--variant", choices=VARIANTS)

    p = add("run-script", cmd_run_script, help="apply a move script to a diagram's DGA")
    p.add_argument("diagram")
    p.add_argument("script")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--no-strict", action="store_true")
    p.add_argument("--out")

    p = add("compare", cmd_compare, help="compare two DGA dumps up to relabeling")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--map", default="", help="label map, e.g. 's2=s1 s3=s2 c1=c1'")

    p = add("count", cmd_count, help="count algebra maps to F_p")
    p.add_argument("diagram")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.add_argument("--hr0", action="store_true")
    p.add_argument("--out")

    p = add("hr0", cmd_hr0, help="dump the degree-0 homology presentation")
    p.add_argument("diagram")
    p.add_argument("--variant", choices=VARIANTS, default="--")
    p.add_argument("--out")

    p = add("fingerprint", cmd_fingerprint, help="map counts over a list of primes")
    p.add_argument("diagram")
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.add_argument("--hr0", action="store_true")
    p.add_argument("--out")

    return ap


def main(argv=None):
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (OSError, DiagramError, KeyError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
