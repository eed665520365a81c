"""Command-line interface.  Exit codes: 0 ok, 1 a check failed, 2 usage error."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .cases import CASES, parse_scenario
from .kernels import analyze, eigen_setup, find_loops, orbit_decompose
from .neighborhood import (
    CURVES,
    VERIFY_LIMIT,
    elliptic_neighborhood,
    export,
    neighbor_table,
    table_dict,
    verify_tables,
    vertex_census,
)


def _emit(args, data: bytes):
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())


def _dump(args, obj: dict, rows: list[dict] | None = None) -> bytes:
    if args.format == "json":
        return (json.dumps(obj, indent=2) + "\n").encode()
    rows = rows or [obj]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue().encode()


def cmd_classify(args) -> int:
    setup = eigen_setup(args.case, args.ell, args.p)
    an = analyze(args.case, args.ell)
    counts: dict[str, int] = {}
    for lab in an.labels:
        counts[lab] = counts.get(lab, 0) + 1
    orbits = [{"representative": str(o.representative), "size": len(o.orbit),
               "stabilizer": o.stabilizer_order, "class": o.class_label} for o in orbit_decompose(setup)]
    obj = {"case": args.case, "ell": args.ell, "t": setup.t, "lambda": None if setup.lam is None else str(setup.lam),
           "classes": dict(sorted(counts.items())), "orbits": orbits}
    _emit(args, _dump(args, obj, orbits))
    return 0


def cmd_loops(args) -> int:
    setup = eigen_setup(args.case, args.ell, args.p)
    an = analyze(args.case, args.ell)
    idx = setup.space.index
    loops = [{"kernel": str(k), "class": an.labels[idx[k]]}
             for k in sorted(find_loops(setup, args.scenario), key=str)]
    obj = {"case": args.case, "ell": args.ell, "scenario": None if args.scenario is None else str(args.scenario),
           "loops": loops}
    _emit(args, _dump(args, obj, loops))
    return 0


def cmd_table(args) -> int:
    eigen_setup(args.case, args.ell, args.p)
    _emit(args, export(neighbor_table(args.case, args.ell, args.scenario), args.format))
    return 0


def cmd_verify(args) -> int:
    report = verify_tables(args.ell, workers=args.workers)
    _emit(args, export(report, args.format))
    failed = [c for c in report if not c.passed]
    print(f"{len(report) - len(failed)}/{len(report)} checks passed", file=sys.stderr)
    return 1 if failed else 0


def cmd_census(args) -> int:
    _emit(args, export(vertex_census(args.p), args.format))
    return 0


def cmd_elliptic(args) -> int:
    _emit(args, export(elliptic_neighborhood(args.case, args.ell, args.p), args.format))
    return 0


def cmd_concrete(args) -> int:
    from .curves import census_agrees, concrete_kernel_census

    census = concrete_kernel_census(args.case, args.p, args.ell)
    ok = census_agrees(census)
    obj = table_dict(neighbor_table(args.case, args.ell))
    obj["p"] = args.p
    obj["concrete"] = {"kernels": census.n_kernels, "orbits": len(census.orbits),
                       "classes": dict(sorted(census.class_counts.items())), "loops": len(census.loops)}
    obj["concrete_agrees"] = ok
    if args.format == "csv":
        rows = [{"case": args.case, "ell": args.ell, "class": c, "kernels": n, "concrete_agrees": ok}
                for c, n in sorted(census.class_counts.items())]
        _emit(args, _dump(args, obj, rows))
    else:
        _emit(args, _dump(args, obj))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superspecial", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, case=True, ell=True, p_flag=False, scenario=False, curves=False):
        if case:
            choices = CURVES if curves else CASES
            p.add_argument("--case", required=True, choices=choices)
        if ell:
            p.add_argument("--ell", type=int, required=True)
        p.add_argument("--p", type=int, required=p_flag, default=None)
        if scenario:
            p.add_argument("--scenario", type=parse_scenario, default=None,
                           help="PairDistinct only: none, ell or d=<int>")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write to this file instead of stdout")

    common(sub.add_parser("classify", help="kernel classes and orbits"))
    common(sub.add_parser("loops", help="loop kernels"), scenario=True)
    common(sub.add_parser("table", help="neighbor table"), scenario=True)
    v = sub.add_parser("verify", help="check all tables for primes ell <= --ell")
    common(v, case=False)
    v.add_argument("--workers", type=int, default=1)
    common(sub.add_parser("census", help="vertex census at p"), case=False, ell=False, p_flag=True)
    common(sub.add_parser("elliptic", help="neighbors of E1728 or E0 in the elliptic graph"),
           p_flag=True, curves=True)
    common(sub.add_parser("concrete", help="explicit-curve census against the classifier"), p_flag=True)
    return ap


COMMANDS = {
    "classify": cmd_classify, "loops": cmd_loops, "table": cmd_table, "verify": cmd_verify,
    "census": cmd_census, "elliptic": cmd_elliptic, "concrete": cmd_concrete,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify" and args.ell > VERIFY_LIMIT:
        ap.error(f"--ell must be at most {VERIFY_LIMIT} for verify")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
