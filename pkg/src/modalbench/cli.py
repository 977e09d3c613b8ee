"""Command-line front end.

    modalbench enumerate [M]         operator, tense and Weaver counts
    modalbench certify {alpha,beta,all}
    modalbench analyze PATH          lattice verdict for an edge-list poset
    modalbench property-suite        randomized invariant suites

Exit codes: 0 every check passed, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_M = 3


class UsageError(Exception):
    pass


def _record(name: str, anchor: str, inputs, verdict: str, witness=None) -> dict:
    return {"name": name, "anchor": anchor, "inputs": inputs, "verdict": verdict, "witness": witness}


def build_report(command: list[str], checks: list[dict], started: float | None) -> dict:
    summary = {v: sum(c["verdict"] == v for c in checks) for v in ("pass", "fail", "unknown")}
    summary["total"] = len(checks)
    report = {
        "command": command,
        "checks": checks,
        "summary": summary,
        "time_ms": None if started is None else round((time.perf_counter() - started) * 1000, 3),
    }
    # normalise tuples and other JSON-equivalent values so the report round-trips
    return json.loads(json.dumps(report, sort_keys=True))


# ---------------------------------------------------------------- commands


def cmd_enumerate(args) -> list[dict]:
    from .algebra import enumerate_necessity_ops
    from .tense import count_weaver_relations, tense_necessity_ops

    if args.max_m > MAX_M:
        raise UsageError(f"--max-m is capped at {MAX_M}")
    ms = [args.m] if args.m is not None else list(range(args.max_m + 1))
    if any(m < 0 or m > args.max_m for m in ms):
        raise UsageError(f"m must lie in [0, {args.max_m}] (raise --max-m up to {MAX_M})")
    checks = []
    for m in ms:
        brute = len(enumerate_necessity_ops(m, method="brute"))
        via_relations = len(enumerate_necessity_ops(m, method="relations"))
        tno = len(tense_necessity_ops(m))
        weaver = count_weaver_relations(m)
        expected = 1 << (m * m)
        counts = {"NO": brute, "NO_from_relations": via_relations, "TNO": tno, "weaver": weaver,
                  "relations": expected}
        ok = brute == via_relations == tno == weaver == expected
        checks.append(_record(
            f"operator counts for {m} atoms",
            "necessity operators, tense necessity operators and meet-compatible relations "
            "are each in bijection with relations on the atoms",
            {"m": m}, "pass" if ok else "fail", counts))
    return checks


def _certificate_checks(cert, anchor: str) -> list[dict]:
    return [
        _record(f"{cert.name}: {s.step}", anchor, s.inputs, s.verdict,
                {"law": s.law, "value": s.value})
        for s in cert.steps
    ]


def cmd_certify(args) -> list[dict]:
    from .alpha import certify_counterexamples
    from .beta import certify_meet_defect
    from .tense import interior_bridge_check

    checks = []
    if args.target in ("alpha", "all"):
        checks += _certificate_checks(
            certify_counterexamples(args.truncation),
            "continuous relations on the one-point compactification of N form neither a lattice "
            "nor a distributive semilattice")
    if args.target in ("beta", "all"):
        checks += _certificate_checks(
            certify_meet_defect(),
            "on the Stone-Cech compactification of N a meet of continuous relations can differ "
            "from their intersection")
    if args.target == "all":
        checks += _certificate_checks(
            interior_bridge_check(min(args.max_m, 2), args.truncation),
            "tense necessity operators correspond to interior relations")
    return checks


def cmd_property_suite(args) -> list[dict]:
    from .properties import run_all

    checks = []
    for res in run_all(seed=args.seed, cases=args.cases):
        checks.append(_record(
            res.name, "randomized invariant suite",
            {"seed": args.seed, "cases": res.cases, "replayed": res.replayed},
            "pass" if res.ok else "fail",
            {"passed": res.passed, "counterexample": res.failure}))
    return checks


def run_analyze(args) -> int:
    from .lattice import PosetError, PosetParseError, analyze, parse_edge_list

    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    try:
        poset = parse_edge_list(text)
        verdict = analyze(poset)
    except PosetParseError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PosetError, ValueError) as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(verdict.to_dict(), sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--no-time", action="store_true", help="report time_ms as null")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--cases", type=int, default=1000, help="cases per randomized suite")
    common.add_argument("--truncation", type=int, default=1000, help="depth of the dense truncation oracle")
    common.add_argument("--max-m", type=int, default=2, help="largest atom count to enumerate (<= 3)")

    parser = argparse.ArgumentParser(prog="modalbench", description="Finite and symbolic checks for modal operators.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("enumerate", parents=[common], help="count operators and relations")
    p.add_argument("m", nargs="?", type=int, default=None)
    p = sub.add_parser("certify", parents=[common], help="run certificate bundles")
    p.add_argument("target", choices=("alpha", "beta", "all"))
    p = sub.add_parser("analyze", parents=[common], help="lattice verdict for an edge-list poset")
    p.add_argument("path")
    sub.add_parser("property-suite", parents=[common], help="randomized invariant suites")
    return parser


def _print_human(report: dict) -> None:
    for c in report["checks"]:
        print(f"{c['verdict'].upper():7} {c['name']}")
    s = report["summary"]
    line = f"{s['pass']} passed, {s['fail']} failed, {s['unknown']} unknown"
    if report["time_ms"] is not None:
        line += f" in {report['time_ms'] / 1000:.2f}s"
    print(line)
    for c in report["checks"]:
        if c["verdict"] == "fail":
            print(f"failure in {c['name']}: {json.dumps(c['witness'], sort_keys=True)}")


COMMANDS = {"enumerate": cmd_enumerate, "certify": cmd_certify, "property-suite": cmd_property_suite}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.truncation < 1 or args.cases < 0:
        print("error: --truncation must be >= 1 and --cases >= 0", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "analyze":
        return run_analyze(args)
    started = None if args.no_time else time.perf_counter()
    try:
        checks = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = build_report(argv, checks, started)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        _print_human(report)
    return EXIT_FAIL if report["summary"]["fail"] else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
