"""Command line interface.

Exit codes: 0 success (satisfiable where that matters), 1 unsatisfiable or
verification mismatch, 2 usage, format, or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .algebra import occurs_anywhere, occurs_at
from .catalog import get_pattern
from .engine import (
    EngineConfig,
    EngineError,
    parse_script,
    preprocess,
    resolve_rule,
)
from .fixtures import FixtureError, fixture, list_fixtures
from .formats import (
    FormatError,
    parse_instance,
    parse_pattern,
    serialize_instance,
    serialize_trace,
)
from .model import InstanceError, PatternError, is_solution
from .oracle import SearchSpaceError, count_solutions, solve
from .reconstruct import ReconstructionError, recover_one
from .trace import RULE_IDS, VAL_RULES, VAR_RULES


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_instance(path: str):
    return parse_instance(_read_text(path))


def _print_solution(prefix: str, sol: dict) -> None:
    body = " ".join(f"{v}={a}" for v, a in sorted(sol.items()))
    print(f"{prefix} {body}".rstrip())


def cmd_preprocess(args) -> int:
    inst = _load_instance(args.instance)
    rules = list(RULE_IDS)
    if args.rules:
        rules = [resolve_rule(tok) for tok in args.rules.split(",") if tok.strip()]
    if args.no_var:
        rules = [r for r in rules if r not in VAR_RULES]
    if args.no_val:
        rules = [r for r in rules if r not in VAL_RULES]
    script = ()
    if args.order != "canonical":
        if not args.order.startswith("explicit:"):
            raise EngineError("--order takes 'canonical' or 'explicit:<script>'")
        script = parse_script(args.order[len("explicit:"):])
    t0 = time.perf_counter()
    work, trace = preprocess(inst, EngineConfig(rules=tuple(rules), script=script))
    ms = (time.perf_counter() - t0) * 1000.0
    tally: dict[str, int] = {}
    acs = nvar = nval = 0
    for rec in trace.records:
        if rec.kind == "ac":
            acs += 1
            continue
        tally[rec.rule] = tally.get(rec.rule, 0) + 1
        if rec.kind == "var":
            nvar += 1
        else:
            nval += 1
    print(f"variables eliminated: {nvar}")
    print(f"values eliminated: {nval}")
    for rule in RULE_IDS:
        if tally.get(rule):
            print(f"  rule {rule}: {tally[rule]}")
    print(f"arc consistency removals: {acs}")
    wiped = work.has_wipeout()
    print(f"result: {'wipeout (unsatisfiable)' if wiped else 'reduced instance'}")
    print(f"time: {ms:.1f} ms")
    if args.output:
        _write_text(args.output, serialize_instance(work))
    if args.trace:
        _write_text(args.trace, serialize_trace(trace))
    return 1 if wiped else 0


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.reconstruct and not args.preprocess:
        raise EngineError("--reconstruct requires --preprocess")
    if not args.preprocess:
        sol = solve(inst)
        if sol is None:
            print("unsatisfiable")
            return 1
        _print_solution("solution", sol)
        return 0
    work, trace = preprocess(inst)
    sol = None if work.has_wipeout() else solve(work)
    if sol is None:
        print("unsatisfiable")
        return 1
    if args.reconstruct:
        full = recover_one(inst, trace, sol)
        _print_solution("solution", full)
    else:
        _print_solution("reduced solution", sol)
    return 0


def cmd_count(args) -> int:
    inst = _load_instance(args.instance)
    print(count_solutions(inst))
    return 0


def _letter_values(pattern) -> dict[str, int]:
    names: dict[str, int] = {}
    dval = pattern.distinguished_val
    if dval is not None:
        names["b"] = dval
    rest = sorted(v for v in pattern.existential if v != dval)
    for letter, value in zip("acdefgh", rest):
        names[letter] = value
    return names


def _parse_map(text: str, pattern) -> dict[int, int]:
    letters = _letter_values(pattern)
    mapping: dict[int, int] = {}
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        key, _, val = tok.partition("=")
        if not val:
            raise EngineError(f"malformed map entry {tok!r}")
        try:
            target = int(val)
        except ValueError:
            raise EngineError(f"malformed map entry {tok!r}") from None
        key = key.strip()
        if key.lstrip("-").isdigit():
            mapping[int(key)] = target
        elif key in letters:
            mapping[letters[key]] = target
        else:
            raise EngineError(f"unknown map key {key!r}")
    return mapping


def cmd_check(args) -> int:
    inst = _load_instance(args.instance)
    try:
        pat = get_pattern(args.pattern).pattern
    except KeyError:
        pat = parse_pattern(_read_text(args.pattern))
    mapping = _parse_map(args.map, pat) if args.map else {}
    if args.at is None:
        if pat.is_quantified:
            raise EngineError("quantified patterns need --at <var>")
        if mapping:
            raise EngineError("--map needs --at")
        wit = occurs_anywhere(pat, inst)
    else:
        wit = occurs_at(pat, inst, args.at, mapping)
    if wit is None:
        print("no occurrence")
        return 0
    print("occurrence")
    print("  vars: " + ", ".join(f"{p}->{q}" for p, q in sorted(wit.var_map.items())))
    for p in sorted(wit.val_maps):
        pairs = ", ".join(f"{a}->{b}" for a, b in sorted(wit.val_maps[p].items()))
        print(f"  values of {p}->{wit.var_map[p]}: {pairs}")
    return 0


def cmd_verify(args) -> int:
    all_ok = True
    for name in list_fixtures():
        fr = fixture(name)
        inst = fr.instance
        work, trace = preprocess(inst)
        sat_before = solve(inst) is not None
        if work.has_wipeout():
            ok = not sat_before
            detail = "wipeout"
        else:
            reduced = solve(work)
            ok = (reduced is not None) == sat_before
            detail = "satisfiable" if sat_before else "unsatisfiable"
            if ok and reduced is not None:
                full = recover_one(inst, trace, reduced)
                ok = is_solution(inst, full)
                detail = "satisfiable, solution reconstructed"
        all_ok &= ok
        print(f"{'ok' if ok else 'MISMATCH'} {fr.name}: {detail}")
    return 0 if all_ok else 1


def _num(tok: str):
    try:
        return int(tok)
    except ValueError:
        try:
            return float(tok)
        except ValueError:
            raise FixtureError(f"bad fixture parameter {tok!r}") from None


def cmd_gen(args) -> int:
    params = tuple(_num(tok) for tok in args.params)
    fr = fixture(args.fixture, params)
    _write_text(args.output, serialize_instance(fr.instance))
    return 0


def cmd_report(args) -> int:
    from .report import run_report

    rows = run_report(args.csv, args.png)
    print(f"wrote {args.csv} ({len(rows)} rows) and {args.png}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cspprune",
        description="Binary CSP preprocessing by forbidden-pattern "
                    "variable and value elimination.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("preprocess", help="eliminate variables and values")
    sp.add_argument("instance", help="instance file, or - for stdin")
    sp.add_argument("--rules", help="comma-separated rule names to enable")
    sp.add_argument("--no-var", action="store_true",
                    help="disable variable elimination rules")
    sp.add_argument("--no-val", action="store_true",
                    help="disable value elimination rules")
    sp.add_argument("--order", default="canonical",
                    help="'canonical' or 'explicit:<directives>'")
    sp.add_argument("-o", "--output", help="write the reduced instance here")
    sp.add_argument("--trace", help="write the elimination trace here")
    sp.set_defaults(func=cmd_preprocess)

    sp = sub.add_parser("solve", help="find one solution by backtracking")
    sp.add_argument("instance")
    sp.add_argument("--preprocess", action="store_true",
                    help="reduce the instance before searching")
    sp.add_argument("--reconstruct", action="store_true",
                    help="map the reduced solution back to the original")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("count", help="count all solutions by backtracking")
    sp.add_argument("instance")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("check", help="test whether a pattern occurs")
    sp.add_argument("instance")
    sp.add_argument("--pattern", required=True,
                    help="catalog pattern name or pattern file path")
    sp.add_argument("--at", type=int, help="anchor variable")
    sp.add_argument("--map", help="existential value map, e.g. a=0,b=1")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify",
                        help="preprocess every fixture and compare against "
                             "brute-force search")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="emit a named fixture instance")
    sp.add_argument("fixture")
    sp.add_argument("params", nargs="*", help="fixture parameters")
    sp.add_argument("-o", "--output", help="output path (default stdout)")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("report",
                        help="preprocess a corpus; write CSV and chart")
    sp.add_argument("--csv", default="report.csv")
    sp.add_argument("--png", default="report.png")
    sp.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, InstanceError, PatternError, EngineError,
            FixtureError, ReconstructionError, SearchSpaceError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
