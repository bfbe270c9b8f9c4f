"""Command-line entry point.

Every subcommand except ``enumerate`` prints one JSON run report on stdout.
Exit status: 0 when the result is ``pass``, 1 when witnesses were found,
2 on usage or data errors (diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import analysis, fui
from .cube import event_from_json, event_to_json
from .enumeration import EnumConfig, enumerate_increasing, event_count
from .errors import NotFkg, ParseError, PosAssocError
from .measures import (
    ProductMeasure,
    fixed_point_measure,
    check_fkg,
    format_rational,
    measure_from_json,
    measure_to_json,
    parse_rationals,
)
from .parallel import default_workers

EXIT_PASS, EXIT_WITNESSES, EXIT_ERROR = 0, 1, 2


class UsageError(PosAssocError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc


def _load_measure(path: str):
    return measure_from_json(_load_json(path))


def _digest(obj) -> str:
    canon = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _input(params: dict, **files) -> dict:
    return {"params": params, "digest": _digest({"params": params, "files": files})}


def _report(command, inp, witnesses, stats, output=None) -> dict:
    rep = {
        "command": command,
        "input": inp,
        "result": "violations" if witnesses else "pass",
        "witnesses": witnesses,
        "stats": stats,
    }
    if output is not None:
        rep["output"] = output
    return rep


# --- subcommands -----------------------------------------------------------


def cmd_check_pa(args):
    m = _load_measure(args.measure)
    res = analysis.pa_check(m, workers=args.workers)
    witnesses = [] if res.passed else [res.violation.to_json()]
    return _report(
        "check-pa",
        _input({}, measure=measure_to_json(m)),
        witnesses,
        {"pairs_scanned": res.pairs_scanned},
    )


def cmd_check_fkg(args):
    m = _load_measure(args.measure)
    v = check_fkg(m)
    return _report(
        "check-fkg",
        _input({}, measure=measure_to_json(m)),
        [] if v is None else [v.to_json()],
        {"points": 1 << m.n},
    )


def cmd_check_abc(args):
    m = _load_measure(args.measure)
    if args.limit is not None and args.limit < 1:
        raise UsageError("--limit must be positive")
    res = analysis.abc_scan(m, limit=args.limit, workers=args.workers)
    return _report(
        "check-abc",
        _input({"limit": args.limit}, measure=measure_to_json(m)),
        [w.to_json() for w in res.witnesses],
        {"triples_scanned": res.triples_scanned},
    )


def cmd_harris_check(args):
    p = parse_rationals(args.p)
    A = event_from_json(_load_json(args.event_a))
    B = event_from_json(_load_json(args.event_b))
    res = analysis.harris_criterion(ProductMeasure(len(p), p), A, B)
    out = {"independent": res.independent, "z_disjoint": res.z_disjoint}
    witnesses = [] if res.agrees else [{"A": event_to_json(A), "B": event_to_json(B), **out}]
    return _report(
        "harris-check",
        _input({"p": [format_rational(v) for v in p]}, A=event_to_json(A), B=event_to_json(B)),
        witnesses,
        {"pairs_scanned": 1},
        out,
    )


def cmd_sahi_scan(args):
    grid = parse_rationals(args.grid)
    res = analysis.sahi_scan(args.n, grid, workers=args.workers)
    return _report(
        "sahi-scan",
        _input({"n": args.n, "grid": [format_rational(v) for v in grid]}),
        [r.to_json() for r in res.negatives],
        {"evaluations": res.evaluations},
        {"minimum": res.minimum.to_json()},
    )


def cmd_fixed_point_measure(args):
    m = measure_to_json(fixed_point_measure(args.n))
    if args.out:
        Path(args.out).write_text(_dump(m) + "\n")
    return _report("fixed-point-measure", _input({"n": args.n}), [], {}, m)


def cmd_realize_fui(args):
    m = _load_measure(args.measure)
    inp = _input({}, measure=measure_to_json(m))
    try:
        table = fui.build_thresholds(m)
    except NotFkg as exc:
        return _report("realize-fui", inp, [exc.violation.to_json()], {})
    r = fui.discretize(table)
    if args.out:
        Path(args.out).write_text(_dump(r.to_json()) + "\n")
    exact = fui.pushforward(r) == m.to_table()
    return _report(
        "realize-fui", inp, [], {"m": r.m, "pushforward_matches": exact}, r.to_json()
    )


def cmd_pushforward(args):
    r = fui.FuiRealization.from_json(_load_json(args.realization))
    m = fui.pushforward(r)
    return _report(
        "pushforward", _input({}, realization=r.to_json()), [], {"m": r.m}, measure_to_json(m)
    )


def cmd_fixture(args):
    q = parse_rationals(args.q)
    if len(q) != 3:
        raise UsageError("footnote2 fixture takes exactly three parameters")
    r = fui.footnote2_fixture(*q)
    return _report(
        "fixture",
        _input({"name": args.name, "q": [format_rational(v) for v in q]}),
        [],
        {"m": r.m},
        {"realization": r.to_json(), "pushforward": measure_to_json(fui.pushforward(r))},
    )


def cmd_random_fui(args):
    r = fui.random_fui(args.n, args.m, args.seed)
    return _report(
        "random-fui",
        _input({"n": args.n, "m": args.m, "seed": args.seed}),
        [],
        {"m": r.m},
        {"realization": r.to_json(), "pushforward": measure_to_json(fui.pushforward(r))},
    )


def cmd_enumerate(args, out):
    cfg = EnumConfig(args.n, include_empty=args.include_empty, include_full=args.include_full)
    if args.format == "count":
        out.write(f"{event_count(cfg)}\n")
        return
    for e in enumerate_increasing(cfg):
        out.write(json.dumps(event_to_json(e), separators=(",", ":")) + "\n")


def _summary(rep: dict) -> str:
    line = f"{rep['command']}: {rep['result']}"
    if rep["witnesses"]:
        line += f" ({len(rep['witnesses'])} witnesses)"
    return line


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None,
                        help="scan processes (default: $POSASSOC_WORKERS or CPU count)")
    common.add_argument("--quiet", action="store_true", help="print a one-line summary instead of JSON")
    common.add_argument("--timing", action="store_true",
                        help="add wall_ms and workers to stats (breaks byte-identical output)")

    ap = argparse.ArgumentParser(prog="posassoc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list increasing events")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--include-empty", action="store_true")
    p.add_argument("--include-full", action="store_true")
    p.add_argument("--format", choices=("json", "count"), default="json")

    for name, fn, helptext in (
        ("check-pa", cmd_check_pa, "positive association over all event pairs"),
        ("check-fkg", cmd_check_fkg, "lattice condition over all point pairs"),
        ("check-abc", cmd_check_abc, "search for ABC-pattern triples"),
        ("realize-fui", cmd_realize_fui, "realize a lattice-condition measure by Bernoullis"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--measure", required=True)
        p.set_defaults(func=fn)
        if name == "check-abc":
            p.add_argument("--limit", type=int, default=None)
        if name == "realize-fui":
            p.add_argument("--out", default=None)

    p = sub.add_parser("harris-check", parents=[common], help="independence vs disjoint affecting sets")
    p.add_argument("--p", required=True)
    p.add_argument("--event-a", required=True)
    p.add_argument("--event-b", required=True)
    p.set_defaults(func=cmd_harris_check)

    p = sub.add_parser("sahi-scan", parents=[common], help="grid scan of the three-event expression")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", required=True)
    p.set_defaults(func=cmd_sahi_scan)

    p = sub.add_parser("fixed-point-measure", parents=[common], help="fixed-point law of a random permutation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fixed_point_measure)

    p = sub.add_parser("pushforward", parents=[common], help="exact law of a realization")
    p.add_argument("--realization", required=True)
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("fixture", parents=[common], help="built-in realizations")
    p.add_argument("name", choices=("footnote2",))
    p.add_argument("--q", default="1/2,1/2,1/2")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("random-fui", parents=[common], help="seeded random realization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_random_fui)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            cmd_enumerate(args, out)
            return EXIT_PASS
        if args.workers is None:
            args.workers = default_workers()
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        start = time.perf_counter()
        rep = args.func(args)
        if args.timing:
            rep["stats"]["wall_ms"] = round((time.perf_counter() - start) * 1000)
            rep["stats"]["workers"] = args.workers
    except (PosAssocError, ValueError) as exc:
        err.write(f"posassoc {args.command}: error: {exc}\n")
        return EXIT_ERROR
    out.write((_summary(rep) if args.quiet else _dump(rep)) + "\n")
    return EXIT_PASS if rep["result"] == "pass" else EXIT_WITNESSES


if __name__ == "__main__":
    sys.exit(main())
