"""Command-line front end: ``nawelch {verify,fu-check,search,classical,gen}``.

Exit codes: verify 0 holds, 2 hypothesis-unverified, 3 fails, 4 precision
exhausted; fu-check 0 pass, 5 witness; search 6 ceiling exceeded; 1 for
any input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from . import classical
from .frames import SystemFileError, random_system, system_from_json, system_to_json
from .linalg import BilinearForm, DimensionMismatch
from .scalars import BackendMismatch, LaurentField, PadicField, PrecisionError, fu_search
from .search import CeilingExceeded, nearest_miss_report, search, space_from_json
from .welch import FAILS, HOLDS, verify_higher_order, verify_hilbert

log = logging.getLogger("nawelch")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNVERIFIED = 2
EXIT_FAILS = 3
EXIT_PRECISION = 4
EXIT_WITNESS = 5
EXIT_CEILING = 6


def _dump(obj, out: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


def _backend(name: str, precision: int | None):
    kw = {} if precision is None else {"precision": precision}
    if name == "laurent":
        return LaurentField(**kw)
    try:
        return PadicField(int(name.removeprefix("padic:").removeprefix("p=")), **kw)
    except ValueError:
        raise ValueError(f"backend must be 'laurent', a prime, or 'padic:<prime>', got {name!r}") from None


def cmd_verify(args) -> int:
    system = system_from_json(_load(args.system), args.precision)
    if args.hilbert:
        form = system.form if system.form is not None else BilinearForm.standard(system.field, system.d)
        report = verify_hilbert(system, args.order, form)
    else:
        report = verify_higher_order(system, args.order)
    log.info("verify: n=%d d=%d m=%d path=%s verdict=%s", system.n, system.d, args.order, report.path, report.verdict)
    _dump(report.to_json(), args.out)
    return {HOLDS: EXIT_OK, FAILS: EXIT_FAILS}.get(report.verdict, EXIT_UNVERIFIED)


def cmd_fu_check(args) -> int:
    fld = _backend(args.backend, args.precision)
    laurent = isinstance(fld, LaurentField)
    bound = args.digit_bound if args.digit_bound is not None else (3 if laurent else fld.prime - 1)
    length = args.length
    if bound < 1 or length < 1:
        raise ValueError("bounds must be at least 1")
    res = fu_search(fld, bound, length)
    _dump(
        {
            "backend": fld.config(),
            "digit_bound": bound,
            "result": "pass" if res is None else "witness",
            "tuple_length_bound": length,
            "witness": None if res is None else res.to_json(),
        },
        args.out,
    )
    return EXIT_OK if res is None else EXIT_WITNESS


def cmd_search(args) -> int:
    space = space_from_json(_load(args.space), args.precision)
    if args.seed is not None:
        space = replace(space, seed=args.seed)
    checkpoint = _load(args.resume) if args.resume else None
    log.info("search: %d candidates, mode %s", space.size, space.mode)
    outcome = search(space, checkpoint, args.stop_after)
    log.info("search: %s at position %d", outcome.status, outcome.position)
    if args.checkpoint:
        _dump(outcome.checkpoint, args.checkpoint)
    result = outcome.to_json()
    if args.report:
        result["nearest_miss_report"] = [
            {**row, "gap": "inf" if row["gap"] == float("inf") else row["gap"]} for row in nearest_miss_report(outcome)
        ]
    _dump(result, args.out)
    return EXIT_OK


def _read_frame(obj, field: str | None):
    if isinstance(obj, dict):
        field = field or obj.get("field", "R")
        rows = obj["vectors"]
    else:
        field, rows = field or "R", obj
    if field == "C":
        rows = [[complex(x[0], x[1]) if isinstance(x, list) else complex(x) for x in r] for r in rows]
    return classical.ClassicalFrame(rows, field)


def cmd_classical(args) -> int:
    frame = _read_frame(_load(args.frame), args.field)
    m = args.order
    _dump(
        {
            "companion": classical.companion_bounds(frame),
            "d": frame.d,
            "field": frame.field,
            "m": m,
            "n": frame.n,
            "welch_max": classical.welch_max_bound(frame, m),
            "welch_sum": classical.welch_sum_bound(frame, m),
        },
        args.out,
    )
    return EXIT_OK


def cmd_gen(args) -> int:
    fld = _backend(args.backend, args.precision)
    cons = [c for c in (args.constraints or "").split(",") if c]
    system = random_system(fld, args.d, args.n, args.seed, cons, order=args.order)
    _dump(system_to_json(system), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nawelch", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="relative precision N")
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="evaluate a Welch bound on a system file")
    p.add_argument("system")
    p.add_argument("--order", "-m", type=int, default=1)
    p.add_argument("--hilbert", action="store_true", help="use f_g = <., tau_g> from the file's form (default: dot product)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fu-check", parents=[common], help="search small tuples violating the sum-of-squares law")
    p.add_argument("backend", help="a prime, 'padic:<p>' or 'laurent'")
    p.add_argument("--digit-bound", type=int, default=None)
    p.add_argument("--length", type=int, default=3)
    p.set_defaults(func=cmd_fu_check)

    p = sub.add_parser("search", parents=[common], help="search a space for Zauner-type witnesses")
    p.add_argument("space")
    p.add_argument("--seed", type=int, default=None, help="override the space's seed")
    p.add_argument("--resume", default=None, help="checkpoint file to continue from")
    p.add_argument("--checkpoint", default=None, help="write a checkpoint here")
    p.add_argument("--stop-after", type=int, default=None, help="stop after this many steps")
    p.add_argument("--report", action="store_true", help="include the nearest-miss table")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classical", parents=[common], help="real/complex Welch and companion bounds")
    p.add_argument("frame")
    p.add_argument("--order", "-m", type=int, default=1)
    p.add_argument("--field", choices=("R", "C"), default=None)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("gen", parents=[common], help="generate a random system file")
    p.add_argument("--backend", required=True, help="a prime, 'padic:<p>' or 'laurent'")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constraints", default="", help="comma list of normalized,unit-norm,tight,diagonalizable")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", "-m", type=int, default=1)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except PrecisionError as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except CeilingExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (OSError, json.JSONDecodeError, SystemFileError, BackendMismatch, DimensionMismatch,
            ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
