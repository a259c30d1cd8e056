"""Command-line entry point.

Exit status: 0 on success, 1 when ``--assert`` is given and the verdict is
negative, 2 on usage, file or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .codes import code_from_json, code_to_json, is_ssc, read_code, write_code
from .construction import build_2ssm, expurgate_to_ssc, known_bounds, matrix_rate, random_code, rate_bound
from .decoding import decode_dm, decode_sm_table, decode_ssm, run_campaign
from .errors import StrongSepError
from .matrix import BooleanVector, matrix_from_json, matrix_to_json, read_matrix, write_matrix
from .properties import check_property
from .search import search_max, verify_certificate


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load_matrix(path: str):
    text = _read_text(path)
    try:
        return matrix_from_json(text) if _is_json(text) else read_matrix(text)
    except StrongSepError as exc:
        raise UsageError(f"malformed matrix file {path}: {exc}") from None


def _load_code(path: str):
    text = _read_text(path)
    try:
        return code_from_json(text) if _is_json(text) else read_code(text)
    except StrongSepError as exc:
        raise UsageError(f"malformed code file {path}: {exc}") from None


def _emit(obj, args) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
    elif args.pretty and isinstance(obj, dict):
        width = max(len(k) for k in obj) if obj else 0
        for k in sorted(obj):
            v = obj[k]
            text = v.rstrip("\n").replace("\n", "\n" + " " * (width + 2)) if isinstance(v, str) else json.dumps(v, sort_keys=True)
            sys.stdout.write(f"{k.ljust(width)}  {text}\n")
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_verify(args) -> int:
    if args.property == "ssc":
        code = _load_code(args.file)
        report = is_ssc(code, args.d, method="bruteforce" if args.bruteforce else "fast")
    else:
        m = _load_matrix(args.file)
        report = check_property(m, args.property, args.d, bruteforce=args.bruteforce)
    _emit(report.to_json(), args)
    return 1 if args.assert_ and not report.holds else 0


def cmd_decode(args) -> int:
    m = _load_matrix(args.file)
    try:
        r = BooleanVector.from_string(args.outcome)
    except ValueError:
        raise UsageError(f"outcome must be a string over {{0,1}}, got {args.outcome!r}") from None
    if r.length != m.t:
        raise UsageError(f"outcome has {r.length} entries but the matrix has {m.t} tests")
    decoder = {"ssm": decode_ssm, "dm": decode_dm, "table": decode_sm_table}[args.method]
    _emit(decoder(m, r, args.d).to_json(), args)
    return 0


def cmd_simulate(args) -> int:
    m = _load_matrix(args.file)
    sampler = args.size if args.size is not None else args.sampler
    report = run_campaign(
        m, args.d, args.trials, seed=args.seed, sampler=sampler,
        exhaustive=True if args.exhaustive else None, workers=args.workers,
    )
    _emit(report.to_json(), args)
    return 1 if args.assert_ and report.successes < report.trials else 0


def cmd_construct(args) -> int:
    if args.emit == "code":
        code, _ = expurgate_to_ssc(random_code(args.t, args.n, args.q, args.seed), 2, seed=args.seed)
        _emit(write_code(code), args)
        return 0
    m, log = build_2ssm(args.t, args.n, args.q, args.seed)
    if args.emit == "matrix":
        _emit(write_matrix(m), args)
    else:
        out = log.to_json()
        out["rows"] = m.t
        out["rate"] = matrix_rate(m)
        _emit(out, args)
    return 0


def cmd_search(args) -> int:
    res = search_max(args.property, args.d, args.t, budget=args.budget, seed=args.seed, restarts=args.restarts)
    out = res.to_json()
    out["verified"] = verify_certificate(res)
    _emit(out, args)
    return 0


def cmd_bounds(args) -> int:
    out = rate_bound(args.q, args.m_cap).to_json()
    if args.known:
        out["known"] = known_bounds()
    _emit(out, args)
    return 0


def cmd_convert(args) -> int:
    text = _read_text(args.file)
    kind = args.kind
    if kind is None:
        if _is_json(text):
            kind = "code" if '"q"' in text else "matrix"
        else:
            first = text.split("\n", 1)[0]
            kind = "code" if len(first.split(" ")) == 3 else "matrix"
    try:
        if kind == "matrix":
            obj = matrix_from_json(text) if _is_json(text) else read_matrix(text)
            to_json, to_text = matrix_to_json, write_matrix
        else:
            obj = code_from_json(text) if _is_json(text) else read_code(text)
            to_json, to_text = code_to_json, write_code
    except StrongSepError as exc:
        raise UsageError(f"malformed {kind} file {args.file}: {exc}") from None
    target = args.to or ("text" if _is_json(text) else "json")
    if target == "json":
        sys.stdout.write(json.dumps(to_json(obj), sort_keys=True) + "\n")
    else:
        sys.stdout.write(to_text(obj))
    return 0


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return v


def _nonnegative(value: str) -> int:
    v = int(value)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 when the verdict is negative")
    common.add_argument("--workers", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes for parallel steps")

    parser = argparse.ArgumentParser(prog="strongsep", description="Strongly separable matrices for group testing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a matrix or code property")
    p.add_argument("file")
    p.add_argument("--property", required=True, choices=["ssm", "ssm-bar", "dm", "sm", "ssc"])
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--bruteforce", action="store_true", help="use the definition-level oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", parents=[common], help="identify positives from an outcome")
    p.add_argument("file")
    p.add_argument("outcome", help="t characters over {0,1}, in row order")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--method", choices=["ssm", "dm", "table"], default="ssm")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", parents=[common], help="run a noiseless testing campaign")
    p.add_argument("file")
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--trials", type=_nonnegative, default=1000)
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--exhaustive", action="store_true", help="decode every admissible positive set")
    p.add_argument("--sampler", choices=["uniform", "size-uniform"], default="uniform")
    p.add_argument("--size", type=_positive, help="fix the positive-set size")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("construct", parents=[common], help="random code + expurgation + concatenation")
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=_nonnegative, required=True)
    p.add_argument("--emit", choices=["matrix", "code", "log"], default="matrix")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", parents=[common], help="largest matrix with a property")
    p.add_argument("--property", required=True, choices=["ssm", "dm", "sm"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--budget", type=_positive)
    p.add_argument("--restarts", type=_nonnegative, default=0)
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", parents=[common], help="rate lower bound for 2-SSMs")
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--m-cap", type=_positive, default=64)
    p.add_argument("--known", action="store_true", help="include the table of known bounds")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("convert", parents=[common], help="text <-> JSON for matrix and code files")
    p.add_argument("file")
    p.add_argument("--kind", choices=["matrix", "code"])
    p.add_argument("--to", choices=["json", "text"])
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StrongSepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
