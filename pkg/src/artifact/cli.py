"""Command-line verification harness.

Runs named check suites against sampled or user-supplied parameters and
emits the report as machine-readable JSON (default) or a plain-text table.

Exit codes: 0 when every check passes, 1 when at least one check fails,
2 on a usage error (unknown suite, malformed rational, invalid parameters).
"""

from __future__ import annotations

import argparse
import json
import sys

from .scalar import DEGREE_CAP, Params, S
from .suites import SUITE_NAMES, SuiteReport, run_suite

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2


def _rational(text: str):
    """argparse type for exact rationals written as '3/7', '-5', '0'."""
    try:
        return S(text.strip())
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError("not an exact rational: %r" % text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer: %r" % text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1: %r" % text)
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer: %r" % text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0: %r" % text)
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artifact",
        description=(
            "Run exact-arithmetic verification suites for the Heisenberg/"
            "Virasoro operator algebra, geometric R-matrices, and spin-chain "
            "transfer matrices."
        ),
    )
    parser.add_argument(
        "--suite",
        default="all",
        choices=SUITE_NAMES + ("all",),
        help="suite to run (default: all)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=1,
        help="seed for deterministic parameter sampling (default: 1)",
    )
    parser.add_argument(
        "--degree-cap",
        type=_nonnegative_int,
        default=None,
        metavar="N",
        help="lower the maximum Fock-space degree (clamped to %d)" % DEGREE_CAP,
    )
    parser.add_argument(
        "--rank",
        type=_positive_int,
        default=2,
        help="number of framing weights when sampling parameters (default: 2)",
    )
    parser.add_argument(
        "--q",
        type=_rational,
        default=None,
        metavar="NUM/DEN",
        help="override the Kahler parameter q of the sampled parameters",
    )
    parser.add_argument(
        "--params-file",
        default=None,
        metavar="FILE",
        help=(
            "JSON file with explicit parameters "
            '{"t1": "num/den", "t2": ..., "a": [...], "q": ...}; '
            "overrides --rank and --q"
        ),
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json",
        dest="fmt",
        action="store_const",
        const="json",
        help="emit the report as JSON (default)",
    )
    fmt.add_argument(
        "--table",
        dest="fmt",
        action="store_const",
        const="table",
        help="emit the report as a plain-text table",
    )
    parser.set_defaults(fmt="json")
    parser.add_argument(
        "--golden",
        default=None,
        metavar="DIR",
        help=(
            "directory of golden determinant files to compare against "
            "(default: the packaged set); with --record, record into it"
        ),
    )
    parser.add_argument(
        "--record",
        action="store_true",
        help="record golden determinant files into the --golden directory "
        "instead of comparing",
    )
    parser.add_argument(
        "--modified-sign",
        action="store_true",
        help="apply the alternating sign twist q -> (-1)^n q in the "
        "Grassmannian quantum-product comparison",
    )
    parser.add_argument(
        "--output",
        default=None,
        metavar="FILE",
        help="write the report to FILE instead of stdout",
    )
    return parser


def _params_from_file(path: str) -> Params:
    """Load explicit parameters from a JSON file.

    Expected keys: t1, t2, a (list), q; each value an exact rational as an
    int or a 'num/den' string.  Optional: seed (int), check_separation (bool).
    """
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("parameters file must hold a JSON object")
    missing = [key for key in ("t1", "t2", "a", "q") if key not in data]
    if missing:
        raise ValueError("parameters file is missing keys: %s" % ", ".join(missing))
    a = data["a"]
    if not isinstance(a, (list, tuple)) or not a:
        raise ValueError('"a" must be a non-empty list of rationals')
    extra = set(data) - {"t1", "t2", "a", "q", "seed", "check_separation"}
    if extra:
        raise ValueError("unknown keys in parameters file: %s" % ", ".join(sorted(extra)))
    return Params(
        t1=S(str(data["t1"])),
        t2=S(str(data["t2"])),
        a=tuple(S(str(x)) for x in a),
        q=S(str(data["q"])),
        seed=int(data.get("seed", 0)),
        check_separation=bool(data.get("check_separation", True)),
    )


def _format_table(report: SuiteReport) -> str:
    """Render a report as a fixed-width text table; failing checks carry
    their serialized detail payloads underneath."""
    doc = report.to_json()
    lines = []
    lines.append("suite: %s    seed: %d" % (doc["suite"], doc["seed"]))
    params = doc["params"]
    lines.append(
        "params: t1=%s t2=%s a=(%s) q=%s"
        % (params["t1"], params["t2"], ", ".join(params["a"]), params["q"])
    )
    width = max((len(check["name"]) for check in doc["checks"]), default=4)
    rule = "-" * (width + 8)
    lines.append(rule)
    for check in doc["checks"]:
        lines.append("%-*s  %s" % (width, check["name"], check["status"]))
    lines.append(rule)
    failed = [check for check in doc["checks"] if check["status"] != "pass"]
    lines.append(
        "%d checks, %d passed, %d failed, %d ms"
        % (
            len(doc["checks"]),
            len(doc["checks"]) - len(failed),
            len(failed),
            doc["duration_ms"],
        )
    )
    for check in failed:
        lines.append("")
        lines.append("FAIL %s" % check["name"])
        lines.append(json.dumps(check["detail"], indent=2, sort_keys=True))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.record and args.golden is None:
        parser.error("--record requires --golden DIR")

    params = None
    if args.params_file is not None:
        try:
            params = _params_from_file(args.params_file)
        except (OSError, ValueError) as exc:
            print("error: invalid parameters file: %s" % exc, file=sys.stderr)
            return EXIT_USAGE

    try:
        report = run_suite(
            args.suite,
            seed=args.seed,
            params=params,
            degree_cap=args.degree_cap,
            rank=args.rank,
            q=args.q,
            golden_dir=args.golden,
            record_golden=args.record,
            modified_sign=args.modified_sign,
        )
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE

    if args.fmt == "table":
        text = _format_table(report)
    else:
        text = json.dumps(report.to_json(), indent=2) + "\n"

    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)

    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
