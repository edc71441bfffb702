"""Command-line front end.

Exit status is 0 on success, 2 on malformed input, and 1 when ``--strict``
is given and a verdict-level check fails.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import gcd
from typing import Any, Iterator

from .cross_polytope import (
    CrossPolytopeSpec,
    NoSignChangeError,
    Verdict,
    classify_flatness,
    pentagon_cm_det,
    pentagon_flat_diagonal,
    pentagon_is_realizable,
)
from .distance_core import (
    DistanceMatrixError,
    NotRealizableError,
    SquaredDistanceMatrix,
    cm_determinant,
    embedding_dimension,
    realize_floating,
    simplex_volume_sq,
)
from .mapping_harness import MappingScenario, theorem2_report

EXIT_OK, EXIT_VERDICT, EXIT_INPUT = 0, 1, 2

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


class InputError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse an integer or a ``p/q`` string in lowest terms."""
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise InputError(f"malformed rational {text!r}")
    if "/" in text:
        p, q = (int(part) for part in text.split("/"))
        if q == 0:
            raise InputError(f"zero denominator in {text!r}")
        if gcd(p, q) != 1:
            raise InputError(f"{text!r} is not in lowest terms")
        return Fraction(p, q)
    return Fraction(int(text))


def fmt_exact(x: Fraction) -> str:
    return str(x)


def fmt_float(x: float) -> str:
    return format(x, "#.12g")


def pass_fail(flag: bool) -> str:
    return "pass" if flag else "fail"


def load_matrix_document(text: str) -> SquaredDistanceMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc.msg} at line {exc.lineno}")
    if not isinstance(doc, dict) or "points" not in doc or "squared_distances" not in doc:
        raise InputError("input must be an object with 'points' and 'squared_distances'")
    k = doc["points"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InputError("'points' must be a positive integer")
    raw = doc["squared_distances"]
    if not isinstance(raw, list):
        raise InputError("'squared_distances' must be a list")
    if raw and all(isinstance(row, list) for row in raw):
        flat = [x for row in raw for x in row]
        if len(raw) != k or any(len(row) != k for row in raw):
            raise InputError(f"'squared_distances' must be {k}x{k}")
    else:
        flat = raw
        if len(flat) != k * k:
            raise InputError(
                f"'squared_distances' has {len(flat)} entries, expected {k * k}")
    values = []
    for idx, x in enumerate(flat):
        where = f"entry ({idx // k},{idx % k})"
        if isinstance(x, int) and not isinstance(x, bool):
            values.append(Fraction(x))
        elif isinstance(x, str):
            try:
                values.append(parse_rational(x))
            except InputError as exc:
                raise InputError(f"{where}: {exc}") from None
        else:
            raise InputError(f"{where}: expected an integer or 'p/q' string, got {x!r}")
    try:
        return SquaredDistanceMatrix([values[i * k:(i + 1) * k] for i in range(k)])
    except DistanceMatrixError as exc:
        raise InputError(str(exc)) from None


# -- commands -------------------------------------------------------------
# Each returns (report, failed) where ``failed`` flags a verdict-level failure.

def cmd_cmdet(args) -> tuple[dict, bool]:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}")
    d = load_matrix_document(text)
    dim = embedding_dimension(d)
    report: dict[str, Any] = {
        "command": "cmdet",
        "arguments": {"input": args.input},
        "points": d.size,
        "determinant": fmt_exact(cm_determinant(d)),
        "volume_sq": fmt_exact(simplex_volume_sq(d)),
        "embedding": "not_realizable" if dim is None else "realizable",
        "dimension": dim,
    }
    if args.realize and dim is not None:
        try:
            r = realize_floating(d, tol=args.tol)
        except NotRealizableError as exc:
            raise InputError(str(exc))
        report["realization"] = {
            "dimension": r.dimension,
            "coordinates": [[fmt_float(float(c)) for c in row]
                            for row in r.coordinates],
            "max_residual": fmt_float(r.max_residual),
        }
    return report, dim is None


def _crosspoly_cell(n: int, a_sq: Fraction, b_sq: Fraction) -> tuple[dict, bool]:
    spec = CrossPolytopeSpec(n, a_sq, b_sq)
    v = classify_flatness(spec)
    equal = v.cm_det == v.closed_form
    consistent = (v.verdict is Verdict.FLAT) == spec.is_regular
    cell = {
        "n": n,
        "a_sq": fmt_exact(a_sq),
        "b_sq": fmt_exact(b_sq),
        "cm_det": fmt_exact(v.cm_det),
        "closed_form": fmt_exact(v.closed_form),
        "identity": pass_fail(equal),
        "verdict": v.verdict.value,
        "dimension": v.dimension,
    }
    return cell, not (equal and consistent)


def cmd_crosspoly(args) -> tuple[dict, bool]:
    n = _single_n(args.n)
    cell, failed = _crosspoly_cell(n, args.a_sq, args.b_sq)
    report = {
        "command": "crosspoly",
        "arguments": {"n": n, "a_sq": fmt_exact(args.a_sq),
                      "b_sq": fmt_exact(args.b_sq)},
    }
    report.update((k, v) for k, v in cell.items() if k not in ("n", "a_sq", "b_sq"))
    return report, failed


def sweep_cells(ns: list[int], a_grid: list[Fraction], b_grid: list[Fraction],
                jobs: int = 1) -> Iterator[tuple[dict, bool]]:
    """Evaluate the grid in order: ``n``, then ``a_sq``, then ``b_sq`` ascending."""
    grid = [(n, a, b) for n in ns for a in a_grid for b in b_grid]
    if jobs <= 1:
        yield from (_crosspoly_cell(*cell) for cell in grid)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(lambda cell: _crosspoly_cell(*cell), grid)


def cmd_sweep(args) -> tuple[list[dict], bool]:
    ns = sorted(set(args.n))
    a_grid = sorted(set(args.a_sq_grid if args.a_sq_grid else [args.a_sq]))
    b_grid = sorted(set(args.b_sq_grid or []))
    if not ns or not a_grid or not b_grid:
        raise InputError("sweep needs a nonempty --n range and --b-sq-grid")
    if ns[0] < 2:
        raise InputError("n must be at least 2")
    if a_grid[0] <= 0 or b_grid[0] <= 0:
        raise InputError("squared lengths must be positive")
    lines, failed = [], False
    for cell, bad in sweep_cells(ns, a_grid, b_grid, args.jobs):
        lines.append(cell)
        failed |= bad
    return lines, failed


def cmd_pentagon(args) -> tuple[dict, bool]:
    lo, hi = args.bracket
    if args.a_sq <= 0 or lo < 0 or hi < 0:
        raise InputError("need a_sq > 0 and a nonnegative bracket")
    try:
        root = pentagon_flat_diagonal(args.a_sq, lo, hi, args.tol)
    except NoSignChangeError as exc:
        raise InputError(str(exc)) from None
    report = {
        "command": "pentagon",
        "arguments": {"a_sq": fmt_exact(args.a_sq), "bracket": [fmt_exact(lo), fmt_exact(hi)],
                      "tol": fmt_float(args.tol)},
        "det_lo": fmt_exact(pentagon_cm_det(args.a_sq, lo)),
        "det_hi": fmt_exact(pentagon_cm_det(args.a_sq, hi)),
        "realizable_lo": pass_fail(pentagon_is_realizable(args.a_sq, lo)),
        "realizable_hi": pass_fail(pentagon_is_realizable(args.a_sq, hi)),
        "root": fmt_float(root),
    }
    return report, False


def cmd_theorem2(args) -> tuple[dict, bool]:
    n = _single_n(args.n)
    if args.a_sq <= 0:
        raise InputError("A_sq must be positive")
    rep = theorem2_report(MappingScenario(n, args.a_sq))
    report = {
        "command": "theorem2",
        "arguments": {"n": n, "a_sq": fmt_exact(args.a_sq)},
        "c_sq": fmt_exact(rep.c_sq),
        "s_sq": fmt_exact(rep.s_sq),
        "ratio_sq": fmt_exact(rep.ratio_sq),
        "threshold": pass_fail(rep.threshold_passed),
        "bridge": pass_fail(rep.bridge_ok),
        "construction_dimension": rep.construction_dimension,
        "construction": pass_fail(rep.construction_ok),
        "flatness": rep.flatness.value,
        "isometry_criterion": pass_fail(rep.all_passed),
    }
    return report, not rep.all_passed


# -- argument parsing and rendering -------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational_list(text: str) -> list[Fraction]:
    return [_rational_arg(part) for part in text.split(",") if part.strip()]


def _bracket(text: str) -> tuple[Fraction, Fraction]:
    parts = _rational_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bracket must be 'lo,hi', got {text!r}")
    return parts[0], parts[1]


def _int_range(text: str) -> list[int]:
    """``4``, ``2,3,5`` or an inclusive range ``2:8``."""
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer range {text!r}")


def _single_n(ns: list[int]) -> int:
    if len(ns) != 1:
        raise InputError("--n takes a single integer here")
    if ns[0] < 2:
        raise InputError(f"n must be at least 2, got {ns[0]}")
    return ns[0]


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--strict", action="store_true",
                        help="exit with status 1 when a verdict-level check fails")

    parser = argparse.ArgumentParser(
        prog="distgeom",
        description="Exact Cayley-Menger and cross-polytope flatness checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cmdet", parents=[common],
                       help="determinant, volume and embedding of a distance matrix")
    p.add_argument("input", help="JSON document with 'points' and 'squared_distances'")
    p.add_argument("--realize", action="store_true",
                   help="also report floating coordinates")
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    p.set_defaults(func=cmd_cmdet)

    p = sub.add_parser("crosspoly", parents=[common],
                       help="closed-form identity and flatness of one cross-polytope")
    p.add_argument("--n", type=_int_range, required=True)
    p.add_argument("--a-sq", type=_rational_arg, required=True)
    p.add_argument("--b-sq", type=_rational_arg, required=True)
    p.set_defaults(func=cmd_crosspoly)

    p = sub.add_parser("sweep", parents=[common],
                       help="crosspoly over a grid, one line per cell")
    p.add_argument("--n", type=_int_range, required=True)
    p.add_argument("--a-sq", type=_rational_arg, default=Fraction(1))
    p.add_argument("--a-sq-grid", type=_rational_list)
    p.add_argument("--b-sq-grid", type=_rational_list, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("pentagon", parents=[common],
                       help="squared diagonal of the planar equal-diagonal pentagon")
    p.add_argument("--a-sq", type=_rational_arg, default=Fraction(1))
    p.add_argument("--bracket", type=_bracket, required=True)
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    p.set_defaults(func=cmd_pentagon)

    p = sub.add_parser("theorem2", parents=[common],
                       help="checks behind the two-distance mapping argument")
    p.add_argument("--n", type=_int_range, required=True)
    p.add_argument("--a-sq", type=_rational_arg, required=True,
                   help="squared preserved distance A²")
    p.set_defaults(func=cmd_theorem2)
    return parser


def _text_value(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, list):
        return " ".join(_text_value(v) for v in value)
    return str(value)


def render(report: dict | list[dict], fmt: str) -> str:
    if isinstance(report, list):
        if fmt == "structured":
            return "".join(json.dumps(cell) + "\n" for cell in report)
        return "".join(" ".join(f"{k}={_text_value(v)}" for k, v in cell.items()) + "\n"
                       for cell in report)
    if fmt == "structured":
        return json.dumps(report, indent=2) + "\n"
    out = []
    for key, value in report.items():
        if isinstance(value, dict):
            for sub_key, sub_value in value.items():
                if sub_key == "coordinates":
                    for i, row in enumerate(sub_value):
                        out.append(f"{key}.point{i}: {_text_value(row)}")
                else:
                    out.append(f"{key}.{sub_key}: {_text_value(sub_value)}")
        else:
            out.append(f"{key}: {_text_value(value)}")
    return "\n".join(out) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, failed = args.func(args)
    except (InputError, ValueError) as exc:
        print(f"distgeom {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render(report, args.format))
    return EXIT_VERDICT if args.strict and failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
