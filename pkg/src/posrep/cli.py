"""Command-line entry point.

Exit codes: 0 pass, 1 negative verdict, 2 input error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import PosrepError, PrecisionExhausted
from .field import ParseError, local_settings, parse_field
from .field import to_json as field_to_json
from .flags import (
    FullFlag,
    eigen_data,
    flag_from_point,
    is_totally_positive,
    quad_positive,
    tuple_positive,
    tuple_positive_direct,
)
from .groups import (
    build_nonframeable,
    collar_check,
    framed_positivity_check,
    pos_translating_images_check,
    schottky_verify,
)
from .moebius import Moebius2, ProjPoint, classify, cross_ratio, fixed_points, pos_translating, tuple_positive_p1
from . import serialize as ser

EXIT_PASS, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- argument helpers -------------------------------------------------------

def _split_top(text: str, sep: str) -> List[str]:
    """Split on sep outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out]


def parse_matrix_arg(text: str):
    """Rows separated by ';', entries by ','."""
    rows = [_split_top(r, ",") for r in _split_top(text, ";") if r]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError(f"matrix must be square: {text!r}")
    return tuple(tuple(parse_field(x) for x in r) for r in rows)


def parse_points_arg(text: str) -> List[ProjPoint]:
    return [ProjPoint.parse(p) for p in _split_top(text, ",") if p]


def _read_json(path: str) -> Tuple[Any, str]:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _flags_input(args) -> Tuple[List[FullFlag], List[str]]:
    """Flags from --points (d = 2) or a JSON list in --flags."""
    if args.flags:
        obj, raw = _read_json(args.flags)
        items = obj["flags"] if isinstance(obj, dict) else obj
        return [ser.flag_from_json(x) for x in items], [raw]
    if args.points is None:
        raise InputError("give --points or --flags")
    if args.d != 2:
        raise InputError("--points describes flags only for d = 2; use --flags")
    return [flag_from_point(p) for p in parse_points_arg(args.points)], []


def _pairs_arg(text: str) -> List[Tuple[str, str]]:
    pairs = []
    for chunk in text.replace(";", ",").split(","):
        parts = chunk.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise InputError(f"a pair needs two words: {chunk!r}")
        pairs.append((parts[0], parts[1]))
    if not pairs:
        raise InputError("no pairs given")
    return pairs


# -- commands ---------------------------------------------------------------
# Each returns (passed, body, extra raw inputs for the hash).

def cmd_field_eval(args):
    x = parse_field(args.expr)
    body = {
        "value": str(x),
        "exact": x.is_exact,
        "sign": x.sign(),
    }
    if args.json:
        body["encoded"] = field_to_json(x)
    if x.is_zero():
        body["valuation"] = "inf"
    else:
        v = x.valuation()
        body["valuation"] = str(v)
        body["big"] = x.is_big()
        body["infinitesimal"] = x.is_infinitesimal()
    return True, body, []


def _moebius_arg(text: str) -> Moebius2:
    m = parse_matrix_arg(text)
    if len(m) != 2:
        raise InputError("expected a 2x2 matrix")
    return Moebius2.from_matrix(m)


def cmd_classify(args):
    g = _moebius_arg(args.matrix)
    cls = classify(g)
    body: Dict[str, Any] = {"class": cls.tag, "discriminant": str(cls.discriminant), "trace": str(g.trace())}
    if cls.tag != "identity":
        fp = fixed_points(g)
        body["fixed_points"] = [str(p) for p in fp.points]
        if cls.tag == "hyperbolic":
            body["attracting"] = str(fp.attracting)
            body["repelling"] = str(fp.repelling)
        data = pos_translating(g) if cls.tag in ("hyperbolic", "parabolic") else None
        body["positively_translating"] = data is not None
    return True, body, []


def cmd_cross_ratio(args):
    pts = parse_points_arg(args.points)
    if len(pts) != 4:
        raise InputError("cross-ratio needs four points")
    cr = cross_ratio(*pts)
    return True, {"cross_ratio": str(cr)}, []


def cmd_tuple_check(args):
    flags, raws = _flags_input(args)
    if len(flags) < 3:
        raise InputError("need at least three flags")
    verdict = tuple_positive(flags, parallel=args.parallel)
    body: Dict[str, Any] = {"n": len(flags), "d": flags[0].dim, "positive": verdict.positive}
    if args.direct:
        body["direct"] = tuple_positive_direct(flags).positive
    if flags[0].dim == 2 and args.points:
        body["cyclic_or_reversed"] = tuple_positive_p1(parse_points_arg(args.points))
    if not verdict.positive:
        body["witness"] = _jsonable(verdict.witness)
    return verdict.positive, body, raws


def cmd_quad_check(args):
    flags, raws = _flags_input(args)
    if len(flags) != 4:
        raise InputError("quad-check needs exactly four flags")
    verdict = quad_positive(*flags)
    return verdict.positive, {"positive": verdict.positive, "witness": _jsonable(verdict.witness)}, raws


def cmd_tp_check(args):
    u = parse_matrix_arg(args.matrix)
    v = is_totally_positive(u)
    body = {"classification": v.tag, "totally_positive": v.positive, "nonnegative": v.nonnegative}
    if v.witness is not None:
        body["minor"] = {"rows": list(v.witness[0]), "cols": list(v.witness[1]), "value": str(v.value)}
    return v.positive, body, []


def cmd_prox(args):
    g = parse_matrix_arg(args.matrix)
    data = eigen_data(g)
    body = {
        "eigenvalues": [str(x) for x in data.eigenvalues],
        "gplus": [[str(x) for x in row] for row in data.gplus.normal_form()],
        "gminus": [[str(x) for x in row] for row in data.gminus.normal_form()],
    }
    return True, body, []


def _load_rep(path: str):
    obj, raw = _read_json(path)
    return ser.rep_from_json(obj), raw


def cmd_schottky(args):
    rep, raw = _load_rep(args.rep)
    obj, raw_cert = _read_json(args.cert)
    report = schottky_verify(rep, ser.cert_from_json(obj))
    return report.passed, report.to_dict(), [raw, raw_cert]


def cmd_framed_check(args):
    rep, raw = _load_rep(args.rep)
    obj, raw_tri = _read_json(args.tri)
    framing = ser.framing_from_json(obj)
    tri = ser.triangulation_from_json(obj)
    report = framed_positivity_check(rep, framing, tri, parallel=args.parallel)
    return report.passed, report.to_dict(), [raw, raw_tri]


def cmd_collar(args):
    rep, raw = _load_rep(args.rep)
    report = collar_check(rep, _pairs_arg(args.pairs), assume_linked=args.assume_linked)
    return report.passed, report.to_dict(), [raw]


def cmd_translating(args):
    rep, raw = _load_rep(args.rep)
    words = args.words.split(",") if args.words else list(rep.generators)
    report = pos_translating_images_check(rep, [w.strip() for w in words])
    return report.passed, report.to_dict(), [raw]


def cmd_nonframeable_demo(args):
    k = Fraction(args.k)
    rep, report = build_nonframeable(epsilon_exponent=k, n=args.N)
    body = report.to_dict()
    c = rep.eval_moebius("c")
    body["c_class"] = classify(c).tag
    body["representation"] = ser.rep_to_json(rep) if args.show_rep else None
    if body["representation"] is None:
        del body["representation"]
    return report.passed, body, []


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


# -- parser -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--trunc", help="truncation order (rational); default 16 or $POSREP_TRUNC")
    p.add_argument("--ram-cap", type=int, help="largest allowed denominator of exponents (default 8)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--parallel", action="store_true", help="run independent checks concurrently")
    p.add_argument("--output", "-o", help="also write the JSON report to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="posrep", description="Exact positivity checks over a Puiseux field.")
    parser.add_argument("--version", action="version", version=f"posrep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn: Callable, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("field-eval", cmd_field_eval, "evaluate a field expression such as '1 - eps^2 + sqrt(2)*eps^(1/2)'")
    p.add_argument("expr")

    p = add("classify", cmd_classify, "classify a 2x2 matrix as elliptic, parabolic or hyperbolic")
    p.add_argument("--matrix", required=True, help="rows separated by ';', entries by ','")

    p = add("cross-ratio", cmd_cross_ratio, "cross ratio of four points of the projective line")
    p.add_argument("--points", required=True, help="comma separated, 'inf' for infinity")

    for name, fn, text in (
        ("tuple-check", cmd_tuple_check, "positivity of a tuple of flags"),
        ("quad-check", cmd_quad_check, "positivity of a quadruple of flags"),
    ):
        p = add(name, fn, text)
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--points", help="points of the projective line (d = 2)")
        p.add_argument("--flags", help="JSON file with a list of flag basis matrices")
        if name == "tuple-check":
            p.add_argument("--direct", action="store_true", help="also run the direct n-tuple test")

    p = add("tp-check", cmd_tp_check, "total positivity of an upper unitriangular matrix")
    p.add_argument("--matrix", required=True)

    p = add("prox", cmd_prox, "eigenvalues and attracting/repelling flags")
    p.add_argument("--matrix", required=True)

    p = add("schottky", cmd_schottky, "verify a ping-pong certificate for a two-generator representation")
    p.add_argument("--rep", required=True)
    p.add_argument("--cert", required=True)

    p = add("framed-check", cmd_framed_check, "framed positivity on a triangulation")
    p.add_argument("--rep", required=True)
    p.add_argument("--tri", required=True, help="JSON file with cusps and edges")

    p = add("collar", cmd_collar, "collar inequality for pairs of linked elements")
    p.add_argument("--rep", required=True)
    p.add_argument("--pairs", required=True, help="e.g. 'a b' or 'a b, a bA'")
    p.add_argument("--assume-linked", action="store_true", help="skip the linkage check (needed for d > 2)")

    p = add("translating", cmd_translating, "which images are positively translating")
    p.add_argument("--rep", required=True)
    p.add_argument("--words", help="comma separated words (default: generators)")

    p = add("nonframeable-demo", cmd_nonframeable_demo, "build the positive representation that admits no framing")
    p.add_argument("--N", type=int, default=20, help="orbit depth of the staged certificate")
    p.add_argument("--k", default="1", help="exponent k with CR - 1 = -eps^k")
    p.add_argument("--show-rep", action="store_true")
    return parser


def _format_human(report: Dict[str, Any], indent: int = 0) -> List[str]:
    lines = []
    pad = "  " * indent
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_format_human(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                sub = _format_human(item, indent + 2)
                if sub:
                    sub[0] = pad + "  - " + sub[0].lstrip()
                lines.extend(sub)
        else:
            lines.append(f"{pad}{key}: {val}")
    return lines


_NOT_HASHED = {"func", "output", "json", "parallel"}


def _args_key(args) -> str:
    return json.dumps({k: v for k, v in vars(args).items() if k not in _NOT_HASHED}, sort_keys=True)


def run(argv: Optional[Sequence[str]] = None, out=None) -> Tuple[int, Dict[str, Any]]:
    """Run one command; returns (exit code, report)."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), {}

    report: Dict[str, Any] = {"command": args.command}
    try:
        trunc = Fraction(args.trunc) if args.trunc is not None else None
    except (ValueError, ZeroDivisionError):
        trunc = None
        report.update(verdict="error", error=f"bad --trunc value {args.trunc!r}")
        code = EXIT_INPUT
    else:
        code = None

    if code is None:
        try:
            with local_settings(precision=trunc, ramification_cap=args.ram_cap) as s:
                passed, body, raws = args.func(args)
                report["provenance"] = {
                    "input_sha256": ser.digest(_args_key(args), *raws),
                    "trunc": str(s.precision),
                    "ram_cap": s.ramification_cap,
                    "version": __version__,
                }
            report["verdict"] = "pass" if passed else "fail"
            report.update({k: v for k, v in body.items() if k != "verdict"})
            code = EXIT_PASS if passed else EXIT_NEGATIVE
        except PrecisionExhausted as exc:
            report.update(verdict="precision_exhausted", error=str(exc))
            code = EXIT_PRECISION
        except (InputError, ParseError, PosrepError, ValueError, KeyError, TypeError, IndexError) as exc:
            report.update(verdict="error", error=f"{type(exc).__name__}: {exc}")
            code = EXIT_INPUT

    text = ser.canonical_dumps(report)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    if args.json:
        print(text, file=out)
    else:
        print("\n".join(_format_human(report)), file=out)
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
