"""Command-line front end.

Usage examples::

    multideg toric ex1.json
    multideg hypergeom ex1.json --beta generic --seed 7
    multideg check ex6.json
    multideg formula ex2.json
    multideg multidegree module.txt
    multideg grl module.txt --slopes 1/1,1/2,2/1
    multideg scan-beta ex3.json --beta "1,2;0,0;generic"

Matrix inputs are JSON (``{"A": [[...]], "beta": ["1", "2"] | "generic"}``);
presentations use the text format of :func:`multideg.bifiltered.parse_presentation`.
Reports go to stdout (or ``--out``) as canonical JSON.  Failures print an
error object naming the stage and exit with status 1 (2 for usage errors).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import hypergeom
from .bifiltered import BifilteredPresentation, PipelineError, parse_presentation
from .coeff import format_rational, rational
from .parsing import ParseError
from .poly import Polynomial
from .weyl import WeylRing

VERBS = ("toric", "multidegree", "hypergeom", "check", "formula", "grl", "scan-beta")
DEFAULT_SLOPES = "1/1,1/2,2/1,1/3,3/1"


class UsageError(Exception):
    pass


def parse_operator_expression(text: str, ring: WeylRing, rank: int = 1) -> Polynomial:
    """Parse an operator and return its normal form in ``ring``."""
    return ring.parse(text, rank=rank)


def _parse_beta(text: str):
    if text.strip() == "generic":
        return "generic"
    return [rational(x) for x in text.split(",")]


def _parse_slopes(text: str):
    out = []
    for item in text.split(","):
        p, _, q = item.strip().partition("/")
        if not q:
            raise UsageError(f"slope {item!r} is not of the form p/q")
        out.append((int(p), int(q)))
    return out


def _load_matrix(path: str):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise PipelineError("input", f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno)
    if "A" not in data:
        raise PipelineError("input", "missing key 'A'")
    return data


def _beta_of(data, override: Optional[str]):
    if override is not None:
        return _parse_beta(override)
    beta = data.get("beta", "generic")
    if isinstance(beta, str):
        return _parse_beta(beta)
    return [rational(b) for b in beta]


def _load_presentation(path: str, args) -> BifilteredPresentation:
    if path.endswith(".json"):
        data = _load_matrix(path)
        beta = _beta_of(data, args.beta)
        if beta == "generic":
            beta = hypergeom.draw_beta(len(data["A"]), args.seed)
        return hypergeom.build_presentation(data["A"], beta, args.seed)
    with open(path) as fh:
        return parse_presentation(fh.read(), seed=args.seed)


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# Verbs


def cmd_toric(args):
    data = _load_matrix(args.input)
    gens = hypergeom.toric_ideal(data["A"])
    return {"A": data["A"], "toric_ideal": [g.format() for g in gens]}


def cmd_check(args):
    data = _load_matrix(args.input)
    A = data["A"]
    pointed, w = hypergeom.is_pointed(A)
    return {
        "homogeneous": hypergeom.is_homogeneous(A),
        "pointed": pointed,
        "pointed_witness": w,
        "cohen_macaulay": hypergeom.cohen_macaulay(A),
        "volume": hypergeom.volume(A),
    }


def cmd_formula(args):
    data = _load_matrix(args.input)
    C = hypergeom.closed_form_multidegree(data["A"])
    return {"closed_form": C.format(), "terms": C.to_json()}


def cmd_hypergeom(args):
    data = _load_matrix(args.input)
    beta = _beta_of(data, args.beta)
    rep = hypergeom.analyze(data["A"], beta, seed=args.seed, both_routes=args.both_routes)
    return rep.to_json()


def cmd_multidegree(args):
    M = _load_presentation(args.input, args)
    rep = M.report(with_bigr=args.bigr)
    out = rep.to_json()
    if args.both_routes:
        out["nice_route_a"] = M.nice_route_a()
    return out


def cmd_grl(args):
    M = _load_presentation(args.input, args)
    return M.slope_scan(_parse_slopes(args.slopes)).to_json()


def cmd_scan_beta(args):
    data = _load_matrix(args.input)
    if args.beta is not None:
        betas = [b.strip() for b in args.beta.split(";")]
    else:
        betas = [b if isinstance(b, str) else ",".join(str(x) for x in b) for b in data.get("betas", ["generic"])]
    rows = []
    groups = {}
    for i, b in enumerate(betas):
        beta = _parse_beta(b)
        rep = hypergeom.analyze(data["A"], beta, seed=args.seed + i)
        md = rep.multidegree.format()
        rows.append({"beta": [format_rational(x) for x in rep.beta], "multidegree": md, "nice": rep.nice})
        groups.setdefault(md, []).append(i)
    return {"A": data["A"], "runs": rows, "strata": [{"multidegree": k, "runs": v} for k, v in groups.items()]}


COMMANDS = {
    "toric": cmd_toric,
    "check": cmd_check,
    "formula": cmd_formula,
    "hypergeom": cmd_hypergeom,
    "multidegree": cmd_multidegree,
    "grl": cmd_grl,
    "scan-beta": cmd_scan_beta,
}


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multideg", description="Multidegrees of bifiltered D-modules.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("input", help="matrix JSON or presentation text file")
    ap.add_argument("--seed", type=int, default=0, help="seed for every random draw (default 0)")
    ap.add_argument("--beta", default=None, help="comma-separated parameters or 'generic'")
    ap.add_argument("--slopes", default=DEFAULT_SLOPES, help="comma-separated p/q list for grl")
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--timings", action="store_true", help="keep per-stage wall-clock times")
    ap.add_argument("--both-routes", action="store_true", help="also run the h-saturation niceness test")
    ap.add_argument("--bigr", action="store_true", help="also compute codim of bigr(M)")
    return ap


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.seed < 0 or args.seed >= 2**64:
        print(json.dumps({"error": {"stage": "usage", "message": "seed must be a u64"}}), file=stdout)
        return 2
    try:
        report = COMMANDS[args.verb](args)
        code = 0
    except UsageError as e:
        report = {"error": {"stage": "usage", "message": str(e)}}
        code = 2
    except ParseError as e:
        report = {"error": {"stage": "parse", "message": e.message, "line": e.line, "column": e.col}}
        code = 1
    except PipelineError as e:
        report = {"error": e.to_json()}
        code = 1
    except FileNotFoundError as e:
        report = {"error": {"stage": "input", "message": f"file not found: {e.filename}"}}
        code = 1
    except (ValueError, ArithmeticError) as e:
        report = {"error": {"stage": args.verb, "message": str(e)}}
        code = 1
    if not args.timings:
        report = _strip_timings(report)
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        text = _text(report)
    if args.out and code == 0:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
