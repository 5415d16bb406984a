"""vgh-judge: score, compare and lint value generalization hierarchies.

Exit codes:
  0  success
  1  lint found errors (or warnings with --warn-as-error)
  2  unreadable or invalid input, bad flags
  3  evaluation failed (including unresolved terms under --strict)
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import EvaluationError, ValidationError, VghJudgeError
from .gsl import GslConfig, GslReport, evaluate_vgh
from .ontology import Ontology, load_ontology_file
from .report import (
    DEFAULT_PRIVACY_FLOOR,
    compare,
    comparison_to_dict,
    emit_plot_csv,
    findings_csv,
    lint,
    render_comparison_text,
    render_findings_text,
    render_json,
    render_text,
)
from .resolver import NominalizationMap
from .similarity import available_metrics
from .vgh import Vgh, load_vgh_file

EXIT_OK, EXIT_FINDINGS, EXIT_INVALID, EXIT_EVAL = 0, 1, 2, 3


class InputError(ValidationError):
    pass


def _shared_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--pos", choices=["noun", "verb"], default="noun", help="part of speech of the VGH terms")
    p.add_argument("--metric", default="wup", help=f"similarity metric ({', '.join(available_metrics())})")
    p.add_argument("--weights", choices=["constant", "level"], default="constant", help="level weight scheme")
    p.add_argument("--agg", choices=["max", "avg"], default="max", help="LevelGSL aggregation")
    p.add_argument("--nominalize", metavar="PATH", help="adjective => noun mapping file")
    p.add_argument("--strict", action="store_true", help="fail when any VGH term cannot be resolved")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_flags()
    parser = argparse.ArgumentParser(prog="vgh-judge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[shared], help="score one VGH")
    ev.add_argument("--vgh", required=True)
    ev.add_argument("--ontology", required=True)

    cmp_ = sub.add_parser("compare", parents=[shared], help="score and rank several VGHs")
    cmp_.add_argument("--ontology", required=True)
    cmp_.add_argument("vghs", nargs="+", metavar="VGH")

    ln = sub.add_parser("lint", parents=[shared], help="report anomalies in a VGH")
    ln.add_argument("--vgh", required=True)
    ln.add_argument("--ontology", required=True)
    ln.add_argument("--privacy-floor", type=float, default=DEFAULT_PRIVACY_FLOOR, metavar="X",
                    help="flag Level-1 transitions with TransGSL below X (default %(default)s)")
    ln.add_argument("--warn-as-error", action="store_true")
    return parser


def _read(kind: str, path: str, loader):
    try:
        return loader(path)
    except FileNotFoundError:
        raise InputError(f"{kind} file not found: {path}") from None
    except (IsADirectoryError, PermissionError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {kind} file {path}: {exc}") from None


def _config(args) -> GslConfig:
    return GslConfig(
        weight_scheme=args.weights,
        aggregation=args.agg,
        metric=args.metric,
        pos=args.pos,
    )


def _nominalization(args) -> NominalizationMap | None:
    if not args.nominalize:
        return None
    return _read("nominalization", args.nominalize, NominalizationMap.from_file)


def _unique_names(paths: Sequence[str]) -> list[str]:
    names: list[str] = []
    for i, p in enumerate(paths, start=1):
        name = Path(p).stem
        if name in names:
            name = f"{name}[{i}]"
        names.append(name)
    return names


def _cmd_eval(args, out) -> int:
    onto: Ontology = _read("ontology", args.ontology, load_ontology_file)
    vgh: Vgh = _read("VGH", args.vgh, load_vgh_file)
    report = evaluate_vgh(vgh, onto, _config(args), _nominalization(args), strict=args.strict)
    if args.format == "json":
        out.write(render_json(report))
    elif args.format == "csv":
        out.write(emit_plot_csv([report]))
    else:
        out.write(render_text(report))
    return EXIT_OK


def _cmd_compare(args, out) -> int:
    if len(args.vghs) < 2:
        raise InputError("compare needs at least two VGH files")
    onto = _read("ontology", args.ontology, load_ontology_file)
    config = _config(args)
    nominal = _nominalization(args)
    vghs = [
        _read("VGH", path, lambda p, n=name: load_vgh_file(p, name=n))
        for path, name in zip(args.vghs, _unique_names(args.vghs))
    ]
    reports: list[GslReport] = [evaluate_vgh(v, onto, config, nominal, strict=args.strict) for v in vghs]
    result = compare(reports)
    if args.format == "json":
        out.write(json.dumps(comparison_to_dict(result), indent=2) + "\n")
    elif args.format == "csv":
        out.write(emit_plot_csv(result))
    else:
        out.write(render_comparison_text(result))
    return EXIT_OK


def _cmd_lint(args, out) -> int:
    onto = _read("ontology", args.ontology, load_ontology_file)
    vgh = _read("VGH", args.vgh, load_vgh_file)
    report = evaluate_vgh(vgh, onto, _config(args), _nominalization(args), strict=args.strict)
    findings = lint(report, vgh, args.privacy_floor)
    if args.format == "json":
        out.write(json.dumps([f.as_dict() for f in findings], indent=2) + "\n")
    elif args.format == "csv":
        out.write(findings_csv(findings))
    else:
        out.write(render_findings_text(findings))
    if any(f.severity == "error" for f in findings):
        return EXIT_FINDINGS
    if findings and args.warn_as_error:
        return EXIT_FINDINGS
    return EXIT_OK


COMMANDS = {"eval": _cmd_eval, "compare": _cmd_compare, "lint": _cmd_lint}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 for --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except EvaluationError as exc:
        err.write(f"vgh-judge: evaluation error: {exc}\n")
        return EXIT_EVAL
    except ValidationError as exc:
        err.write(f"vgh-judge: {exc}\n")
        return EXIT_INVALID
    except VghJudgeError as exc:
        err.write(f"vgh-judge: evaluation error: {exc}\n")
        return EXIT_EVAL
    except Exception as exc:  # keep exit codes total
        err.write(f"vgh-judge: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
