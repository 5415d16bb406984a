"""Rendering, comparison and linting of GSL reports."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .gsl import GslReport, find_peaks, transition_matrix
from .vgh import Vgh

DEFAULT_PRIVACY_FLOOR = 0.02
PLOT_HEADER = ["vgh", "level", "raw_level_gsl", "weight", "contribution"]

_Q = Decimal("0.0001")


def fmt4(x: float) -> str:
    """Four decimals, halves rounded away from zero (``0.11115`` -> ``0.1112``)."""
    # repr gives the shortest decimal that round-trips, so halves stay halves
    return str(Decimal(repr(float(x))).quantize(_Q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ComparisonResult:
    reports: tuple[GslReport, ...]
    # names by ascending vgh_gsl, ties in input order
    ranking: tuple[str, ...]
    # (level, name of the VGH with the smallest raw LevelGSL at that level)
    per_level_winner: tuple[tuple[int, str], ...]


def compare(reports: Sequence[GslReport]) -> ComparisonResult:
    if not reports:
        raise ValueError("nothing to compare")
    order = sorted(range(len(reports)), key=lambda i: (reports[i].vgh_gsl, i))
    winners = []
    for level in range(1, max(r.height for r in reports) + 1):
        entries = [(r.levels[level - 1].raw, i) for i, r in enumerate(reports) if r.height >= level]
        _, best = min(entries)
        winners.append((level, reports[best].vgh_name))
    return ComparisonResult(tuple(reports), tuple(reports[i].vgh_name for i in order), tuple(winners))


@dataclass(frozen=True)
class LintFinding:
    kind: str
    location: str
    detail: str
    severity: str = "warn"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "severity": self.severity, "location": self.location, "detail": self.detail}


def peak_findings(raw_levels: Sequence[float]) -> list[LintFinding]:
    return [
        LintFinding(
            "peak",
            f"level {i}",
            f"LevelGSL {fmt4(raw_levels[i - 1])} at level {i} exceeds {fmt4(raw_levels[i])} at level {i + 1}:"
            " the child generalization is less specific than its parent",
        )
        for i in find_peaks(raw_levels)
    ]


def lint(
    report: GslReport,
    original: Vgh | None = None,
    privacy_floor: float = DEFAULT_PRIVACY_FLOOR,
) -> list[LintFinding]:
    """Collect structural and semantic findings for one evaluated VGH.

    ``original`` is the VGH as authored, before balancing.
    """
    findings: list[LintFinding] = []
    if original is not None and not original.is_balanced():
        shallow = original.shallow_leaves()
        findings.append(
            LintFinding(
                "unbalanced",
                "leaves",
                f"leaves above depth {original.height}: "
                + ", ".join(f"{n.label} (depth {original.depth(n)})" for n in shallow),
            )
        )
    if report.resolved is not None:
        for node, reason in report.resolved.unresolved:
            findings.append(LintFinding("unresolved", node.label, reason, "error"))

    findings.extend(peak_findings(report.level_gsl_raw))

    sisters: dict = {}
    for t in report.matrix:
        if t.sister_term:
            sisters.setdefault(t.ancestor, []).append(t)
    for ancestor, ts in sisters.items():
        findings.append(
            LintFinding(
                "sister_term",
                f"level {ts[0].level}: {ancestor.label}",
                f"{ts[0].ancestor_concept} is outside the hypernym tree of "
                + ", ".join(t.leaf.label for t in ts),
            )
        )

    for t in report.matrix:
        if t.level == 1 and not t.identity and t.trans_gsl < privacy_floor:
            findings.append(
                LintFinding(
                    "near_synonym",
                    f"level 1: {t.leaf.label} -> {t.ancestor.label}",
                    f"TransGSL {fmt4(t.trans_gsl)} below privacy floor {privacy_floor}; "
                    "the generalized value may still disclose the original",
                )
            )
    return findings


# -- rendering ---------------------------------------------------------------


def report_to_dict(report: GslReport) -> dict:
    return {
        "vgh_name": report.vgh_name,
        "height": report.height,
        "config": report.config.as_dict(),
        "matrix": [
            {
                "leaf": t.leaf.label,
                "ancestor": t.ancestor.label,
                "level": t.level,
                "trans_gsl": t.trans_gsl,
                "sister_term": t.sister_term,
                "leaf_concept": t.leaf_concept.id,
                "ancestor_concept": t.ancestor_concept.id,
            }
            for t in report.matrix
        ],
        "levels": [
            {
                "level": lv.level,
                "raw": lv.raw,
                "raw_max": lv.raw_max,
                "raw_avg": lv.raw_avg,
                "stddev": lv.stddev,
                "weight": lv.weight,
                "contribution": lv.contribution,
            }
            for lv in report.levels
        ],
        "vgh_gsl": report.vgh_gsl,
        "diagnostics": [d.as_dict() for d in report.diagnostics],
    }


def render_json(report: GslReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def render_text(report: GslReport) -> str:
    cfg = report.config
    out = [
        f"VGH {report.vgh_name} (height {report.height})",
        f"weights={cfg.weight_scheme} aggregation={cfg.aggregation} metric={cfg.metric.name} pos={cfg.pos}",
        "",
    ]
    if report.matrix:
        tm = transition_matrix(report)
        head = ["leaf"] + [f"L{lvl}:{node.term}" for lvl, node in tm.columns]
        body = [[leaf.label] + ["-" if c is None else fmt4(c) for c in row] for leaf, row in zip(tm.rows, tm.cells)]
        out.append("TransGSL by transition")
        out.extend(_table([head] + body))
        out.append("")
    if report.levels:
        head = ["level", "LevelGSL", "max", "avg", "stddev", "weight", "contribution", "max-loss transition"]
        body = []
        for lv in report.levels:
            worst = "-"
            if lv.worst:
                leaves = ", ".join(dict.fromkeys(t.leaf.term for t in lv.worst))
                ancestors = ", ".join(dict.fromkeys(t.ancestor.term for t in lv.worst))
                worst = f"{leaves} -> {ancestors}"
            body.append(
                [str(lv.level), fmt4(lv.raw), fmt4(lv.raw_max), fmt4(lv.raw_avg), fmt4(lv.stddev),
                 fmt4(lv.weight), fmt4(lv.contribution), worst]
            )
        out.extend(_table([head] + body))
        out.append("")
    out.append(f"VghGSL: {fmt4(report.vgh_gsl)}")
    notes = [d for d in report.diagnostics if d.kind != "max_loss"]
    if notes:
        out.append("")
        out.append("diagnostics:")
        for d in notes:
            where = f" level {d.level}" if d.level is not None else ""
            out.append(f"  [{d.kind}]{where} {d.message}")
    return "\n".join(out) + "\n"


def render_comparison_text(result: ComparisonResult) -> str:
    out = []
    for r in result.reports:
        out.append(f"== {r.vgh_name} ({r.config.weight_scheme} weights, {r.config.aggregation}) ==")
        rows = [["generalization", "max-loss transition", "LevelGSL", "weight", "weighted"]]
        for lv in r.levels:
            worst = "-"
            if lv.worst:
                worst = (", ".join(dict.fromkeys(t.leaf.term for t in lv.worst)) + " -> "
                         + ", ".join(dict.fromkeys(t.ancestor.term for t in lv.worst)))
            rows.append([f"L0->L{lv.level}", worst, fmt4(lv.raw), fmt4(lv.weight), fmt4(lv.contribution)])
        rows.append(["VghGSL", "", "", "", fmt4(r.vgh_gsl)])
        out.extend(_table(rows))
        out.append("")
    out.append("ranking (lower loss first):")
    scores = {r.vgh_name: r.vgh_gsl for r in result.reports}
    for pos, name in enumerate(result.ranking, start=1):
        out.append(f"  {pos}. {name}  {fmt4(scores[name])}")
    out.append("lowest LevelGSL per level:")
    for level, name in result.per_level_winner:
        out.append(f"  level {level}: {name}")
    return "\n".join(out) + "\n"


def comparison_to_dict(result: ComparisonResult) -> dict:
    return {
        "reports": [report_to_dict(r) for r in result.reports],
        "ranking": list(result.ranking),
        "per_level_winner": [{"level": lvl, "vgh": name} for lvl, name in result.per_level_winner],
    }


def emit_plot_csv(result: ComparisonResult | Sequence[GslReport]) -> str:
    """Per-level plot data, one row per (VGH, level) in input order."""
    reports = result.reports if isinstance(result, ComparisonResult) else result
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PLOT_HEADER)
    for r in reports:
        for lv in r.levels:
            writer.writerow([r.vgh_name, lv.level, fmt4(lv.raw), fmt4(lv.weight), fmt4(lv.contribution)])
    return buf.getvalue()


def render_findings_text(findings: Sequence[LintFinding]) -> str:
    if not findings:
        return "no findings\n"
    return "".join(f"{f.severity}: [{f.kind}] {f.location}: {f.detail}\n" for f in findings)


def findings_csv(findings: Sequence[LintFinding]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "severity", "location", "detail"])
    for f in findings:
        writer.writerow([f.kind, f.severity, f.location, f.detail])
    return buf.getvalue()
