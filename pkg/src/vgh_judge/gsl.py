"""Generalization semantic loss (GSL) of a VGH.

* ``trans_gsl``  loss of replacing one leaf by one ancestor: ``max_sim - sim``
* ``level_gsl``  aggregate (max or avg) of the transition losses at one level
* ``vgh_gsl``    weighted sum of the level losses; weights sum to one

Lower is better.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import ConfigError, EvaluationError
from .ontology import Concept, ConceptRef, Ontology, normalize_pos
from .resolver import NominalizationMap, ResolvedVgh, resolve_vgh
from .similarity import WUP, MetricDescriptor, get_metric, similarity
from .vgh import Vgh, VghNode, ancestor_at_level, balance, leaf_nodes


def _constant(h: int) -> list[float]:
    return [1.0 / h] * h


def _level_based(h: int) -> list[float]:
    total = h * (h + 1) // 2
    return [(h + 1 - i) / total for i in range(1, h + 1)]


WEIGHT_SCHEMES: dict[str, Callable[[int], list[float]]] = {
    "constant": _constant,
    "level_based": _level_based,
}
_SCHEME_ALIASES = {"level": "level_based", "level-based": "level_based", "const": "constant"}


def _mean(scores: Sequence[float]) -> float:
    # fmean can round one ulp past the extremes when all scores are equal
    return min(max(statistics.fmean(scores), min(scores)), max(scores))


AGGREGATIONS: dict[str, Callable[[Sequence[float]], float]] = {
    "max": max,
    "avg": _mean,
}


def canonical_scheme(name: str) -> str:
    name = _SCHEME_ALIASES.get(name, name)
    if name not in WEIGHT_SCHEMES:
        raise ConfigError(f"unknown weight scheme {name!r}; expected one of {sorted(WEIGHT_SCHEMES)}")
    return name


@dataclass(frozen=True)
class GslConfig:
    weight_scheme: str = "constant"
    aggregation: str = "max"
    metric: MetricDescriptor = WUP
    pos: str = "noun"

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight_scheme", canonical_scheme(self.weight_scheme))
        if self.aggregation not in AGGREGATIONS:
            raise ConfigError(f"unknown aggregation {self.aggregation!r}; expected one of {sorted(AGGREGATIONS)}")
        if isinstance(self.metric, str):
            object.__setattr__(self, "metric", get_metric(self.metric))
        try:
            object.__setattr__(self, "pos", normalize_pos(self.pos))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def as_dict(self) -> dict:
        return {
            "weight_scheme": self.weight_scheme,
            "aggregation": self.aggregation,
            "metric": self.metric.name,
            "pos": self.pos,
        }


def level_weights(h: int, scheme: str = "constant") -> list[float]:
    """Per-level weights for levels ``1..h``.

    >>> level_weights(4, "level_based")
    [0.4, 0.3, 0.2, 0.1]
    """
    if h < 1:
        raise ValueError("a VGH of height 0 has no levels to weight")
    return WEIGHT_SCHEMES[canonical_scheme(scheme)](h)


def level_gsl(scores: Sequence[float], aggregation: str = "max") -> float:
    if not scores:
        raise ValueError("cannot aggregate an empty list of transition scores")
    try:
        agg = AGGREGATIONS[aggregation]
    except KeyError:
        raise ConfigError(f"unknown aggregation {aggregation!r}") from None
    return agg(scores)


def trans_gsl(c_l: ConceptRef, c_a: ConceptRef, metric: MetricDescriptor, o: Ontology) -> float:
    return metric.max_similarity - similarity(metric, o, c_l, c_a)


def weighted_sum(raw_levels: Sequence[float], weights: Sequence[float]) -> float:
    if len(raw_levels) != len(weights):
        raise ValueError(f"{len(raw_levels)} level scores but {len(weights)} weights")
    return math.fsum(r * w for r, w in zip(raw_levels, weights))


@dataclass(frozen=True)
class TransitionScore:
    leaf: VghNode
    ancestor: VghNode
    level: int
    trans_gsl: float
    sister_term: bool
    leaf_concept: Concept
    ancestor_concept: Concept
    # ancestor is the leaf itself or one of its balancing copies
    identity: bool = False


@dataclass(frozen=True)
class LevelScore:
    level: int
    raw: float
    raw_max: float
    raw_avg: float
    stddev: float
    weight: float
    contribution: float
    count: int = 0
    worst: tuple[TransitionScore, ...] = ()


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    level: int | None = None
    term: str | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in vars(self).items() if v is not None}


@dataclass(frozen=True)
class GslReport:
    vgh_name: str
    height: int
    config: GslConfig
    matrix: tuple[TransitionScore, ...]
    levels: tuple[LevelScore, ...]
    vgh_gsl: float
    diagnostics: tuple[Diagnostic, ...] = ()
    vgh: Vgh | None = field(default=None, compare=False, repr=False)
    resolved: ResolvedVgh | None = field(default=None, compare=False, repr=False)

    @property
    def level_gsl_raw(self) -> list[float]:
        return [lv.raw for lv in self.levels]

    @property
    def weights(self) -> list[float]:
        return [lv.weight for lv in self.levels]

    @property
    def level_contrib(self) -> list[float]:
        return [lv.contribution for lv in self.levels]


def find_peaks(raw_levels: Sequence[float]) -> list[int]:
    """1-based levels whose loss exceeds the loss of the level above them."""
    return [i for i in range(1, len(raw_levels)) if raw_levels[i - 1] > raw_levels[i]]


def _summarize(level: int, scores: list[float], weight: float, aggregation: str, worst=()) -> LevelScore:
    raw = level_gsl(scores, aggregation)
    return LevelScore(
        level=level,
        raw=raw,
        raw_max=max(scores),
        raw_avg=_mean(scores),
        stddev=statistics.pstdev(scores),
        weight=weight,
        contribution=raw * weight,
        count=len(scores),
        worst=tuple(worst),
    )


def report_from_levels(name: str, raw_levels: Sequence[float], config: GslConfig | None = None) -> GslReport:
    """Score an already-computed LevelGSL profile (one value per level)."""
    config = config or GslConfig()
    weights = level_weights(len(raw_levels), config.weight_scheme)
    levels = tuple(
        _summarize(i, [raw], w, config.aggregation) for i, (raw, w) in enumerate(zip(raw_levels, weights), start=1)
    )
    return GslReport(
        vgh_name=name,
        height=len(raw_levels),
        config=config,
        matrix=(),
        levels=levels,
        vgh_gsl=weighted_sum([lv.raw for lv in levels], weights),
    )


def evaluate_vgh(
    v: Vgh,
    o: Ontology,
    config: GslConfig | None = None,
    nominalization: NominalizationMap | None = None,
    strict: bool = False,
) -> GslReport:
    """Score a VGH against a reference ontology.

    Unbalanced input is balanced first.  Transitions whose leaf or ancestor
    cannot be resolved are left out of the level aggregates and reported as
    diagnostics; with ``strict=True`` any unresolved node is an error.
    """
    config = config or GslConfig()
    diagnostics: list[Diagnostic] = []

    if not v.is_balanced():
        shallow = ", ".join(n.label for n in v.shallow_leaves())
        diagnostics.append(Diagnostic("balanced", f"replicated shallow leaves down to height {v.height}: {shallow}"))
        v = balance(v)
    h = v.height

    resolved = resolve_vgh(v, o, config.pos, nominalization)
    for node, reason in resolved.unresolved:
        diagnostics.append(Diagnostic("unresolved", f"{node.label!r}: {reason}", term=node.term))
    if strict and resolved.unresolved:
        names = ", ".join(repr(n.label) for n, _ in resolved.unresolved)
        raise EvaluationError(f"unresolved VGH terms in strict mode: {names}")
    if not resolved.leaf_bindings:
        raise EvaluationError(f"no leaf of VGH {v.name!r} could be resolved against the ontology")

    if h == 0:
        diagnostics.append(Diagnostic("degenerate", "single-node VGH: no generalization possible, score is 0"))
        return GslReport(v.name, 0, config, (), (), 0.0, tuple(diagnostics), v, resolved)

    weights = level_weights(h, config.weight_scheme)
    leaves = leaf_nodes(v)
    matrix: list[TransitionScore] = []
    levels: list[LevelScore] = []
    for level, weight in zip(range(1, h + 1), weights):
        row: list[TransitionScore] = []
        for leaf in leaves:
            ancestor = ancestor_at_level(v, leaf, level)
            leaf_b = resolved.leaf_bindings.get(leaf)
            anc_b = resolved.transition(leaf, ancestor)
            if leaf_b is None or anc_b is None:
                diagnostics.append(
                    Diagnostic(
                        "unscored",
                        f"{leaf.label} -> {ancestor.label}: {resolved.failures.get((leaf, ancestor), 'unresolved')}",
                        level=level,
                    )
                )
                continue
            loss = trans_gsl(leaf_b.concept, anc_b.concept, config.metric, o)
            row.append(
                TransitionScore(
                    leaf=leaf,
                    ancestor=ancestor,
                    level=level,
                    trans_gsl=loss,
                    sister_term=not anc_b.in_hypernyms and anc_b.concept != leaf_b.concept,
                    leaf_concept=leaf_b.concept,
                    ancestor_concept=anc_b.concept,
                    identity=v.origin(leaf) is v.origin(ancestor),
                )
            )
        if not row:
            raise EvaluationError(f"level {level} of VGH {v.name!r} has no resolvable transitions")
        top = max(t.trans_gsl for t in row)
        worst = [t for t in row if t.trans_gsl == top]
        levels.append(_summarize(level, [t.trans_gsl for t in row], weight, config.aggregation, worst))
        diagnostics.append(
            Diagnostic(
                "max_loss",
                f"{', '.join(t.leaf.term for t in worst)} -> {', '.join(dict.fromkeys(t.ancestor.term for t in worst))}"
                f" ({top:.4f})",
                level=level,
            )
        )
        matrix.extend(row)

    raw = [lv.raw for lv in levels]
    for i in find_peaks(raw):
        diagnostics.append(
            Diagnostic("peak", f"loss {raw[i - 1]:.4f} exceeds level {i + 1} loss {raw[i]:.4f}", level=i)
        )
    return GslReport(
        vgh_name=v.name,
        height=h,
        config=config,
        matrix=tuple(matrix),
        levels=tuple(levels),
        vgh_gsl=weighted_sum(raw, weights),
        diagnostics=tuple(diagnostics),
        vgh=v,
        resolved=resolved,
    )


@dataclass
class TransitionMatrix:
    """Leaf x ancestor table of transition losses; ``None`` marks non-ancestors."""

    rows: list[VghNode]
    columns: list[tuple[int, VghNode]]
    cells: list[list[float | None]]

    def cell(self, leaf: str, ancestor: str) -> float | None:
        r = next(i for i, n in enumerate(self.rows) if n.term.lower() == leaf.lower())
        c = next(i for i, (_, n) in enumerate(self.columns) if n.term.lower() == ancestor.lower())
        return self.cells[r][c]


def transition_matrix(report: GslReport) -> TransitionMatrix:
    rows: list[VghNode] = []
    columns: list[tuple[int, VghNode]] = []
    seen_cols: set[VghNode] = set()
    values: dict[tuple[VghNode, VghNode], float] = {}
    for t in sorted(report.matrix, key=lambda t: t.level):
        if t.leaf not in rows:
            rows.append(t.leaf)
        if t.ancestor not in seen_cols:
            seen_cols.add(t.ancestor)
            columns.append((t.level, t.ancestor))
        values[(t.leaf, t.ancestor)] = t.trans_gsl
    if report.vgh is not None:
        order = {n: i for i, n in enumerate(report.vgh.nodes())}
        if report.height:
            rows = report.vgh.all_leaves()
        columns.sort(key=lambda lc: (lc[0], order[lc[1]]))
    cells = [[values.get((leaf, anc)) for _, anc in columns] for leaf in rows]
    return TransitionMatrix(rows, columns, cells)
