"""Path-based concept similarity behind a small metric registry."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import PosMismatchError, UnknownMetricError
from .ontology import ConceptRef, Ontology, path_lengths

# Keeps root-vs-other comparisons inside the open interval (0, 1].
SIMILARITY_FLOOR = 1e-9


@dataclass(frozen=True)
class MetricDescriptor:
    name: str
    max_similarity: float
    func: Callable[[Ontology, ConceptRef, ConceptRef], float]

    def __call__(self, o: Ontology, c1: ConceptRef, c2: ConceptRef) -> float:
        return self.func(o, c1, c2)


def _check_pos(o: Ontology, c1: ConceptRef, c2: ConceptRef) -> None:
    a, b = o.concept(c1), o.concept(c2)
    if a.pos != b.pos:
        raise PosMismatchError(f"cannot compare {a} ({a.pos}) with {b} ({b.pos})")


def wup_similarity(o: Ontology, c1: ConceptRef, c2: ConceptRef) -> float:
    """Wu-Palmer similarity ``2*N3 / (N1 + N2 + 2*N3)``.

    Comparing the root with itself gives 1.  Any other pair whose least common
    subsumer is the root would score 0, which is lifted to ``SIMILARITY_FLOOR``.
    """
    _check_pos(o, c1, c2)
    n1, n2, n3 = path_lengths(o, c1, c2)
    if n1 == n2 == n3 == 0:
        return 1.0
    return max(2 * n3 / (n1 + n2 + 2 * n3), SIMILARITY_FLOOR)


WUP = MetricDescriptor("wup", 1.0, wup_similarity)

_REGISTRY: dict[str, MetricDescriptor] = {WUP.name: WUP}


def register_metric(metric: MetricDescriptor) -> None:
    _REGISTRY[metric.name] = metric


def get_metric(name: str) -> MetricDescriptor:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise UnknownMetricError(f"unknown similarity metric {name!r}; available: {known}") from None


def available_metrics() -> list[str]:
    return sorted(_REGISTRY)


def similarity(
    metric: Union[MetricDescriptor, str], o: Ontology, c1: ConceptRef, c2: ConceptRef
) -> float:
    if isinstance(metric, str):
        metric = get_metric(metric)
    return metric(o, c1, c2)
