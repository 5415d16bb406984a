"""Bind VGH terms to ontology concepts.

Leaf senses come from the ``term#k`` annotation (sense 1 when absent).  An
ancestor term takes the sense that appears among the hypernyms of the leaf being
generalized; when none does, it falls back to its annotation and the binding is
marked as lying outside the leaf's hypernym tree (a sister-term generalization).
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, TextIO, Union

from .errors import ConfigError, ResolutionError, UnbalancedVghError
from .ontology import Concept, Ontology, concepts_for_word, normalize_lemma
from .vgh import Vgh, VghNode

NOT_FOUND = "not-found"
SENSE_OUT_OF_RANGE = "sense-out-of-range"


@dataclass(frozen=True)
class NominalizationMap:
    """Adjective -> noun replacements applied before ontology lookup."""

    entries: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for adj, noun in self.entries.items():
            key, value = normalize_lemma(adj), normalize_lemma(noun)
            if not key or not value:
                raise ConfigError(f"empty nominalization entry {adj!r} => {noun!r}")
            if key == value:
                raise ConfigError(f"nominalization maps {adj!r} to itself")
            clean[key] = value
        object.__setattr__(self, "entries", clean)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def parse(cls, source: Union[str, TextIO, Iterable[str]], filename: str | None = None) -> "NominalizationMap":
        lines = io.StringIO(source) if isinstance(source, str) else source
        entries: dict[str, str] = {}
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            adj, sep, noun = line.partition("=>")
            if not sep or not adj.strip() or not noun.strip():
                raise ConfigError("expected 'adjective => noun'", lineno, filename)
            key = normalize_lemma(adj)
            if key in entries:
                raise ConfigError(f"{adj.strip()!r} mapped twice", lineno, filename)
            if key == normalize_lemma(noun):
                raise ConfigError(f"{adj.strip()!r} maps to itself", lineno, filename)
            entries[key] = noun
        return cls(entries)

    @classmethod
    def from_file(cls, path) -> "NominalizationMap":
        with open(Path(path), encoding="utf-8") as fh:
            return cls.parse(fh, filename=str(path))


def nominalize(term: str, m: NominalizationMap | None) -> str:
    key = normalize_lemma(term)
    if m is None:
        return key
    return m.entries.get(key, key)


@dataclass(frozen=True)
class Binding:
    concept: Concept
    sense: int
    # False only for an ancestor picked outside the leaf's hypernym tree
    in_hypernyms: bool = True


def _pick_sense(node: VghNode, word: str, candidates: list[Concept]) -> Binding:
    sense = node.sense or 1
    if sense > len(candidates):
        raise ResolutionError(
            node.term,
            SENSE_OUT_OF_RANGE,
            f"{node.label!r}: sense {sense} requested but {word!r} has {len(candidates)} sense(s)",
        )
    return Binding(candidates[sense - 1], sense)


def resolve_node(
    node: VghNode,
    o: Ontology,
    pos: str = "noun",
    hypernyms: Iterable[Concept | str] | None = None,
    nominalization: NominalizationMap | None = None,
) -> Binding:
    """Map one VGH node to a concept.

    ``hypernyms`` is ``None`` when ``node`` is resolved as a leaf.  For an
    ancestor it holds the hypernym closure of the leaf concept being generalized.
    """
    word = nominalize(node.term, nominalization)
    candidates = concepts_for_word(o, word, pos)
    if not candidates:
        raise ResolutionError(node.term, NOT_FOUND, f"{word!r} ({pos}) is not in the ontology")
    if hypernyms is None:
        return _pick_sense(node, word, candidates)

    allowed = {h.id if isinstance(h, Concept) else h for h in hypernyms}
    inside = [(i, c) for i, c in enumerate(candidates, start=1) if c.id in allowed]
    if inside:
        # several senses on the path: take the most specific
        sense, chosen = min(inside, key=lambda ic: (-ic[1].depth, ic[1].id))
        return Binding(chosen, sense, True)
    fallback = _pick_sense(node, word, candidates)
    return Binding(fallback.concept, fallback.sense, False)


@dataclass
class ResolvedVgh:
    vgh: Vgh
    # one concept per node; an ancestor shows the sense chosen for its first leaf
    bindings: dict[VghNode, Concept]
    unresolved: list[tuple[VghNode, str]]
    leaf_bindings: dict[VghNode, Binding]
    # keyed by (leaf, ancestor); ancestors may bind differently per leaf
    transitions: dict[tuple[VghNode, VghNode], Binding]
    failures: dict[tuple[VghNode, VghNode], str]

    def transition(self, leaf: VghNode, ancestor: VghNode) -> Binding | None:
        return self.transitions.get((leaf, ancestor))


def resolve_vgh(
    v: Vgh,
    o: Ontology,
    pos: str = "noun",
    nominalization: NominalizationMap | None = None,
) -> ResolvedVgh:
    """Resolve every leaf, then every (leaf, ancestor) pair of a balanced VGH.

    Lookup failures are collected in ``unresolved`` / ``failures``; nothing here
    raises for missing vocabulary.
    """
    if not v.is_balanced():
        raise UnbalancedVghError(f"VGH {v.name!r} must be balanced before resolution")

    bindings: dict[VghNode, Concept] = {}
    reasons: dict[VghNode, str] = {}
    leaf_bindings: dict[VghNode, Binding] = {}
    transitions: dict[tuple[VghNode, VghNode], Binding] = {}
    failures: dict[tuple[VghNode, VghNode], str] = {}

    for leaf in v.all_leaves():
        origin = v.origin(leaf)
        chain = set()
        node = leaf
        while node is not origin:
            chain.add(node)
            node = v.parent(node)
        chain.add(origin)

        leaf_binding = None
        try:
            leaf_binding = resolve_node(origin, o, pos, None, nominalization)
        except ResolutionError as exc:
            reasons.setdefault(origin, exc.reason)
        else:
            leaf_bindings[leaf] = leaf_binding
            for n in chain:
                bindings.setdefault(n, leaf_binding.concept)
        hypernyms = o.ancestor_ids(leaf_binding.concept) if leaf_binding else frozenset()

        node = v.parent(leaf)
        while node is not None:
            key = (leaf, node)
            if node in chain:
                # balancing copies and their original generalize to themselves
                if leaf_binding is None:
                    failures[key] = reasons[origin]
                else:
                    transitions[key] = leaf_binding
            else:
                try:
                    b = resolve_node(node, o, pos, hypernyms, nominalization)
                except ResolutionError as exc:
                    reasons.setdefault(node, exc.reason)
                    failures[key] = exc.reason
                else:
                    bindings.setdefault(node, b.concept)
                    if leaf_binding is None:
                        failures[key] = f"leaf {reasons[origin]}"
                    else:
                        transitions[key] = b
            node = v.parent(node)

    unresolved = [
        (n, reasons[n]) for n in v.nodes() if not n.replicated and n not in bindings and n in reasons
    ]
    return ResolvedVgh(v, bindings, unresolved, leaf_bindings, transitions, failures)
