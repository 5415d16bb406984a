"""Reference ontology: an immutable is-a taxonomy with a lemma index.

Ontologies are read from OVF, a line format with two record kinds::

    # comment
    C <id> <pos> <lemma>[|<lemma>...]     concept (pos is n, v, a or r)
    H <child-id> <parent-id>              is-a edge

Records may appear in any order.  Lemmas use ``_`` for internal spaces.  The
order of ``C`` lines fixes sense numbers: the first concept listing a lemma is
sense 1 of that word.
"""
from __future__ import annotations

import io
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, TextIO, Union

from .errors import OntologyError, UnknownConceptError

POS_CODES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}
POS_NAMES = {name: code for code, name in POS_CODES.items()}

_SPACES = re.compile(r"\s+")


def normalize_lemma(text: str) -> str:
    """Lowercase, turn underscores into spaces and collapse whitespace."""
    return _SPACES.sub(" ", text.replace("_", " ")).strip().lower()


def normalize_pos(pos: str) -> str:
    """Return the long part-of-speech name for ``pos`` (``"n"`` or ``"noun"`` -> ``"noun"``)."""
    key = pos.strip().lower()
    if key in POS_CODES:
        return POS_CODES[key]
    if key in POS_NAMES:
        return key
    raise ValueError(f"unknown part of speech {pos!r}; expected one of {sorted(POS_NAMES)}")


@dataclass(frozen=True)
class Concept:
    id: str
    pos: str
    lemmas: tuple[str, ...]
    parents: tuple[str, ...]
    depth: int

    @property
    def name(self) -> str:
        return self.lemmas[0]

    def __str__(self) -> str:
        return f"{self.name} ({self.id})"


ConceptRef = Union[Concept, str]


@dataclass(frozen=True)
class Ontology:
    concepts: dict[str, Concept]
    root: str
    word_index: dict[tuple[str, str], tuple[str, ...]]
    edges: tuple[tuple[str, str], ...]
    _ancestors: dict[str, frozenset[str]] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.concepts)

    def __contains__(self, ref: object) -> bool:
        if isinstance(ref, Concept):
            return self.concepts.get(ref.id) == ref
        return ref in self.concepts

    def concept(self, ref: ConceptRef) -> Concept:
        cid = ref.id if isinstance(ref, Concept) else ref
        try:
            found = self.concepts[cid]
        except KeyError:
            raise UnknownConceptError(cid) from None
        if isinstance(ref, Concept) and ref != found:
            raise UnknownConceptError(cid)
        return found

    @property
    def root_concept(self) -> Concept:
        return self.concepts[self.root]

    def ancestor_ids(self, ref: ConceptRef) -> frozenset[str]:
        return self._ancestors[self.concept(ref).id]


def _lines(source: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def load_ontology(source: Union[str, TextIO, Iterable[str]], name: str | None = None) -> Ontology:
    """Parse OVF text (a string or an open text stream) and validate it.

    Raises :class:`OntologyError` for malformed lines, duplicate ids, dangling
    parents, cycles and anything other than exactly one root.
    """
    decls: dict[str, tuple[str, tuple[str, ...], int]] = {}
    edges: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "C":
            if len(parts) != 4:
                raise OntologyError("concept line needs: C <id> <pos> <lemmas>", lineno, name)
            _, cid, pos, lemma_field = parts
            if pos not in POS_CODES:
                raise OntologyError(f"bad part of speech {pos!r}", lineno, name)
            lemmas = tuple(normalize_lemma(x) for x in lemma_field.split("|"))
            if any(not lemma for lemma in lemmas):
                raise OntologyError("empty lemma", lineno, name)
            if cid in decls:
                raise OntologyError(f"duplicate concept id {cid!r}", lineno, name)
            decls[cid] = (POS_CODES[pos], lemmas, lineno)
        elif kind == "H":
            if len(parts) != 3:
                raise OntologyError("edge line needs: H <child-id> <parent-id>", lineno, name)
            edges.append((parts[1], parts[2], lineno))
        else:
            raise OntologyError(f"unknown record type {kind!r}", lineno, name)

    parents: dict[str, list[str]] = {cid: [] for cid in decls}
    children: dict[str, list[str]] = {cid: [] for cid in decls}
    for child, parent, lineno in edges:
        for cid in (child, parent):
            if cid not in decls:
                raise OntologyError(f"dangling concept id {cid!r} in edge", lineno, name)
        if parent in parents[child]:
            raise OntologyError(f"duplicate edge {child} -> {parent}", lineno, name)
        if child == parent:
            raise OntologyError(f"cycle detected: {child!r} is its own parent", lineno, name)
        parents[child].append(parent)
        children[parent].append(child)

    if not decls:
        raise OntologyError("ontology declares no concepts", None, name)
    roots = [cid for cid, ps in parents.items() if not ps]
    if len(roots) != 1:
        if not roots:
            raise OntologyError("no root concept (every concept has a parent)", None, name)
        raise OntologyError(f"multiple root concepts: {', '.join(roots)}", None, name)
    root = roots[0]

    # Kahn's algorithm from the root yields longest-path depths and detects cycles
    depth = {root: 0}
    ancestors: dict[str, frozenset[str]] = {root: frozenset()}
    pending = {cid: len(ps) for cid, ps in parents.items()}
    queue = deque([root])
    while queue:
        cid = queue.popleft()
        for child in children[cid]:
            pending[child] -= 1
            if pending[child] == 0:
                depth[child] = max(depth[p] + 1 for p in parents[child])
                acc: set[str] = set(parents[child])
                for p in parents[child]:
                    acc |= ancestors[p]
                ancestors[child] = frozenset(acc)
                queue.append(child)
    if len(depth) != len(decls):
        stuck = sorted(cid for cid in decls if cid not in depth)
        raise OntologyError(f"cycle detected among concepts: {', '.join(stuck[:10])}", None, name)

    concepts: dict[str, Concept] = {}
    index: dict[tuple[str, str], list[str]] = {}
    for cid, (pos, lemmas, _) in decls.items():
        concepts[cid] = Concept(cid, pos, lemmas, tuple(parents[cid]), depth[cid])
        for lemma in lemmas:
            senses = index.setdefault((lemma, pos), [])
            if cid not in senses:
                senses.append(cid)

    return Ontology(
        concepts=concepts,
        root=root,
        word_index={k: tuple(v) for k, v in index.items()},
        edges=tuple((c, p) for c, p, _ in edges),
        _ancestors=ancestors,
    )


def load_ontology_file(path) -> Ontology:
    with open(path, encoding="utf-8") as fh:
        return load_ontology(fh, name=str(path))


def dump_ontology(o: Ontology) -> str:
    """Serialize back to OVF: every ``C`` line in original order, then every ``H`` line."""
    out = []
    for c in o.concepts.values():
        lemmas = "|".join(lemma.replace(" ", "_") for lemma in c.lemmas)
        out.append(f"C {c.id} {POS_NAMES[c.pos]} {lemmas}\n")
    for child, parent in o.edges:
        out.append(f"H {child} {parent}\n")
    return "".join(out)


def concepts_for_word(o: Ontology, lemma: str, pos: str = "noun") -> list[Concept]:
    """All senses of ``lemma`` in sense order; empty if the word is unknown."""
    key = (normalize_lemma(lemma), normalize_pos(pos))
    return [o.concepts[cid] for cid in o.word_index.get(key, ())]


def hypernym_closure(o: Ontology, c: ConceptRef) -> set[Concept]:
    """Every proper ancestor of ``c`` (the root included, ``c`` excluded)."""
    return {o.concepts[a] for a in o.ancestor_ids(c)}


def lcs(o: Ontology, c1: ConceptRef, c2: ConceptRef) -> Concept:
    """Deepest concept subsuming both arguments; ties go to the smallest id."""
    a, b = o.concept(c1), o.concept(c2)
    common = (o.ancestor_ids(a) | {a.id}) & (o.ancestor_ids(b) | {b.id})
    best = min(common, key=lambda cid: (-o.concepts[cid].depth, cid))
    return o.concepts[best]


def path_lengths(o: Ontology, c1: ConceptRef, c2: ConceptRef) -> tuple[int, int, int]:
    """Return ``(N1, N2, N3)``: link counts from each concept to their LCS and from the LCS to the root."""
    a, b = o.concept(c1), o.concept(c2)
    sub = lcs(o, a, b)
    return a.depth - sub.depth, b.depth - sub.depth, sub.depth
