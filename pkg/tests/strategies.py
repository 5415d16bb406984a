"""Hypothesis strategies for random ontologies and VGHs."""
from __future__ import annotations

from hypothesis import assume
from hypothesis import strategies as st
from hypothesis.strategies import DrawFn, composite

from vgh_judge.ontology import load_ontology
from vgh_judge.vgh import parse_vgh

# a few lemmas shared between concepts so some words have several senses
SHARED = ["bank", "bow", "crane"]


@composite
def ovf_texts(draw: DrawFn, max_concepts: int = 50, dag: bool = False) -> str:
    n = draw(st.integers(1, max_concepts))
    lines = []
    edges = []
    for i in range(n):
        # one draw per concept: two bits each for shared lemma, long name, extra parent
        flags = draw(st.integers(0, 63))
        lemmas = [f"w{i}"]
        if flags & 3 == 3:
            lemmas.append(draw(st.sampled_from(SHARED)))
        if flags & 12 == 12:
            lemmas.append(f"long_name_{i}")
        lines.append(f"C c{i:03d} n {'|'.join(lemmas)}")
        if i:
            parents = {draw(st.integers(0, i - 1))}
            if dag and flags & 48 == 0:
                parents.add(draw(st.integers(0, i - 1)))
            edges.extend(f"H c{i:03d} c{p:03d}" for p in sorted(parents))
    edges = draw(st.permutations(edges))
    return "\n".join(lines + list(edges)) + "\n"


@composite
def ontologies(draw: DrawFn, max_concepts: int = 50, dag: bool = False):
    return load_ontology(draw(ovf_texts(max_concepts=max_concepts, dag=dag)))


def vgf_from_parents(parent: list[int], labels: list[str]) -> str:
    children: dict[int, list[int]] = {}
    for i, p in enumerate(parent[1:], start=1):
        children.setdefault(p, []).append(i)
    out = []

    def emit(i: int, depth: int) -> None:
        out.append("  " * depth + labels[i])
        for c in children.get(i, []):
            emit(c, depth + 1)

    emit(0, 0)
    return "\n".join(out) + "\n"


@composite
def vgf_shapes(draw: DrawFn, max_nodes: int = 12, max_leaves: int = 10) -> list[int]:
    n = draw(st.integers(1, max_nodes))
    parent = [-1] + [draw(st.integers(0, i - 1)) for i in range(1, n)]
    leaves = sum(1 for i in range(n) if i not in parent[1:])
    assume(leaves <= max_leaves)
    return parent


@composite
def vgf_texts(draw: DrawFn) -> str:
    """Free-form VGF text: terms with spaces, hyphens and sense suffixes."""
    parent = draw(vgf_shapes(max_nodes=15, max_leaves=15))
    word = st.text(alphabet="abcdefghij-", min_size=1, max_size=6).filter(lambda w: w.strip("-"))
    labels = []
    for i in range(len(parent)):
        parts = draw(st.lists(word, min_size=1, max_size=3))
        # the index suffix keeps sibling terms distinct
        label = " ".join(parts) + f" n{i}"
        if draw(st.booleans()):
            label += f"#{draw(st.integers(1, 9))}"
        labels.append(label)
    return vgf_from_parents(parent, labels)


@composite
def vgh_over(draw: DrawFn, o, max_leaves: int = 10):
    """A random VGH whose terms are distinct lemmas of ``o``."""
    words = sorted({lemma for (lemma, pos) in o.word_index if pos == "noun"})
    parent = draw(vgf_shapes(max_nodes=min(12, len(words)), max_leaves=max_leaves))
    terms = draw(st.lists(st.sampled_from(words), min_size=len(parent), max_size=len(parent), unique=True))
    labels = []
    for t in terms:
        senses = len(o.word_index[(t, "noun")])
        if senses > 1 and draw(st.booleans()):
            t = f"{t}#{draw(st.integers(1, senses))}"
        labels.append(t)
    return parse_vgh(vgf_from_parents(parent, labels), name="random")


@composite
def ontology_and_vgh(draw: DrawFn, dag: bool = False):
    o = draw(ontologies(max_concepts=30, dag=dag))
    return o, draw(vgh_over(o))
