"""Value generalization hierarchies: parsing, balancing and level queries.

A VGH is written in VGF, one node per line, indented two spaces per level::

    # animals
    vertebrate
      warm-blooded
        mammal
          cat
          dog#1

A trailing ``#<digits>`` picks a sense of the term in the reference ontology.
Leaves are Level 0; the ancestor ``i`` steps above a leaf is its Level-``i``
ancestor, so the root is every leaf's Level-``h`` ancestor once the tree is
balanced.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO, Union

from .errors import UnbalancedVghError, VghFormatError
from .ontology import normalize_lemma

INDENT = 2
_SENSE_SUFFIX = re.compile(r"^(.*?)#(\d+)$")


@dataclass(eq=False)
class VghNode:
    """One VGH term.  Nodes compare and hash by identity."""

    term: str
    sense: int | None = None
    children: tuple["VghNode", ...] = ()
    replicated: bool = False

    @property
    def key(self) -> str:
        return normalize_lemma(self.term)

    @property
    def label(self) -> str:
        return self.term if self.sense is None else f"{self.term}#{self.sense}"

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["VghNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def shape(self) -> tuple:
        """Hashable structural summary used for equality checks."""
        return (self.term, self.sense, self.replicated, tuple(c.shape() for c in self.children))

    def __repr__(self) -> str:
        tag = " (replicated)" if self.replicated else ""
        return f"VghNode({self.label!r}{tag}, {len(self.children)} children)"


@dataclass(frozen=True, eq=False)
class Vgh:
    root: VghNode
    name: str = "vgh"
    _parent: dict = field(init=False, repr=False)
    _depth: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        parent: dict[VghNode, VghNode | None] = {self.root: None}
        depth = {self.root: 0}
        stack = [self.root]
        while stack:
            node = stack.pop()
            for child in node.children:
                if child in parent:
                    raise VghFormatError(f"node {child.label!r} appears twice; a VGH must be a tree")
                parent[child] = node
                depth[child] = depth[node] + 1
                stack.append(child)
        object.__setattr__(self, "_parent", parent)
        object.__setattr__(self, "_depth", depth)

    @property
    def height(self) -> int:
        return max(self._depth.values())

    def nodes(self) -> list[VghNode]:
        return list(self.root.walk())

    def parent(self, node: VghNode) -> VghNode | None:
        return self._parent[node]

    def depth(self, node: VghNode) -> int:
        return self._depth[node]

    def __contains__(self, node: object) -> bool:
        return node in self._parent

    def all_leaves(self) -> list[VghNode]:
        """Leaves in document order, whatever their depth."""
        return [n for n in self.root.walk() if n.is_leaf]

    def is_balanced(self) -> bool:
        h = self.height
        return all(self._depth[n] == h for n in self.all_leaves())

    def shallow_leaves(self) -> list[VghNode]:
        h = self.height
        return [n for n in self.all_leaves() if self._depth[n] < h]

    def origin(self, node: VghNode) -> VghNode:
        """The original (non-replicated) node a balancing copy was made from."""
        while node.replicated:
            node = self._parent[node]
        return node

    def shape(self) -> tuple:
        return self.root.shape()


def _lines(source: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    return io.StringIO(source) if isinstance(source, str) else source


def parse_token(text: str) -> tuple[str, int | None]:
    """Split ``"salmon#1"`` into ``("salmon", 1)``; only a trailing ``#digits`` is a sense."""
    text = text.strip()
    m = _SENSE_SUFFIX.match(text)
    if m and m.group(1).strip():
        return m.group(1).strip(), int(m.group(2))
    return text, None


def parse_vgh(source: Union[str, TextIO, Iterable[str]], name: str = "vgh", filename: str | None = None) -> Vgh:
    """Parse VGF text into a (possibly unbalanced) :class:`Vgh`."""
    # each frame: [term, sense, children]
    stack: list[list] = []
    top = None
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.rstrip("\r\n")
        body = line.lstrip(" ")
        if not body.strip() or body.startswith("#"):
            continue
        if body[0] == "\t":
            raise VghFormatError("tabs are not allowed in indentation", lineno, filename)
        indent = len(line) - len(body)
        if indent % INDENT:
            raise VghFormatError(
                f"indentation of {indent} spaces is not a multiple of {INDENT}", lineno, filename
            )
        level = indent // INDENT
        term, sense = parse_token(body)
        if not normalize_lemma(term):
            raise VghFormatError("empty term", lineno, filename)
        if sense is not None and sense < 1:
            raise VghFormatError(f"sense numbers start at 1, got #{sense}", lineno, filename)
        if top is None:
            if level != 0:
                raise VghFormatError("the root must not be indented", lineno, filename)
            top = [term, sense, []]
            stack = [top]
            continue
        if level == 0:
            raise VghFormatError(f"second root {term!r}; a VGH has exactly one root", lineno, filename)
        if level > len(stack):
            raise VghFormatError(
                f"indentation jumps from depth {len(stack) - 1} to {level}", lineno, filename
            )
        del stack[level:]
        parent = stack[-1]
        key = normalize_lemma(term)
        if any(normalize_lemma(sib[0]) == key for sib in parent[2]):
            raise VghFormatError(f"duplicate sibling term {term!r} under {parent[0]!r}", lineno, filename)
        frame = [term, sense, []]
        parent[2].append(frame)
        stack.append(frame)
    if top is None:
        raise VghFormatError("empty VGH file", None, filename)

    def build(frame) -> VghNode:
        return VghNode(frame[0], frame[1], tuple(build(c) for c in frame[2]))

    return Vgh(build(top), name=name)


def load_vgh_file(path, name: str | None = None) -> Vgh:
    p = Path(path)
    with open(p, encoding="utf-8") as fh:
        return parse_vgh(fh, name=name or p.stem, filename=str(p))


def dump_vgh(v: Vgh) -> str:
    out = []

    def emit(node: VghNode, level: int) -> None:
        out.append(" " * (INDENT * level) + node.label + "\n")
        for child in node.children:
            emit(child, level + 1)

    emit(v.root, 0)
    return "".join(out)


def balance(v: Vgh) -> Vgh:
    """Extend every shallow leaf with a chain of replicated copies down to depth ``h``.

    A balanced input is returned as is.
    """
    if v.is_balanced():
        return v
    h = v.height

    def copy(node: VghNode, depth: int) -> VghNode:
        if node.is_leaf:
            chain = None
            for _ in range(h - depth):
                below = (chain,) if chain is not None else ()
                chain = VghNode(node.term, node.sense, below, replicated=True)
            below = (chain,) if chain is not None else ()
            return VghNode(node.term, node.sense, below, node.replicated)
        return VghNode(node.term, node.sense, tuple(copy(c, depth + 1) for c in node.children), node.replicated)

    return Vgh(copy(v.root, 0), name=v.name)


def leaf_nodes(v: Vgh) -> list[VghNode]:
    if not v.is_balanced():
        raise UnbalancedVghError(f"VGH {v.name!r} is not height-balanced; call balance() first")
    return v.all_leaves()


def ancestor_at_level(v: Vgh, leaf: VghNode, level: int) -> VghNode:
    if not v.is_balanced():
        raise UnbalancedVghError(f"VGH {v.name!r} is not height-balanced; call balance() first")
    if leaf not in v or not leaf.is_leaf:
        raise ValueError(f"{leaf!r} is not a leaf of VGH {v.name!r}")
    if not 1 <= level <= v.height:
        raise ValueError(f"level {level} outside 1..{v.height}")
    node = leaf
    for _ in range(level):
        node = v.parent(node)
    return node
