"""Concept enumeration, the concept lattice, and line-diagram export."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable, Optional

from lattice_tax import kernels
from lattice_tax.context import FormalContext
from lattice_tax.kernels.bitops import indices_of, mask_of

DEFAULT_CONCEPT_CAP = 1_000_000


class ConceptCapExceeded(RuntimeError):
    """Enumeration hit the configured cap.

    ``resume_intent`` is the lectically largest intent produced; a new
    enumeration over the remaining lectic range can pick up from there.
    """

    def __init__(self, count: int, resume_intent: frozenset[int]):
        super().__init__(
            f"concept cap reached after {count} concepts; "
            f"resume from intent {sorted(resume_intent)}")
        self.count = count
        self.resume_intent = resume_intent


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class FormalConcept:
    """An (extent, intent) pair closed under both derivation operators."""

    context: FormalContext
    extent: frozenset[int]
    intent: frozenset[int]

    def extent_names(self) -> list[str]:
        return self.context.object_names(self.extent)

    def intent_names(self) -> list[str]:
        return self.context.attribute_names(self.intent)

    def __repr__(self) -> str:
        return f"FormalConcept({self.extent_names()} | {self.intent_names()})"


def enumerate_concepts(
    ctx: FormalContext,
    *,
    cap: Optional[int] = DEFAULT_CONCEPT_CAP,
    progress: Optional[Callable[[int], None]] = None,
) -> list[FormalConcept]:
    """All formal concepts, intents in strictly increasing lectic order.

    The lectic order ties to the context's attribute input order.  Raises
    :class:`ConceptCapExceeded` when more than ``cap`` concepts exist.
    """
    intents, done = kernels.closed_intents(ctx.row_masks, ctx.n_attributes, cap, progress)
    if not done:
        raise ConceptCapExceeded(len(intents), frozenset(indices_of(intents[-1])))
    out = []
    for b in intents:
        e = kernels.extent_of(ctx.row_masks, b)
        out.append(FormalConcept(ctx, frozenset(indices_of(e)), frozenset(indices_of(b))))
    return out


def concept_order(c1: FormalConcept, c2: FormalConcept) -> Order:
    """Compare by extent inclusion (agrees with reverse intent inclusion)."""
    if c1.context != c2.context:
        raise ValueError("concepts belong to different contexts")
    if c1.extent == c2.extent:
        return Order.EQUAL
    if c1.extent < c2.extent:
        return Order.LESS
    if c1.extent > c2.extent:
        return Order.GREATER
    return Order.INCOMPARABLE


@dataclass(frozen=True)
class ConceptLattice:
    """Concepts in lectic intent order plus the covering relation of <=.

    ``covers`` holds (child index, parent index) pairs and is the transitive
    reduction of the extent-inclusion order.
    """

    context: FormalContext
    concepts: tuple[FormalConcept, ...]
    covers: frozenset[tuple[int, int]]

    @property
    def top(self) -> FormalConcept:
        return self.concepts[0]

    @property
    def bottom(self) -> FormalConcept:
        return self.concepts[-1]

    def parents(self, i: int) -> list[int]:
        return sorted(p for c, p in self.covers if c == i)

    def children(self, i: int) -> list[int]:
        return sorted(c for c, p in self.covers if p == i)

    def index_of(self, concept: FormalConcept) -> int:
        for i, c in enumerate(self.concepts):
            if c.intent == concept.intent:
                return i
        raise ValueError("concept not in lattice")


def build_lattice(
    ctx: FormalContext,
    *,
    cap: Optional[int] = DEFAULT_CONCEPT_CAP,
    progress: Optional[Callable[[int], None]] = None,
) -> ConceptLattice:
    concepts = enumerate_concepts(ctx, cap=cap, progress=progress)
    extents = [mask_of(c.extent) for c in concepts]
    edges = kernels.cover_edges(extents, ctx.row_masks, ctx.n_attributes)
    return ConceptLattice(ctx, tuple(concepts), frozenset(edges))


def reduced_labels(lattice: ConceptLattice) -> tuple[list[list[str]], list[list[str]]]:
    """Reduced labeling: (object labels, attribute labels) per concept index.

    Attribute m labels its attribute concept (m', m''); object g labels its
    object concept (g'', g').  Every name labels exactly one node.
    """
    ctx = lattice.context
    by_intent = {mask_of(c.intent): i for i, c in enumerate(lattice.concepts)}
    obj_labels: list[list[str]] = [[] for _ in lattice.concepts]
    attr_labels: list[list[str]] = [[] for _ in lattice.concepts]
    for m, name in enumerate(ctx.attributes):
        closed = kernels.close_intent(ctx.row_masks, ctx.n_attributes, 1 << m)
        attr_labels[by_intent[closed]].append(name)
    for g, name in enumerate(ctx.objects):
        intent = ctx.row_masks[g]  # {g}' is exactly the object's row
        closed = kernels.close_intent(ctx.row_masks, ctx.n_attributes, intent)
        obj_labels[by_intent[closed]].append(name)
    return obj_labels, attr_labels


@dataclass(frozen=True)
class DiagramNode:
    id: int
    layer: int
    position: int
    extent_size: int
    extent: tuple[str, ...]
    intent: tuple[str, ...]
    object_labels: tuple[str, ...]
    attribute_labels: tuple[str, ...]


@dataclass(frozen=True)
class LineDiagram:
    nodes: tuple[DiagramNode, ...]
    edges: tuple[tuple[int, int], ...]  # (parent id, child id), sorted


def make_line_diagram(lattice: ConceptLattice) -> LineDiagram:
    """Layer by longest path from the top concept; within-layer order is lectic."""
    n = len(lattice.concepts)
    layer = [0] * n
    for child, parent in sorted(lattice.covers, key=lambda e: e[0]):
        # parent index < child index: lectic order is topological for covers
        layer[child] = max(layer[child], layer[parent] + 1)
    position = [0] * n
    per_layer: dict[int, int] = {}
    for i in range(n):
        position[i] = per_layer.get(layer[i], 0)
        per_layer[layer[i]] = position[i] + 1
    obj_labels, attr_labels = reduced_labels(lattice)
    nodes = tuple(
        DiagramNode(
            id=i,
            layer=layer[i],
            position=position[i],
            extent_size=len(c.extent),
            extent=tuple(c.extent_names()),
            intent=tuple(c.intent_names()),
            object_labels=tuple(obj_labels[i]),
            attribute_labels=tuple(attr_labels[i]),
        )
        for i, c in enumerate(lattice.concepts)
    )
    edges = tuple(sorted((p, c) for c, p in lattice.covers))
    return LineDiagram(nodes, edges)


def diagram_to_dict(diagram: LineDiagram) -> dict:
    return {
        "nodes": [
            {
                "id": node.id,
                "layer": node.layer,
                "extent": list(node.extent),
                "intent": list(node.intent),
                "objectLabels": list(node.object_labels),
                "attributeLabels": list(node.attribute_labels),
            }
            for node in diagram.nodes
        ],
        "edges": [{"parent": p, "child": c} for p, c in diagram.edges],
    }


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_diagram(lattice: ConceptLattice, format: str) -> str:
    """Serialize the line diagram; ``format`` is ``diagram-json`` or ``dot``."""
    diagram = make_line_diagram(lattice)
    if format == "diagram-json":
        return json.dumps(diagram_to_dict(diagram), indent=2) + "\n"
    if format == "dot":
        lines = ["digraph lattice {", "  rankdir=TB;"]
        for node in diagram.nodes:
            label = f"{', '.join(node.object_labels)} | {', '.join(node.attribute_labels)}"
            lines.append(f'  n{node.id} [label="{_dot_escape(label)}"];')
        for p, c in diagram.edges:
            lines.append(f"  n{p} -> n{c};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown diagram format {format!r} (expected 'diagram-json' or 'dot')")
