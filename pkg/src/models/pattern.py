"""
Pattern descriptors for H and the witnesses that certify a copy of H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from src.models.graph import Edge, Graph, GraphBuilder
from src.utils.exceptions import InvalidParameterError, WsatErrorCodes


class PatternKind(Enum):
    COMPLETE_MULTIPARTITE = "complete_multipartite"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class Pattern:
    """Either a complete multipartite signature or an explicit small graph"""

    kind: PatternKind
    sizes: Tuple[int, ...] = ()
    graph: Optional[Graph] = None

    def __post_init__(self) -> None:
        if self.kind is PatternKind.COMPLETE_MULTIPARTITE:
            if len(self.sizes) < 2:
                raise InvalidParameterError(
                    f"a complete multipartite pattern needs at least two classes, got {list(self.sizes)}",
                    WsatErrorCodes.EDGELESS_PATTERN,
                )
            if any(a < 1 for a in self.sizes):
                raise InvalidParameterError(f"class sizes must be positive, got {list(self.sizes)}")
        else:
            if self.graph is None or self.graph.edge_count < 1:
                raise InvalidParameterError("an explicit pattern needs at least one edge", WsatErrorCodes.EDGELESS_PATTERN)

    @classmethod
    def kst(cls, s: int, t: int) -> "Pattern":
        return cls(PatternKind.COMPLETE_MULTIPARTITE, (s, t))

    @classmethod
    def clique(cls, r: int) -> "Pattern":
        return cls(PatternKind.COMPLETE_MULTIPARTITE, (1,) * r)

    @classmethod
    def multipartite(cls, sizes) -> "Pattern":
        return cls(PatternKind.COMPLETE_MULTIPARTITE, tuple(sizes))

    @classmethod
    def ktk(cls, t: int, k: int) -> "Pattern":
        return cls(PatternKind.COMPLETE_MULTIPARTITE, (t,) * k)

    @classmethod
    def explicit(cls, graph: Graph) -> "Pattern":
        return cls(PatternKind.EXPLICIT, (), graph)

    @property
    def is_multipartite(self) -> bool:
        return self.kind is PatternKind.COMPLETE_MULTIPARTITE

    @property
    def is_bipartite_kst(self) -> bool:
        return self.is_multipartite and len(self.sizes) == 2

    @property
    def vertex_count(self) -> int:
        if self.is_multipartite:
            return sum(self.sizes)
        return self.graph.n

    @property
    def edge_count(self) -> int:
        if self.is_multipartite:
            total = sum(self.sizes)
            return (total * total - sum(a * a for a in self.sizes)) // 2
        return self.graph.edge_count

    @property
    def min_degree(self) -> int:
        if self.is_multipartite:
            return self.vertex_count - max(self.sizes)
        return min(self.graph.degrees())

    def to_graph(self) -> Graph:
        """Pattern as a graph; multipartite classes occupy consecutive indices"""
        if not self.is_multipartite:
            return self.graph
        builder = GraphBuilder(self.vertex_count)
        starts = []
        offset = 0
        for a in self.sizes:
            starts.append(range(offset, offset + a))
            offset += a
        for i, ci in enumerate(starts):
            for cj in starts[i + 1 :]:
                builder.add_biclique(ci, cj)
        return builder.build()

    @property
    def literal(self) -> str:
        if not self.is_multipartite:
            return f"explicit:{self.graph.n}:{self.graph.edge_count}"
        if len(self.sizes) == 2:
            return f"kst:{self.sizes[0]},{self.sizes[1]}"
        if all(a == 1 for a in self.sizes):
            return f"clique:{len(self.sizes)}"
        if len(set(self.sizes)) == 1:
            return f"ktk:{self.sizes[0]}^{len(self.sizes)}"
        return "multi:" + ",".join(str(a) for a in self.sizes)

    def __str__(self) -> str:
        return self.literal


@dataclass(frozen=True)
class CopyWitness:
    """Embedding of a pattern: mapping[i] is the host image of pattern vertex i.

    For complete multipartite patterns `classes[c]` lists the host vertices of class c
    and `mapping` is the concatenation of the classes.
    """

    mapping: Tuple[int, ...]
    classes: Tuple[Tuple[int, ...], ...] = field(default=())
    anchor: Optional[Edge] = None

    @classmethod
    def from_classes(cls, classes, anchor: Optional[Edge] = None) -> "CopyWitness":
        frozen = tuple(tuple(sorted(c)) for c in classes)
        mapping = tuple(v for c in frozen for v in c)
        return cls(mapping, frozen, anchor)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.mapping)

    def class_sets(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)
