"""
Dense simple graphs on vertices 0..n-1 with bitset neighborhoods.

Neighborhoods are Python ints used as bitsets, so the same representation serves
every n; for n <= 64 they fit a machine word.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from src.utils.exceptions import GraphMismatchError, InvalidParameterError, Side, WsatErrorCodes

if TYPE_CHECKING:
    import networkx as nx


def bit(v: int) -> int:
    return 1 << v


def iter_bits(mask: int) -> Iterator[int]:
    """Vertices of a bitset in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Edge(NamedTuple):
    """Undirected edge with u < v"""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise InvalidParameterError(f"loop at vertex {a}", WsatErrorCodes.LOOP_EDGE)
        if a < 0 or b < 0:
            raise InvalidParameterError(f"negative vertex in edge ({a}, {b})", WsatErrorCodes.EDGE_OUT_OF_RANGE)
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{self.u} {self.v}"


class Graph:
    """Immutable undirected simple graph"""

    __slots__ = ("_n", "_adj", "_edge_count")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0:
            raise InvalidParameterError(f"vertex count must be non-negative, got {n}")
        if len(adj) != n:
            raise GraphMismatchError(
                f"expected {n} neighborhoods, got {len(adj)}", WsatErrorCodes.VERTEX_COUNT_MISMATCH
            )
        full = (1 << n) - 1
        total = 0
        for v, nbrs in enumerate(adj):
            if nbrs & ~full or nbrs < 0:
                raise InvalidParameterError(f"vertex {v} has neighbors outside 0..{n - 1}", WsatErrorCodes.EDGE_OUT_OF_RANGE)
            if (nbrs >> v) & 1:
                raise InvalidParameterError(f"loop at vertex {v}", WsatErrorCodes.LOOP_EDGE)
            for w in iter_bits(nbrs):
                if not (adj[w] >> v) & 1:
                    raise GraphMismatchError(f"asymmetric adjacency between {v} and {w}")
            total += bin(nbrs).count("1")
        self._n = n
        self._adj: Tuple[int, ...] = tuple(adj)
        self._edge_count = total // 2

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        builder = GraphBuilder(n)
        for a, b in edges:
            builder.add_edge(a, b)
        return builder.build()

    @property
    def n(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def adj(self, v: int) -> int:
        """Neighborhood of v as a bitset"""
        return self._adj[v]

    @property
    def adjacency(self) -> Tuple[int, ...]:
        return self._adj

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def degrees(self) -> List[int]:
        return [bin(a).count("1") for a in self._adj]

    def has_edge(self, a: int, b: int) -> bool:
        if a == b or not (0 <= a < self._n and 0 <= b < self._n):
            return False
        return bool((self._adj[a] >> b) & 1)

    def edges(self) -> List[Edge]:
        """Edges in lexicographic order"""
        out = []
        for u in range(self._n):
            for v in iter_bits(self._adj[u] >> (u + 1)):
                out.append(Edge(u, u + 1 + v))
        return out

    def edge_set(self) -> frozenset:
        return frozenset(self.edges())

    def with_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = list(self._adj)
        changed = False
        for a, b in edges:
            e = Edge.of(a, b)
            if e.v >= self._n:
                raise InvalidParameterError(f"edge {e} outside 0..{self._n - 1}", WsatErrorCodes.EDGE_OUT_OF_RANGE)
            if not (adj[e.u] >> e.v) & 1:
                adj[e.u] |= 1 << e.v
                adj[e.v] |= 1 << e.u
                changed = True
        return Graph._trusted(self._n, adj) if changed else self

    def with_edge(self, a: int, b: int) -> "Graph":
        return self.with_edges([(a, b)])

    def without_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = list(self._adj)
        for a, b in edges:
            e = Edge.of(a, b)
            adj[e.u] &= ~(1 << e.v)
            adj[e.v] &= ~(1 << e.u)
        return Graph._trusted(self._n, adj)

    def is_subgraph_of(self, other: "Graph") -> bool:
        """Spanning subgraph test: same vertex set, E(self) within E(other)"""
        if self._n != other._n:
            return False
        return all(a & ~b == 0 for a, b in zip(self._adj, other._adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex perm[v] plays the role of v"""
        adj = [0] * self._n
        for v in range(self._n):
            adj[perm[v]] = mask_of(perm[w] for w in iter_bits(self._adj[v]))
        return Graph._trusted(self._n, adj)

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        digest.update(f"n {self._n}\n".encode())
        for e in self.edges():
            digest.update(f"{e.u} {e.v}\n".encode())
        return digest.hexdigest()[:16]

    def to_networkx(self) -> "nx.Graph":
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> "Graph":
        """Skip validation for adjacency produced by this module"""
        g = cls.__new__(cls)
        g._n = n
        g._adj = tuple(adj)
        g._edge_count = sum(bin(a).count("1") for a in adj) // 2
        return g

    def __getstate__(self) -> Tuple[int, Tuple[int, ...]]:
        return (self._n, self._adj)

    def __setstate__(self, state: Tuple[int, Tuple[int, ...]]) -> None:
        self._n, self._adj = state
        self._edge_count = sum(bin(a).count("1") for a in self._adj) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self._edge_count})"


class GraphBuilder:
    """Single-owner mutable builder; `build()` freezes the result"""

    def __init__(self, n: int):
        if n < 0:
            raise InvalidParameterError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._adj = [0] * n

    @classmethod
    def from_graph(cls, graph: Graph) -> "GraphBuilder":
        builder = cls(graph.n)
        builder._adj = list(graph.adjacency)
        return builder

    def add_edge(self, a: int, b: int) -> "GraphBuilder":
        e = Edge.of(a, b)
        if e.v >= self.n:
            raise InvalidParameterError(f"edge {e} outside 0..{self.n - 1}", WsatErrorCodes.EDGE_OUT_OF_RANGE)
        self._adj[e.u] |= 1 << e.v
        self._adj[e.v] |= 1 << e.u
        return self

    def add_clique(self, vertices: Iterable[int]) -> "GraphBuilder":
        vs = list(vertices)
        for i, a in enumerate(vs):
            for b in vs[i + 1 :]:
                self.add_edge(a, b)
        return self

    def add_biclique(self, left: Iterable[int], right: Iterable[int]) -> "GraphBuilder":
        rs = list(right)
        for a in left:
            for b in rs:
                self.add_edge(a, b)
        return self

    def build(self) -> Graph:
        return Graph._trusted(self.n, self._adj)


@dataclass(frozen=True)
class SideLabeling:
    """Bipartition of 0..n-1 into Left and Right"""

    n: int
    left_mask: int

    def __post_init__(self) -> None:
        if self.left_mask & ~((1 << self.n) - 1):
            raise InvalidParameterError("left class contains vertices outside the graph")

    @classmethod
    def from_left_count(cls, n: int, ell: int) -> "SideLabeling":
        if not 0 <= ell <= n:
            raise InvalidParameterError(f"left class size {ell} outside 0..{n}")
        return cls(n, (1 << ell) - 1)

    @property
    def right_mask(self) -> int:
        return ((1 << self.n) - 1) & ~self.left_mask

    @property
    def ell(self) -> int:
        return bin(self.left_mask).count("1")

    @property
    def m(self) -> int:
        return self.n - self.ell

    def side(self, v: int) -> Side:
        return Side.LEFT if (self.left_mask >> v) & 1 else Side.RIGHT

    def is_left(self, v: int) -> bool:
        return bool((self.left_mask >> v) & 1)

    def is_contiguous(self) -> bool:
        """Left is exactly 0..ell-1 (the only layout the edge-list format can express)"""
        return self.left_mask == (1 << self.ell) - 1

    def crosses(self, a: int, b: int) -> bool:
        return self.is_left(a) != self.is_left(b)

    def check_graph(self, graph: Graph) -> Optional[Edge]:
        """First same-side edge of graph, or None when graph respects the bipartition"""
        if graph.n != self.n:
            raise GraphMismatchError(
                f"labeling covers {self.n} vertices, graph has {graph.n}", WsatErrorCodes.VERTEX_COUNT_MISMATCH
            )
        for e in graph.edges():
            if not self.crosses(e.u, e.v):
                return e
        return None
