"""
Host generators and graph transforms shared by every module.
"""

from typing import List, Tuple

from src.models.graph import Edge, Graph, GraphBuilder, SideLabeling, iter_bits
from src.utils.exceptions import GraphMismatchError, InvalidParameterError, WsatErrorCodes


def _require_count(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 0:
        raise InvalidParameterError(f"{name} must be a non-negative integer, got {value}")


def complete_graph(n: int) -> Graph:
    """K_n on 0..n-1"""
    _require_count("n", n)
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~(1 << v) for v in range(n)])


def complete_bipartite(ell: int, m: int) -> Tuple[Graph, SideLabeling]:
    """K_{ell,m}: vertices 0..ell-1 Left, ell..ell+m-1 Right"""
    _require_count("ell", ell)
    _require_count("m", m)
    n = ell + m
    sides = SideLabeling.from_left_count(n, ell)
    adj = [sides.right_mask if v < ell else sides.left_mask for v in range(n)]
    return Graph._trusted(n, adj), sides


def cone(graph: Graph, k: int, clique: bool = False) -> Graph:
    """Append k vertices joined to all of V(G); joined to each other only when `clique` is set"""
    _require_count("k", k)
    n = graph.n
    base = (1 << n) - 1
    new_mask = ((1 << (n + k)) - 1) & ~base
    adj = [graph.adj(v) | new_mask for v in range(n)]
    for x in range(n, n + k):
        nbrs = base
        if clique:
            nbrs |= new_mask & ~(1 << x)
        adj.append(nbrs)
    return Graph._trusted(n + k, adj)


def bipartite_cone(graph: Graph, sides: SideLabeling, k: int) -> Tuple[Graph, SideLabeling]:
    """Add k Left vertices joined to every original Right vertex and k Right vertices joined to every
    original Left vertex. The result keeps Left contiguous: original Left, new Left, original Right, new Right.
    """
    _require_count("k", k)
    bad = sides.check_graph(graph)
    if bad is not None:
        raise GraphMismatchError(f"edge {bad} joins two vertices of the same side", WsatErrorCodes.SAME_SIDE_EDGE)
    left = list(iter_bits(sides.left_mask))
    right = list(iter_bits(sides.right_mask))
    ell, m = len(left), len(right)
    position = {}
    for i, v in enumerate(left):
        position[v] = i
    for i, v in enumerate(right):
        position[v] = ell + k + i
    builder = GraphBuilder(graph.n + 2 * k)
    for e in graph.edges():
        builder.add_edge(position[e.u], position[e.v])
    new_left = range(ell, ell + k)
    new_right = range(ell + k + m, ell + 2 * k + m)
    builder.add_biclique(new_left, [position[v] for v in right])
    builder.add_biclique(new_right, [position[v] for v in left])
    return builder.build(), SideLabeling.from_left_count(graph.n + 2 * k, ell + k)


def edge_complement_list(graph: Graph, host: Graph) -> List[Edge]:
    """E(F) minus E(G) in lexicographic order; G must be a spanning subgraph of F"""
    if graph.n != host.n:
        raise GraphMismatchError(
            f"graph has {graph.n} vertices, host has {host.n}", WsatErrorCodes.VERTEX_COUNT_MISMATCH
        )
    out = []
    for u in range(graph.n):
        extra = graph.adj(u) & ~host.adj(u)
        if extra:
            v = next(iter_bits(extra))
            raise GraphMismatchError(f"edge {Edge.of(u, v)} is not an edge of the host")
        missing = (host.adj(u) & ~graph.adj(u)) >> (u + 1)
        for v in iter_bits(missing):
            out.append(Edge(u, u + 1 + v))
    return out
