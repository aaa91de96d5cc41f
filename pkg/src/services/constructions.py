"""
Explicit extremal graphs with fixed block layouts.

Blocks are laid out X first, then Y (or Y1, Y2), then distinguished single vertices,
then W, then Z. Bipartite constructions put every Left block before every Right block.
"""

from typing import Tuple

from src.models.graph import Graph, GraphBuilder, SideLabeling
from src.models.layout import BlockLayout
from src.utils.exceptions import InvalidParameterError, WsatErrorCodes

# Closure of G_n: X-Z edges, then inside Z, then inside Y
GN_PHASES = (("X", "Z"), ("Z", "Z"), ("Y", "Y"))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameterError(message, WsatErrorCodes.INVALID_RANGE)


def construct_gn(n: int, t: int) -> Tuple[Graph, BlockLayout]:
    """X a t-clique, Y and Z independent, X∪Z complete to Y.

    |X| = t, |Y| = t-1, |Z| = n-2t+1; (t-1)(n+1-t/2) edges. Weakly (K_n, K_{t,t})-saturated for n >= 3t-3.
    """
    _require(t >= 2, f"construct_gn needs t >= 2, got t={t}")
    layout = BlockLayout.from_sizes([("X", t), ("Y", t - 1), ("Z", n - 2 * t + 1)])
    builder = GraphBuilder(n)
    builder.add_clique(layout["X"])
    builder.add_biclique(list(layout["X"]) + list(layout["Z"]), layout["Y"])
    return builder.build(), layout


def construct_fn_ktt1(n: int, t: int) -> Tuple[Graph, BlockLayout]:
    """G_n with y* added to Y on the X side only: X clique, X complete to Y∪{y*}, Z complete to Y.

    One edge more than construct_gn(n, t); weakly (K_n, K_{t,t+1})-saturated for n >= max(3t-1, 2t+1).
    For 3t-3 <= n <= 3t-2 it is K_{t,t+1}-free but its closure stops short of K_n.
    """
    _require(t >= 2, f"construct_fn_ktt1 needs t >= 2, got t={t}")
    _require(n >= 2 * t + 1, f"construct_fn_ktt1 needs n >= 2t+1, got n={n}, t={t}")
    layout = BlockLayout.from_sizes([("X", t), ("Y", t - 1), ("y*", 1), ("Z", n - 2 * t)])
    builder = GraphBuilder(n)
    builder.add_clique(layout["X"])
    builder.add_biclique(layout["X"], list(layout["Y"]) + list(layout["y*"]))
    builder.add_biclique(layout["Z"], layout["Y"])
    return builder.build(), layout


def construct_hn(n: int, s: int, t: int) -> Tuple[Graph, BlockLayout]:
    """Upper-bound construction for wsat(n, K_{s,t}) with s < t.

    Y = Y1∪Y2 is a (t-1)-clique, X is complete to W∪Y, x* is complete to Y and Z is
    complete to Y2. Every vertex of W∪Z has degree s-1.
    """
    _require(2 <= s < t, f"construct_hn needs 2 <= s < t, got s={s}, t={t}")
    layout = BlockLayout.from_sizes(
        [
            ("X", s - 1),
            ("Y1", t - s),
            ("Y2", s - 1),
            ("x*", 1),
            ("W", s - 1),
            ("Z", n - t - 2 * s + 2),
        ]
    )
    y = list(layout["Y1"]) + list(layout["Y2"])
    builder = GraphBuilder(n)
    builder.add_clique(y)
    builder.add_biclique(layout["X"], list(layout["W"]) + y)
    builder.add_biclique(layout["x*"], y)
    builder.add_biclique(layout["Z"], layout["Y2"])
    return builder.build(), layout


def construct_fkt(n: int, k: int, t: int) -> Tuple[Graph, BlockLayout]:
    """Complete k-partite graph on C1..Ck (|Ci| = t, |Ck| = t-1) with C1 a clique, plus an
    independent Z complete to C2∪...∪Ck. k = 2 gives construct_gn; t = 1 gives the Lovász graph.
    """
    _require(k >= 2, f"construct_fkt needs k >= 2, got k={k}")
    _require(t >= 1, f"construct_fkt needs t >= 1, got t={t}")
    sizes = [(f"C{i}", t) for i in range(1, k)] + [(f"C{k}", t - 1), ("Z", n - t * k + 1)]
    layout = BlockLayout.from_sizes(sizes)
    parts = [layout[f"C{i}"] for i in range(1, k + 1)]
    builder = GraphBuilder(n)
    builder.add_clique(parts[0])
    for i, ci in enumerate(parts):
        for cj in parts[i + 1 :]:
            builder.add_biclique(ci, cj)
    y = [v for part in parts[1:] for v in part]
    builder.add_biclique(layout["Z"], y)
    return builder.build(), layout


def lovasz_layout(n: int, r: int) -> BlockLayout:
    _require(2 <= r <= n, f"construct_lovasz needs 2 <= r <= n, got n={n}, r={r}")
    return BlockLayout.from_sizes([("K", r - 2), ("I", n - r + 2)])


def construct_lovasz(n: int, r: int) -> Graph:
    """K_n minus the edges inside its last n-r+2 vertices"""
    layout = lovasz_layout(n, r)
    builder = GraphBuilder(n)
    builder.add_clique(layout["K"])
    builder.add_biclique(layout["K"], layout["I"])
    return builder.build()


def construct_g0(ell: int, m: int, s: int, t: int) -> Tuple[Graph, SideLabeling, BlockLayout]:
    """Bipartite construction inside K_{ell,m}: X1 complete to Right, Y1 complete to Left, X2 complete to Y2.

    Left = X1 (s-1), X2 (t-s), X3 (ell-t+1); Right = Y1 (s-1), Y2 (t-s), Y3 (m-t+1).
    Edge count (ell+m-s+1)(s-1) + (t-s)^2.
    """
    _require(2 <= s <= t, f"construct_g0 needs 2 <= s <= t, got s={s}, t={t}")
    _require(s <= ell and t <= m, f"construct_g0 needs s <= ell and t <= m, got ell={ell}, m={m}, s={s}, t={t}")
    layout = BlockLayout.from_sizes(
        [
            ("X1", s - 1),
            ("X2", t - s),
            ("X3", ell - t + 1),
            ("Y1", s - 1),
            ("Y2", t - s),
            ("Y3", m - t + 1),
        ]
    )
    left = range(0, ell)
    right = range(ell, ell + m)
    builder = GraphBuilder(ell + m)
    builder.add_biclique(layout["X1"], right)
    builder.add_biclique(layout["Y1"], left)
    builder.add_biclique(layout["X2"], layout["Y2"])
    return builder.build(), SideLabeling.from_left_count(ell + m, ell), layout


def construct_rel(n: int, t: int) -> Tuple[Graph, SideLabeling, BlockLayout]:
    """construct_g0(t, n-t, t, t) plus a t-clique on Y1 and the first vertex y* of Y3.

    (t-1)(n+1-t/2) edges, K_{t,t}-free, closes to K_n for n >= 3t-2. The returned labeling
    is the one inherited from K_{t,n-t}; the added clique lies inside Right.
    """
    _require(t >= 2, f"construct_rel needs t >= 2, got t={t}")
    _require(n >= 2 * t, f"construct_rel needs n >= 2t, got n={n}, t={t}")
    base, sides, layout = construct_g0(t, n - t, t, t)
    builder = GraphBuilder.from_graph(base)
    y_star = layout["Y3"][0]
    builder.add_clique(list(layout["Y1"]) + [y_star])
    return builder.build(), sides, layout
