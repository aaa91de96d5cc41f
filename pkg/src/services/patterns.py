"""
Edge-anchored copy detection.

Every detector answers one question: with edge e = uv present, does the graph contain a
copy of H whose edge set includes e? The search is exhaustive, so a `None` answer is a
proof of absence. Internal kernels work on a list of neighborhood bitsets in which the
anchor edge is already present; the public wrappers add it for the caller.
"""

import re
from typing import Dict, List, Optional, Sequence, Set, Tuple

from src.models.graph import Edge, Graph, SideLabeling, bit, iter_bits
from src.models.pattern import CopyWitness, Pattern
from src.utils.exceptions import (
    FormatError,
    InvalidParameterError,
    PatternTooLargeError,
    ValidationResult,
    WsatErrorCodes,
)

_LITERAL = re.compile(r"^(kst|clique|multi|ktk):(.+)$")


def parse_pattern(literal: str) -> Pattern:
    """Parse `kst:s,t`, `clique:r`, `multi:a1,...,ak` or `ktk:t^k`"""
    match = _LITERAL.match(literal.strip())
    if not match:
        raise FormatError(f"unknown pattern literal {literal!r}", WsatErrorCodes.INVALID_PATTERN_LITERAL)
    kind, body = match.groups()
    try:
        if kind == "kst":
            parts = [int(x) for x in body.split(",")]
            if len(parts) != 2:
                raise ValueError("kst takes exactly two sizes")
            return Pattern.kst(parts[0], parts[1])
        if kind == "clique":
            return Pattern.clique(int(body))
        if kind == "multi":
            return Pattern.multipartite(int(x) for x in body.split(","))
        t, _, k = body.partition("^")
        return Pattern.ktk(int(t), int(k))
    except InvalidParameterError:
        raise
    except ValueError as e:
        raise FormatError(f"malformed pattern literal {literal!r}: {e}", WsatErrorCodes.INVALID_PATTERN_LITERAL)


def _with_edge(graph: Graph, e: Edge) -> List[int]:
    if e.v >= graph.n:
        raise InvalidParameterError(f"edge {e} outside 0..{graph.n - 1}", WsatErrorCodes.EDGE_OUT_OF_RANGE)
    adj = list(graph.adjacency)
    adj[e.u] |= bit(e.v)
    adj[e.v] |= bit(e.u)
    return adj


def _by_degree(mask: int, degrees: Sequence[int]) -> List[int]:
    """Vertices of mask, largest degree first, ties by index"""
    return sorted(iter_bits(mask), key=lambda w: (-degrees[w], w))


class MultipartiteDetector:
    """Class-by-class backtracking for complete multipartite patterns.

    The class holding u is chosen first (restricted to N(v)), then the class holding v,
    then the remaining classes in decreasing size. Each class is drawn from the common
    neighborhood of everything chosen so far; the last class needs no branching.
    """

    def __init__(self, sizes: Sequence[int]):
        self.sizes = tuple(sizes)
        self.total = sum(self.sizes)
        # classes of equal size are interchangeable, so one (i, j) per pair of sizes
        seen: Set[Tuple[int, int]] = set()
        self._orientations: List[Tuple[int, int]] = []
        for i, x in enumerate(self.sizes):
            for j, y in enumerate(self.sizes):
                if i != j and (x, y) not in seen:
                    seen.add((x, y))
                    self._orientations.append((i, j))

    def find(self, adj: Sequence[int], u: int, v: int) -> Optional[CopyWitness]:
        n = len(adj)
        if self.total > n:
            return None
        degrees = [a.bit_count() for a in adj]
        full = (1 << n) - 1
        for i, j in self._orientations:
            rest = sorted((c for c in range(len(self.sizes)) if c not in (i, j)), key=lambda c: (-self.sizes[c], c))
            plan = [i, j] + rest
            seeds = {i: u, j: v}
            classes: Dict[int, List[int]] = {}
            if self._extend(adj, degrees, plan, 0, seeds, full, 0, classes, v):
                ordered = [classes[c] for c in range(len(self.sizes))]
                return CopyWitness.from_classes(ordered, Edge.of(u, v))
        return None

    def _eligible(self, degrees: Sequence[int], c: int) -> int:
        need = self.total - self.sizes[c]
        mask = 0
        for w, d in enumerate(degrees):
            if d >= need:
                mask |= 1 << w
        return mask

    def _extend(
        self,
        adj: Sequence[int],
        degrees: Sequence[int],
        plan: Sequence[int],
        idx: int,
        seeds: Dict[int, int],
        common: int,
        used: int,
        classes: Dict[int, List[int]],
        v: int,
    ) -> bool:
        c = plan[idx]
        size = self.sizes[c]
        pool = common & ~used & self._eligible(degrees, c)
        if idx == 0:
            pool &= adj[v]
        seed = seeds.get(c)
        members: List[int] = []
        next_common = common
        next_used = used
        if seed is not None:
            if not (pool >> seed) & 1:
                return False
            members.append(seed)
            next_common &= adj[seed]
            next_used |= bit(seed)
            pool &= ~bit(seed)
        remaining = sum(self.sizes[d] for d in plan[idx + 1 :])
        need = size - len(members)
        if idx == len(plan) - 1:
            if pool.bit_count() < need:
                return False
            classes[c] = members + _by_degree(pool, degrees)[:need]
            return True
        candidates = _by_degree(pool, degrees)
        return self._pick(adj, degrees, plan, idx, seeds, candidates, 0, need, members, next_common, next_used, remaining, classes, v)

    def _pick(
        self,
        adj: Sequence[int],
        degrees: Sequence[int],
        plan: Sequence[int],
        idx: int,
        seeds: Dict[int, int],
        candidates: Sequence[int],
        start: int,
        need: int,
        members: List[int],
        common: int,
        used: int,
        remaining: int,
        classes: Dict[int, List[int]],
        v: int,
    ) -> bool:
        if need == 0:
            classes[plan[idx]] = list(members)
            if self._extend(adj, degrees, plan, idx + 1, seeds, common, used, classes, v):
                return True
            del classes[plan[idx]]
            return False
        for k in range(start, len(candidates) - need + 1):
            w = candidates[k]
            narrowed = common & adj[w]
            if (narrowed & ~used & ~bit(w)).bit_count() < remaining:
                continue
            members.append(w)
            found = self._pick(
                adj, degrees, plan, idx, seeds, candidates, k + 1, need - 1, members, narrowed, used | bit(w), remaining, classes, v
            )
            members.pop()
            if found:
                return True
        return False


class ExplicitDetector:
    """Mapping backtracker for explicit pattern graphs"""

    def __init__(self, pattern: Graph):
        self.pattern = pattern
        self._degrees = pattern.degrees()

    def find(self, adj: Sequence[int], u: int, v: int) -> Optional[CopyWitness]:
        n = len(adj)
        k = self.pattern.n
        if k > n:
            return None
        degrees = [a.bit_count() for a in adj]
        for a, b in self.pattern.edges():
            for x, y in ((u, v), (v, u)):
                if degrees[x] < self._degrees[a] or degrees[y] < self._degrees[b]:
                    continue
                mapping = {a: x, b: y}
                order = self._order(a, b)
                if self._extend(adj, degrees, order, 0, mapping, bit(x) | bit(y)):
                    return CopyWitness(tuple(mapping[p] for p in range(k)), (), Edge.of(u, v))
        return None

    def _order(self, a: int, b: int) -> List[int]:
        """Remaining pattern vertices, each preferring one with the most already-placed neighbors"""
        placed = {a, b}
        order: List[int] = []
        while len(placed) < self.pattern.n:
            best = max(
                (p for p in range(self.pattern.n) if p not in placed),
                key=lambda p: (sum(1 for q in placed if self.pattern.has_edge(p, q)), -p),
            )
            order.append(best)
            placed.add(best)
        return order

    def _extend(
        self, adj: Sequence[int], degrees: Sequence[int], order: Sequence[int], idx: int, mapping: Dict[int, int], used: int
    ) -> bool:
        if idx == len(order):
            return True
        p = order[idx]
        pool = ((1 << len(adj)) - 1) & ~used
        for q in self.pattern.neighbors(p):
            if q in mapping:
                pool &= adj[mapping[q]]
        for w in iter_bits(pool):
            if degrees[w] < self._degrees[p]:
                continue
            mapping[p] = w
            if self._extend(adj, degrees, order, idx + 1, mapping, used | bit(w)):
                return True
            del mapping[p]
        return False


def _kst_search(
    adj: Sequence[int], s: int, t: int, u: int, v: int, left: Optional[int] = None, right: Optional[int] = None
) -> Optional[Tuple[List[int], List[int]]]:
    """Find B containing v inside N(u) with |B| = size of v's side and a common neighborhood
    holding at least (size of u's side) vertices, u included.

    Returns (class of u, class of v) or None. With `left`/`right` masks the class of u is
    confined to `left` and the class of v to `right` (one orientation only).
    """
    n = len(adj)
    if s + t > n:
        return None
    degrees = [a.bit_count() for a in adj]
    full = (1 << n) - 1
    orientations: List[Tuple[int, int, int, int]]
    if left is not None:
        orientations = [(s, t, left, full if right is None else right)]
    elif s == t:
        orientations = [(s, t, full, full)]
    else:
        orientations = [(s, t, full, full), (t, s, full, full)]
    for a_u, a_v, u_side, v_side in orientations:
        if degrees[u] < a_v or degrees[v] < a_u:
            continue
        if not (u_side >> u) & 1 or not (v_side >> v) & 1:
            continue
        pool = adj[u] & v_side & ~bit(v)
        candidates = [w for w in _by_degree(pool, degrees) if degrees[w] >= a_u]
        found = _kst_pick(adj, candidates, 0, a_v - 1, [v], adj[v] & u_side, a_u)
        if found is not None:
            b_class, common = found
            others = _by_degree(common & ~bit(u), degrees)[: a_u - 1]
            return [u] + others, b_class
    return None


def _kst_pick(
    adj: Sequence[int], candidates: Sequence[int], start: int, need: int, chosen: List[int], common: int, a_u: int
) -> Optional[Tuple[List[int], int]]:
    if common.bit_count() < a_u:
        return None
    if need == 0:
        return list(chosen), common
    for k in range(start, len(candidates) - need + 1):
        w = candidates[k]
        narrowed = common & adj[w]
        if narrowed.bit_count() < a_u:
            continue
        chosen.append(w)
        found = _kst_pick(adj, candidates, k + 1, need - 1, chosen, narrowed, a_u)
        chosen.pop()
        if found is not None:
            return found
    return None


def _check_anchor(graph: Graph, pattern_vertices: int, e: Edge) -> None:
    if pattern_vertices > graph.n:
        raise PatternTooLargeError(pattern_vertices, graph.n)
    if e.v >= graph.n:
        raise InvalidParameterError(f"edge {e} outside 0..{graph.n - 1}", WsatErrorCodes.EDGE_OUT_OF_RANGE)


def contains_copy_through_edge(graph: Graph, pattern: Pattern, e: Edge) -> Optional[CopyWitness]:
    """Generic anchored detector; e is treated as present"""
    e = Edge.of(*e)
    _check_anchor(graph, pattern.vertex_count, e)
    adj = _with_edge(graph, e)
    if pattern.is_multipartite:
        return MultipartiteDetector(pattern.sizes).find(adj, e.u, e.v)
    return ExplicitDetector(pattern.graph).find(adj, e.u, e.v)


def kst_copy_through_edge(graph: Graph, s: int, t: int, e: Edge) -> Optional[CopyWitness]:
    """K_{s,t} fast path; witness classes are (s-class, t-class)"""
    if not 1 <= s <= t:
        raise InvalidParameterError(f"kst fast path needs 1 <= s <= t, got s={s}, t={t}")
    e = Edge.of(*e)
    _check_anchor(graph, s + t, e)
    adj = _with_edge(graph, e)
    return _kst_witness(adj, s, t, e.u, e.v)


def _kst_witness(adj: Sequence[int], s: int, t: int, u: int, v: int) -> Optional[CopyWitness]:
    found = _kst_search(adj, s, t, u, v)
    if found is None:
        return None
    u_class, v_class = found
    if len(u_class) == s:
        classes = (u_class, v_class)
    else:
        classes = (v_class, u_class)
    return CopyWitness.from_classes(classes, Edge.of(u, v))


def oriented_kst_copy_through_edge(
    graph: Graph, sides: SideLabeling, a_left: int, b_right: int, e: Edge
) -> Optional[CopyWitness]:
    """Copy of K_{a_left,b_right} through a cross edge e with the a_left-class in Left.

    Witness classes are (Left class, Right class).
    """
    e = Edge.of(*e)
    _check_anchor(graph, a_left + b_right, e)
    if not sides.crosses(e.u, e.v):
        raise InvalidParameterError(f"edge {e} does not cross the bipartition", WsatErrorCodes.SAME_SIDE_EDGE)
    adj = _with_edge(graph, e)
    return _oriented_witness(adj, sides, a_left, b_right, e.u, e.v)


def _oriented_witness(adj: Sequence[int], sides: SideLabeling, a_left: int, b_right: int, u: int, v: int) -> Optional[CopyWitness]:
    x, y = (u, v) if sides.is_left(u) else (v, u)
    found = _kst_search(adj, a_left, b_right, x, y, left=sides.left_mask, right=sides.right_mask)
    if found is None:
        return None
    return CopyWitness.from_classes(found, Edge.of(u, v))


class CopyFinder:
    """Anchored detector bound to one pattern; dispatches to the fastest exhaustive kernel.

    `find(adj, u, v)` expects the anchor edge to be present in `adj` already.
    """

    def __init__(self, pattern: Pattern, sides: Optional[SideLabeling] = None):
        self.pattern = pattern
        self.sides = sides
        if sides is not None and not pattern.is_bipartite_kst:
            raise InvalidParameterError(f"oriented detection needs a K_(s,t) pattern, got {pattern.literal}")
        self._multipartite = MultipartiteDetector(pattern.sizes) if pattern.is_multipartite else None
        self._explicit = None if pattern.is_multipartite else ExplicitDetector(pattern.graph)

    @property
    def local(self) -> bool:
        """Every vertex of a copy through uv is adjacent to u or v (or is one of them)"""
        return self.pattern.is_multipartite

    def find(self, adj: Sequence[int], u: int, v: int) -> Optional[CopyWitness]:
        if self.sides is not None:
            if not self.sides.crosses(u, v):
                return None
            a_left, b_right = self.pattern.sizes
            return _oriented_witness(adj, self.sides, a_left, b_right, u, v)
        if self.pattern.is_bipartite_kst:
            s, t = self.pattern.sizes
            if s <= t:
                return _kst_witness(adj, s, t, u, v)
            witness = _kst_witness(adj, t, s, u, v)
            if witness is None:
                return None
            return CopyWitness.from_classes(witness.classes[::-1], witness.anchor)
        if self._multipartite is not None:
            return self._multipartite.find(adj, u, v)
        return self._explicit.find(adj, u, v)


def find_copy_through_edge(
    graph: Graph, pattern: Pattern, e: Edge, sides: Optional[SideLabeling] = None
) -> Optional[CopyWitness]:
    """Dispatching detector: K_{s,t} fast path, oriented search when sides are given, generic otherwise"""
    e = Edge.of(*e)
    _check_anchor(graph, pattern.vertex_count, e)
    return CopyFinder(pattern, sides).find(_with_edge(graph, e), e.u, e.v)


def find_copy(graph: Graph, pattern: Pattern, sides: Optional[SideLabeling] = None) -> Optional[CopyWitness]:
    """Any copy of H in G, or None.

    Edges are examined in lexicographic order and dropped once examined: a copy is found
    through its smallest edge, which is still present at that point.
    """
    if pattern.vertex_count > graph.n:
        return None
    finder = CopyFinder(pattern, sides)
    adj = list(graph.adjacency)
    for e in graph.edges():
        witness = finder.find(adj, e.u, e.v)
        if witness is not None:
            return witness
        adj[e.u] &= ~bit(e.v)
        adj[e.v] &= ~bit(e.u)
    return None


def is_pattern_free(graph: Graph, pattern: Pattern) -> bool:
    return find_copy(graph, pattern) is None


def is_oriented_pattern_free(graph: Graph, sides: SideLabeling, a_left: int, b_right: int) -> bool:
    """No copy of K_{a_left,b_right} with its a_left-class in Left"""
    return find_copy(graph, Pattern.kst(a_left, b_right), sides) is None


def validate_witness(
    graph: Graph,
    pattern: Pattern,
    witness: CopyWitness,
    anchor: Optional[Edge] = None,
    sides: Optional[SideLabeling] = None,
) -> ValidationResult:
    """Independent re-check of a witness against G (the anchor, if any, must already be in G)"""
    n = graph.n
    if any(not 0 <= w < n for w in witness.mapping):
        return ValidationResult(False, WsatErrorCodes.WITNESS_SHAPE_MISMATCH, "witness vertex outside the graph")
    if len(set(witness.mapping)) != len(witness.mapping):
        return ValidationResult(False, WsatErrorCodes.WITNESS_SHAPE_MISMATCH, "witness vertices are not distinct")

    if pattern.is_multipartite:
        classes = witness.classes
        if tuple(len(c) for c in classes) != pattern.sizes:
            return ValidationResult(
                False,
                WsatErrorCodes.WITNESS_SHAPE_MISMATCH,
                f"class sizes {[len(c) for c in classes]} do not match {list(pattern.sizes)}",
            )
        for i, ci in enumerate(classes):
            for cj in classes[i + 1 :]:
                for a in ci:
                    for b in cj:
                        if not graph.has_edge(a, b):
                            return ValidationResult(
                                False, WsatErrorCodes.WITNESS_EDGE_MISSING, f"required edge {Edge.of(a, b)} is missing"
                            )
        if anchor is not None:
            home = {w: c for c, cls in enumerate(classes) for w in cls}
            if anchor.u not in home or anchor.v not in home or home[anchor.u] == home[anchor.v]:
                return ValidationResult(
                    False, WsatErrorCodes.WITNESS_ANCHOR_UNCOVERED, f"anchor {anchor} is not an edge of the copy"
                )
        if sides is not None:
            if len(classes) != 2:
                return ValidationResult(False, WsatErrorCodes.WITNESS_SIDE_MISMATCH, "oriented witness needs two classes")
            if any(not sides.is_left(w) for w in classes[0]) or any(sides.is_left(w) for w in classes[1]):
                return ValidationResult(
                    False, WsatErrorCodes.WITNESS_SIDE_MISMATCH, "witness classes are not on their prescribed sides"
                )
        return ValidationResult(True)

    h = pattern.graph
    if len(witness.mapping) != h.n:
        return ValidationResult(False, WsatErrorCodes.WITNESS_SHAPE_MISMATCH, "mapping length differs from pattern order")
    images = set()
    for a, b in h.edges():
        x, y = witness.mapping[a], witness.mapping[b]
        if not graph.has_edge(x, y):
            return ValidationResult(False, WsatErrorCodes.WITNESS_EDGE_MISSING, f"required edge {Edge.of(x, y)} is missing")
        images.add(Edge.of(x, y))
    if anchor is not None and Edge.of(*anchor) not in images:
        return ValidationResult(False, WsatErrorCodes.WITNESS_ANCHOR_UNCOVERED, f"anchor {anchor} is not an edge of the copy")
    return ValidationResult(True)
