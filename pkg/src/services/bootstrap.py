"""
The H-bootstrap process: closure, weak-saturation verdicts and trace replay.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np
import structlog

from src.models.graph import Edge, Graph, SideLabeling, bit
from src.models.pattern import CopyWitness, Pattern
from src.models.trace import ClosureTrace, SaturationVerdict, TraceEntry
from src.services.generators import edge_complement_list
from src.services.patterns import CopyFinder, find_copy, validate_witness
from src.utils.exceptions import (
    GraphMismatchError,
    InvalidParameterError,
    ValidationResult,
    WsatErrorCodes,
)

POLICIES = ("lex", "shuffle", "rounds")

logger = structlog.get_logger()


class ClosureEngine:
    """Runs the bootstrap process for one pattern inside one host.

    Policies:
      lex      add the first addable missing edge in lexicographic order, then rescan
      shuffle  same, scanning a seeded permutation of the missing edges
      rounds   add every edge addable against the round-start graph at once

    Edges found non-addable are cached as blocked. After e = xy is added, a blocked f = ab
    can only have gained a copy if x and y both lie in N[a] ∪ N[b]; for complete multipartite
    patterns every vertex of a copy through ab lies there, so only those edges are rescanned.
    The cache never changes which edge is added next.
    """

    def __init__(
        self,
        pattern: Pattern,
        sides: Optional[SideLabeling] = None,
        policy: str = "lex",
        seed: Optional[int] = None,
        workers: int = 1,
    ):
        if policy not in POLICIES:
            raise InvalidParameterError(f"unknown closure policy {policy!r}, expected one of {', '.join(POLICIES)}")
        if workers < 1:
            raise InvalidParameterError(f"workers must be positive, got {workers}")
        self.pattern = pattern
        self.sides = sides
        self.policy = policy
        self.seed = seed
        self.workers = workers
        self.finder = CopyFinder(pattern, sides)
        self.logger = structlog.get_logger()

    def run(self, graph: Graph, candidates: Sequence[Edge]) -> Tuple[Graph, ClosureTrace]:
        """Close `graph` over the missing host edges `candidates`"""
        adj = list(graph.adjacency)
        if self.policy == "rounds":
            entries, rounds = self._run_rounds(adj, list(candidates))
        else:
            order = list(candidates)
            if self.policy == "shuffle":
                rng = np.random.default_rng(self.seed)
                order = [order[i] for i in rng.permutation(len(order))]
            entries = self._run_sequential(adj, order)
            rounds = 0

        result = Graph._trusted(graph.n, adj)
        trace = ClosureTrace(tuple(entries), graph.fingerprint(), result.fingerprint(), self.policy, rounds)
        self.logger.debug(
            "Closure complete",
            pattern=self.pattern.literal,
            policy=self.policy,
            added=len(entries),
            missing=len(candidates) - len(entries),
            rounds=rounds,
        )
        return result, trace

    def _unblock(self, adj: List[int], blocked: Set[Edge], e: Edge) -> None:
        if not self.finder.local:
            blocked.clear()
            return
        x, y = e
        for f in list(blocked):
            region = adj[f.u] | adj[f.v] | bit(f.u) | bit(f.v)
            if (region >> x) & 1 and (region >> y) & 1:
                blocked.discard(f)

    def _try(self, adj: List[int], e: Edge) -> Optional[CopyWitness]:
        """Test e against adj in place; leaves e added when a witness exists"""
        adj[e.u] |= bit(e.v)
        adj[e.v] |= bit(e.u)
        witness = self.finder.find(adj, e.u, e.v)
        if witness is None:
            adj[e.u] &= ~bit(e.v)
            adj[e.v] &= ~bit(e.u)
        return witness

    def _run_sequential(self, adj: List[int], order: List[Edge]) -> List[TraceEntry]:
        entries: List[TraceEntry] = []
        remaining = list(order)
        blocked: Set[Edge] = set()
        progress = True
        while progress:
            progress = False
            for idx, e in enumerate(remaining):
                if e in blocked:
                    continue
                witness = self._try(adj, e)
                if witness is None:
                    blocked.add(e)
                    continue
                entries.append(TraceEntry(e, witness))
                self.logger.debug("Edge added", edge=str(e), step=len(entries))
                del remaining[idx]
                self._unblock(adj, blocked, e)
                progress = True
                break
        return entries

    def _test_against(self, snapshot: Sequence[int], e: Edge) -> Optional[CopyWitness]:
        adj = list(snapshot)
        adj[e.u] |= bit(e.v)
        adj[e.v] |= bit(e.u)
        return self.finder.find(adj, e.u, e.v)

    def _run_rounds(self, adj: List[int], remaining: List[Edge]) -> Tuple[List[TraceEntry], int]:
        entries: List[TraceEntry] = []
        blocked: Set[Edge] = set()
        rounds = 0
        executor = ThreadPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        try:
            while True:
                snapshot = tuple(adj)
                pending = [e for e in remaining if e not in blocked]
                if executor is not None:
                    witnesses = list(executor.map(lambda e: self._test_against(snapshot, e), pending))
                else:
                    witnesses = [self._test_against(snapshot, e) for e in pending]
                added = [(e, w) for e, w in zip(pending, witnesses) if w is not None]
                blocked.update(e for e, w in zip(pending, witnesses) if w is None)
                if not added:
                    break
                rounds += 1
                added.sort(key=lambda pair: pair[0])
                for e, witness in added:
                    adj[e.u] |= bit(e.v)
                    adj[e.v] |= bit(e.u)
                    entries.append(TraceEntry(e, witness, rounds))
                done = {e for e, _ in added}
                remaining = [e for e in remaining if e not in done]
                for e in done:
                    self._unblock(adj, blocked, e)
                self.logger.debug("Round complete", round=rounds, added=len(added))
        finally:
            if executor is not None:
                executor.shutdown()
        return entries, rounds


def _check_pattern(pattern: Pattern) -> None:
    if pattern.edge_count < 1:
        raise InvalidParameterError("weak saturation needs a pattern with at least one edge", WsatErrorCodes.EDGELESS_PATTERN)


def _ordered(candidates: List[Edge], order: Optional[Sequence[Tuple[int, int]]]) -> List[Edge]:
    if order is None:
        return candidates
    ordered = [Edge.of(*e) for e in order]
    if len(ordered) != len(candidates) or set(ordered) != set(candidates):
        raise GraphMismatchError("candidate order must list every missing host edge exactly once", WsatErrorCodes.NOT_SPANNING_SUBGRAPH)
    return ordered


def closure(
    graph: Graph,
    host: Graph,
    pattern: Pattern,
    policy: str = "lex",
    seed: Optional[int] = None,
    workers: int = 1,
    order: Optional[Sequence[Tuple[int, int]]] = None,
) -> Tuple[Graph, ClosureTrace]:
    """Maximal graph reachable from G inside F by H-bootstrap additions, with a replayable trace.

    `order` replaces the lexicographic scan order of the missing edges, e.g. a phase schedule
    from BlockLayout.schedule; the closure itself does not depend on it.
    """
    _check_pattern(pattern)
    candidates = _ordered(edge_complement_list(graph, host), order)
    engine = ClosureEngine(pattern, None, policy, seed, workers)
    closed, trace = engine.run(graph, candidates)
    logger.info("Closure computed", pattern=pattern.literal, policy=policy, added=len(trace), n=graph.n)
    return closed, trace


def verify_weakly_saturated(
    graph: Graph,
    host: Graph,
    pattern: Pattern,
    policy: str = "lex",
    seed: Optional[int] = None,
    workers: int = 1,
    order: Optional[Sequence[Tuple[int, int]]] = None,
) -> SaturationVerdict:
    candidates = edge_complement_list(graph, host)
    offending = find_copy(graph, pattern)
    closed, trace = closure(graph, host, pattern, policy, seed, workers, order)
    missing = edge_complement_list(closed, host)
    verdict = SaturationVerdict(offending is None, not missing, trace, missing, offending)
    logger.info(
        "Weak saturation verdict",
        pattern=pattern.literal,
        edges=graph.edge_count,
        candidates=len(candidates),
        pattern_free=verdict.is_pattern_free,
        closure_complete=verdict.closure_complete,
    )
    return verdict


def _bipartite_host(sides: SideLabeling) -> Graph:
    return Graph._trusted(sides.n, [sides.right_mask if sides.is_left(v) else sides.left_mask for v in range(sides.n)])


def _check_sides(graph: Graph, sides: SideLabeling) -> None:
    bad = sides.check_graph(graph)
    if bad is not None:
        raise GraphMismatchError(f"edge {bad} joins two vertices of the same side", WsatErrorCodes.SAME_SIDE_EDGE)


def bisaturated_closure(
    graph: Graph,
    sides: SideLabeling,
    h_left: int,
    h_right: int,
    policy: str = "lex",
    seed: Optional[int] = None,
    workers: int = 1,
) -> Tuple[Graph, ClosureTrace]:
    """Closure inside K_{ell,m} where a copy of K_{h_left,h_right} must put its h_left-class in Left"""
    _check_sides(graph, sides)
    candidates = edge_complement_list(graph, _bipartite_host(sides))
    engine = ClosureEngine(Pattern.kst(h_left, h_right), sides, policy, seed, workers)
    return engine.run(graph, candidates)


def verify_bisaturated(
    graph: Graph,
    sides: SideLabeling,
    h_left: int,
    h_right: int,
    policy: str = "lex",
    seed: Optional[int] = None,
    workers: int = 1,
) -> SaturationVerdict:
    """Weakly (K_{ell,m}, K_{h_left,h_right})-bisaturated: no oriented copy, and the oriented closure is complete"""
    _check_sides(graph, sides)
    offending = find_copy(graph, Pattern.kst(h_left, h_right), sides)
    closed, trace = bisaturated_closure(graph, sides, h_left, h_right, policy, seed, workers)
    missing = edge_complement_list(closed, _bipartite_host(sides))
    return SaturationVerdict(offending is None, not missing, trace, missing, offending)


def replay_trace(
    graph: Graph,
    trace: ClosureTrace,
    pattern: Pattern,
    host: Optional[Graph] = None,
    sides: Optional[SideLabeling] = None,
) -> ValidationResult:
    """Re-run a trace from G, re-validating every witness; never raises"""
    try:
        if graph.fingerprint() != trace.initial_fingerprint:
            return ValidationResult(False, WsatErrorCodes.FINGERPRINT_MISMATCH, "trace does not start from this graph")
        current = graph
        seen: Set[Edge] = set()
        for step, entry in enumerate(trace.entries, start=1):
            e = Edge.of(*entry.edge)
            if e in seen:
                return ValidationResult(False, WsatErrorCodes.TRACE_DUPLICATE_EDGE, f"step {step}: {e} added twice")
            seen.add(e)
            if e.v >= graph.n or current.has_edge(e.u, e.v):
                return ValidationResult(False, WsatErrorCodes.TRACE_EDGE_PRESENT, f"step {step}: {e} is already present")
            if host is not None and not host.has_edge(e.u, e.v):
                return ValidationResult(False, WsatErrorCodes.TRACE_EDGE_NOT_IN_HOST, f"step {step}: {e} is not a host edge")
            if sides is not None and not sides.crosses(e.u, e.v):
                return ValidationResult(False, WsatErrorCodes.SAME_SIDE_EDGE, f"step {step}: {e} joins one side")
            current = current.with_edge(e.u, e.v)
            result = validate_witness(current, pattern, entry.witness, e, sides)
            if not result:
                return ValidationResult(False, result.error_code, f"step {step}: {result.error_message}")
        if current.fingerprint() != trace.final_fingerprint:
            return ValidationResult(False, WsatErrorCodes.FINGERPRINT_MISMATCH, "replay ends on a different graph")
        return ValidationResult(True)
    except (ValueError, TypeError, IndexError) as e:
        return ValidationResult(False, WsatErrorCodes.INVALID_TRACE, str(e))
