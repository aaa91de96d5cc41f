"""
Exhaustive wsat oracle for tiny hosts.

Candidates with m edges are enumerated as combinations of E(F) in lexicographic order and
m ascends until one verifies, so the first witness is a minimum and the lexicographically
least one at that size. The main process enumerates and prunes; verification (pattern
freeness plus a complete closure) may be spread over worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from src.config import settings
from src.models.graph import Edge, Graph, SideLabeling, iter_bits
from src.models.pattern import Pattern
from src.models.search import SearchResult
from src.services.bootstrap import ClosureEngine
from src.services.generators import complete_bipartite, complete_graph
from src.services.patterns import find_copy
from src.utils.exceptions import BudgetExceededError, InvalidParameterError
from src.utils.formulas import trivial_lower

Candidate = Tuple[int, ...]


def canonical_form(adj: Sequence[int], cells: Sequence[Sequence[int]]) -> tuple:
    """Least relabeled adjacency over all permutations inside host cells refined by degree.

    Equal forms mean the graphs differ by a host automorphism that preserves the cells.
    """
    degrees = [a.bit_count() for a in adj]
    groups: List[Tuple[int, int, List[int]]] = []
    for ci, cell in enumerate(cells):
        by_degree: Dict[int, List[int]] = {}
        for v in cell:
            by_degree.setdefault(degrees[v], []).append(v)
        for d in sorted(by_degree):
            groups.append((ci, d, by_degree[d]))
    signature = tuple((ci, d, len(vs)) for ci, d, vs in groups)

    n = len(adj)
    best: Optional[Tuple[int, ...]] = None
    for choice in product(*(permutations(vs) for _, _, vs in groups)):
        order = [v for group in choice for v in group]
        position = [0] * n
        for i, v in enumerate(order):
            position[v] = i
        key = tuple(sum(1 << position[w] for w in iter_bits(adj[v])) for v in order)
        if best is None or key < best:
            best = key
    return signature, best


def _verify(n: int, adj: Candidate, host_edges: Sequence[Edge], pattern: Pattern, sides: Optional[SideLabeling], check_free: bool) -> bool:
    graph = Graph._trusted(n, adj)
    if check_free and find_copy(graph, pattern, sides) is not None:
        return False
    present = [e for e in host_edges if not (adj[e.u] >> e.v) & 1]
    closed, _ = ClosureEngine(pattern, sides).run(graph, present)
    return all((closed.adj(e.u) >> e.v) & 1 for e in present)


def _verify_batch(n: int, batch: List[Candidate], host_edges: List[Edge], pattern: Pattern, sides: Optional[SideLabeling], check_free: bool) -> int:
    """Index of the first weakly saturated candidate in the batch, or -1"""
    for i, adj in enumerate(batch):
        if _verify(n, adj, host_edges, pattern, sides, check_free):
            return i
    return -1


class WsatSearch:
    """Ascending-m exhaustive search for wsat(F, H) or the oriented w(l, m, K_{s,t})"""

    def __init__(
        self,
        host: Graph,
        pattern: Pattern,
        sides: Optional[SideLabeling] = None,
        cells: Optional[List[List[int]]] = None,
        budget: Optional[int] = None,
        prune_min_degree: bool = True,
        prune_pattern_free: bool = True,
        isomorph_rejection: bool = True,
        workers: int = 1,
        host_label: str = "",
    ):
        if sides is not None and not pattern.is_bipartite_kst:
            raise InvalidParameterError("oriented search needs a K_(s,t) pattern")
        self.host = host
        self.pattern = pattern
        self.sides = sides
        self.cells = cells
        self.budget = settings.SEARCH_BUDGET if budget is None else budget
        self.prune_min_degree = prune_min_degree
        self.prune_pattern_free = prune_pattern_free
        self.isomorph_rejection = isomorph_rejection and cells is not None and host.n <= settings.ISOMORPH_MAX_N
        self.workers = max(1, workers)
        self.host_label = host_label or f"explicit:{host.n}:{host.edge_count}"
        self.explored = 0
        self.logger = structlog.get_logger()

    @property
    def pruning(self) -> Dict[str, bool]:
        return {
            "min_degree": self.prune_min_degree,
            "pattern_free": self.prune_pattern_free,
            "isomorph_rejection": self.isomorph_rejection,
        }

    def start_m(self) -> int:
        """For K_{s,t}: ceil(n(s-1)/2) on a complete host, else the sum of min(deg_F(v), s-1)
        halved and rounded up; 0 for other patterns
        """
        if not self.pattern.is_bipartite_kst:
            return 0
        floor = min(self.pattern.sizes) - 1
        n = self.host.n
        if self.host.edge_count == n * (n - 1) // 2 and n > floor:
            return trivial_lower(n, floor + 1)
        return -(-sum(min(d, floor) for d in self.host.degrees()) // 2)

    def _degree_floor(self) -> List[int]:
        floor = self.pattern.min_degree - 1
        return [min(d, floor) for d in self.host.degrees()]

    def _result(self, minimum: int, witness: Graph, vacuous: bool = False) -> SearchResult:
        return SearchResult(
            minimum,
            witness,
            self.explored,
            self.host_label,
            self.pattern.literal,
            vacuous,
            self.sides is not None,
            self.start_m(),
            self.pruning,
        )

    def _candidates(self, m: int, edges: List[Edge], floors: List[int]) -> Iterator[Candidate]:
        n = self.host.n
        seen = set()
        for combo in combinations(range(len(edges)), m):
            adj = [0] * n
            for i in combo:
                e = edges[i]
                adj[e.u] |= 1 << e.v
                adj[e.v] |= 1 << e.u
            if self.prune_min_degree and any(a.bit_count() < f for a, f in zip(adj, floors)):
                continue
            if self.isomorph_rejection:
                form = self._canonical(adj)
                if form in seen:
                    continue
                seen.add(form)
            candidate = tuple(adj)
            if self.prune_pattern_free and find_copy(Graph._trusted(n, candidate), self.pattern, self.sides) is not None:
                continue
            yield candidate

    def _canonical(self, adj: Sequence[int]) -> tuple:
        form = canonical_form(adj, self.cells)
        if self._swappable():
            form = min(form, canonical_form(adj, self.cells[::-1]))
        return form

    def _swappable(self) -> bool:
        if len(self.cells) != 2 or len(self.cells[0]) != len(self.cells[1]):
            return False
        return self.sides is None or self.pattern.sizes[0] == self.pattern.sizes[1]

    def _charge(self, calls: int, last_completed: Optional[int]) -> None:
        if self.explored + calls > self.budget:
            self.logger.warning("Search budget exhausted", budget=self.budget, last_completed_m=last_completed)
            raise BudgetExceededError(self.budget, last_completed)
        self.explored += calls

    def run(self) -> SearchResult:
        n = self.host.n
        edges = self.host.edges()
        if find_copy(self.host, self.pattern, self.sides) is None:
            self.logger.info("Host is pattern-free, search is vacuous", host=self.host_label, pattern=self.pattern.literal)
            return self._result(self.host.edge_count, self.host, vacuous=True)

        floors = self._degree_floor()
        check_free = not self.prune_pattern_free
        last_completed: Optional[int] = None
        executor = ProcessPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        try:
            for m in range(self.start_m(), len(edges) + 1):
                found = self._scan(m, edges, floors, check_free, last_completed, executor)
                if found is not None:
                    witness = Graph._trusted(n, found)
                    self.logger.info(
                        "Search complete", host=self.host_label, pattern=self.pattern.literal, minimum=m, explored=self.explored
                    )
                    return self._result(m, witness)
                last_completed = m
                self.logger.debug("No weakly saturated graph", m=m, explored=self.explored)
        finally:
            if executor is not None:
                executor.shutdown()
        # unreachable: a maximal H-free spanning subgraph of F always verifies
        return self._result(self.host.edge_count, self.host)

    def _scan(self, m, edges, floors, check_free, last_completed, executor) -> Optional[Candidate]:
        n = self.host.n
        stream = self._candidates(m, edges, floors)
        if executor is None:
            for candidate in stream:
                self._charge(1, last_completed)
                if _verify(n, candidate, edges, self.pattern, self.sides, check_free):
                    return candidate
            return None

        size = settings.SEARCH_BATCH_SIZE
        exhausted = False
        while not exhausted:
            wave: List[List[Candidate]] = []
            for _ in range(self.workers):
                batch = [c for _, c in zip(range(size), stream)]
                if batch:
                    wave.append(batch)
                if len(batch) < size:
                    exhausted = True
                    break
            if not wave:
                return None
            self._charge(sum(len(b) for b in wave), last_completed)
            futures = [executor.submit(_verify_batch, n, b, edges, self.pattern, self.sides, check_free) for b in wave]
            for batch, future in zip(wave, futures):
                hit = future.result()
                if hit >= 0:
                    return batch[hit]
        return None


def wsat_bruteforce(
    host: Graph,
    pattern: Pattern,
    budget: Optional[int] = None,
    cells: Optional[List[List[int]]] = None,
    prune_min_degree: bool = True,
    prune_pattern_free: bool = True,
    isomorph_rejection: bool = True,
    workers: int = 1,
    host_label: str = "",
) -> SearchResult:
    """Exact wsat(F, H); `cells` lists vertex classes permuted freely by host automorphisms
    (one cell for K_n), and isomorph rejection is off without them"""
    search = WsatSearch(
        host,
        pattern,
        None,
        cells,
        budget,
        prune_min_degree,
        prune_pattern_free,
        isomorph_rejection,
        workers,
        host_label,
    )
    return search.run()


def wsat_bruteforce_complete(n: int, pattern: Pattern, budget: Optional[int] = None, **kwargs) -> SearchResult:
    return wsat_bruteforce(complete_graph(n), pattern, budget, [list(range(n))], host_label=f"complete:{n}", **kwargs)


def wsat_bruteforce_bipartite(
    ell: int,
    m: int,
    s: int,
    t: int,
    oriented: bool,
    budget: Optional[int] = None,
    prune_min_degree: bool = True,
    prune_pattern_free: bool = True,
    isomorph_rejection: bool = True,
    workers: int = 1,
) -> SearchResult:
    """w(l, m, K_{s,t}) when oriented (s-class in Left), else wsat(K_{l,m}, K_{s,t})"""
    host, sides = complete_bipartite(ell, m)
    cells = [list(range(ell)), list(range(ell, ell + m))]
    search = WsatSearch(
        host,
        Pattern.kst(s, t),
        sides if oriented else None,
        cells,
        budget,
        prune_min_degree,
        prune_pattern_free,
        isomorph_rejection,
        workers,
        f"bipartite:{ell},{m}",
    )
    return search.run()
