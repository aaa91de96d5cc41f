"""
Exact linear algebra over F_p and the K_{t,t} lower-bound certificate.

Edge vectors live in F_p^{n(t-1)}: f_xy carries u_y in block x and u_x in block y. Every
copy of K_{t,t} carries a dependence with all coefficients nonzero, so the rank of all edge
vectors of K_n bounds wsat(n, K_{t,t}) from below.
"""

from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from sympy import nextprime

from src.config import settings
from src.models.algebra import (
    EdgeVectorAssignment,
    GeneralPositionFamily,
    LowerBoundCertificate,
    PrimeField,
    ValidationRecord,
)
from src.models.graph import Edge, Graph
from src.models.pattern import CopyWitness
from src.models.trace import ClosureTrace
from src.services.constructions import construct_gn
from src.services.generators import complete_graph
from src.utils.exceptions import (
    CertificateError,
    GraphMismatchError,
    InvalidParameterError,
    WsatErrorCodes,
)
from src.utils.formulas import wsat_ktt

logger = structlog.get_logger()

_INT64_SAFE = 1 << 31


def default_prime(n: int) -> int:
    """Smallest prime above max(n, PRIME_FLOOR)"""
    return int(nextprime(max(n, settings.PRIME_FLOOR)))


def _matrix(rows: Sequence[Sequence[int]], p: int, width: Optional[int] = None) -> np.ndarray:
    dtype = np.int64 if p < _INT64_SAFE else object
    if not rows:
        return np.zeros((0, width or 0), dtype=dtype)
    return np.array([[x % p for x in row] for row in rows], dtype=dtype)


def _row_reduce(m: np.ndarray, p: int, full: bool) -> Tuple[np.ndarray, List[int]]:
    """Gaussian elimination mod p, pivoting on the first nonzero entry of each column.

    With `full` the result is reduced row echelon form; otherwise rows below pivots only.
    """
    m = m.copy()
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(m[r:, c] % p)[0]
        if len(nonzero) == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        targets = np.arange(rows) != r if full else np.arange(rows) > r
        factors = m[targets, c].reshape(-1, 1)
        m[targets] = (m[targets] - factors * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Exact rank of a list of equal-length vectors over F_p"""
    if len(vectors) == 0:
        return 0
    _, pivots = _row_reduce(_matrix(vectors, p), p, full=False)
    return len(pivots)


def nullspace_mod_p(matrix: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """Basis of {x : matrix · x = 0} over F_p"""
    m = _matrix(matrix, p)
    cols = m.shape[1]
    rref, pivots = _row_reduce(m, p, full=True)
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        x = [0] * cols
        x[free] = 1
        for row, pc in enumerate(pivots):
            x[pc] = int(-rref[row, free]) % p
        basis.append(x)
    return basis


class IncrementalSpan:
    """Echelon basis grown one vector at a time"""

    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self._rows: Dict[int, List[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vector: Sequence[int]) -> bool:
        """Insert vector; False when it already lies in the span"""
        p = self.p
        v = [x % p for x in vector]
        for c in range(self.dim):
            if v[c] == 0:
                continue
            row = self._rows.get(c)
            if row is None:
                inv = pow(v[c], -1, p)
                self._rows[c] = [(x * inv) % p for x in v]
                return True
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
        return False


def _vandermonde_det(points: Sequence[int], p: int) -> int:
    det = 1
    for i, a in enumerate(points):
        for b in points[i + 1 :]:
            det = (det * (b - a)) % p
    return det


def moment_family(n: int, t: int, p: int, seed: Optional[int] = None) -> GeneralPositionFamily:
    """u_v = (1, a, ..., a^{t-2}) with a = v+1, checked for general position.

    Every (t-1)-subset is tested when there are at most FAMILY_EXHAUSTIVE_LIMIT of them,
    otherwise FAMILY_SAMPLE_SIZE random subsets drawn from `seed`.
    """
    field = PrimeField(p)
    if t < 2:
        raise InvalidParameterError(f"moment family needs t >= 2, got t={t}", WsatErrorCodes.INVALID_RANGE)
    if p <= n:
        raise InvalidParameterError(f"prime {p} must exceed n={n}", WsatErrorCodes.INVALID_PRIME)
    d = t - 1
    vectors = tuple(tuple(pow(v + 1, k, p) for k in range(d)) for v in range(n))

    total = comb(n, d)
    if total <= settings.FAMILY_EXHAUSTIVE_LIMIT:
        mode = "exhaustive"
        subsets: Iterator[Tuple[int, ...]] = combinations(range(n), d)
    else:
        mode = "sampled"
        rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
        subsets = (tuple(sorted(int(x) for x in rng.choice(n, d, replace=False))) for _ in range(settings.FAMILY_SAMPLE_SIZE))
    checked = 0
    for subset in subsets:
        if _vandermonde_det([v + 1 for v in subset], p) == 0:
            raise CertificateError(
                WsatErrorCodes.FAMILY_NOT_GENERAL_POSITION, f"vectors {list(subset)} are linearly dependent mod {p}"
            )
        checked += 1
    return GeneralPositionFamily(field, n, t, vectors, mode, checked)


def edge_vectors(graph: Graph, family: GeneralPositionFamily) -> EdgeVectorAssignment:
    if graph.n != family.n:
        raise GraphMismatchError(
            f"family built for n={family.n}, graph has {graph.n} vertices", WsatErrorCodes.VERTEX_COUNT_MISMATCH
        )
    out = {e: tuple(_edge_vector(e, family)) for e in graph.edges()}
    return EdgeVectorAssignment(family, graph.n, out)


def _edge_vector(e: Edge, family: GeneralPositionFamily) -> List[int]:
    d = family.dim
    vec = [0] * (family.n * d)
    vec[e.u * d : (e.u + 1) * d] = family.u(e.v)
    vec[e.v * d : (e.v + 1) * d] = family.u(e.u)
    return vec


def _class_dependence(vertices: Sequence[int], family: GeneralPositionFamily) -> List[int]:
    p = family.field.p
    columns = [family.u(v) for v in vertices]
    matrix = [[col[r] for col in columns] for r in range(family.dim)]
    basis = nullspace_mod_p(matrix, p)
    if len(basis) != 1:
        raise CertificateError(
            WsatErrorCodes.NULLSPACE_DIMENSION,
            f"vectors of {list(vertices)} have a {len(basis)}-dimensional dependence space, expected 1",
        )
    return basis[0]


def ktt_dependence_coeffs(copy: CopyWitness, family: GeneralPositionFamily) -> Dict[Edge, int]:
    """c_{v_i w_j} = alpha_i * beta_j with alpha, beta spanning the dependences of each class"""
    if len(copy.classes) != 2 or any(len(c) != family.t for c in copy.classes):
        raise InvalidParameterError(
            f"expected a K_({family.t},{family.t}) witness, got classes {[list(c) for c in copy.classes]}"
        )
    p = family.field.p
    left, right = copy.classes
    alpha = _class_dependence(left, family)
    beta = _class_dependence(right, family)
    coeffs: Dict[Edge, int] = {}
    for a, v in zip(alpha, left):
        for b, w in zip(beta, right):
            c = (a * b) % p
            if c == 0:
                raise CertificateError(WsatErrorCodes.ZERO_COEFFICIENT, f"coefficient of edge {Edge.of(v, w)} vanishes")
            coeffs[Edge.of(v, w)] = c
    return coeffs


def dependence_vanishes(coeffs: Dict[Edge, int], family: GeneralPositionFamily) -> bool:
    """Sum of c_e f_e is the zero vector of F_p^{n(t-1)}"""
    p = family.field.p
    total = np.zeros(family.n * family.dim, dtype=object)
    for e, c in coeffs.items():
        total = total + c * np.array(_edge_vector(e, family), dtype=object)
    return all(int(x) % p == 0 for x in total)


def _all_ktt_copies(n: int, t: int) -> Iterator[CopyWitness]:
    """Each copy once: V holds the smallest vertex of V ∪ W"""
    for support in combinations(range(n), 2 * t):
        head, rest = support[0], support[1:]
        for others in combinations(rest, t - 1):
            v_class = (head,) + others
            w_class = tuple(x for x in rest if x not in others)
            yield CopyWitness.from_classes((v_class, w_class))


def _sampled_ktt_copies(n: int, t: int, k: int, rng: np.random.Generator) -> Iterator[CopyWitness]:
    for _ in range(k):
        chosen = [int(x) for x in rng.choice(n, 2 * t, replace=False)]
        yield CopyWitness.from_classes((chosen[:t], chosen[t:]))


def ktt_copy_count(n: int, t: int) -> int:
    return comb(n, t) * comb(n - t, t) // 2


class CertificateBuilder:
    """Builds LowerBoundCertificate values for wsat(n, K_{t,t})"""

    def __init__(self):
        self.logger = structlog.get_logger()

    def certify(
        self,
        n: int,
        t: int,
        p: Optional[int] = None,
        validate: str = "exhaustive",
        sample_size: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> LowerBoundCertificate:
        if t < 2 or n < 2 * t:
            raise InvalidParameterError(f"certificate needs t >= 2 and n >= 2t, got n={n}, t={t}", WsatErrorCodes.INVALID_RANGE)
        if validate not in ("exhaustive", "sampled"):
            raise InvalidParameterError(f"unknown validation mode {validate!r}")
        p = default_prime(n) if p is None else p
        seed = settings.DEFAULT_SEED if seed is None else seed
        family = moment_family(n, t, p, seed)

        total = ktt_copy_count(n, t)
        notes: List[str] = []
        mode = validate
        if mode == "exhaustive" and total > settings.EXHAUSTIVE_COPY_LIMIT:
            self.logger.warning(
                "Too many copies for exhaustive validation, sampling instead",
                copies=total,
                limit=settings.EXHAUSTIVE_COPY_LIMIT,
                seed=seed,
            )
            notes.append(f"exhaustive validation skipped: {total} copies exceed {settings.EXHAUSTIVE_COPY_LIMIT}")
            mode = "sampled"
        if mode == "exhaustive":
            copies = _all_ktt_copies(n, t)
        else:
            k = sample_size or settings.DEFAULT_SAMPLE_SIZE
            copies = _sampled_ktt_copies(n, t, k, np.random.default_rng(seed))

        checked = 0
        for copy in copies:
            coeffs = ktt_dependence_coeffs(copy, family)
            if not dependence_vanishes(coeffs, family):
                raise CertificateError(
                    WsatErrorCodes.ZERO_COEFFICIENT, f"dependence of copy {[list(c) for c in copy.classes]} does not vanish"
                )
            checked += 1

        full = edge_vectors(complete_graph(n), family)
        gn, _ = construct_gn(n, t)
        construction = edge_vectors(gn, family)
        rank_full = rank_mod_p(list(full.vectors.values()), p)
        rank_construction = rank_mod_p(list(construction.vectors.values()), p)
        formula = wsat_ktt(n, t)

        record = ValidationRecord(mode, checked, total, seed if mode == "sampled" else None)
        certificate = LowerBoundCertificate(
            n, t, p, rank_full, rank_construction, formula, record, family.check_mode, tuple(notes)
        )
        self.logger.info(
            "Certificate built",
            n=n,
            t=t,
            p=p,
            rank_full=rank_full,
            rank_construction=rank_construction,
            formula=formula,
            validation=mode,
            copies_checked=checked,
        )
        if rank_full != formula:
            self.logger.warning("Certified rank differs from the closed form", rank_full=rank_full, formula=formula)
        return certificate


def certify_lower_bound(
    n: int,
    t: int,
    p: Optional[int] = None,
    validate: str = "exhaustive",
    sample_size: Optional[int] = None,
    seed: Optional[int] = None,
) -> LowerBoundCertificate:
    return CertificateBuilder().certify(n, t, p, validate, sample_size, seed)


def replay_rank_trace(graph: Graph, trace: ClosureTrace, family: GeneralPositionFamily) -> List[int]:
    """Rank of span{f_e : e in E(G) ∪ {e_1..e_i}} for i = 0..len(trace)"""
    span = IncrementalSpan(family.n * family.dim, family.field.p)
    for e in graph.edges():
        span.add(_edge_vector(e, family))
    ranks = [span.rank]
    for entry in trace.entries:
        span.add(_edge_vector(Edge.of(*entry.edge), family))
        ranks.append(span.rank)
    return ranks
