"""
Wire models for every JSON document the CLI emits or reads.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError

from src.models.algebra import LowerBoundCertificate
from src.models.graph import Edge, Graph
from src.models.pattern import CopyWitness
from src.models.search import SearchResult
from src.models.trace import ClosureTrace, SaturationVerdict, TraceEntry
from src.utils.exceptions import FormatError, WsatErrorCodes

EdgePair = List[int]


def _edge_pair(e: Edge) -> EdgePair:
    return [e.u, e.v]


class WitnessModel(BaseModel):
    classes: List[List[int]] = Field(default_factory=list, description="Host vertices of each pattern class")
    mapping: List[int] = Field(default_factory=list, description="Host image of each pattern vertex")

    @classmethod
    def from_domain(cls, witness: CopyWitness) -> "WitnessModel":
        return cls(classes=[list(c) for c in witness.classes], mapping=list(witness.mapping))

    def to_domain(self, anchor: Optional[Edge] = None) -> CopyWitness:
        if self.classes:
            return CopyWitness.from_classes(self.classes, anchor)
        return CopyWitness(tuple(self.mapping), (), anchor)


class TraceEntryModel(BaseModel):
    edge: EdgePair = Field(min_length=2, max_length=2, description="Added edge [u, v] with u < v")
    witness: WitnessModel
    round: int = Field(default=0, ge=0, description="Round number under the rounds policy, else 0")


class TraceModel(BaseModel):
    initial_fingerprint: str
    final_fingerprint: str
    policy: str
    rounds: int = 0
    entries: List[TraceEntryModel]

    @classmethod
    def from_domain(cls, trace: ClosureTrace) -> "TraceModel":
        return cls(
            initial_fingerprint=trace.initial_fingerprint,
            final_fingerprint=trace.final_fingerprint,
            policy=trace.policy,
            rounds=trace.rounds,
            entries=[entry_model(e) for e in trace.entries],
        )


def entry_model(entry: TraceEntry) -> TraceEntryModel:
    return TraceEntryModel(edge=_edge_pair(entry.edge), witness=WitnessModel.from_domain(entry.witness), round=entry.round)


def trace_entries_json(trace: ClosureTrace) -> List[Dict[str, Any]]:
    """Trace file body: a bare array of {edge, witness, round}"""
    return [entry_model(e).model_dump() for e in trace.entries]


def trace_from_json(data: Any, graph: Graph) -> ClosureTrace:
    """Rebuild a trace from either a bare entry array or a full TraceModel document"""
    try:
        if isinstance(data, list):
            entries = [TraceEntryModel.model_validate(item) for item in data]
            initial = graph.fingerprint()
            final = graph.with_edges(tuple(e.edge) for e in entries).fingerprint()
            policy, rounds = "lex", 0
        else:
            model = TraceModel.model_validate(data)
            entries = model.entries
            initial, final, policy, rounds = model.initial_fingerprint, model.final_fingerprint, model.policy, model.rounds
        domain = []
        for item in entries:
            e = Edge.of(*item.edge)
            domain.append(TraceEntry(e, item.witness.to_domain(e), item.round))
    except (ValidationError, ValueError, TypeError) as e:
        raise FormatError(f"malformed trace document: {e}", WsatErrorCodes.INVALID_TRACE)
    return ClosureTrace(tuple(domain), initial, final, policy, rounds)


class VerdictModel(BaseModel):
    host: str
    pattern: str
    n: int
    edges: int
    is_weakly_saturated: bool
    is_pattern_free: bool
    closure_complete: bool
    bisaturated: bool = False
    added: int
    missing: List[EdgePair] = Field(default_factory=list)
    offending_copy: Optional[WitnessModel] = None
    trace: TraceModel

    @classmethod
    def from_domain(cls, verdict: SaturationVerdict, graph: Graph, host: str, pattern: str, bisaturated: bool = False) -> "VerdictModel":
        return cls(
            host=host,
            pattern=pattern,
            n=graph.n,
            edges=graph.edge_count,
            is_weakly_saturated=verdict.is_weakly_saturated,
            is_pattern_free=verdict.is_pattern_free,
            closure_complete=verdict.closure_complete,
            bisaturated=bisaturated,
            added=len(verdict.trace),
            missing=[_edge_pair(e) for e in verdict.missing],
            offending_copy=WitnessModel.from_domain(verdict.offending_copy) if verdict.offending_copy else None,
            trace=TraceModel.from_domain(verdict.trace),
        )


class ValidationModel(BaseModel):
    mode: str = Field(description="exhaustive or sampled")
    copies_checked: int = Field(ge=0)
    copies_total: int = Field(ge=0, description="Number of K_(t,t) copies in K_n")
    seed: Optional[int] = Field(None, description="Sampling seed; null for exhaustive validation")


class CertificateModel(BaseModel):
    n: int
    t: int
    p: int
    rank_full: int
    rank_construction: int
    formula_value: int
    validation: ValidationModel
    verdict: int = Field(description="Certified lower bound on wsat(n, K_(t,t))")
    family_check: str
    is_proof: bool
    notes: List[str] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, cert: LowerBoundCertificate) -> "CertificateModel":
        v = cert.validation
        return cls(
            n=cert.n,
            t=cert.t,
            p=cert.p,
            rank_full=cert.rank_full,
            rank_construction=cert.rank_construction,
            formula_value=cert.formula_value,
            validation=ValidationModel(mode=v.mode, copies_checked=v.copies_checked, copies_total=v.copies_total, seed=v.seed),
            verdict=cert.verdict,
            family_check=cert.family_check,
            is_proof=cert.is_proof,
            notes=list(cert.notes),
        )


class SearchReportModel(BaseModel):
    host: str
    pattern: str
    minimum: int
    explored: int
    vacuous: bool
    oriented: bool
    start_m: int
    pruning: Dict[str, bool]
    n: int
    witness: List[EdgePair]

    @classmethod
    def from_domain(cls, result: SearchResult) -> "SearchReportModel":
        return cls(
            host=result.host,
            pattern=result.pattern,
            minimum=result.minimum,
            explored=result.explored,
            vacuous=result.vacuous,
            oriented=result.oriented,
            start_m=result.start_m,
            pruning=result.pruning,
            n=result.witness.n,
            witness=[_edge_pair(e) for e in result.witness.edges()],
        )


class TableRowModel(BaseModel):
    theorem: str
    n: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    k: Optional[int] = None
    l: Optional[int] = None  # noqa: E741
    m: Optional[int] = None
    formula: str = Field(description="Closed-form value, or lower..upper for bound pairs")
    construction_edges: Optional[int] = None
    closure_verified: str = Field(description="true, false or skipped")
    certificate_rank: Optional[int] = None
    oracle: Optional[int] = None
    note: str = ""


class ConstructionModel(BaseModel):
    family: str
    n: int
    edge_count: int
    left: Optional[int] = Field(None, description="Size of the Left class for bipartite constructions")
    blocks: Dict[str, EdgePair] = Field(default_factory=dict, description="Half-open [lo, hi] range of each block")
    edges: List[EdgePair]


SCHEMAS = {
    "construction": ConstructionModel,
    "trace": TraceModel,
    "verdict": VerdictModel,
    "certificate": CertificateModel,
    "search": SearchReportModel,
    "table_row": TableRowModel,
}


def schema_for(name: str) -> Dict[str, Any]:
    return SCHEMAS[name].model_json_schema()
