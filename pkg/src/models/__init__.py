from .algebra import GeneralPositionFamily, LowerBoundCertificate, PrimeField
from .graph import Edge, Graph, GraphBuilder, SideLabeling
from .layout import BlockLayout
from .pattern import CopyWitness, Pattern
from .search import SearchResult
from .trace import ClosureTrace, SaturationVerdict, TraceEntry

__all__ = [
    "Edge",
    "Graph",
    "GraphBuilder",
    "SideLabeling",
    "BlockLayout",
    "Pattern",
    "CopyWitness",
    "TraceEntry",
    "ClosureTrace",
    "SaturationVerdict",
    "PrimeField",
    "GeneralPositionFamily",
    "LowerBoundCertificate",
    "SearchResult",
]
