from dataclasses import dataclass, field
from typing import Dict

from src.models.graph import Graph


@dataclass
class SearchResult:
    """Exact wsat(F, H) found by exhaustive search"""

    minimum: int
    witness: Graph
    explored: int
    host: str
    pattern: str
    vacuous: bool = False
    oriented: bool = False
    start_m: int = 0
    pruning: Dict[str, bool] = field(default_factory=dict)
