from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from src.models.graph import Edge
from src.models.pattern import CopyWitness


@dataclass(frozen=True)
class TraceEntry:
    """One addition of the bootstrap process and the copy it completed"""

    edge: Edge
    witness: CopyWitness
    round: int = 0


@dataclass(frozen=True)
class ClosureTrace:
    """Replayable ordering e_1..e_h of the added edges"""

    entries: Tuple[TraceEntry, ...]
    initial_fingerprint: str
    final_fingerprint: str
    policy: str = "lex"
    rounds: int = 0

    @property
    def edges(self) -> List[Edge]:
        return [entry.edge for entry in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class SaturationVerdict:
    """Outcome of a weak-saturation check"""

    is_pattern_free: bool
    closure_complete: bool
    trace: ClosureTrace
    missing: List[Edge] = field(default_factory=list)
    offending_copy: Optional[CopyWitness] = None

    @property
    def is_weakly_saturated(self) -> bool:
        return self.is_pattern_free and self.closure_complete
