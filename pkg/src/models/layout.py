from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from src.utils.exceptions import InvalidParameterError, WsatErrorCodes


@dataclass(frozen=True)
class BlockLayout:
    """Named consecutive index ranges partitioning 0..n-1"""

    blocks: Tuple[Tuple[str, range], ...]

    @classmethod
    def from_sizes(cls, sizes: Sequence[Tuple[str, int]]) -> "BlockLayout":
        """Lay blocks out in the given order; rejects negative sizes"""
        out: List[Tuple[str, range]] = []
        offset = 0
        for name, size in sizes:
            if size < 0:
                raise InvalidParameterError(f"block {name} would have negative size {size}", WsatErrorCodes.NEGATIVE_BLOCK)
            out.append((name, range(offset, offset + size)))
            offset += size
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return sum(len(r) for _, r in self.blocks)

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.blocks]

    def sizes(self) -> Dict[str, int]:
        return {name: len(r) for name, r in self.blocks}

    def __getitem__(self, name: str) -> range:
        for key, r in self.blocks:
            if key == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(key == name for key, _ in self.blocks)

    def __iter__(self) -> Iterator[Tuple[str, range]]:
        return iter(self.blocks)

    def is_partition(self) -> bool:
        offset = 0
        for _, r in self.blocks:
            if r.start != offset or r.step != 1:
                return False
            offset = r.stop
        return True

    def block_of(self, v: int) -> str:
        for name, r in self.blocks:
            if v in r:
                return name
        raise KeyError(v)

    def schedule(self, edges: Iterable[Tuple[int, int]], phases: Sequence[Tuple[str, str]]) -> List[Tuple[int, int]]:
        """Order `edges` phase by phase, a phase being the edges between two named blocks (or inside one).

        Edges keep their relative order within a phase; edges in no phase come last.
        """
        rank: Dict[frozenset, int] = {}
        for i, (a, b) in enumerate(phases):
            rank.setdefault(frozenset((a, b)), i)

        def key(e: Tuple[int, int]) -> int:
            return rank.get(frozenset((self.block_of(e[0]), self.block_of(e[1]))), len(phases))

        return sorted(edges, key=key)
