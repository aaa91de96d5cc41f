"""
Edge-list text format and host literals.

    n <N>
    left <L>                  optional: vertices 0..L-1 are Left
    # block <NAME> <lo>..<hi> optional: half-open index range of a named block
    u v                       one edge per line

Blank lines and other `#` comments are ignored; edges may come in any order.
"""

import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, TextIO, Tuple

from src.models.graph import Edge, Graph, GraphBuilder, SideLabeling
from src.models.layout import BlockLayout
from src.services.generators import complete_bipartite, complete_graph
from src.utils.exceptions import FormatError, InvalidParameterError, WsatErrorCodes

_BLOCK = re.compile(r"^#\s*block\s+(\S+)\s+(\d+)\.\.(\d+)\s*$")


@dataclass
class EdgeListDocument:
    graph: Graph
    sides: Optional[SideLabeling] = None
    layout: Optional[BlockLayout] = None
    comments: List[str] = field(default_factory=list)


@dataclass
class Host:
    """Ambient graph F, with its bipartition when F came from `bipartite:L,M`"""

    graph: Graph
    sides: Optional[SideLabeling]
    literal: str
    from_file: bool = False


class EdgeListParser:
    """Parse and serialize the edge-list format"""

    def parse(self, text: str) -> EdgeListDocument:
        n: Optional[int] = None
        left: Optional[int] = None
        blocks: List[Tuple[str, range]] = []
        comments: List[str] = []
        builder: Optional[GraphBuilder] = None
        seen = set()

        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                block = _BLOCK.match(line)
                if block:
                    name, lo, hi = block.group(1), int(block.group(2)), int(block.group(3))
                    if hi < lo:
                        raise FormatError(f"line {lineno}: block {name} has hi < lo")
                    blocks.append((name, range(lo, hi)))
                else:
                    comments.append(line[1:].strip())
                continue

            parts = line.split()
            if n is None:
                if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
                    raise FormatError(f"line {lineno}: expected 'n <N>' header, got {line!r}")
                n = int(parts[1])
                builder = GraphBuilder(n)
                continue
            if parts[0] == "left":
                if len(parts) != 2 or not parts[1].isdigit() or left is not None:
                    raise FormatError(f"line {lineno}: malformed 'left' line {line!r}")
                left = int(parts[1])
                if left > n:
                    raise FormatError(f"line {lineno}: left class {left} larger than n={n}")
                continue
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
            a, b = int(parts[0]), int(parts[1])
            if a == b or a >= n or b >= n:
                raise FormatError(f"line {lineno}: edge ({a}, {b}) is a loop or outside 0..{n - 1}")
            e = Edge.of(a, b)
            if e in seen:
                raise FormatError(f"line {lineno}: duplicate edge {e}")
            seen.add(e)
            builder.add_edge(e.u, e.v)

        if n is None or builder is None:
            raise FormatError("missing 'n <N>' header")
        graph = builder.build()
        sides = SideLabeling.from_left_count(n, left) if left is not None else None
        layout = None
        if blocks:
            layout = BlockLayout(tuple(blocks))
            if not layout.is_partition() or layout.n != n:
                raise FormatError(f"block comments do not partition 0..{n - 1}")
        return EdgeListDocument(graph, sides, layout, comments)

    def serialize(
        self,
        graph: Graph,
        sides: Optional[SideLabeling] = None,
        layout: Optional[BlockLayout] = None,
        comments: Optional[List[str]] = None,
    ) -> str:
        lines = [f"n {graph.n}"]
        for comment in comments or []:
            lines.append(f"# {comment}")
        if sides is not None:
            if not sides.is_contiguous():
                raise InvalidParameterError("only labelings with Left = 0..ell-1 can be written")
            lines.append(f"left {sides.ell}")
        if layout is not None:
            for name, r in layout:
                lines.append(f"# block {name} {r.start}..{r.stop}")
        lines.extend(str(e) for e in graph.edges())
        return "\n".join(lines) + "\n"

    def read(self, path: str, stdin: Optional[TextIO] = None) -> EdgeListDocument:
        """Read from a file, or from stdin when path is '-'"""
        if path == "-":
            return self.parse((stdin or sys.stdin).read())
        try:
            return self.parse(Path(path).read_text())
        except OSError as e:
            raise FormatError(f"cannot read edge list {path}: {e}")


def parse_host(literal: str, parser: Optional[EdgeListParser] = None) -> Host:
    """`complete:N`, `bipartite:L,M` or `file:PATH`"""
    kind, _, body = literal.strip().partition(":")
    try:
        if kind == "complete":
            return Host(complete_graph(int(body)), None, literal)
        if kind == "bipartite":
            ell, m = (int(x) for x in body.split(","))
            graph, sides = complete_bipartite(ell, m)
            return Host(graph, sides, literal)
    except ValueError as e:
        if isinstance(e, InvalidParameterError):
            raise
        raise FormatError(f"malformed host literal {literal!r}", WsatErrorCodes.INVALID_HOST_LITERAL)
    if kind == "file" and body:
        doc = (parser or EdgeListParser()).read(body)
        return Host(doc.graph, doc.sides, literal, from_file=True)
    raise FormatError(f"unknown host literal {literal!r}", WsatErrorCodes.INVALID_HOST_LITERAL)
