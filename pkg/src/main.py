"""
Command-line surface of the weak-saturation laboratory.

    construct  build an extremal graph and print it as an edge list
    close      print the H-bootstrap closure of a graph inside a host
    verify     decide weak saturation (exit 0 when saturated, 1 when not)
    certify    build the F_p rank certificate for wsat(n, K_{t,t})
    search     exhaustive wsat for tiny hosts
    tables     reproduce theorem tables as CSV

Data goes to stdout (edge lists, JSON summaries, CSV); logs go to stderr. Exit codes:
0 success or verified true, 1 verified false, 2 usage error, 3 budget or internal error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import structlog

from src.config import settings
from src.models.graph import Graph, SideLabeling
from src.models.layout import BlockLayout
from src.models.pattern import Pattern
from src.models.reports import (
    CertificateModel,
    ConstructionModel,
    SearchReportModel,
    TraceModel,
    VerdictModel,
    trace_entries_json,
    trace_from_json,
)
from src.services.algebra import certify_lower_bound
from src.services.bootstrap import (
    POLICIES,
    bisaturated_closure,
    closure,
    replay_trace,
    verify_bisaturated,
    verify_weakly_saturated,
)
from src.services.constructions import (
    construct_fkt,
    construct_fn_ktt1,
    construct_g0,
    construct_gn,
    construct_hn,
    construct_lovasz,
    construct_rel,
    lovasz_layout,
)
from src.services.edge_list import EdgeListDocument, EdgeListParser, Host, parse_host
from src.services.error_handler import EXIT_FALSE, EXIT_OK, EXIT_USAGE, ErrorHandler
from src.services.patterns import parse_pattern
from src.services.search import WsatSearch
from src.services.tables import ALIASES, THEOREMS, TableRanges, TableService
from src.utils.exceptions import FormatError, InvalidParameterError, WsatErrorCodes
from src.utils.logging import setup_logging

FAMILIES = ("gn", "fn", "hn", "fkt", "lovasz", "g0", "rel")

Construction = Tuple[Graph, Optional[SideLabeling], Optional[BlockLayout]]

logger = structlog.get_logger()


def parse_range(text: str) -> List[int]:
    """`a..b` (inclusive), `a,b,c` or a single integer"""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            if hi < lo:
                raise ValueError(text)
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, a,b,... or an integer, got {text!r}")


def parse_validation(text: str) -> Tuple[str, Optional[int]]:
    """`exhaustive`, `sampled` or `sampled:K`"""
    mode, _, count = text.partition(":")
    if mode == "exhaustive" and not count:
        return mode, None
    if mode == "sampled":
        if not count:
            return mode, None
        if count.isdigit() and int(count) > 0:
            return mode, int(count)
    raise argparse.ArgumentTypeError(f"expected exhaustive or sampled:K, got {text!r}")


def _need(value: Optional[int], flag: str, family: str) -> int:
    if value is None:
        raise InvalidParameterError(f"--{flag} is required for family {family}")
    return value


def build_construction(
    family: str,
    n: Optional[int] = None,
    s: Optional[int] = None,
    t: Optional[int] = None,
    k: Optional[int] = None,
    r: Optional[int] = None,
    ell: Optional[int] = None,
    m: Optional[int] = None,
) -> Construction:
    if family == "gn":
        graph, layout = construct_gn(_need(n, "n", family), _need(t, "t", family))
        return graph, None, layout
    if family == "fn":
        graph, layout = construct_fn_ktt1(_need(n, "n", family), _need(t, "t", family))
        return graph, None, layout
    if family == "hn":
        graph, layout = construct_hn(_need(n, "n", family), _need(s, "s", family), _need(t, "t", family))
        return graph, None, layout
    if family == "fkt":
        graph, layout = construct_fkt(_need(n, "n", family), _need(k, "k", family), _need(t, "t", family))
        return graph, None, layout
    if family == "lovasz":
        n, r = _need(n, "n", family), _need(r, "r", family)
        return construct_lovasz(n, r), None, lovasz_layout(n, r)
    if family == "g0":
        ell, m = _need(ell, "l", family), _need(m, "m", family)
        return construct_g0(ell, m, _need(s, "s", family), _need(t, "t", family))
    if family == "rel":
        return construct_rel(_need(n, "n", family), _need(t, "t", family))
    raise InvalidParameterError(f"unknown family {family!r}, expected one of {', '.join(FAMILIES)}")


def construction_for(family: str, host: Host, pattern: Pattern) -> Construction:
    """The construction a host and pattern call for, e.g. gn for complete:N with kst:t,t"""
    sizes = pattern.sizes if pattern.is_multipartite else ()
    if family == "g0":
        if host.sides is None or not pattern.is_bipartite_kst:
            raise InvalidParameterError("family g0 needs a bipartite:L,M host and a kst pattern")
        return build_construction(family, s=sizes[0], t=sizes[1], ell=host.sides.ell, m=host.sides.m)
    n = host.graph.n
    if family == "lovasz":
        if not sizes or any(a != 1 for a in sizes):
            raise InvalidParameterError("family lovasz needs a clique pattern")
        return build_construction(family, n=n, r=len(sizes))
    if family == "fkt":
        if not sizes or len(set(sizes)) != 1:
            raise InvalidParameterError("family fkt needs a ktk:t^k pattern")
        return build_construction(family, n=n, k=len(sizes), t=sizes[0])
    if not pattern.is_bipartite_kst:
        raise InvalidParameterError(f"family {family} needs a kst pattern")
    s, t = sorted(sizes)
    if family in ("gn", "rel") and s == t:
        return build_construction(family, n=n, t=t)
    if family == "fn" and t == s + 1:
        return build_construction(family, n=n, t=s)
    if family == "hn" and s < t:
        return build_construction(family, n=n, s=s, t=t)
    raise InvalidParameterError(f"family {family} does not fit pattern {pattern.literal}")


def _write_json(path: str, payload: Any) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
    logger.debug("JSON written", path=path)


def _load_graph(args: argparse.Namespace, host: Host, pattern: Pattern, stdin: TextIO) -> EdgeListDocument:
    if getattr(args, "construction", None):
        graph, sides, layout = construction_for(args.construction, host, pattern)
        return EdgeListDocument(graph, sides, layout, [f"family {args.construction}"])
    return EdgeListParser().read(args.input, stdin)


def _oriented(host: Host, doc: EdgeListDocument, pattern: Pattern) -> Tuple[SideLabeling, int, int]:
    sides = host.sides or doc.sides
    if sides is None:
        raise InvalidParameterError("--bisaturated needs a bipartite:L,M host or a 'left' line in the input")
    if not pattern.is_bipartite_kst:
        raise InvalidParameterError("--bisaturated needs a kst:s,t pattern")
    return sides, pattern.sizes[0], pattern.sizes[1]


def _write_trace(args: argparse.Namespace, trace) -> None:
    if args.trace:
        _write_json(args.trace, trace_entries_json(trace))


def cmd_construct(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    graph, sides, layout = build_construction(args.family, args.n, args.s, args.t, args.k, args.r, args.l, args.m)
    out.write(EdgeListParser().serialize(graph, sides, layout, [f"family {args.family}"]))
    if args.json:
        model = ConstructionModel(
            family=args.family,
            n=graph.n,
            edge_count=graph.edge_count,
            left=sides.ell if sides is not None else None,
            blocks={name: [r.start, r.stop] for name, r in layout} if layout is not None else {},
            edges=[[e.u, e.v] for e in graph.edges()],
        )
        _write_json(args.json, model.model_dump())
    logger.info("Construction built", family=args.family, n=graph.n, edges=graph.edge_count)
    return EXIT_OK


def cmd_close(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    host = parse_host(args.host)
    pattern = parse_pattern(args.pattern)
    doc = _load_graph(args, host, pattern, stdin)
    if args.bisaturated:
        sides, s, t = _oriented(host, doc, pattern)
        closed, trace = bisaturated_closure(doc.graph, sides, s, t, args.policy, args.seed, args.threads)
    else:
        closed, trace = closure(doc.graph, host.graph, pattern, args.policy, args.seed, args.threads)
    out.write(EdgeListParser().serialize(closed, doc.sides, doc.layout, [f"closure under {pattern.literal}"]))
    _write_trace(args, trace)
    if args.json:
        _write_json(args.json, TraceModel.from_domain(trace).model_dump())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    host = parse_host(args.host)
    pattern = parse_pattern(args.pattern)
    doc = _load_graph(args, host, pattern, stdin)
    if args.replay:
        return _replay(args, host, doc, pattern, out)

    if args.bisaturated:
        sides, s, t = _oriented(host, doc, pattern)
        verdict = verify_bisaturated(doc.graph, sides, s, t, args.policy, args.seed, args.threads)
    else:
        verdict = verify_weakly_saturated(doc.graph, host.graph, pattern, args.policy, args.seed, args.threads)
    model = VerdictModel.from_domain(verdict, doc.graph, host.literal, pattern.literal, args.bisaturated)
    out.write(model.model_dump_json(exclude={"trace"}) + "\n")
    _write_trace(args, verdict.trace)
    if args.json:
        _write_json(args.json, model.model_dump())
    return EXIT_OK if verdict.is_weakly_saturated else EXIT_FALSE


def _replay(args: argparse.Namespace, host: Host, doc: EdgeListDocument, pattern: Pattern, out: TextIO) -> int:
    try:
        data = json.loads(Path(args.replay).read_text())
    except (OSError, ValueError) as e:
        raise FormatError(f"cannot read trace {args.replay}: {e}", WsatErrorCodes.INVALID_TRACE)
    trace = trace_from_json(data, doc.graph)
    sides = _oriented(host, doc, pattern)[0] if args.bisaturated else None
    result = replay_trace(doc.graph, trace, pattern, host.graph, sides)
    summary = {
        "replay": result.is_valid,
        "steps": len(trace),
        "error_code": result.error_code,
        "error": result.error_message,
    }
    out.write(json.dumps(summary) + "\n")
    if not result:
        logger.warning("Trace replay failed", error_code=result.error_code, error=result.error_message)
    return EXIT_OK if result else EXIT_FALSE


def cmd_certify(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    mode, sample_size = args.validate
    cert = certify_lower_bound(args.n, args.t, args.p, mode, sample_size, args.seed)
    model = CertificateModel.from_domain(cert)
    out.write(model.model_dump_json(indent=2) + "\n")
    if args.json:
        _write_json(args.json, model.model_dump())
    return EXIT_OK if cert.matches_formula else EXIT_FALSE


def _cells(host: Host) -> Optional[List[List[int]]]:
    if host.from_file:
        return None
    n = host.graph.n
    if host.sides is None:
        return [list(range(n))]
    return [
        [v for v in range(n) if host.sides.is_left(v)],
        [v for v in range(n) if not host.sides.is_left(v)],
    ]


def cmd_search(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    host = parse_host(args.host)
    pattern = parse_pattern(args.pattern)
    if args.oriented and host.sides is None:
        raise InvalidParameterError("--oriented needs a bipartite:L,M host")
    search = WsatSearch(
        host.graph,
        pattern,
        host.sides if args.oriented else None,
        _cells(host),
        args.budget,
        prune_min_degree=not args.no_min_degree,
        prune_pattern_free=not args.no_pattern_free,
        isomorph_rejection=not args.no_isomorph,
        workers=args.threads,
        host_label=host.literal,
    )
    report = SearchReportModel.from_domain(search.run())
    out.write(report.model_dump_json() + "\n")
    if args.json:
        _write_json(args.json, report.model_dump())
    return EXIT_OK


def cmd_tables(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    defaults = TableRanges()
    ranges = TableRanges(
        n=args.n,
        n_max=args.n_max,
        s=args.s or defaults.s,
        t=args.t or defaults.t,
        k=args.k or defaults.k,
        r=args.r or defaults.r,
        l=args.l,
        m=args.m,
    )
    service = TableService(args.threads)
    rows = service.rows(args.theorem, ranges)
    out.write(service.to_csv(rows))
    if args.json:
        _write_json(args.json, [row.to_model().model_dump() for row in rows])
    return EXIT_OK if all(row.consistent() for row in rows) else EXIT_FALSE


COMMANDS: Dict[str, Callable[[argparse.Namespace, TextIO, TextIO], int]] = {
    "construct": cmd_construct,
    "close": cmd_close,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "search": cmd_search,
    "tables": cmd_tables,
}


def _graph_inputs(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--host", required=True, help="complete:N, bipartite:L,M or file:PATH")
    sub.add_argument("--pattern", required=True, help="kst:s,t, clique:r, multi:a1,...,ak or ktk:t^k")
    sub.add_argument("--input", default="-", help="edge-list file, '-' for stdin (default)")
    sub.add_argument("--construction", choices=FAMILIES, help="use a built-in construction instead of --input")
    sub.add_argument("--bisaturated", action="store_true", help="orient the pattern: its first class lies in Left")
    sub.add_argument("--trace", metavar="PATH", help="write the closure trace as a JSON array")
    sub.add_argument("--policy", choices=POLICIES, default="lex", help="order in which addable edges are added")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write a JSON report to PATH")
    common.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="root of all randomness")
    common.add_argument("--threads", type=int, default=settings.MAX_WORKERS, help="worker parallelism")
    common.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    common.add_argument("--log-json", action=argparse.BooleanOptionalAction, default=None, help="override LOG_JSON")

    parser = argparse.ArgumentParser(prog="wsatlab", description="Weak saturation laboratory")
    subs = parser.add_subparsers(dest="command", required=True)

    construct = subs.add_parser("construct", parents=[common], help="print a construction as an edge list")
    construct.add_argument("--family", required=True, choices=FAMILIES)
    construct.add_argument("--n", type=int)
    for flag in ("s", "t", "k", "r", "l", "m"):
        construct.add_argument(f"--{flag}", type=int)

    close = subs.add_parser("close", parents=[common], help="print the bootstrap closure")
    _graph_inputs(close)

    verify = subs.add_parser("verify", parents=[common], help="decide weak saturation")
    _graph_inputs(verify)
    verify.add_argument("--replay", metavar="PATH", help="replay and re-validate a trace file instead")

    certify = subs.add_parser("certify", parents=[common], help="F_p rank certificate for wsat(n, K_(t,t))")
    certify.add_argument("--n", type=int, required=True)
    certify.add_argument("--t", type=int, required=True)
    certify.add_argument("--p", type=int, help="prime modulus (default: next prime above max(n, PRIME_FLOOR))")
    certify.add_argument("--validate", type=parse_validation, default=("exhaustive", None), help="exhaustive or sampled:K")

    search = subs.add_parser("search", parents=[common], help="exhaustive wsat for tiny hosts")
    search.add_argument("--host", required=True, help="complete:N, bipartite:L,M or file:PATH")
    search.add_argument("--pattern", required=True)
    search.add_argument("--oriented", action="store_true", help="bisaturation: the first class lies in Left")
    search.add_argument("--budget", type=int, default=None, help="verification calls before giving up")
    search.add_argument("--no-min-degree", action="store_true", help="disable the minimum degree prune")
    search.add_argument("--no-pattern-free", action="store_true", help="disable the H-free prefilter")
    search.add_argument("--no-isomorph", action="store_true", help="disable isomorph rejection")

    tables = subs.add_parser("tables", parents=[common], help="reproduce a theorem table as CSV")
    tables.add_argument("--theorem", required=True, choices=THEOREMS + tuple(ALIASES))
    tables.add_argument("--n", type=parse_range, help="n values; default: guarantee bound up to --n-max")
    tables.add_argument("--n-max", type=int)
    for flag in ("s", "t", "k", "r", "l", "m"):
        tables.add_argument(f"--{flag}", type=parse_range)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    """Execute one subcommand and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(
        args.log_level or settings.LOG_LEVEL,
        settings.LOG_JSON if args.log_json is None else args.log_json,
    )
    context = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:]}
    try:
        return COMMANDS[args.command](args, stdin or sys.stdin, stdout or sys.stdout)
    except Exception as e:
        return ErrorHandler().handle(e, context)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
