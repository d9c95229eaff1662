"""Command line front end: check single graphs, benchmark directories.

Input formats: plain edge lists (one "u v" pair per line, ``#`` comments)
and a small GML subset (graph/node/edge blocks with id, source, target).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .embedding import (
    OnePlanarEmbedding,
    count_crossings,
    merge_blocks,
    serialize_embedding,
    validate,
)
from .graph import Graph, biconnected_components, build_graph
from .planarity import test_planarity
from .search import (
    SearchConfig,
    SearchStats,
    UniverseTooLargeError,
    Verdict,
    oracle_is_one_planar,
    test_block,
)


class ParseError(ValueError):
    def __init__(self, path: str, lineno: int, msg: str) -> None:
        super().__init__(f"{path}:{lineno}: {msg}")
        self.path = path
        self.lineno = lineno


@dataclass
class InstanceRecord:
    """One row of benchmark output; mirrors the CSV columns."""

    name: str
    n: int = 0
    m: int = 0
    density: float = 0.0
    blocks: int = 0
    verdict: str = "Error"
    crossings: int | None = None
    time_ms: float = 0.0
    backtracked: bool = False
    nodes: int = 0
    cuts_dec: int = 0
    cuts_kec: int = 0
    cuts_nonplanar: int = 0
    sol_satur: int = 0
    sol_compl: int = 0
    error: str | None = None


CSV_HEADER = (
    "name,n,m,density,blocks,verdict,crossings,time_ms,backtracked,"
    "nodes,cuts_dec,cuts_kec,cuts_nonplanar,sol_satur,sol_compl"
)


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------


def _parse_edgelist(text: str, path: str) -> Graph:
    edges: list[tuple[int, int]] = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected two vertex ids, got {raw.strip()!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(path, lineno, f"vertex ids must be integers: {raw.strip()!r}") from None
        if u < 0 or v < 0:
            raise ParseError(path, lineno, "vertex ids must be nonnegative")
        edges.append((u, v))
        top = max(top, u, v)
    return build_graph(top + 1, edges)


_GML_TOKEN = re.compile(r'"[^"]*"|\[|\]|[^\s\[\]]+')


def _parse_gml(text: str, path: str) -> Graph:
    tokens: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for mobj in _GML_TOKEN.finditer(line):
            tokens.append((lineno, mobj.group(0)))
    pos = 0

    def peek() -> tuple[int, str] | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(tokens):
            last = tokens[-1][0] if tokens else 1
            raise ParseError(path, last, "unexpected end of file")
        pos += 1
        return tokens[pos - 1]

    def skip_value() -> None:
        lineno, tok = take()
        if tok == "[":
            depth = 1
            while depth:
                lineno, tok = take()
                if tok == "[":
                    depth += 1
                elif tok == "]":
                    depth -= 1
        elif tok == "]":
            raise ParseError(path, lineno, "unexpected ']'")

    def parse_int(field: str) -> int:
        lineno, tok = take()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(path, lineno, f"{field} must be an integer, got {tok!r}") from None

    lineno, tok = take()
    if tok != "graph":
        raise ParseError(path, lineno, f"expected 'graph', got {tok!r}")
    lineno, tok = take()
    if tok != "[":
        raise ParseError(path, lineno, "expected '[' after 'graph'")

    node_ids: list[int] = []
    raw_edges: list[tuple[int, int, int]] = []
    while True:
        lineno, tok = take()
        if tok == "]":
            break
        if tok == "node":
            ln, op = take()
            if op != "[":
                raise ParseError(path, ln, "expected '[' after 'node'")
            nid = None
            while True:
                ln, key = take()
                if key == "]":
                    break
                if key == "id":
                    nid = parse_int("node id")
                else:
                    skip_value()
            if nid is None:
                raise ParseError(path, lineno, "node without id")
            if nid in node_ids:
                raise ParseError(path, lineno, f"duplicate node id {nid}")
            node_ids.append(nid)
        elif tok == "edge":
            ln, op = take()
            if op != "[":
                raise ParseError(path, ln, "expected '[' after 'edge'")
            src = dst = None
            while True:
                ln, key = take()
                if key == "]":
                    break
                if key == "source":
                    src = parse_int("source")
                elif key == "target":
                    dst = parse_int("target")
                else:
                    skip_value()
            if src is None or dst is None:
                raise ParseError(path, lineno, "edge without source/target")
            raw_edges.append((lineno, src, dst))
        else:
            skip_value()

    order = {nid: i for i, nid in enumerate(sorted(node_ids))}
    edges = []
    for lineno, src, dst in raw_edges:
        if src not in order or dst not in order:
            raise ParseError(path, lineno, f"edge references unknown node ({src}, {dst})")
        edges.append((order[src], order[dst]))
    return build_graph(len(order), edges)


def parse_graph_file(path: str, fmt: str = "auto") -> Graph:
    """Load a graph from an edge list or GML file.

    `fmt` is "edgelist", "gml", or "auto"; auto detection tries the
    extension first, then looks for a leading 'graph [' token.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "auto":
        if path.endswith(".gml"):
            fmt = "gml"
        else:
            head = ""
            for raw in text.splitlines():
                line = raw.split("#", 1)[0].strip()
                if line:
                    head = line
                    break
            fmt = "gml" if head.startswith("graph") else "edgelist"
    if fmt == "gml":
        return _parse_gml(text, path)
    return _parse_edgelist(text, path)


# ---------------------------------------------------------------------------
# Whole-graph pipeline
# ---------------------------------------------------------------------------


def run_pipeline(
    g: Graph, cfg: SearchConfig, name: str = "instance"
) -> tuple[InstanceRecord, OnePlanarEmbedding | None]:
    """Decide the whole graph block by block and merge the certificates.

    A drawing exists iff every block has one, so the first negative block
    halts the run.  Block verdicts left open by the deadline make the
    overall answer Unknown unless some later block is outright negative.
    """
    t0 = time.monotonic()
    deadline = t0 + cfg.time_budget
    dec = biconnected_components(g)
    stats = SearchStats()
    embeddings: list[OnePlanarEmbedding] = []
    verdict = Verdict.ONE_PLANAR
    for blk in dec.blocks:
        res = test_block(blk.graph, cfg, deadline=deadline)
        stats.merge(res.stats)
        if res.verdict is Verdict.NOT_ONE_PLANAR:
            verdict = Verdict.NOT_ONE_PLANAR
            break
        if res.verdict is Verdict.UNKNOWN:
            verdict = Verdict.UNKNOWN
        elif verdict is Verdict.ONE_PLANAR:
            embeddings.append(res.embedding)

    emb = None
    crossings = None
    if verdict is Verdict.ONE_PLANAR:
        emb = merge_blocks(g, dec, embeddings)
        if not validate(g, emb):
            raise RuntimeError("internal error: merged certificate failed validation")
        crossings = count_crossings(emb)

    record = InstanceRecord(
        name=name,
        n=g.n,
        m=g.m,
        density=(g.m / g.n) if g.n else 0.0,
        blocks=len(dec.blocks),
        verdict=verdict.value,
        crossings=crossings,
        time_ms=(time.monotonic() - t0) * 1000.0,
        backtracked=stats.used_backtracking,
        nodes=stats.nodes_visited,
        cuts_dec=stats.cuts_dec,
        cuts_kec=stats.cuts_kec,
        cuts_nonplanar=stats.cuts_nonplanar,
        sol_satur=stats.sol_satur,
        sol_compl=stats.sol_compl,
    )
    return record, emb


# ---------------------------------------------------------------------------
# Benchmark driver
# ---------------------------------------------------------------------------


def _record_row(r: InstanceRecord) -> str:
    return ",".join(
        [
            r.name,
            str(r.n),
            str(r.m),
            f"{r.density:.3f}",
            str(r.blocks),
            r.verdict,
            "" if r.crossings is None else str(r.crossings),
            f"{r.time_ms:.1f}",
            str(int(r.backtracked)),
            str(r.nodes),
            str(r.cuts_dec),
            str(r.cuts_kec),
            str(r.cuts_nonplanar),
            str(r.sol_satur),
            str(r.sol_compl),
        ]
    )


def _bench_one(task) -> InstanceRecord | None:
    path, fmt, cfg, skip_planar = task
    name = os.path.basename(path)
    try:
        g = parse_graph_file(path, fmt)
        if skip_planar and test_planarity(g).planar:
            return None
        record, _ = run_pipeline(g, cfg, name=name)
        return record
    except Exception as exc:  # per-file failures become Error rows
        return InstanceRecord(name=name, verdict="Error", error=str(exc))


_BUCKETS = ((10, 20), (21, 30), (31, 40), (41, 50))


def _summary_lines(records: list[InstanceRecord]) -> list[str]:
    lines = ["# summary"]
    for lo, hi in _BUCKETS:
        rows = [r for r in records if lo <= r.n <= hi]
        if not rows:
            continue
        counts = {v: 0 for v in ("OnePlanar", "NotOnePlanar", "Unknown", "Error")}
        for r in rows:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        nodes = sum(r.nodes for r in rows)
        mean_t = sum(r.time_ms for r in rows) / len(rows)
        lines.append(
            f"# n={lo}-{hi} files={len(rows)} one_planar={counts['OnePlanar']} "
            f"not_one_planar={counts['NotOnePlanar']} unknown={counts['Unknown']} "
            f"error={counts['Error']} total_nodes={nodes} mean_time_ms={mean_t:.1f}"
        )
    return lines


@dataclass
class BenchResult:
    csv: str
    records: list[InstanceRecord]


def bench(
    paths: list[str],
    cfg: SearchConfig,
    fmt: str = "auto",
    workers: int | None = None,
    skip_planar: bool = False,
) -> BenchResult:
    """Run the pipeline over many files and render the CSV report.

    Rows come out sorted by file name regardless of worker count, so the
    report is reproducible run to run (timing columns aside).  A file
    that fails to parse or crashes becomes a verdict=Error row.
    """
    files: list[str] = []
    for p in paths:
        if os.path.isdir(p):
            files.extend(
                os.path.join(p, f)
                for f in os.listdir(p)
                if not f.startswith(".") and os.path.isfile(os.path.join(p, f))
            )
        else:
            files.append(p)
    files.sort(key=os.path.basename)

    if workers is None:
        env = os.environ.get("ONEPLANAR_THREADS", "")
        workers = int(env) if env.isdigit() and int(env) > 0 else 1

    tasks = [(path, fmt, cfg, skip_planar) for path in files]
    if workers <= 1:
        results = [_bench_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_bench_one, tasks))

    records = sorted(
        (r for r in results if r is not None), key=lambda r: r.name
    )
    lines = [CSV_HEADER]
    lines.extend(_record_row(r) for r in records)
    lines.extend(_summary_lines(records))
    return BenchResult(csv="\n".join(lines) + "\n", records=records)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _parse_duration(text: str) -> float:
    mobj = re.fullmatch(r"(\d+(?:\.\d+)?)([smh]?)", text.strip())
    if not mobj:
        raise argparse.ArgumentTypeError(f"bad duration {text!r} (use 300, 45s, 5m or 3h)")
    value = float(mobj.group(1))
    return value * {"": 1.0, "s": 1.0, "m": 60.0, "h": 3600.0}[mobj.group(2)]


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timeout", type=_parse_duration, default=None,
                   help="search budget per run (e.g. 45s, 5m, 3h)")
    p.add_argument("--skew-size", type=int, default=None,
                   help="maximum skew set size for the restricted pass")
    p.add_argument("--completion-prob", type=float, default=None,
                   help="probability of attempting a zero completion per node")
    p.add_argument("--seed", type=int, default=None, help="seed for completion draws")
    p.add_argument("--no-kite", action="store_true", help="disable kite edge pruning")
    p.add_argument("--no-skew", action="store_true", help="disable the restricted first pass")
    p.add_argument("--format", choices=["auto", "edgelist", "gml"], default="auto")


def _config_from_args(args) -> SearchConfig:
    cfg = SearchConfig()
    if args.timeout is not None:
        cfg = replace(cfg, time_budget=args.timeout)
    if args.skew_size is not None:
        cfg = replace(cfg, skew_set_size=args.skew_size)
    if args.completion_prob is not None:
        cfg = replace(cfg, completion_probability=args.completion_prob)
    if args.seed is not None:
        cfg = replace(cfg, rng_seed=args.seed)
    if args.no_kite:
        cfg = replace(cfg, enable_kite_pruning=False)
    if args.no_skew:
        cfg = replace(cfg, enable_skew_pass=False)
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="oneplanar",
        description="Decide whether graphs can be drawn with at most one crossing per edge.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="test a single graph file")
    p_check.add_argument("file")
    _add_config_flags(p_check)
    p_check.add_argument("--emit-embedding", metavar="PATH",
                         help="write the certificate to PATH on a positive verdict")
    p_check.add_argument("--oracle", action="store_true",
                         help="cross-check against exhaustive enumeration (small graphs)")

    p_bench = sub.add_parser("bench", help="run over files/directories and print CSV")
    p_bench.add_argument("paths", nargs="+")
    _add_config_flags(p_bench)
    p_bench.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
    p_bench.add_argument("--workers", type=int, default=None,
                         help="process count (default: ONEPLANAR_THREADS or 1)")
    p_bench.add_argument("--skip-planar", action="store_true",
                         help="drop instances that are plain planar from the report")

    args = parser.parse_args(argv)
    cfg = _config_from_args(args)

    if args.command == "check":
        try:
            g = parse_graph_file(args.file, args.format)
        except (ParseError, OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        record, emb = run_pipeline(g, cfg, name=os.path.basename(args.file))
        print(f"{record.name}: {record.verdict}"
              + (f" with {record.crossings} crossing(s)" if record.crossings is not None else ""))
        print(f"  n={record.n} m={record.m} blocks={record.blocks} "
              f"nodes={record.nodes} time={record.time_ms:.1f}ms")
        print(f"  cuts: dec={record.cuts_dec} kec={record.cuts_kec} "
              f"nonplanar={record.cuts_nonplanar}; solutions: satur={record.sol_satur} "
              f"compl={record.sol_compl}")
        if args.oracle:
            try:
                expected = oracle_is_one_planar(g)
            except UniverseTooLargeError as exc:
                print(f"  oracle: skipped ({exc})")
            else:
                want = Verdict.ONE_PLANAR.value if expected else Verdict.NOT_ONE_PLANAR.value
                agree = "agrees" if record.verdict == want else "DISAGREES"
                print(f"  oracle: {want} ({agree})")
        if args.emit_embedding:
            if emb is None:
                print("no certificate to emit (verdict is not positive)", file=sys.stderr)
            else:
                with open(args.emit_embedding, "w", encoding="utf-8") as fh:
                    fh.write(serialize_embedding(emb))
        return 0

    result = bench(args.paths, cfg, fmt=args.format,
                   workers=args.workers, skip_planar=args.skip_planar)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(result.csv)
    else:
        sys.stdout.write(result.csv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
