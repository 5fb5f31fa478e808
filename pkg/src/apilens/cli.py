"""Command line entry points: build an index, serve it, query it, replay traces."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import EngineConfig, load_config
from .docs import load_docs
from .engine import Engine, load_bundle, save_bundle
from .examples import load_examples
from .replay import compare, load_trace, metrics_from_dict, replay


def _load_cfg(path: str | None) -> EngineConfig:
    return load_config(path) if path else EngineConfig()


def cmd_index(args: argparse.Namespace) -> int:
    catalog, doc_report = load_docs(args.docs)
    index, ex_report = load_examples(args.examples)
    save_bundle(args.out, catalog, index)
    print(f"docs: {doc_report.ingested} ingested, {doc_report.replaced} replaced")
    if doc_report.skipped:
        for lineno, reason in doc_report.skipped:
            print(f"  skipped doc record at line {lineno}: {reason}", file=sys.stderr)
    if doc_report.dangling:
        print(f"  dangling related names: {', '.join(doc_report.dangling)}")
    print(f"examples: {ex_report.examples} ingested, {ex_report.distinct_apis} distinct APIs")
    for ex_id, reason in ex_report.skipped:
        print(f"  skipped example {ex_id or '<no id>'}: {reason}", file=sys.stderr)
    print(f"index written to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    catalog, index = load_bundle(args.index)
    engine = Engine(catalog, index, _load_cfg(args.config))
    static = Path(args.static) if args.static else None
    app = create_app(engine, static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_resolve(args: argparse.Namespace) -> int:
    catalog, index = load_bundle(args.index)
    engine = Engine(catalog, index, _load_cfg(args.config))
    source = Path(args.file).read_text(encoding="utf-8")
    result = engine.resolve_query(source, args.line, args.col, args.mode)
    print(json.dumps(result.as_dict(), indent=2, sort_keys=True))
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    catalog, index = load_bundle(args.index)
    engine = Engine(catalog, index, _load_cfg(args.config))
    events = load_trace(args.trace)
    metrics = replay(events, engine)
    if args.json:
        print(json.dumps(metrics.as_dict(), indent=2, sort_keys=True))
    else:
        for key, value in metrics.as_dict().items():
            print(f"{key:<24}{value}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    a = metrics_from_dict(json.loads(Path(args.metrics_a).read_text(encoding="utf-8")))
    b = metrics_from_dict(json.loads(Path(args.metrics_b).read_text(encoding="utf-8")))
    report = compare(a, b)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    else:
        print(report.as_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apilens",
        description="Cursor-driven API documentation and example engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="ingest corpora and write an index directory")
    p_index.add_argument("--docs", required=True, help="doc corpus file (JSON lines)")
    p_index.add_argument("--examples", required=True, help="example manifest (JSON lines)")
    p_index.add_argument("--out", required=True, help="output index directory")
    p_index.set_defaults(func=cmd_index)

    p_serve = sub.add_parser("serve", help="serve the HTTP API (and optional UI)")
    p_serve.add_argument("--index", required=True, help="index directory")
    p_serve.add_argument("--port", type=int, default=7171)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", help="directory of UI assets to serve at /")
    p_serve.add_argument("--config", help="JSON config file")
    p_serve.set_defaults(func=cmd_serve)

    p_resolve = sub.add_parser("resolve", help="resolve one cursor position, print JSON")
    p_resolve.add_argument("--index", required=True, help="index directory")
    p_resolve.add_argument("--file", required=True, help="source file")
    p_resolve.add_argument("--line", type=int, required=True)
    p_resolve.add_argument("--col", type=int, required=True)
    p_resolve.add_argument("--mode", choices=["reading", "writing"], required=True)
    p_resolve.add_argument("--config", help="JSON config file")
    p_resolve.set_defaults(func=cmd_resolve)

    p_replay = sub.add_parser("replay", help="replay a session trace, print metrics")
    p_replay.add_argument("--trace", required=True, help="trace file (JSON lines)")
    p_replay.add_argument("--index", required=True, help="index directory")
    p_replay.add_argument("--json", action="store_true", help="emit metrics as JSON")
    p_replay.add_argument("--config", help="JSON config file")
    p_replay.set_defaults(func=cmd_replay)

    p_compare = sub.add_parser("compare", help="diff two replay metrics files")
    p_compare.add_argument("metrics_a")
    p_compare.add_argument("metrics_b")
    p_compare.add_argument("--json", action="store_true")
    p_compare.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, LookupError, OSError) as exc:
        # Domain failures (bad positions, unreadable corpora, missing docs)
        # exit cleanly; anything else is a bug and may traceback.
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
