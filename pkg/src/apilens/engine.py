"""Query engine: one resolve call returns everything both instant panes need.

The engine composes an immutable doc catalog and example index behind the
request handlers the wire protocol exposes. Every answer is a pure function
of (request, ingested corpora, config); the only non-deterministic field is
the measured elapsed time.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from .config import EngineConfig
from .docs import ApiDocEntry, DocCatalog
from .examples import CodeExample, ExampleIndex, RankedExample
from .intent import CursorContext, ResolvedIntent, resolve

MAX_SOURCE_BYTES = 1 << 20  # requests carry the full buffer; cap at 1 MiB


class SourceTooLarge(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class QueryResult:
    intent: ResolvedIntent
    doc: ApiDocEntry | None
    examples: tuple[RankedExample, ...]
    elapsed_ms: float

    def as_dict(self) -> dict:
        intent_dict: dict = {"kind": self.intent.kind}
        if self.intent.kind == "exact":
            intent_dict["api"] = self.intent.api
        if self.intent.kind == "prefix":
            intent_dict["candidates"] = list(self.intent.candidates)
        if self.intent.alternates:
            intent_dict["alternates"] = list(self.intent.alternates)
        return {
            "intent": intent_dict,
            "doc": self.doc.as_dict() if self.doc is not None else None,
            "examples": [r.as_dict() for r in self.examples],
            "elapsed_ms": self.elapsed_ms,
        }


class Engine:
    def __init__(
        self,
        catalog: DocCatalog,
        index: ExampleIndex,
        config: EngineConfig | None = None,
    ):
        self.catalog = catalog
        self.index = index
        self.config = config or EngineConfig()

    def resolve_query(self, source: str, line: int, col: int, mode: str) -> QueryResult:
        """Resolve a cursor event and bundle doc + examples for the intent.

        Raises SourceTooLarge past 1 MiB and InvalidPosition for cursors
        outside the buffer.
        """
        started = time.perf_counter()
        if len(source) > MAX_SOURCE_BYTES or len(source.encode("utf-8")) > MAX_SOURCE_BYTES:
            raise SourceTooLarge(f"source exceeds {MAX_SOURCE_BYTES} bytes")
        intent = resolve(CursorContext(source, line, col, mode), self.catalog.names())
        doc = None
        examples: tuple[RankedExample, ...] = ()
        if intent.kind == "exact" and intent.api is not None:
            doc = self.catalog.get(intent.api)
            if doc is not None:
                examples = tuple(
                    self.index.examples_for_api(
                        intent.api,
                        self.config.example_limit,
                        brevity_weight=self.config.brevity_weight,
                    )
                )
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        return QueryResult(intent=intent, doc=doc, examples=examples, elapsed_ms=elapsed_ms)

    def task_search(self, query: str, limit: int | None = None) -> list[RankedExample]:
        return self.index.task_search(
            query,
            limit if limit is not None else self.config.example_limit,
            api_word_weight=self.config.api_word_weight,
            keyword_word_weight=self.config.keyword_word_weight,
        )

    def doc(self, name: str) -> ApiDocEntry:
        return self.catalog.lookup(name)  # raises DocNotFound

    def examples_for(self, name: str, limit: int | None = None) -> list[RankedExample]:
        return self.index.examples_for_api(
            name,
            limit if limit is not None else self.config.example_limit,
            brevity_weight=self.config.brevity_weight,
        )

    def stats(self) -> dict:
        return {"apis": len(self.catalog), "examples": len(self.index)}


# On-disk bundle: the `index` CLI writes it, `serve`/`resolve`/`replay` read
# it. Load answers every query exactly as the freshly built index would.

_DOCS_FILE = "docs.json"
_EXAMPLES_FILE = "examples.json"
_META_FILE = "meta.json"
_FORMAT_VERSION = 1


def save_bundle(out_dir: str | Path, catalog: DocCatalog, index: ExampleIndex) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    docs_payload = [entry.as_dict() for entry in catalog]
    examples_payload = [
        {
            "id": ex.id,
            "title": ex.title,
            "source": ex.source,
            "calls": dict(sorted(ex.calls.items())),
            "line_count": ex.line_count,
            "source_url": ex.source_url,
        }
        for ex in index.examples()
    ]
    meta = {
        "format": _FORMAT_VERSION,
        "apis": len(catalog),
        "examples": len(index),
    }
    (out / _DOCS_FILE).write_text(
        json.dumps(docs_payload, indent=1, sort_keys=True), encoding="utf-8"
    )
    (out / _EXAMPLES_FILE).write_text(
        json.dumps(examples_payload, indent=1, sort_keys=True), encoding="utf-8"
    )
    (out / _META_FILE).write_text(json.dumps(meta, sort_keys=True), encoding="utf-8")


def load_bundle(index_dir: str | Path) -> tuple[DocCatalog, ExampleIndex]:
    root = Path(index_dir)
    meta = json.loads((root / _META_FILE).read_text(encoding="utf-8"))
    if meta.get("format") != _FORMAT_VERSION:
        raise ValueError(f"unsupported index format {meta.get('format')!r}")
    from .docs import parse_doc_record

    docs_payload = json.loads((root / _DOCS_FILE).read_text(encoding="utf-8"))
    entries = []
    for record in docs_payload:
        record = dict(record)
        record["name"] = record.pop("display_name", record.get("name", ""))
        entries.append(parse_doc_record(record))
    catalog = DocCatalog(entries)

    examples_payload = json.loads((root / _EXAMPLES_FILE).read_text(encoding="utf-8"))
    examples = [
        CodeExample(
            id=item["id"],
            title=item["title"],
            source=item["source"],
            calls=dict(item["calls"]),
            line_count=int(item["line_count"]),
            source_url=item.get("source_url", ""),
        )
        for item in examples_payload
    ]
    return catalog, ExampleIndex(examples)


def load_engine(index_dir: str | Path, config: EngineConfig | None = None) -> Engine:
    catalog, index = load_bundle(index_dir)
    return Engine(catalog, index, config)
