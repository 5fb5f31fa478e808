"""apilens: resolve the API under an editor cursor and answer with
documentation and ranked code examples from an ingested corpus.
"""

from .config import EngineConfig, load_config
from .docs import (
    ApiDocEntry,
    DocCatalog,
    DocIngestError,
    DocIngestReport,
    DocNotFound,
    ingest_docs,
    load_docs,
)
from .engine import (
    Engine,
    QueryResult,
    SourceTooLarge,
    load_bundle,
    load_engine,
    save_bundle,
)
from .examples import (
    CodeExample,
    EmptyQuery,
    ExampleIndex,
    ExampleIngestError,
    ExampleIngestReport,
    RankedExample,
    ingest_example_records,
    load_examples,
)
from .intent import CursorContext, InvalidPosition, ResolvedIntent, resolve
from .lexer import CallSite, Span, Token, TokenKind, extract_call_sites, tokenize
from .replay import (
    CompareReport,
    CursorEvent,
    SessionMetrics,
    TaskSearchEvent,
    TraceError,
    compare,
    load_trace,
    replay,
)

__version__ = "0.1.0"

__all__ = [
    "ApiDocEntry",
    "CallSite",
    "CodeExample",
    "CompareReport",
    "CursorContext",
    "CursorEvent",
    "DocCatalog",
    "DocIngestError",
    "DocIngestReport",
    "DocNotFound",
    "EmptyQuery",
    "Engine",
    "EngineConfig",
    "ExampleIndex",
    "ExampleIngestError",
    "ExampleIngestReport",
    "InvalidPosition",
    "QueryResult",
    "RankedExample",
    "ResolvedIntent",
    "SessionMetrics",
    "SourceTooLarge",
    "Span",
    "TaskSearchEvent",
    "Token",
    "TokenKind",
    "TraceError",
    "compare",
    "extract_call_sites",
    "ingest_docs",
    "ingest_example_records",
    "load_bundle",
    "load_config",
    "load_docs",
    "load_engine",
    "load_examples",
    "load_trace",
    "replay",
    "resolve",
    "save_bundle",
    "tokenize",
]
