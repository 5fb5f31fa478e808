"""Replay editing-session traces and measure how often lookups resolve locally.

A trace is a machine-readable session: cursor events carry the full buffer
plus position and mode, task-search events carry a query. Replaying one
against an engine counts which API lookups the engine could satisfy without
sending the user to an external search: a miss (no intent, or no local
documentation) is the machine proxy for one would-be external query.
Doc-only hits (documentation but no example) are reported as their own
bucket rather than guessed into either side.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

from .engine import Engine


class TraceError(ValueError):
    """Malformed trace line; message carries the line number."""


@dataclass(frozen=True, slots=True)
class CursorEvent:
    t_ms: int
    source: str
    line: int
    col: int
    mode: str


@dataclass(frozen=True, slots=True)
class TaskSearchEvent:
    t_ms: int
    query: str


TraceEvent = Union[CursorEvent, TaskSearchEvent]


@dataclass(frozen=True, slots=True)
class SessionMetrics:
    events_total: int
    api_lookups: int
    resolved_locally: int  # intent exact, doc present, at least one example
    doc_only: int  # intent exact, doc present, no example
    miss: int  # would-be external query
    task_searches: int
    local_resolution_rate: float  # 1.0 by convention when api_lookups == 0
    latency_p50_ms: float
    latency_p95_ms: float

    COUNT_FIELDS = (
        "events_total",
        "api_lookups",
        "resolved_locally",
        "doc_only",
        "miss",
        "task_searches",
    )

    def as_dict(self) -> dict:
        return {
            "events_total": self.events_total,
            "api_lookups": self.api_lookups,
            "resolved_locally": self.resolved_locally,
            "doc_only": self.doc_only,
            "miss": self.miss,
            "task_searches": self.task_searches,
            "local_resolution_rate": self.local_resolution_rate,
            "latency_p50_ms": self.latency_p50_ms,
            "latency_p95_ms": self.latency_p95_ms,
        }


def parse_trace_line(lineno: int, raw: str) -> TraceEvent | None:
    text = raw.strip()
    if not text:
        return None
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceError(f"trace line {lineno}: bad JSON: {exc}") from exc
    if not isinstance(record, dict):
        raise TraceError(f"trace line {lineno}: not a JSON object")
    try:
        t_ms = int(record["t_ms"])
        if t_ms < 0:
            raise TraceError(f"trace line {lineno}: negative t_ms")
        kind = record["type"]
        if kind == "cursor":
            return CursorEvent(
                t_ms=t_ms,
                source=str(record["source"]),
                line=int(record["line"]),
                col=int(record["col"]),
                mode=str(record["mode"]),
            )
        if kind == "task-search":
            query = str(record["query"])
            if not query.strip():
                raise TraceError(f"trace line {lineno}: empty task-search query")
            return TaskSearchEvent(t_ms=t_ms, query=query)
        raise TraceError(f"trace line {lineno}: unknown event type {kind!r}")
    except KeyError as exc:
        raise TraceError(f"trace line {lineno}: missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, TraceError):
            raise
        raise TraceError(f"trace line {lineno}: {exc}") from exc


def load_trace(path: str | Path) -> list[TraceEvent]:
    """Parse a trace file. Events must be ordered by t_ms; any malformed
    line is fatal, with its line number in the error.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    events: list[TraceEvent] = []
    for lineno, raw in enumerate(lines, start=1):
        event = parse_trace_line(lineno, raw)
        if event is None:
            continue
        if events and event.t_ms < events[-1].t_ms:
            raise TraceError(f"trace line {lineno}: t_ms goes backwards")
        events.append(event)
    return events


def percentile(values: Sequence[float], q: float) -> float:
    """Nearest-rank percentile; 0.0 for an empty sequence."""
    if not values:
        return 0.0
    ordered = sorted(values)
    rank = max(1, math.ceil(q * len(ordered)))
    return ordered[rank - 1]


def replay(events: Iterable[TraceEvent], engine: Engine) -> SessionMetrics:
    """Issue every event against the engine in order and aggregate metrics.

    Deterministic for a fixed engine: timestamps affect nothing but
    reporting, and only the latency fields vary between runs.
    """
    events = list(events)
    api_lookups = resolved_locally = doc_only = miss = task_searches = 0
    latencies: list[float] = []
    for event in events:
        if isinstance(event, CursorEvent):
            api_lookups += 1
            result = engine.resolve_query(event.source, event.line, event.col, event.mode)
            latencies.append(result.elapsed_ms)
            if result.intent.kind == "exact" and result.doc is not None:
                if result.examples:
                    resolved_locally += 1
                else:
                    doc_only += 1
            else:
                miss += 1
        else:
            task_searches += 1
            engine.task_search(event.query)
    rate = resolved_locally / api_lookups if api_lookups else 1.0
    return SessionMetrics(
        events_total=len(events),
        api_lookups=api_lookups,
        resolved_locally=resolved_locally,
        doc_only=doc_only,
        miss=miss,
        task_searches=task_searches,
        local_resolution_rate=rate,
        latency_p50_ms=percentile(latencies, 0.50),
        latency_p95_ms=percentile(latencies, 0.95),
    )


@dataclass(frozen=True, slots=True)
class CompareReport:
    a: SessionMetrics
    b: SessionMetrics
    warning: str | None

    _FLOAT_FIELDS = ("local_resolution_rate", "latency_p50_ms", "latency_p95_ms")

    def deltas(self) -> dict:
        out = {
            name: getattr(self.a, name) - getattr(self.b, name)
            for name in SessionMetrics.COUNT_FIELDS
        }
        for name in self._FLOAT_FIELDS:
            out[name] = getattr(self.a, name) - getattr(self.b, name)
        return out

    def as_dict(self) -> dict:
        payload = {"a": self.a.as_dict(), "b": self.b.as_dict(), "delta": self.deltas()}
        if self.warning:
            payload["warning"] = self.warning
        return payload

    def as_text(self) -> str:
        rows = [f"{'metric':<24}{'a':>12}{'b':>12}{'delta (a-b)':>14}"]
        deltas = self.deltas()
        for name in (*SessionMetrics.COUNT_FIELDS, *self._FLOAT_FIELDS):
            va, vb = getattr(self.a, name), getattr(self.b, name)
            if isinstance(va, float):
                rows.append(f"{name:<24}{va:>12.4f}{vb:>12.4f}{deltas[name]:>14.4f}")
            else:
                rows.append(f"{name:<24}{va:>12}{vb:>12}{deltas[name]:>14}")
        if self.warning:
            rows.append(f"warning: {self.warning}")
        return "\n".join(rows)


def compare(a: SessionMetrics, b: SessionMetrics) -> CompareReport:
    """Side-by-side diff of two replays. Differing event counts are worth a
    warning (the traces likely diverge) but the diff still computes.
    """
    warning = None
    if a.events_total != b.events_total:
        warning = (
            f"event counts differ ({a.events_total} vs {b.events_total}); "
            "the traces may not be comparable"
        )
    return CompareReport(a=a, b=b, warning=warning)


def metrics_from_dict(data: dict) -> SessionMetrics:
    return SessionMetrics(
        events_total=int(data["events_total"]),
        api_lookups=int(data["api_lookups"]),
        resolved_locally=int(data["resolved_locally"]),
        doc_only=int(data["doc_only"]),
        miss=int(data["miss"]),
        task_searches=int(data["task_searches"]),
        local_resolution_rate=float(data["local_resolution_rate"]),
        latency_p50_ms=float(data.get("latency_p50_ms", 0.0)),
        latency_p95_ms=float(data.get("latency_p95_ms", 0.0)),
    )
