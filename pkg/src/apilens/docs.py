"""Structured API documentation catalog.

The catalog ingests one JSON record per line (see ``ingest_docs``) and is
immutable afterwards; readers share it freely. Names are normalized to
lowercase because PHP function names are case-insensitive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

RELATION_TAGS = frozenset({"requires", "produces-input-for", "see-also"})


class DocIngestError(ValueError):
    """The documentation stream as a whole could not be read."""


class DocNotFound(LookupError):
    def __init__(self, name: str):
        super().__init__(f"no documentation for {name!r}")
        self.name = name


@dataclass(frozen=True, slots=True)
class ParamDoc:
    name: str
    type: str
    description: str


@dataclass(frozen=True, slots=True)
class ReturnValue:
    value: str
    meaning: str


@dataclass(frozen=True, slots=True)
class ReturnDoc:
    type: str
    description: str
    values: tuple[ReturnValue, ...]


@dataclass(frozen=True, slots=True)
class RelatedApi:
    name: str
    relation: str  # one of RELATION_TAGS


@dataclass(frozen=True, slots=True)
class ApiDocEntry:
    name: str  # normalized lowercase key
    display_name: str
    signature: str
    summary: str
    params: tuple[ParamDoc, ...]
    returns: ReturnDoc
    related: tuple[RelatedApi, ...]
    category: str
    source_url: str

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "display_name": self.display_name,
            "signature": self.signature,
            "summary": self.summary,
            "params": [
                {"name": p.name, "type": p.type, "description": p.description}
                for p in self.params
            ],
            "returns": {
                "type": self.returns.type,
                "description": self.returns.description,
                "values": [
                    {"value": v.value, "meaning": v.meaning}
                    for v in self.returns.values
                ],
            },
            "related": [{"name": r.name, "relation": r.relation} for r in self.related],
            "category": self.category,
            "source_url": self.source_url,
        }


@dataclass(frozen=True, slots=True)
class DocIngestReport:
    ingested: int
    replaced: int
    dangling: tuple[str, ...]
    skipped: tuple[tuple[int, str], ...]  # (line number, reason)


class DocCatalog:
    """Immutable name -> ApiDocEntry mapping with prefix search."""

    def __init__(self, entries: Iterable[ApiDocEntry]):
        self._entries = {e.name: e for e in sorted(entries, key=lambda e: e.name)}
        self._names = frozenset(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and name.lower() in self._entries

    def __iter__(self) -> Iterator[ApiDocEntry]:
        return iter(self._entries.values())

    def names(self) -> frozenset[str]:
        return self._names

    def lookup(self, name: str) -> ApiDocEntry:
        try:
            return self._entries[name.lower()]
        except KeyError:
            raise DocNotFound(name) from None

    def get(self, name: str) -> ApiDocEntry | None:
        return self._entries.get(name.lower())

    def prefix_search(self, prefix: str, limit: int) -> list[str]:
        """Catalog names starting with prefix, shortest first, then lexicographic."""
        if limit < 1:
            raise ValueError("limit must be >= 1")
        needle = prefix.lower()
        matches = sorted(
            (name for name in self._names if name.startswith(needle)),
            key=lambda name: (len(name), name),
        )
        return matches[:limit]


def parse_doc_record(record: dict) -> ApiDocEntry:
    """Build an entry from one decoded doc-corpus record.

    Raises ValueError when the record is unusable (missing name or
    signature, or a related entry carries an unknown relation tag).
    """
    display_name = record.get("name")
    signature = record.get("signature")
    if not isinstance(display_name, str) or not display_name.strip():
        raise ValueError("missing name")
    if not isinstance(signature, str) or not signature.strip():
        raise ValueError("missing signature")

    params = tuple(
        ParamDoc(
            name=str(p.get("name", "")),
            type=str(p.get("type", "")),
            description=str(p.get("description", "")),
        )
        for p in record.get("params", [])
    )

    raw_returns = record.get("returns", {}) or {}
    values: list[ReturnValue] = []
    seen_values: set[str] = set()
    for v in raw_returns.get("values", []):
        text = str(v.get("value", ""))
        if text in seen_values:  # entries are unique by value text; keep first
            continue
        seen_values.add(text)
        values.append(ReturnValue(value=text, meaning=str(v.get("meaning", ""))))
    returns = ReturnDoc(
        type=str(raw_returns.get("type", "")),
        description=str(raw_returns.get("description", "")),
        values=tuple(values),
    )

    related = []
    for r in record.get("related", []):
        relation = str(r.get("relation", ""))
        if relation not in RELATION_TAGS:
            raise ValueError(f"unknown relation tag {relation!r}")
        related.append(RelatedApi(name=str(r.get("name", "")).lower(), relation=relation))

    return ApiDocEntry(
        name=display_name.strip().lower(),
        display_name=display_name.strip(),
        signature=signature.strip(),
        summary=str(record.get("summary", "")),
        params=params,
        returns=returns,
        related=tuple(related),
        category=str(record.get("category", "")),
        source_url=str(record.get("source_url", "")),
    )


def ingest_docs(lines: Iterable[str]) -> tuple[DocCatalog, DocIngestReport]:
    """Ingest doc-corpus records, one JSON object per line.

    Blank lines are ignored. A malformed record is skipped and reported;
    duplicate names are resolved last-record-wins and counted. Related
    names that never appear as catalog keys are reported as dangling.
    """
    entries: dict[str, ApiDocEntry] = {}
    replaced = 0
    skipped: list[tuple[int, str]] = []

    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            record = json.loads(text)
            if not isinstance(record, dict):
                raise ValueError("record is not a JSON object")
            entry = parse_doc_record(record)
        except (ValueError, TypeError, AttributeError) as exc:
            skipped.append((lineno, str(exc)))
            continue
        if entry.name in entries:
            replaced += 1
        entries[entry.name] = entry

    dangling = sorted(
        {
            rel.name
            for entry in entries.values()
            for rel in entry.related
            if rel.name not in entries
        }
    )
    catalog = DocCatalog(entries.values())
    report = DocIngestReport(
        ingested=len(entries),
        replaced=replaced,
        dangling=tuple(dangling),
        skipped=tuple(skipped),
    )
    return catalog, report


def load_docs(path: str | Path) -> tuple[DocCatalog, DocIngestReport]:
    """Ingest a doc-corpus file. An unreadable file is a fatal DocIngestError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocIngestError(f"cannot read doc corpus {path}: {exc}") from exc
    return ingest_docs(text.splitlines())
