"""Code example corpus: ingest, inverted index, and deterministic ranking.

Two query paths share one corpus. API-specific retrieval returns examples
that call a given function, densest and shortest first. Task search matches
every word of a free-text query against title/comment words and called API
names. All ranking is exact rational arithmetic with ties broken by
ascending example id, so results are reproducible byte for byte.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .lexer import TokenKind, extract_call_sites, tokenize

# Score knobs. An example scores call-count + BREVITY_WEIGHT / line-count for
# an API query; a task query scores per matched word. Tunable via config.
BREVITY_WEIGHT = 5
API_WORD_WEIGHT = 2
KEYWORD_WORD_WEIGHT = 1

_WORD_RE = re.compile(r"[a-z0-9_]+")


class ExampleIngestError(ValueError):
    """Fatal ingest problem, e.g. duplicate ids or an unreadable manifest."""


class EmptyQuery(ValueError):
    """Task query was empty after trimming."""


@dataclass(frozen=True, slots=True)
class CodeExample:
    id: str
    title: str
    source: str
    calls: Mapping[str, int]  # callee -> call-site count, recomputable by re-lexing
    line_count: int
    source_url: str

    @classmethod
    def from_source(
        cls, id: str, title: str, source: str, source_url: str = ""
    ) -> "CodeExample":
        tokens = tokenize(source)
        calls = Counter(site.callee for site in extract_call_sites(tokens))
        return cls(
            id=id,
            title=title,
            source=source,
            calls=dict(calls),
            line_count=len(source.split("\n")),
            source_url=source_url,
        )

    def keyword_tokens(self) -> frozenset[str]:
        """Lowercased words from the title and comment text only."""
        text_parts = [self.title]
        text_parts.extend(
            tok.lexeme
            for tok in tokenize(self.source)
            if tok.kind is TokenKind.COMMENT
        )
        return frozenset(_WORD_RE.findall(" ".join(text_parts).lower()))


@dataclass(frozen=True, slots=True)
class RankedExample:
    example: CodeExample
    score: Fraction

    def as_dict(self) -> dict:
        return {
            "id": self.example.id,
            "title": self.example.title,
            "source": self.example.source,
            "score": float(self.score),
        }


@dataclass(frozen=True, slots=True)
class ExampleIngestReport:
    examples: int
    distinct_apis: int
    skipped: tuple[tuple[str, str], ...]  # (example id, reason)


class ExampleIndex:
    """Immutable inverted index over a code example corpus."""

    def __init__(self, examples: Iterable[CodeExample]):
        by_id: dict[str, CodeExample] = {}
        for ex in examples:
            if ex.id in by_id:
                raise ExampleIngestError(f"duplicate example id {ex.id!r}")
            by_id[ex.id] = ex
        # Stored sorted by id so every derived ordering is ingest-order free.
        self._examples = {k: by_id[k] for k in sorted(by_id)}
        self._by_api: dict[str, frozenset[str]] = {}
        self._by_word: dict[str, frozenset[str]] = {}
        api_ids: dict[str, set[str]] = {}
        word_ids: dict[str, set[str]] = {}
        for ex in self._examples.values():
            for api in ex.calls:
                api_ids.setdefault(api, set()).add(ex.id)
            for word in ex.keyword_tokens():
                word_ids.setdefault(word, set()).add(ex.id)
        self._by_api = {k: frozenset(v) for k, v in api_ids.items()}
        self._by_word = {k: frozenset(v) for k, v in word_ids.items()}

    def __len__(self) -> int:
        return len(self._examples)

    def __contains__(self, example_id: object) -> bool:
        return example_id in self._examples

    def get(self, example_id: str) -> CodeExample | None:
        return self._examples.get(example_id)

    def examples(self) -> list[CodeExample]:
        return list(self._examples.values())

    def api_names(self) -> frozenset[str]:
        return frozenset(self._by_api)

    def ids_for_api(self, api: str) -> frozenset[str]:
        return self._by_api.get(api.lower(), frozenset())

    def examples_for_api(
        self, api: str, limit: int, *, brevity_weight: int | float = BREVITY_WEIGHT
    ) -> list[RankedExample]:
        """Examples containing at least one call to ``api``, best first.

        Score is call-count plus brevity_weight / line-count: favors
        examples dense in the API and short overall. Unknown APIs yield [].
        """
        if limit < 1:
            raise ValueError("limit must be >= 1")
        name = api.lower()
        weight = Fraction(brevity_weight)
        ranked = [
            RankedExample(ex, Fraction(ex.calls[name]) + weight / ex.line_count)
            for ex in (self._examples[i] for i in sorted(self._by_api.get(name, ())))
        ]
        ranked.sort(key=lambda r: (-r.score, r.example.id))
        return ranked[:limit]

    def task_search(
        self,
        query: str,
        limit: int,
        *,
        api_word_weight: int = API_WORD_WEIGHT,
        keyword_word_weight: int = KEYWORD_WORD_WEIGHT,
    ) -> list[RankedExample]:
        """Free-text search: every query word must match as a called API
        name or a title/comment word. API-name matches weigh more.
        """
        if limit < 1:
            raise ValueError("limit must be >= 1")
        words = query.lower().split()
        if not words:
            raise EmptyQuery("query is empty")
        candidate_ids: set[str] | None = None
        for word in words:
            hits = self._by_api.get(word, frozenset()) | self._by_word.get(
                word, frozenset()
            )
            candidate_ids = hits if candidate_ids is None else candidate_ids & hits
            if not candidate_ids:
                return []
        assert candidate_ids is not None
        ranked = []
        for ex_id in sorted(candidate_ids):
            ex = self._examples[ex_id]
            score = Fraction(
                sum(
                    api_word_weight if word in ex.calls else keyword_word_weight
                    for word in set(words)
                )
            )
            ranked.append(RankedExample(ex, score))
        ranked.sort(key=lambda r: (-r.score, r.example.id))
        return ranked[:limit]


def ingest_example_records(
    records: Iterable[Mapping], base_dir: str | Path
) -> tuple[ExampleIndex, ExampleIngestReport]:
    """Build an index from decoded manifest records.

    Each record names a source file via ``path``, relative to ``base_dir``.
    Unreadable files are skipped and reported; a duplicate id is fatal.
    """
    base = Path(base_dir)
    examples: list[CodeExample] = []
    skipped: list[tuple[str, str]] = []
    for record in records:
        ex_id = str(record.get("id", ""))
        if not ex_id:
            skipped.append(("", "record has no id"))
            continue
        try:
            source = (base / str(record.get("path", ""))).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            skipped.append((ex_id, str(exc)))
            continue
        examples.append(
            CodeExample.from_source(
                id=ex_id,
                title=str(record.get("title", "")),
                source=source,
                source_url=str(record.get("source_url", "")),
            )
        )
    index = ExampleIndex(examples)
    report = ExampleIngestReport(
        examples=len(index),
        distinct_apis=len(index.api_names()),
        skipped=tuple(skipped),
    )
    return index, report


def load_examples(manifest: str | Path) -> tuple[ExampleIndex, ExampleIngestReport]:
    """Ingest an example-corpus manifest: one JSON object per line with keys
    {"id","title","path","source_url"}, paths relative to the manifest.
    """
    manifest_path = Path(manifest)
    try:
        text = manifest_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ExampleIngestError(f"cannot read manifest {manifest}: {exc}") from exc
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ExampleIngestError(f"{manifest}:{lineno}: bad JSON: {exc}") from exc
        if not isinstance(record, dict):
            raise ExampleIngestError(f"{manifest}:{lineno}: record is not an object")
        records.append(record)
    return ingest_example_records(records, manifest_path.parent)
