"""Doc catalog: ingest rules, lookup normalization, prefix-search oracle."""

from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apilens.docs import (
    DocIngestError,
    DocNotFound,
    ingest_docs,
    load_docs,
    parse_doc_record,
)
from conftest import DOCS_JSONL


def record(name, signature="mixed f($x)", **overrides) -> str:
    base = {
        "name": name,
        "signature": signature,
        "summary": "",
        "params": [],
        "returns": {"type": "", "description": "", "values": []},
        "related": [],
        "category": "",
        "source_url": "",
    }
    base.update(overrides)
    return json.dumps(base)


# --- fixture corpus ----------------------------------------------------------

def test_fixture_corpus_ingests_cleanly():
    catalog, report = load_docs(DOCS_JSONL)
    assert report.ingested == len(catalog) == 65
    assert report.replaced == 0
    assert report.dangling == ()
    assert report.skipped == ()


def test_strcmp_enumerates_all_three_return_values(catalog):
    entry = catalog.lookup("strcmp")
    values = {v.value: v.meaning for v in entry.returns.values}
    assert set(values) == {"0", "1", "-1"}
    assert all(meaning for meaning in values.values())
    assert entry.signature == "int strcmp($str1, $str2)"


def test_fread_requires_fopen(catalog):
    entry = catalog.lookup("fread")
    assert ("fopen", "requires") in {(r.name, r.relation) for r in entry.related}


def test_keyword_entries_have_empty_params(catalog):
    for name in ("foreach", "isset", "echo", "empty", "unset"):
        entry = catalog.lookup(name)
        assert entry.params == ()
        assert entry.category == "language construct"


# --- lookup -------------------------------------------------------------------

def test_lookup_is_case_insensitive(catalog):
    assert catalog.lookup("STRCMP") is catalog.lookup("strcmp")
    assert catalog.lookup("StrCmp").display_name == "strcmp"


def test_lookup_missing_raises_and_get_returns_none(catalog):
    with pytest.raises(DocNotFound):
        catalog.lookup("frobnicate")
    assert catalog.get("frobnicate") is None


def test_contains_normalizes_case(catalog):
    assert "COUNT" in catalog
    assert "count" in catalog
    assert "nope_not_here" not in catalog
    assert 42 not in catalog


# --- prefix search -------------------------------------------------------------

def brute_prefix(names, prefix, limit):
    matches = [n for n in names if n.startswith(prefix.lower())]
    return sorted(matches, key=lambda n: (len(n), n))[:limit]


def test_prefix_search_strc(catalog):
    assert catalog.prefix_search("strc", 20) == ["strcmp", "strcasecmp"]
    assert catalog.prefix_search("strc", 1) == ["strcmp"]
    assert catalog.prefix_search("zzz", 20) == []


def test_prefix_search_empty_prefix_is_global_head(catalog):
    got = catalog.prefix_search("", 5)
    assert got == brute_prefix(catalog.names(), "", 5)
    assert len(got) == 5


def test_prefix_search_rejects_bad_limit(catalog):
    with pytest.raises(ValueError):
        catalog.prefix_search("str", 0)


@given(
    prefix=st.text(alphabet="abcdefstuvwr_", max_size=6),
    limit=st.integers(min_value=1, max_value=30),
)
def test_prefix_search_matches_brute_force(prefix, limit):
    catalog, _ = load_docs(DOCS_JSONL)
    assert catalog.prefix_search(prefix, limit) == brute_prefix(
        catalog.names(), prefix, limit
    )


def test_prefix_search_random_name_stems(catalog):
    rng = random.Random(99)
    names = sorted(catalog.names())
    for _ in range(500):
        stem = rng.choice(names)[: rng.randint(1, 8)]
        limit = rng.randint(1, 25)
        assert catalog.prefix_search(stem, limit) == brute_prefix(
            catalog.names(), stem, limit
        )


# --- ingest semantics -----------------------------------------------------------

def test_empty_stream_yields_empty_catalog():
    catalog, report = ingest_docs([])
    assert len(catalog) == 0
    assert report == type(report)(ingested=0, replaced=0, dangling=(), skipped=())


def test_blank_lines_are_ignored():
    catalog, report = ingest_docs(["", "   ", record("count"), "\t"])
    assert len(catalog) == 1
    assert report.skipped == ()


def test_duplicate_names_last_record_wins():
    catalog, report = ingest_docs(
        [record("count", summary="old"), record("COUNT", summary="new")]
    )
    assert report.ingested == 1
    assert report.replaced == 1
    assert catalog.lookup("count").summary == "new"


def test_malformed_records_are_skipped_and_reported():
    lines = [
        "not json at all",
        json.dumps(["a", "list"]),
        record(""),  # missing name
        json.dumps({"name": "x"}),  # missing signature
        record("ok"),
    ]
    catalog, report = ingest_docs(lines)
    assert len(catalog) == 1
    assert "ok" in catalog
    assert [lineno for lineno, _ in report.skipped] == [1, 2, 3, 4]


def test_unknown_relation_tag_is_rejected():
    with pytest.raises(ValueError):
        parse_doc_record(
            json.loads(record("a", related=[{"name": "b", "relation": "enables"}]))
        )


def test_dangling_related_names_are_flagged_not_fatal():
    lines = [record("fread", related=[{"name": "fopen", "relation": "requires"}])]
    catalog, report = ingest_docs(lines)
    assert len(catalog) == 1
    assert report.dangling == ("fopen",)
    lines.append(record("fopen"))
    _, report = ingest_docs(lines)
    assert report.dangling == ()


def test_return_values_unique_by_value_text_keep_first():
    entry = parse_doc_record(
        json.loads(
            record(
                "f",
                returns={
                    "type": "int",
                    "description": "",
                    "values": [
                        {"value": "0", "meaning": "first"},
                        {"value": "0", "meaning": "second"},
                        {"value": "1", "meaning": "other"},
                    ],
                },
            )
        )
    )
    assert [(v.value, v.meaning) for v in entry.returns.values] == [
        ("0", "first"),
        ("1", "other"),
    ]


def test_related_names_are_lowercased():
    entry = parse_doc_record(
        json.loads(record("f", related=[{"name": "FOpen", "relation": "see-also"}]))
    )
    assert entry.related[0].name == "fopen"


def test_ingest_is_idempotent():
    lines = DOCS_JSONL.read_text(encoding="utf-8").splitlines()
    cat_a, rep_a = ingest_docs(lines)
    cat_b, rep_b = ingest_docs(lines)
    assert rep_a == rep_b
    assert [e for e in cat_a] == [e for e in cat_b]


def test_unreadable_file_is_fatal(tmp_path):
    with pytest.raises(DocIngestError):
        load_docs(tmp_path / "missing.jsonl")


def test_as_dict_mirrors_ingest_record(catalog):
    entry = catalog.lookup("strcmp")
    data = entry.as_dict()
    assert data["name"] == "strcmp"
    assert data["returns"]["values"][0] == {
        "value": "0",
        "meaning": "$str1 and $str2 are equal",
    }
    # Feeding the dict back through the parser reproduces the entry.
    reparsed = parse_doc_record({**data, "name": data["display_name"]})
    assert reparsed == entry
