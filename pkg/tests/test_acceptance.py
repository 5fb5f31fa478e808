"""Acceptance gate: every shipping criterion as one pass/fail test.

Run with ``pytest tests/test_acceptance.py -v`` to get one line per
criterion. Each test states its tolerance inline; everything is
deterministic except the latency measurement, which has a hard budget.
"""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from apilens.config import EngineConfig
from apilens.docs import DocCatalog, load_docs
from apilens.engine import Engine
from apilens.examples import ingest_example_records, load_examples
from apilens.lexer import tokenize
from apilens.replay import load_trace, percentile, replay
from conftest import (
    MANIFEST,
    TRACE,
    brute_call_counts,
    random_example_corpus,
    random_snippet,
)

GOLDEN = Path(__file__).parent / "golden"


def test_count_doc_and_examples_over_http(client):
    """Cursor on a count($friends) line answers doc + examples in < 1 s."""
    source = "<?php\n$friends = load_friends();\necho count($friends);\n"
    started = time.perf_counter()
    response = client.post(
        "/api/resolve",
        json={"source": source, "line": 3, "col": 7, "mode": "reading"},
    )
    wall_s = time.perf_counter() - started
    assert response.status_code == 200
    body = response.json()
    assert body["intent"] == {"kind": "exact", "api": "count"}
    assert body["doc"] is not None
    assert body["doc"]["name"] == "count"
    assert len(body["examples"]) >= 1
    assert all("count(" in ex["source"] for ex in body["examples"])
    assert wall_s < 1.0


def test_strcmp_doc_matches_golden_file(client):
    """strcmp returns exactly the three enumerated values 0, 1, -1."""
    body = client.get("/api/doc/strcmp").json()
    golden = json.loads((GOLDEN / "strcmp_doc.json").read_text(encoding="utf-8"))
    assert body == golden
    assert [v["value"] for v in body["returns"]["values"]] == ["0", "1", "-1"]
    assert all(v["meaning"] for v in body["returns"]["values"])


def test_fread_doc_lists_fopen_as_required(client):
    """fread's related list carries the fopen dependency with tag requires."""
    body = client.get("/api/doc/fread").json()
    assert {"name": "fopen", "relation": "requires"} in body["related"]


def test_lexer_round_trip_10k_snippets():
    """10,000 random PHP-like snippets re-concatenate byte-for-byte."""
    rng = random.Random(0xA11CE)
    failures = 0
    for _ in range(10_000):
        source = random_snippet(rng)
        if "".join(t.lexeme for t in tokenize(source)) != source:
            failures += 1
    assert failures == 0


def test_index_matches_brute_force_oracle_200_trials():
    """200 random corpora: ranked retrieval equals a brute re-lex scan."""
    from apilens.examples import BREVITY_WEIGHT, ExampleIndex

    mismatches = 0
    for trial in range(200):
        rng = random.Random(31_000 + trial)
        api_pool, examples = random_example_corpus(rng, max_examples=100, max_apis=30)
        index = ExampleIndex(examples)
        for api in api_pool:
            got = [(r.example.id, r.score) for r in index.examples_for_api(api, 10_000)]
            rows = []
            for ex in examples:
                count = brute_call_counts(ex.source).get(api, 0)
                if count:
                    score = Fraction(count) + Fraction(BREVITY_WEIGHT) / len(
                        ex.source.split("\n")
                    )
                    rows.append((ex.id, score))
            rows.sort(key=lambda row: (-row[1], row[0]))
            if got != rows:
                mismatches += 1
    assert mismatches == 0


def test_prefix_search_matches_brute_force_500_prefixes(catalog):
    """500 random prefixes: prefix_search equals filter + (len, lex) sort."""
    rng = random.Random(77)
    names = sorted(catalog.names())
    alphabet = "abcdefghijklmnopqrstuvwxyz_"
    for trial in range(500):
        if trial % 2:
            prefix = rng.choice(names)[: rng.randint(1, 10)]
        else:
            prefix = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 4)))
        limit = rng.randint(1, 30)
        brute = sorted(
            (n for n in names if n.startswith(prefix)), key=lambda n: (len(n), n)
        )[:limit]
        assert catalog.prefix_search(prefix, limit) == brute


def test_ingest_order_permutation_invariance_10_orders():
    """10 shuffled manifest orders produce byte-identical query results."""
    records = [
        json.loads(line)
        for line in MANIFEST.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    transcripts = []
    for order in range(10):
        rng = random.Random(8_800 + order)
        shuffled = records[:]
        rng.shuffle(shuffled)
        index, _ = ingest_example_records(shuffled, MANIFEST.parent)
        lines = []
        for api in sorted(index.api_names()):
            for limit in (1, 3, 10):
                lines.append(
                    json.dumps(
                        [r.as_dict() for r in index.examples_for_api(api, limit)],
                        sort_keys=True,
                    )
                )
        for query in ("read file", "fopen", "count", "json payload"):
            lines.append(
                json.dumps(
                    [r.as_dict() for r in index.task_search(query, 10)], sort_keys=True
                )
            )
        transcripts.append("\n".join(lines).encode("utf-8"))
    assert all(t == transcripts[0] for t in transcripts[1:])


def test_resolve_latency_p95_on_synthetic_corpus(tmp_path):
    """10k examples / 1k APIs: p95 of 1,000 /api/resolve calls <= 50 ms."""
    from fastapi.testclient import TestClient

    from apilens.server import create_app
    from make_synthetic_corpus import generate

    started = time.perf_counter()
    corpus = generate(tmp_path / "syn", n_examples=10_000, n_apis=1_000, seed=7)
    catalog, _ = load_docs(corpus / "docs.jsonl")
    index, _ = load_examples(corpus / "examples" / "manifest.jsonl")
    build_s = time.perf_counter() - started
    assert build_s < 300.0  # generation + ingest budget: five minutes
    assert len(catalog) == 1_000
    assert len(index) == 10_000

    engine = Engine(catalog, index, EngineConfig())
    rng = random.Random(1234)
    names = sorted(catalog.names())
    latencies = []
    with TestClient(create_app(engine)) as http:
        for _ in range(1_000):
            name = rng.choice(names)
            source = f"<?php\n$out = {name}($input, {rng.randint(0, 9)});\n"
            payload = {
                "source": source,
                "line": 2,
                "col": 8 + rng.randint(0, len(name)),
                "mode": "reading",
            }
            t0 = time.perf_counter()
            response = http.post("/api/resolve", json=payload)
            latencies.append((time.perf_counter() - t0) * 1000.0)
            assert response.status_code == 200
            assert response.json()["intent"]["api"] == name
    assert percentile(latencies, 0.95) <= 50.0


def test_reading_trace_misses_and_monotonicity(engine, catalog, example_index):
    """Fixture trace: miss == 2; replay deterministic; smaller catalog,
    strictly more misses."""
    events = load_trace(TRACE)
    first = replay(events, engine)
    assert first.miss == 2

    second = replay(events, engine)
    strip = lambda m: {
        k: v for k, v in m.as_dict().items() if not k.startswith("latency")
    }
    assert strip(first) == strip(second)

    truncated = DocCatalog(
        entry for entry in catalog if entry.name not in {"count", "explode"}
    )
    smaller = replay(events, Engine(truncated, example_index, EngineConfig()))
    assert smaller.miss > first.miss
