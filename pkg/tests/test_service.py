"""Query service: wire shapes, error codes, statelessness, bundle round-trip."""

from __future__ import annotations

import json
import random

import pytest

from apilens.config import EngineConfig
from apilens.engine import (
    MAX_SOURCE_BYTES,
    Engine,
    SourceTooLarge,
    load_bundle,
    load_engine,
    save_bundle,
)
from apilens.intent import InvalidPosition

FRIENDS_COUNT_SOURCE = "<?php\n$friends = ['ada', 'bo'];\necho count($friends);\n"


def canonical(payload: dict) -> str:
    data = dict(payload)
    data.pop("elapsed_ms", None)
    return json.dumps(data, sort_keys=True)


# --- engine level -------------------------------------------------------------

def test_resolve_query_count_scenario(engine):
    result = engine.resolve_query(FRIENDS_COUNT_SOURCE, 3, 8, "reading")
    assert result.intent.kind == "exact"
    assert result.intent.api == "count"
    assert result.doc is not None
    assert result.doc.name == "count"
    assert result.examples
    assert result.elapsed_ms >= 0.0


def test_prefix_result_has_no_doc_or_examples(engine):
    result = engine.resolve_query("<?php strc", 1, 11, "writing")
    assert result.intent.kind == "prefix"
    assert result.doc is None
    assert result.examples == ()
    payload = result.as_dict()
    assert "candidates" in payload["intent"]
    assert "api" not in payload["intent"]
    assert payload["doc"] is None
    assert payload["examples"] == []


def test_miss_result_shape(engine):
    result = engine.resolve_query("<?php\n\n", 2, 1, "reading")
    assert result.intent.kind == "miss"
    payload = result.as_dict()
    assert payload["intent"] == {"kind": "miss"}


def test_source_size_cap(engine):
    big = "x" * (MAX_SOURCE_BYTES + 1)
    with pytest.raises(SourceTooLarge):
        engine.resolve_query(big, 1, 1, "reading")
    # Multibyte text can exceed the cap with fewer characters.
    wide = "é" * ((MAX_SOURCE_BYTES // 2) + 1)
    with pytest.raises(SourceTooLarge):
        engine.resolve_query(wide, 1, 1, "reading")


def test_doc_present_iff_exact_over_cursor_walk(engine, program_source):
    rng = random.Random(404)
    lines = program_source.split("\n")
    for _ in range(200):
        line = rng.randint(1, len(lines))
        col = rng.randint(1, len(lines[line - 1]) + 1)
        mode = rng.choice(("reading", "writing"))
        result = engine.resolve_query(program_source, line, col, mode)
        assert (result.doc is not None) == (result.intent.kind == "exact")
        if result.examples:
            assert result.intent.kind == "exact"


def test_example_limit_comes_from_config(catalog, example_index):
    tight = Engine(catalog, example_index, EngineConfig(example_limit=1))
    result = tight.resolve_query("<?php fopen($f, 'r');\n", 1, 8, "reading")
    assert len(result.examples) == 1


# --- HTTP endpoints -------------------------------------------------------------

def test_http_resolve_count_snippet(client):
    response = client.post(
        "/api/resolve",
        json={"source": FRIENDS_COUNT_SOURCE, "line": 3, "col": 8, "mode": "reading"},
    )
    assert response.status_code == 200
    body = response.json()
    assert set(body) == {"intent", "doc", "examples", "elapsed_ms"}
    assert body["intent"]["kind"] == "exact"
    assert body["intent"]["api"] == "count"
    assert body["doc"]["signature"] == "int count($value, $mode = COUNT_NORMAL)"
    assert body["examples"]
    assert set(body["examples"][0]) == {"id", "title", "source", "score"}
    assert isinstance(body["examples"][0]["score"], float)
    assert body["elapsed_ms"] >= 0.0


def test_http_resolve_writing_prefix(client):
    response = client.post(
        "/api/resolve",
        json={"source": "<?php strc", "line": 1, "col": 11, "mode": "writing"},
    )
    body = response.json()
    assert body["intent"]["kind"] == "prefix"
    assert "strcmp" in body["intent"]["candidates"]
    assert body["doc"] is None
    assert body["examples"] == []


def test_http_invalid_position(client):
    response = client.post(
        "/api/resolve",
        json={"source": "<?php\n", "line": 99, "col": 1, "mode": "reading"},
    )
    assert response.status_code == 400
    assert response.json()["error"] == "invalid_position"


def test_http_source_too_large(client):
    response = client.post(
        "/api/resolve",
        json={
            "source": "y" * (MAX_SOURCE_BYTES + 1),
            "line": 1,
            "col": 1,
            "mode": "reading",
        },
    )
    assert response.status_code == 413
    assert response.json()["error"] == "source_too_large"


@pytest.mark.parametrize(
    "payload",
    [
        {"source": "<?php\n", "line": 1, "col": 1, "mode": "editing"},
        {"source": "<?php\n", "line": "one", "col": 1, "mode": "reading"},
        {"line": 1, "col": 1, "mode": "reading"},
    ],
)
def test_http_malformed_resolve_requests(client, payload):
    response = client.post("/api/resolve", json=payload)
    assert response.status_code == 400
    assert response.json()["error"] == "invalid_request"


def test_http_search_read_file(client):
    response = client.post("/api/search", json={"query": "read file"})
    assert response.status_code == 200
    examples = response.json()["examples"]
    assert examples[0]["id"] == "ex004-read-file"


def test_http_search_limit(client):
    response = client.post("/api/search", json={"query": "fopen", "limit": 1})
    assert len(response.json()["examples"]) == 1
    response = client.post("/api/search", json={"query": "fopen", "limit": 0})
    assert response.status_code == 400
    assert response.json()["error"] == "invalid_request"


def test_http_empty_query(client):
    response = client.post("/api/search", json={"query": "   "})
    assert response.status_code == 400
    assert response.json()["error"] == "empty_query"


def test_http_doc_endpoint(client):
    response = client.get("/api/doc/strcmp")
    assert response.status_code == 200
    values = response.json()["returns"]["values"]
    assert [v["value"] for v in values] == ["0", "1", "-1"]

    missing = client.get("/api/doc/frobnicate")
    assert missing.status_code == 404
    assert missing.json()["error"] == "not_found"


def test_http_examples_endpoint(client, engine):
    response = client.get("/api/examples/count")
    assert response.status_code == 200
    expect = [r.as_dict() for r in engine.examples_for("count")]
    assert response.json()["examples"] == expect

    one = client.get("/api/examples/count", params={"limit": 1})
    assert len(one.json()["examples"]) == 1

    bad = client.get("/api/examples/count", params={"limit": 0})
    assert bad.status_code == 400


def test_http_health(client):
    response = client.get("/api/health")
    assert response.json() == {"status": "ok", "apis": 65, "examples": 15}


def test_http_statelessness_modulo_elapsed(client):
    payload = {"source": FRIENDS_COUNT_SOURCE, "line": 3, "col": 8, "mode": "reading"}
    first = client.post("/api/resolve", json=payload).json()
    second = client.post("/api/resolve", json=payload).json()
    assert canonical(first) == canonical(second)


def test_http_errors_carry_no_stack_traces(client):
    response = client.post(
        "/api/resolve",
        json={"source": "<?php\n", "line": 0, "col": 1, "mode": "reading"},
    )
    body = response.json()
    assert set(body) == {"error", "message"}
    assert "Traceback" not in body["message"]


def test_static_mount_serves_frontend(engine, tmp_path):
    from fastapi.testclient import TestClient

    from apilens.server import create_app

    (tmp_path / "index.html").write_text("<!doctype html><title>ok</title>")
    with TestClient(create_app(engine, static_dir=tmp_path)) as c:
        page = c.get("/")
        assert page.status_code == 200
        assert "ok" in page.text
        # API routes still take precedence over the static mount.
        assert c.get("/api/health").status_code == 200


# --- bundle round-trip ------------------------------------------------------------

def probe_queries(engine: Engine) -> str:
    """Canonical transcript of a representative query battery."""
    out = []
    for line, col, mode in [(3, 8, "reading"), (1, 6, "reading"), (2, 1, "reading")]:
        out.append(canonical(engine.resolve_query(FRIENDS_COUNT_SOURCE, line, col, mode).as_dict()))
    out.append(canonical(engine.resolve_query("<?php strc", 1, 11, "writing").as_dict()))
    for api in sorted(engine.index.api_names()):
        out.append(json.dumps([r.as_dict() for r in engine.examples_for(api)]))
    for name in sorted(engine.catalog.names()):
        out.append(json.dumps(engine.doc(name).as_dict(), sort_keys=True))
        out.append(json.dumps(engine.catalog.prefix_search(name[:2], 10)))
    out.append(json.dumps([r.as_dict() for r in engine.task_search("read file")]))
    return "\n".join(out)


def test_load_after_save_answers_identically(engine, tmp_path):
    save_bundle(tmp_path, engine.catalog, engine.index)
    reloaded = load_engine(tmp_path)
    assert probe_queries(reloaded) == probe_queries(engine)
    assert reloaded.stats() == engine.stats()


def test_save_load_save_is_stable(engine, tmp_path):
    first = tmp_path / "a"
    second = tmp_path / "b"
    save_bundle(first, engine.catalog, engine.index)
    catalog, index = load_bundle(first)
    save_bundle(second, catalog, index)
    for name in ("docs.json", "examples.json", "meta.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_bundle_rejects_unknown_format(engine, tmp_path):
    save_bundle(tmp_path, engine.catalog, engine.index)
    meta = tmp_path / "meta.json"
    meta.write_text(json.dumps({"format": 99}), encoding="utf-8")
    with pytest.raises(ValueError):
        load_bundle(tmp_path)


# --- CLI ----------------------------------------------------------------------------

def test_cli_index_resolve_replay_compare(tmp_path, capsys):
    from apilens.cli import main

    from conftest import DOCS_JSONL, MANIFEST, PROGRAM, TRACE

    out_dir = tmp_path / "idx"
    assert (
        main(
            [
                "index",
                "--docs",
                str(DOCS_JSONL),
                "--examples",
                str(MANIFEST),
                "--out",
                str(out_dir),
            ]
        )
        == 0
    )
    assert (out_dir / "meta.json").exists()
    capsys.readouterr()

    assert (
        main(
            [
                "resolve",
                "--index",
                str(out_dir),
                "--file",
                str(PROGRAM),
                "--line",
                "5",
                "--col",
                "9",
                "--mode",
                "reading",
            ]
        )
        == 0
    )
    resolved = json.loads(capsys.readouterr().out)
    assert resolved["intent"]["api"] == "count"

    metrics_path = tmp_path / "metrics.json"
    assert main(["replay", "--trace", str(TRACE), "--index", str(out_dir), "--json"]) == 0
    metrics = json.loads(capsys.readouterr().out)
    assert metrics["miss"] == 2
    metrics_path.write_text(json.dumps(metrics), encoding="utf-8")

    assert main(["compare", str(metrics_path), str(metrics_path)]) == 0
    table = capsys.readouterr().out
    assert "delta" in table
    assert " 0" in table


def test_cli_resolve_invalid_position_exits_nonzero(tmp_path, capsys):
    from apilens.cli import main

    from conftest import DOCS_JSONL, MANIFEST, PROGRAM

    out_dir = tmp_path / "idx"
    main(["index", "--docs", str(DOCS_JSONL), "--examples", str(MANIFEST), "--out", str(out_dir)])
    capsys.readouterr()
    code = main(
        [
            "resolve",
            "--index",
            str(out_dir),
            "--file",
            str(PROGRAM),
            "--line",
            "9999",
            "--col",
            "1",
            "--mode",
            "reading",
        ]
    )
    assert code != 0
