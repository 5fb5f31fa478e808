"""Measure end-to-end HTTP latency percentiles against an index.

Drives the service in process (no sockets) with a deterministic mix of
cursor resolutions and task searches, then prints p50/p95/p99 in
milliseconds. Pair with make_synthetic_corpus.py for scale runs:

    python scripts/make_synthetic_corpus.py --out /tmp/syn
    python scripts/bench_latency.py --docs /tmp/syn/docs.jsonl \
        --examples /tmp/syn/examples/manifest.jsonl --requests 1000
"""

from __future__ import annotations

import argparse
import random
import time
from pathlib import Path

from fastapi.testclient import TestClient

from apilens.config import EngineConfig
from apilens.docs import load_docs
from apilens.engine import Engine
from apilens.examples import load_examples
from apilens.replay import percentile
from apilens.server import create_app


def build_requests(engine: Engine, n: int, seed: int) -> list[tuple[str, dict]]:
    """A deterministic (endpoint, payload) mix: 80% resolves, 20% searches."""
    rng = random.Random(seed)
    names = sorted(engine.catalog.names())
    requests: list[tuple[str, dict]] = []
    for i in range(n):
        name = rng.choice(names)
        if i % 5 == 4:
            requests.append(("/api/search", {"query": name, "limit": 10}))
        else:
            source = f"<?php\n$out = {name}($input, {rng.randint(0, 9)});\n"
            requests.append(
                (
                    "/api/resolve",
                    {
                        "source": source,
                        "line": 2,
                        "col": 8 + rng.randint(0, 4),
                        "mode": "reading",
                    },
                )
            )
    return requests


def run(engine: Engine, n_requests: int, seed: int) -> dict[str, float]:
    app = create_app(engine)
    latencies: list[float] = []
    with TestClient(app) as client:
        for path, payload in build_requests(engine, n_requests, seed):
            t0 = time.perf_counter()
            response = client.post(path, json=payload)
            elapsed = (time.perf_counter() - t0) * 1000.0
            response.raise_for_status()
            latencies.append(elapsed)
    return {
        "p50": percentile(latencies, 0.50),
        "p95": percentile(latencies, 0.95),
        "p99": percentile(latencies, 0.99),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--docs", type=Path, required=True)
    parser.add_argument("--examples", type=Path, required=True)
    parser.add_argument("--requests", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()

    t0 = time.perf_counter()
    catalog, _ = load_docs(args.docs)
    index, _ = load_examples(args.examples)
    engine = Engine(catalog=catalog, index=index, config=EngineConfig())
    print(f"ingest: {time.perf_counter() - t0:.2f}s "
          f"({len(catalog)} APIs, {len(index)} examples)")

    stats = run(engine, args.requests, args.seed)
    for key, value in stats.items():
        print(f"{key}: {value:.3f} ms")


if __name__ == "__main__":
    main()
