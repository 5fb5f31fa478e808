"""Generate a synthetic doc + example corpus for scale and latency runs.

Produces the same on-disk layout as the bundled fixture corpus: a
``docs.jsonl``, an example ``manifest.jsonl``, and one PHP source file per
example under ``src/``. Everything is derived from a seeded RNG, so a given
(seed, sizes) triple always produces byte-identical output.

Usage:
    python scripts/make_synthetic_corpus.py --out /tmp/syn \
        --examples 10000 --apis 1000 --seed 7
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

VERBS = ["get", "set", "load", "store", "parse", "format", "merge", "split",
         "scan", "pack", "fold", "index", "hash", "rank", "probe", "emit"]
NOUNS = ["rows", "bytes", "path", "tree", "node", "list", "text", "key",
         "user", "frame", "chunk", "queue", "span", "field", "page", "blob"]
CATEGORIES = ["string", "array", "filesystem", "network", "math", "codec"]
COMMENT_WORDS = ["buffer", "retry", "cache", "batch", "stream", "quota",
                 "cursor", "offset", "digest", "window", "shard", "ticket"]


def api_name(i: int, rng: random.Random) -> str:
    return f"{rng.choice(VERBS)}_{rng.choice(NOUNS)}_{i:04d}"


def make_doc(name: str, rng: random.Random, all_names: list[str]) -> dict:
    n_params = rng.randint(1, 3)
    params = [
        {
            "name": f"arg{j}",
            "type": rng.choice(["string", "int", "array", "mixed"]),
            "description": f"Synthetic parameter {j} of {name}.",
        }
        for j in range(n_params)
    ]
    values = []
    if rng.random() < 0.4:
        values.append({"value": "false", "meaning": "the operation failed"})
    related = [
        {"name": rng.choice(all_names), "relation": "see-also"}
        for _ in range(rng.randint(0, 2))
    ]
    arglist = ", ".join(f"${p['name']}" for p in params)
    return {
        "name": name,
        "signature": f"mixed {name}({arglist})",
        "summary": f"Synthetic catalog entry for {name}.",
        "params": params,
        "returns": {
            "type": "mixed",
            "description": f"Result of {name}.",
            "values": values,
        },
        "related": related,
        "category": rng.choice(CATEGORIES),
        "source_url": f"https://synthetic.example/{name}",
    }


def make_example_source(apis: list[str], rng: random.Random) -> str:
    lines = ["<?php"]
    if rng.random() < 0.5:
        words = rng.sample(COMMENT_WORDS, rng.randint(1, 3))
        lines.append("// " + " ".join(words))
    var = 0
    for api in apis:
        for _ in range(rng.randint(1, 3)):
            var += 1
            lines.append(f"$v{var} = {api}($input, {rng.randint(0, 99)});")
    lines.append(f"echo $v{var}, \"\\n\";")
    return "\n".join(lines) + "\n"


def generate(
    out_dir: str | Path,
    n_examples: int = 10_000,
    n_apis: int = 1_000,
    seed: int = 7,
) -> Path:
    """Write the corpus and return its root directory."""
    rng = random.Random(seed)
    out = Path(out_dir)
    src_dir = out / "examples" / "src"
    src_dir.mkdir(parents=True, exist_ok=True)

    names = [api_name(i, rng) for i in range(n_apis)]
    with (out / "docs.jsonl").open("w", encoding="utf-8") as fh:
        for name in names:
            fh.write(json.dumps(make_doc(name, rng, names)) + "\n")

    with (out / "examples" / "manifest.jsonl").open("w", encoding="utf-8") as fh:
        for i in range(n_examples):
            ex_id = f"syn{i:05d}"
            apis = rng.sample(names, rng.randint(1, 4))
            fname = f"{ex_id}.php"
            (src_dir / fname).write_text(
                make_example_source(apis, rng), encoding="utf-8"
            )
            record = {
                "id": ex_id,
                "title": f"Sample {i} using {apis[0]}",
                "path": f"src/{fname}",
                "source_url": f"https://synthetic.example/snippets/{ex_id}",
            }
            fh.write(json.dumps(record) + "\n")
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--examples", type=int, default=10_000)
    parser.add_argument("--apis", type=int, default=1_000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    out = generate(args.out, args.examples, args.apis, args.seed)
    print(f"wrote {args.examples} examples / {args.apis} APIs to {out}")


if __name__ == "__main__":
    main()
