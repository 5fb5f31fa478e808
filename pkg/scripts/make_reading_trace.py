"""Regenerate the bundled reading-session trace from the fixture program.

Each event puts the cursor on the first character of a call-site name in
``friends_report.php``; together they walk the program the way a reader
would: main flow first, then into the parsing helper, then the output
loop. Two targets (``score_friend`` and ``render_badge``) are local
helpers with no catalog entry, so replaying the trace must report exactly
two misses.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from apilens.lexer import extract_call_sites, tokenize

REPO = Path(__file__).resolve().parent.parent
DEFAULT_PROGRAM = REPO / "corpus" / "programs" / "friends_report.php"
DEFAULT_OUT = REPO / "corpus" / "traces" / "reading_task.jsonl"

# (callee, occurrence). Occurrence counts every call site with that name in
# source order; a named function definition counts too, so the helper calls
# below are occurrence 1, not 0.
TARGETS = [
    ("fopen", 0),
    ("feof", 0),
    ("fgets", 0),
    ("score_friend", 1),
    ("explode", 0),
    ("trim", 0),
    ("count", 0),
    ("strtoupper", 0),
    ("fclose", 0),
    ("render_badge", 1),
]

TIMES_MS = [0, 420, 910, 1500, 2080, 2630, 3190, 3770, 4420, 5000]


def locate(source: str, callee: str, occurrence: int) -> tuple[int, int]:
    sites = [s for s in extract_call_sites(tokenize(source)) if s.callee == callee]
    if occurrence >= len(sites):
        raise SystemExit(
            f"{callee!r}: wanted occurrence {occurrence}, found {len(sites)} sites"
        )
    span = sites[occurrence].name_span
    return span.start_line, span.start_col

def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--program", type=Path, default=DEFAULT_PROGRAM)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    source = args.program.read_text(encoding="utf-8")
    lines = []
    for (callee, occurrence), t_ms in zip(TARGETS, TIMES_MS):
        line, col = locate(source, callee, occurrence)
        lines.append(
            json.dumps(
                {
                    "t_ms": t_ms,
                    "type": "cursor",
                    "source": source,
                    "line": line,
                    "col": col,
                    "mode": "reading",
                },
                ensure_ascii=False,
            )
        )
        print(f"{t_ms:6d} ms  {callee:14s} line {line:3d} col {col}")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} events to {args.out}")


if __name__ == "__main__":
    main()
