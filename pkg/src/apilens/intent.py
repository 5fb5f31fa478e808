"""Map a cursor position to the API the user most plausibly means.

Reading mode resolves against existing code on and around the cursor line;
writing mode completes the partial identifier ending at the cursor and
falls back to reading-mode rules when there is nothing to complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet

from .lexer import (
    CallSite,
    Token,
    TokenKind,
    extract_call_sites,
    is_identifier_char,
    tokenize,
)

MIN_PREFIX_LEN = 2
CANDIDATE_CAP = 20

MODES = ("reading", "writing")


class InvalidPosition(ValueError):
    """Cursor line/col outside the buffer: a caller bug, not a miss."""


@dataclass(frozen=True, slots=True)
class CursorContext:
    source: str
    line: int
    col: int
    mode: str


@dataclass(frozen=True, slots=True)
class ResolvedIntent:
    """Outcome of intent resolution.

    ``api`` is set only when ``kind == "exact"``; ``candidates`` only when
    ``kind == "prefix"``. ``alternates`` lists other call-site names seen on
    the cursor line (and, on a miss over an uncataloged call, that call's
    name first).
    """

    kind: str  # "exact" | "prefix" | "miss"
    api: str | None = None
    candidates: tuple[str, ...] = ()
    alternates: tuple[str, ...] = ()


def resolve(ctx: CursorContext, catalog: AbstractSet[str]) -> ResolvedIntent:
    """Resolve the cursor context against a catalog of known API names.

    Raises InvalidPosition when the cursor lies outside the buffer and
    ValueError on an unknown mode.
    """
    if ctx.mode not in MODES:
        raise ValueError(f"unknown mode: {ctx.mode!r}")
    lines = ctx.source.split("\n")
    if not 1 <= ctx.line <= len(lines):
        raise InvalidPosition(f"line {ctx.line} outside buffer of {len(lines)} lines")
    line_text = lines[ctx.line - 1]
    if not 1 <= ctx.col <= len(line_text) + 1:
        raise InvalidPosition(
            f"col {ctx.col} outside line {ctx.line} of length {len(line_text)}"
        )

    if ctx.mode == "writing":
        run = _identifier_run_before(line_text, ctx.col)
        if len(run) >= MIN_PREFIX_LEN:
            prefix = run.lower()
            if prefix in catalog:
                return ResolvedIntent(kind="exact", api=prefix)
            candidates = sorted(
                (name for name in catalog if name.startswith(prefix)),
                key=lambda name: (len(name), name),
            )[:CANDIDATE_CAP]
            if candidates:
                return ResolvedIntent(kind="prefix", candidates=tuple(candidates))
    return _resolve_reading(ctx, catalog)


def _identifier_run_before(line_text: str, col: int) -> str:
    end = col - 1
    start = end
    while start > 0 and is_identifier_char(line_text[start - 1]):
        start -= 1
    return line_text[start:end]


def _resolve_reading(ctx: CursorContext, catalog: AbstractSet[str]) -> ResolvedIntent:
    tokens = tokenize(ctx.source)
    sites = extract_call_sites(tokens)
    pos = (ctx.line, ctx.col)
    line_sites = [s for s in sites if s.name_span.start_line == ctx.line]

    target = _pick_call_site(sites, line_sites, pos)
    if target is not None:
        others = _distinct_callees(line_sites, exclude=target.callee)
        if target.callee in catalog:
            return ResolvedIntent(kind="exact", api=target.callee, alternates=others)
        return ResolvedIntent(kind="miss", alternates=(target.callee, *others))

    keyword = _first_catalog_identifier(tokens, ctx.line, catalog)
    if keyword is not None:
        return ResolvedIntent(kind="exact", api=keyword)
    return ResolvedIntent(kind="miss")


def _pick_call_site(
    sites: list[CallSite], line_sites: list[CallSite], pos: tuple[int, int]
) -> CallSite | None:
    line, col = pos
    # 1. Innermost call whose name or argument span contains the cursor.
    containing = [s for s in sites if _touches(s, line, col)]
    if containing:
        return max(containing, key=lambda s: s.name_span.start)
    # 2. Nearest call on the line whose name ends at or before the cursor.
    before = [s for s in line_sites if s.name_span.end_col <= col]
    if before:
        return max(before, key=lambda s: s.name_span.end_col)
    # 3. First call on the line.
    if line_sites:
        return line_sites[0]
    return None


def _touches(site: CallSite, line: int, col: int) -> bool:
    if site.name_span.contains(line, col):
        return True
    if site.closed:
        return site.paren_span.contains(line, col)
    return site.paren_span.start <= (line, col)  # open-ended: to end of buffer


def _distinct_callees(line_sites: list[CallSite], exclude: str) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for site in line_sites:
        if site.callee != exclude:
            seen.setdefault(site.callee)
    return tuple(seen)


def _first_catalog_identifier(
    tokens: list[Token], line: int, catalog: AbstractSet[str]
) -> str | None:
    for tok in tokens:
        if (
            tok.kind is TokenKind.IDENTIFIER
            and tok.span.start_line == line
            and tok.lexeme.lower() in catalog
        ):
            return tok.lexeme.lower()
    return None
