"""Lossless tokenizer for PHP-style source buffers.

The token stream partitions the input: concatenating the lexemes of all
tokens in order reproduces the source text exactly, including text outside
``<?php ... ?>`` regions, unterminated literals, and stray bytes. Broken
input never raises; anything the scanner cannot classify becomes an
``unknown`` token. The goal is finding call sites and partial identifiers
in possibly half-typed code, not parsing PHP.

Known simplifications: heredoc/nowdoc bodies are not lexed specially (the
``<<<`` introducer falls out as punctuation and the body as ordinary
tokens), and ``#[...]`` attributes lex as a line comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    OPEN_TAG = "open-tag"
    CLOSE_TAG = "close-tag"
    IDENTIFIER = "identifier"
    VARIABLE = "variable"
    STRING = "string-literal"
    NUMBER = "number-literal"
    COMMENT = "comment"
    PUNCT = "punctuation"
    WHITESPACE = "whitespace"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class Span:
    """Half-open source range: lines and columns are 1-based, end exclusive.

    Columns count characters, not bytes.
    """

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    @property
    def start(self) -> tuple[int, int]:
        return (self.start_line, self.start_col)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_line, self.end_col)

    def contains(self, line: int, col: int) -> bool:
        return self.start <= (line, col) < self.end


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span


@dataclass(frozen=True, slots=True)
class CallSite:
    """A free function call: identifier immediately followed by ``(``.

    ``callee`` is the lowercased identifier (PHP function names are
    case-insensitive). ``paren_span`` runs from the opening parenthesis to
    just past its match; when the buffer ends before the parenthesis
    closes, ``closed`` is False and the span extends to the end of input.
    Method and static calls (``->``, ``::``) are not extracted.
    """

    callee: str
    name_span: Span
    paren_span: Span
    closed: bool


# Keywords that read like calls but are control syntax, never API call sites.
KEYWORDS_NOT_CALLS = frozenset(
    {"echo", "if", "while", "for", "foreach", "return", "function"}
)

# Multi-character operators, longest first so maximal munch works.
_OPERATORS = (
    "<=>", "===", "!==", "**=", "...", "<<=", ">>=", "?->", "??=",
    "->", "=>", "::", "==", "!=", "<>", "<=", ">=", "&&", "||",
    "++", "--", "+=", "-=", "*=", "/=", ".=", "%=", "??", "<<",
    ">>", "**", "|=", "&=", "^=",
)
_SINGLE_PUNCT = frozenset("(){}[];,.+-*/%=<>!&|^~?:@\\$`")
_WS = frozenset(" \t\r\n\f\v")


def is_identifier_start(ch: str) -> bool:
    """PHP identifier start: ASCII letter, underscore, or any char >= U+0080."""
    return ch == "_" or (ch.isascii() and ch.isalpha()) or ord(ch) >= 0x80


def is_identifier_char(ch: str) -> bool:
    return is_identifier_start(ch) or (ch.isascii() and ch.isdigit())


def _advance(line: int, col: int, text: str) -> tuple[int, int]:
    """Position after consuming text, given its start position."""
    newlines = text.count("\n")
    if newlines:
        return (line + newlines, len(text) - text.rfind("\n"))
    return (line, col + len(text))


def tokenize(source: str) -> list[Token]:
    """Tokenize a source buffer. Total: never raises on malformed input."""
    tokens: list[Token] = []
    n = len(source)
    pos = 0
    line, col = 1, 1
    in_php = False

    def emit(kind: TokenKind, end: int) -> None:
        nonlocal pos, line, col
        lexeme = source[pos:end]
        end_line, end_col = _advance(line, col, lexeme)
        tokens.append(Token(kind, lexeme, Span(line, col, end_line, end_col)))
        pos = end
        line, col = end_line, end_col

    while pos < n:
        if not in_php:
            tag = source.find("<?", pos)
            if tag == -1:
                emit(TokenKind.UNKNOWN, n)
                break
            if tag > pos:
                emit(TokenKind.UNKNOWN, tag)
            if source[pos : pos + 5].lower() == "<?php" and (
                pos + 5 >= n or not is_identifier_char(source[pos + 5])
            ):
                emit(TokenKind.OPEN_TAG, pos + 5)
            elif source[pos : pos + 3] == "<?=":
                emit(TokenKind.OPEN_TAG, pos + 3)
            else:
                emit(TokenKind.OPEN_TAG, pos + 2)
            in_php = True
            continue

        ch = source[pos]
        if ch in _WS:
            i = pos + 1
            while i < n and source[i] in _WS:
                i += 1
            emit(TokenKind.WHITESPACE, i)
        elif ch == "?" and source.startswith("?>", pos):
            emit(TokenKind.CLOSE_TAG, pos + 2)
            in_php = False
        elif is_identifier_start(ch):
            i = pos + 1
            while i < n and is_identifier_char(source[i]):
                i += 1
            emit(TokenKind.IDENTIFIER, i)
        elif ch == "$" and pos + 1 < n and is_identifier_start(source[pos + 1]):
            i = pos + 2
            while i < n and is_identifier_char(source[i]):
                i += 1
            emit(TokenKind.VARIABLE, i)
        elif ch.isdigit() or (ch == "." and source[pos + 1 : pos + 2].isdigit()):
            emit(TokenKind.NUMBER, _scan_number(source, pos))
        elif ch == "'":
            emit(TokenKind.STRING, _scan_string(source, pos, "'"))
        elif ch == '"':
            emit(TokenKind.STRING, _scan_string(source, pos, '"'))
        elif ch == "/" and source.startswith("//", pos):
            emit(TokenKind.COMMENT, _scan_line_comment(source, pos))
        elif ch == "/" and source.startswith("/*", pos):
            end = source.find("*/", pos + 2)
            emit(TokenKind.COMMENT, n if end == -1 else end + 2)
        elif ch == "#":
            emit(TokenKind.COMMENT, _scan_line_comment(source, pos))
        else:
            for op in _OPERATORS:
                if source.startswith(op, pos):
                    emit(TokenKind.PUNCT, pos + len(op))
                    break
            else:
                if ch in _SINGLE_PUNCT:
                    emit(TokenKind.PUNCT, pos + 1)
                else:
                    emit(TokenKind.UNKNOWN, pos + 1)

    return tokens


def _scan_line_comment(source: str, pos: int) -> int:
    # Stops before "?>" so the close tag survives, matching PHP.
    n = len(source)
    i = pos
    while i < n and source[i] != "\n":
        if source[i] == "?" and source.startswith("?>", i):
            break
        i += 1
    return i


def _scan_string(source: str, pos: int, quote: str) -> int:
    n = len(source)
    i = pos + 1
    while i < n:
        ch = source[i]
        if ch == "\\":
            i += 2
        elif ch == quote:
            return i + 1
        else:
            i += 1
    return n  # unterminated: runs to end of input


def _scan_number(source: str, pos: int) -> int:
    n = len(source)

    def digits(i: int, allowed: str) -> int:
        # Underscore separators are consumed only between digits.
        while i < n and (
            source[i] in allowed
            or (source[i] == "_" and i + 1 < n and source[i + 1] in allowed)
        ):
            i += 1
        return i

    hex_digits = set("0123456789abcdefABCDEF")
    if source.startswith(("0x", "0X"), pos) and source[pos + 2 : pos + 3] in hex_digits:
        return digits(pos + 2, "0123456789abcdefABCDEF")
    if source.startswith(("0b", "0B"), pos) and source[pos + 2 : pos + 3] in {"0", "1"}:
        return digits(pos + 2, "01")
    if source.startswith(("0o", "0O"), pos) and source[pos + 2 : pos + 3] in set("01234567"):
        return digits(pos + 2, "01234567")

    i = pos
    if source[i] == ".":
        i = digits(i + 1, "0123456789")
    else:
        i = digits(i, "0123456789")
        if source[i : i + 1] == "." and source[i + 1 : i + 2].isdigit():
            i = digits(i + 1, "0123456789")
    if source[i : i + 1] in ("e", "E"):
        j = i + 1
        if source[j : j + 1] in ("+", "-"):
            j += 1
        if source[j : j + 1].isdigit():
            i = digits(j, "0123456789")
    return i


_SKIP_KINDS = frozenset({TokenKind.WHITESPACE, TokenKind.COMMENT})
_MEMBER_ACCESS = frozenset({"->", "?->", "::"})


def extract_call_sites(tokens: list[Token]) -> list[CallSite]:
    """Find free function call sites in a token stream, in document order.

    A call site is an identifier immediately followed by ``(`` once
    whitespace and comments are skipped. Control keywords and identifiers
    reached through ``->`` or ``::`` are excluded.
    """
    significant = [t for t in tokens if t.kind not in _SKIP_KINDS]
    sites: list[CallSite] = []
    for k, tok in enumerate(significant):
        if tok.kind is not TokenKind.IDENTIFIER:
            continue
        if tok.lexeme.lower() in KEYWORDS_NOT_CALLS:
            continue
        if k + 1 >= len(significant):
            continue
        opener = significant[k + 1]
        if opener.kind is not TokenKind.PUNCT or opener.lexeme != "(":
            continue
        if k > 0:
            prev = significant[k - 1]
            if prev.kind is TokenKind.PUNCT and prev.lexeme in _MEMBER_ACCESS:
                continue
        close_span, closed = _match_paren(significant, k + 1, tokens)
        paren_span = Span(
            opener.span.start_line,
            opener.span.start_col,
            close_span.end_line,
            close_span.end_col,
        )
        sites.append(CallSite(tok.lexeme.lower(), tok.span, paren_span, closed))
    return sites


def _match_paren(
    significant: list[Token], open_idx: int, tokens: list[Token]
) -> tuple[Span, bool]:
    depth = 1
    for tok in significant[open_idx + 1 :]:
        if tok.kind is TokenKind.PUNCT:
            if tok.lexeme == "(":
                depth += 1
            elif tok.lexeme == ")":
                depth -= 1
                if depth == 0:
                    return tok.span, True
    return tokens[-1].span, False
