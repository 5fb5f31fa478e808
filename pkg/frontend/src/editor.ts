// Cursor arithmetic and completion insertion for the textarea buffer.
// Positions are 1-based; col is the caret column, which may sit one past
// the end of the line.

export interface CursorPos {
  line: number;
  col: number;
}

export function cursorFromOffset(text: string, offset: number): CursorPos {
  const clamped = Math.max(0, Math.min(offset, text.length));
  const before = text.slice(0, clamped);
  let line = 1;
  for (let i = 0; i < before.length; i++) {
    if (before.charCodeAt(i) === 10) line++;
  }
  const lastNl = before.lastIndexOf("\n");
  return { line, col: clamped - lastNl };
}

/** First offset of the 1-based line, or -1 when the line does not exist. */
export function offsetOfLine(text: string, line: number): number {
  if (line < 1) return -1;
  let offset = 0;
  for (let current = 1; current < line; current++) {
    const nl = text.indexOf("\n", offset);
    if (nl === -1) return -1;
    offset = nl + 1;
  }
  return offset;
}

const IDENT = /[A-Za-z0-9_]/;

/**
 * Replace the identifier run ending at the caret with `name` (used when a
 * completion candidate is picked). Returns the new text and caret offset.
 */
export function insertCompletion(
  text: string,
  caret: number,
  name: string,
): { text: string; caret: number } {
  let start = Math.max(0, Math.min(caret, text.length));
  while (start > 0 && IDENT.test(text[start - 1])) start--;
  const next = text.slice(0, start) + name + text.slice(caret);
  return { text: next, caret: start + name.length };
}
