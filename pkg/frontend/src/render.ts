// DOM rendering for the two instant panes. All dynamic content goes
// through createElement/textContent, never innerHTML.

import type { DocEntry, RankedExample } from "./api.js";

export const MISS_MESSAGE = "no documentation found — try task search";

function clear(el: HTMLElement): void {
  el.replaceChildren();
}

function h<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function table(doc: Document, headers: string[], rows: string[][]): HTMLTableElement {
  const t = doc.createElement("table");
  const head = t.createTHead().insertRow();
  for (const label of headers) head.appendChild(h(doc, "th", undefined, label));
  const body = t.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    for (const cell of row) tr.appendChild(h(doc, "td", undefined, cell));
  }
  return t;
}

export function renderDoc(el: HTMLElement, doc: DocEntry): void {
  const d = el.ownerDocument;
  clear(el);
  el.dataset.view = "doc";
  el.dataset.api = doc.name;

  const header = h(d, "div", "doc-header");
  header.appendChild(h(d, "code", "signature", doc.signature));
  header.appendChild(h(d, "span", "category", doc.category));
  el.appendChild(header);
  el.appendChild(h(d, "p", "summary", doc.summary));

  if (doc.params.length > 0) {
    el.appendChild(h(d, "h3", undefined, "Parameters"));
    el.appendChild(
      table(d, ["Name", "Type", "Description"], doc.params.map((p) => [p.name, p.type, p.description])),
    );
  }

  el.appendChild(h(d, "h3", undefined, "Returns"));
  el.appendChild(h(d, "p", "returns", `${doc.returns.type}: ${doc.returns.description}`));
  if (doc.returns.values.length > 0) {
    el.appendChild(
      table(d, ["Value", "Meaning"], doc.returns.values.map((v) => [v.value, v.meaning])),
    );
  }

  if (doc.related.length > 0) {
    el.appendChild(h(d, "h3", undefined, "Related"));
    const list = h(d, "ul", "related");
    for (const rel of doc.related) {
      const item = h(d, "li");
      item.appendChild(h(d, "code", undefined, rel.name));
      item.appendChild(h(d, "span", "relation", rel.relation));
      list.appendChild(item);
    }
    el.appendChild(list);
  }
}

export function renderMiss(el: HTMLElement, alternates: string[] = []): void {
  const d = el.ownerDocument;
  clear(el);
  el.dataset.view = "miss";
  delete el.dataset.api;
  el.appendChild(h(d, "p", "miss", MISS_MESSAGE));
  if (alternates.length > 0) {
    const line = h(d, "p", "alternates", "on this line: ");
    for (const name of alternates) line.appendChild(h(d, "code", undefined, name));
    el.appendChild(line);
  }
}

export function renderCandidates(
  el: HTMLElement,
  candidates: string[],
  onPick: (name: string) => void,
): void {
  const d = el.ownerDocument;
  clear(el);
  el.dataset.view = "candidates";
  delete el.dataset.api;
  el.appendChild(h(d, "h3", undefined, "Completions"));
  const list = h(d, "ul", "candidates");
  for (const name of candidates) {
    const item = h(d, "li");
    const button = h(d, "button", "candidate", name);
    button.type = "button";
    button.addEventListener("click", () => onPick(name));
    item.appendChild(button);
    list.appendChild(item);
  }
  el.appendChild(list);
}

export type SourceSegment = { text: string; match: boolean };

/**
 * Split example source into plain and matched segments, where a match is
 * the API name immediately starting a call (name then optional spaces and
 * an opening paren). Used to highlight the calls an example was ranked by.
 */
export function highlightCalls(source: string, api: string): SourceSegment[] {
  if (!api) return [{ text: source, match: false }];
  const pattern = new RegExp(
    `(?<![A-Za-z0-9_$])${api.replace(/[.*+?^${}()|[\]\\]/g, "\\$&")}(?=\\s*\\()`,
    "gi",
  );
  const segments: SourceSegment[] = [];
  let last = 0;
  for (const m of source.matchAll(pattern)) {
    const at = m.index ?? 0;
    if (at > last) segments.push({ text: source.slice(last, at), match: false });
    segments.push({ text: m[0], match: true });
    last = at + m[0].length;
  }
  if (last < source.length) segments.push({ text: source.slice(last), match: false });
  return segments.length > 0 ? segments : [{ text: "", match: false }];
}

export interface ExamplesView {
  api?: string;
  taskQuery?: string;
}

export function renderExamples(el: HTMLElement, examples: RankedExample[], view: ExamplesView): void {
  const d = el.ownerDocument;
  clear(el);
  if (view.taskQuery !== undefined) {
    el.dataset.view = "task-search";
    el.appendChild(h(d, "h3", "tag-task-search", `task search: "${view.taskQuery}"`));
  } else {
    el.dataset.view = "api";
  }
  if (examples.length === 0) {
    el.appendChild(h(d, "p", "empty", "no examples"));
    return;
  }
  const list = h(d, "ol", "examples");
  for (const ex of examples) {
    const item = h(d, "li", "example");
    item.dataset.exampleId = ex.id;
    const title = h(d, "div", "example-title");
    title.appendChild(h(d, "strong", undefined, ex.title));
    title.appendChild(h(d, "span", "example-id", ex.id));
    item.appendChild(title);
    const pre = h(d, "pre");
    const code = h(d, "code");
    for (const seg of highlightCalls(ex.source, view.api ?? "")) {
      if (seg.match) code.appendChild(h(d, "mark", undefined, seg.text));
      else code.appendChild(d.createTextNode(seg.text));
    }
    pre.appendChild(code);
    item.appendChild(pre);
    list.appendChild(item);
  }
  el.appendChild(list);
}

export function showBanner(el: HTMLElement, message: string): void {
  el.textContent = message;
  el.hidden = false;
}

export function hideBanner(el: HTMLElement): void {
  el.textContent = "";
  el.hidden = true;
}
