// Three-pane UI controller: editor buffer on the left, instant
// documentation and instant examples on the right, a Ctrl+Space task
// search overlay on top. All backend traffic goes through ApiClient.

import { ApiClient, type FetchLike, type Mode, type ResolveResponse } from "./api.js";
import { debounce } from "./debounce.js";
import { cursorFromOffset, insertCompletion } from "./editor.js";
import { LatestGate } from "./latest.js";
import {
  hideBanner,
  renderCandidates,
  renderDoc,
  renderExamples,
  renderMiss,
  showBanner,
} from "./render.js";
import { initialState, type UiState } from "./state.js";

export const DEBOUNCE_MS = 200;

export interface AppOptions {
  fetchImpl?: FetchLike;
  initialSource?: string;
  readOnly?: boolean;
  debounceMs?: number;
}

const LAYOUT = `
  <header class="topbar">
    <h1>apilens</h1>
    <div class="mode-toggle" role="group" aria-label="mode">
      <button id="mode-reading" type="button">reading</button>
      <button id="mode-writing" type="button">writing</button>
    </div>
    <div id="banner" class="banner" hidden></div>
  </header>
  <main class="panes">
    <section class="pane">
      <h2>Editor</h2>
      <textarea id="buffer" spellcheck="false"></textarea>
    </section>
    <section class="pane">
      <h2>Instant Documentation</h2>
      <div id="doc-pane" class="pane-body"></div>
    </section>
    <section class="pane">
      <h2>Instant Example</h2>
      <div id="examples-pane" class="pane-body"></div>
    </section>
  </main>
  <div id="search-box" class="search-box" hidden>
    <label for="search-input">task search</label>
    <input id="search-input" type="text" autocomplete="off"
           placeholder="describe the task, e.g. read file" />
    <span id="search-hint" class="search-hint" hidden>enter a search query</span>
  </div>
`;

export class App {
  readonly state: UiState;
  readonly buffer: HTMLTextAreaElement;
  readonly docPane: HTMLElement;
  readonly examplesPane: HTMLElement;
  readonly banner: HTMLElement;
  readonly searchBox: HTMLElement;
  readonly searchInput: HTMLInputElement;
  readonly searchHint: HTMLElement;

  private readonly client: ApiClient;
  private readonly gate = new LatestGate();
  private readonly root: HTMLElement;
  private readonly modeButtons: Record<Mode, HTMLButtonElement>;
  private readonly scheduleResolve: (() => void) & { cancel: () => void };
  private inFlight = false;
  private queued = false;

  constructor(root: HTMLElement, options: AppOptions = {}) {
    this.root = root;
    this.client = new ApiClient(options.fetchImpl);
    root.innerHTML = LAYOUT;

    this.buffer = root.querySelector("#buffer") as HTMLTextAreaElement;
    this.docPane = root.querySelector("#doc-pane") as HTMLElement;
    this.examplesPane = root.querySelector("#examples-pane") as HTMLElement;
    this.banner = root.querySelector("#banner") as HTMLElement;
    this.searchBox = root.querySelector("#search-box") as HTMLElement;
    this.searchInput = root.querySelector("#search-input") as HTMLInputElement;
    this.searchHint = root.querySelector("#search-hint") as HTMLElement;
    this.modeButtons = {
      reading: root.querySelector("#mode-reading") as HTMLButtonElement,
      writing: root.querySelector("#mode-writing") as HTMLButtonElement,
    };

    const readOnly = options.readOnly ?? false;
    this.state = initialState(options.initialSource ?? "", readOnly);
    this.buffer.value = this.state.buffer;
    this.buffer.readOnly = readOnly;
    this.updateModeButtons();
    this.setPending(false);

    this.scheduleResolve = debounce(() => this.sendResolve(), options.debounceMs ?? DEBOUNCE_MS);
    this.wireEvents();
  }

  private wireEvents(): void {
    for (const type of ["input", "keyup", "click", "focus"]) {
      this.buffer.addEventListener(type, () => this.onCursorOrEdit());
    }
    this.modeButtons.reading.addEventListener("click", () => this.setMode("reading"));
    this.modeButtons.writing.addEventListener("click", () => this.setMode("writing"));
    this.root.addEventListener("keydown", (event) => this.onKeydown(event as KeyboardEvent));
    this.searchInput.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        event.preventDefault();
        void this.submitSearch(this.searchInput.value);
      }
    });
  }

  private onKeydown(event: KeyboardEvent): void {
    if (event.ctrlKey && (event.key === " " || event.code === "Space")) {
      event.preventDefault();
      this.toggleSearch();
    } else if (event.key === "Escape") {
      this.closeSearchAndRestore();
    }
  }

  /** Cursor moves and keystrokes both funnel here; resolve fires after the debounce. */
  onCursorOrEdit(): void {
    this.state.buffer = this.buffer.value;
    const pos = cursorFromOffset(this.buffer.value, this.buffer.selectionStart ?? 0);
    this.state.line = pos.line;
    this.state.col = pos.col;
    this.setPending(true);
    this.scheduleResolve();
  }

  setMode(mode: Mode): void {
    if (this.state.mode === mode) return;
    this.state.mode = mode;
    this.updateModeButtons();
    this.resolveNow();
  }

  /** Skip the debounce (mode switches and completion picks want instant feedback). */
  resolveNow(): void {
    this.scheduleResolve.cancel();
    this.setPending(true);
    this.sendResolve();
  }

  // At most one resolve request is ever in flight; a request wanted while
  // one is outstanding is coalesced into a single follow-up that reads the
  // freshest state when it finally goes out.
  private sendResolve(): void {
    if (this.inFlight) {
      this.queued = true;
      return;
    }
    this.inFlight = true;
    const ticket = this.gate.issue();
    const { buffer, line, col, mode } = this.state;
    this.client
      .resolve(buffer, line, col, mode)
      .then(
        (response) => this.applyResolve(ticket, response),
        (error: unknown) => this.applyError(ticket, error),
      )
      .finally(() => {
        this.inFlight = false;
        if (this.queued) {
          this.queued = false;
          this.sendResolve();
        } else {
          this.setPending(false);
        }
      });
  }

  private applyResolve(ticket: number, response: ResolveResponse): void {
    if (!this.gate.isCurrent(ticket)) return;
    this.state.lastResult = response;
    hideBanner(this.banner);
    this.renderResult(response);
  }

  private applyError(ticket: number, error: unknown): void {
    if (!this.gate.isCurrent(ticket)) return;
    const message = error instanceof Error ? error.message : String(error);
    showBanner(this.banner, `lookup failed: ${message}`);
    // Panes keep their last good content.
  }

  private renderResult(response: ResolveResponse): void {
    const intent = response.intent;
    if (intent.kind === "exact" && response.doc !== null) {
      renderDoc(this.docPane, response.doc);
      renderExamples(this.examplesPane, response.examples, { api: intent.api });
    } else if (intent.kind === "prefix") {
      renderCandidates(this.docPane, intent.candidates ?? [], (name) => this.pickCandidate(name));
      renderExamples(this.examplesPane, [], {});
    } else {
      renderMiss(this.docPane, intent.alternates ?? []);
      renderExamples(this.examplesPane, [], {});
    }
  }

  /** Insert a completion over the prefix being typed, then resolve it exactly. */
  pickCandidate(name: string): void {
    const caret = this.buffer.selectionStart ?? this.buffer.value.length;
    const next = insertCompletion(this.buffer.value, caret, name);
    this.buffer.value = next.text;
    this.buffer.selectionStart = this.buffer.selectionEnd = next.caret;
    this.state.buffer = next.text;
    const pos = cursorFromOffset(next.text, next.caret);
    this.state.line = pos.line;
    this.state.col = pos.col;
    this.resolveNow();
  }

  toggleSearch(): void {
    this.state.searchVisible = !this.state.searchVisible;
    this.searchBox.hidden = !this.state.searchVisible;
    if (this.state.searchVisible) {
      this.searchInput.focus();
      this.searchInput.select();
    } else {
      this.searchHint.hidden = true;
      this.buffer.focus();
    }
  }

  /** Escape: close the box and put the API-specific view back in both panes. */
  closeSearchAndRestore(): void {
    if (this.state.searchVisible) {
      this.state.searchVisible = false;
      this.searchBox.hidden = true;
      this.searchHint.hidden = true;
      this.buffer.focus();
    }
    if (this.state.lastResult !== null) this.renderResult(this.state.lastResult);
  }

  async submitSearch(query: string): Promise<void> {
    if (query.trim() === "") {
      this.searchHint.hidden = false;
      return;
    }
    this.searchHint.hidden = true;
    try {
      const response = await this.client.search(query);
      hideBanner(this.banner);
      renderExamples(this.examplesPane, response.examples, { taskQuery: query });
    } catch (error) {
      const message = error instanceof Error ? error.message : String(error);
      showBanner(this.banner, `search failed: ${message}`);
    }
  }

  private updateModeButtons(): void {
    for (const mode of ["reading", "writing"] as const) {
      this.modeButtons[mode].setAttribute("aria-pressed", String(this.state.mode === mode));
    }
  }

  private setPending(pending: boolean): void {
    this.state.pendingRequest = pending;
    this.root.dataset.pending = String(pending);
  }
}

export function createApp(root: HTMLElement, options: AppOptions = {}): App {
  return new App(root, options);
}
