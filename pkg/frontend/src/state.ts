import type { Mode, ResolveResponse } from "./api.js";

/** Everything the three panes need to render, in one place. */
export interface UiState {
  buffer: string;
  line: number;
  col: number;
  mode: Mode;
  lastResult: ResolveResponse | null;
  searchVisible: boolean;
  pendingRequest: boolean;
}

/**
 * Mode is an explicit toggle; it merely defaults from how the buffer was
 * opened: read-only buffers start in reading mode, editable ones in writing.
 */
export function initialState(buffer: string, readOnly: boolean): UiState {
  return {
    buffer,
    line: 1,
    col: 1,
    mode: readOnly ? "reading" : "writing",
    lastResult: null,
    searchVisible: false,
    pendingRequest: false,
  };
}
