/** View state <-> URL hash. The hash is the only persisted UI state, so any
 * view is shareable as a link. Parameters are validated against the API's
 * domains here, before any request goes out. */

export type ViewName = "terms" | "histogram" | "heatmap" | "clouds" | "runs";

export const GRANULARITIES = ["hour", "weekday", "month"] as const;
export const VOCAB_MODES = ["all_words", "hashtags", "food", "food_hashtags"] as const;
export const CELL_SIZES = [0.1, 0.25, 0.5, 1.0] as const;
export const MAX_WORDS_LIMIT = 200;

export interface ViewState {
  view: ViewName;
  vocab: (typeof VOCAB_MODES)[number];
  phrase: string;
  granularity: (typeof GRANULARITIES)[number];
  cell: number;
  topic: number | null;
  maxWords: number;
  runId: string | null;
}

export const DEFAULT_STATE: ViewState = {
  view: "terms",
  vocab: "food",
  phrase: "",
  granularity: "hour",
  cell: 1.0,
  topic: null,
  maxWords: 40,
  runId: null,
};

const VIEWS: ViewName[] = ["terms", "histogram", "heatmap", "clouds", "runs"];

export function parseHash(hash: string): ViewState {
  const state: ViewState = { ...DEFAULT_STATE };
  const trimmed = hash.replace(/^#\/?/, "");
  if (!trimmed) return state;
  const [view, query] = trimmed.split("?", 2);
  if (VIEWS.includes(view as ViewName)) state.view = view as ViewName;
  const params = new URLSearchParams(query ?? "");

  const vocab = params.get("vocab");
  if (vocab && (VOCAB_MODES as readonly string[]).includes(vocab)) {
    state.vocab = vocab as ViewState["vocab"];
  }
  const phrase = params.get("phrase");
  if (phrase) state.phrase = phrase;
  const granularity = params.get("granularity");
  if (granularity && (GRANULARITIES as readonly string[]).includes(granularity)) {
    state.granularity = granularity as ViewState["granularity"];
  }
  const cell = params.get("cell");
  if (cell !== null) {
    const value = Number(cell);
    if ((CELL_SIZES as readonly number[]).includes(value)) state.cell = value;
  }
  const topic = params.get("topic");
  if (topic !== null && /^\d+$/.test(topic)) state.topic = Number(topic);
  const maxWords = params.get("max_words");
  if (maxWords !== null) {
    const value = Number(maxWords);
    if (Number.isInteger(value) && value >= 1 && value <= MAX_WORDS_LIMIT) {
      state.maxWords = value;
    }
  }
  const runId = params.get("id");
  if (runId) state.runId = runId;
  return state;
}

export function serializeState(state: ViewState): string {
  const params = new URLSearchParams();
  switch (state.view) {
    case "terms":
      params.set("vocab", state.vocab);
      break;
    case "histogram":
      if (state.phrase) params.set("phrase", state.phrase);
      params.set("granularity", state.granularity);
      break;
    case "heatmap":
      if (state.topic !== null) params.set("topic", String(state.topic));
      else if (state.phrase) params.set("phrase", state.phrase);
      params.set("cell", String(state.cell));
      break;
    case "clouds":
      params.set("max_words", String(state.maxWords));
      break;
    case "runs":
      if (state.runId) params.set("id", state.runId);
      break;
  }
  const query = params.toString();
  return `#/${state.view}${query ? "?" + query : ""}`;
}

/** API path for the current view, or null when required input is missing. */
export function requestPath(state: ViewState): string | null {
  switch (state.view) {
    case "terms":
      return `/api/terms/top?vocab=${encodeURIComponent(state.vocab)}`;
    case "histogram":
      if (!state.phrase) return null;
      return `/api/histogram?phrase=${encodeURIComponent(state.phrase)}` +
        `&granularity=${state.granularity}`;
    case "heatmap":
      if (state.topic !== null) {
        return `/api/heatmap?topic=${state.topic}&cell=${state.cell}`;
      }
      if (!state.phrase) return null;
      return `/api/heatmap?phrase=${encodeURIComponent(state.phrase)}&cell=${state.cell}`;
    case "clouds":
      return `/api/wordclouds?split=weekday_weekend&max_words=${state.maxWords}`;
    case "runs":
      return state.runId ? `/api/runs/${encodeURIComponent(state.runId)}` : "/api/runs";
  }
}
