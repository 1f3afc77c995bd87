/** Router and controls: the hash encodes the whole view state, each change
 * triggers at most one API request per view (newer requests cancel older),
 * and the response paints through the pure model builders. */

import { ApiClient, ApiError } from "./api.js";
import * as dom from "./dom.js";
import { buildCloudsModel } from "./models/clouds.js";
import { buildHeatmapModel } from "./models/heatmap.js";
import { buildHistogramModel, ContractError } from "./models/histogram.js";
import { buildRunDetail, buildRunsIndex } from "./models/runs.js";
import { buildTermsModel } from "./models/terms.js";
import {
  CELL_SIZES, DEFAULT_STATE, GRANULARITIES, VOCAB_MODES, ViewState,
  parseHash, requestPath, serializeState,
} from "./state.js";
import {
  CloudLayouts, GridResponse, HistogramResponse, RunResult, RunsList, TermMap,
} from "./types.js";

const api = new ApiClient();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setHash(state: ViewState): void {
  window.location.hash = serializeState(state);
}

function renderControls(state: ViewState): void {
  const controls = el<HTMLDivElement>("controls");
  controls.replaceChildren();

  const add = (label: string, input: HTMLElement) => {
    const wrap = document.createElement("label");
    wrap.textContent = label + " ";
    wrap.appendChild(input);
    controls.appendChild(wrap);
  };
  const select = (options: readonly (string | number)[], current: string | number,
                  onChange: (value: string) => void) => {
    const sel = document.createElement("select");
    for (const opt of options) {
      const o = document.createElement("option");
      o.value = String(opt);
      o.textContent = String(opt);
      if (String(opt) === String(current)) o.selected = true;
      sel.appendChild(o);
    }
    sel.addEventListener("change", () => onChange(sel.value));
    return sel;
  };

  if (state.view === "terms") {
    add("vocabulary", select(VOCAB_MODES, state.vocab, (v) =>
      setHash({ ...state, vocab: v as ViewState["vocab"] })));
  }
  if (state.view === "histogram" || state.view === "heatmap") {
    const phrase = document.createElement("input");
    phrase.type = "text";
    phrase.value = state.phrase;
    phrase.placeholder = "phrase, e.g. wine";
    phrase.addEventListener("change", () =>
      setHash({ ...state, phrase: phrase.value.trim(), topic: null }));
    add("phrase", phrase);
  }
  if (state.view === "histogram") {
    add("granularity", select(GRANULARITIES, state.granularity, (v) =>
      setHash({ ...state, granularity: v as ViewState["granularity"] })));
  }
  if (state.view === "heatmap") {
    add("cell size", select(CELL_SIZES, state.cell, (v) =>
      setHash({ ...state, cell: Number(v) })));
    const topic = document.createElement("input");
    topic.type = "text";
    topic.value = state.topic === null ? "" : String(state.topic);
    topic.placeholder = "topic id (optional)";
    topic.addEventListener("change", () => {
      const raw = topic.value.trim();
      setHash({ ...state, topic: /^\d+$/.test(raw) ? Number(raw) : null });
    });
    add("topic", topic);
  }
  if (state.view === "clouds") {
    const max = document.createElement("input");
    max.type = "number";
    max.min = "1";
    max.max = "200";
    max.value = String(state.maxWords);
    max.addEventListener("change", () => {
      const value = Number(max.value);
      if (Number.isInteger(value) && value >= 1 && value <= 200) {
        setHash({ ...state, maxWords: value });
      }
    });
    add("max words", max);
  }
}

async function render(): Promise<void> {
  const state = parseHash(window.location.hash);
  const view = el<HTMLDivElement>("view");
  for (const link of document.querySelectorAll("nav a")) {
    link.classList.toggle("active", link.getAttribute("href") === `#/${state.view}`);
  }
  renderControls(state);

  const path = requestPath(state);
  if (path === null) {
    dom.clear(view);
    const hint = document.createElement("p");
    hint.className = "caption";
    hint.textContent = "enter a phrase to query";
    view.appendChild(hint);
    return;
  }

  try {
    switch (state.view) {
      case "terms": {
        const data = await api.request<TermMap>("terms", path);
        dom.paintTerms(view, buildTermsModel(data));
        break;
      }
      case "histogram": {
        const data = await api.request<HistogramResponse>("histogram", path);
        dom.paintHistogram(view, buildHistogramModel(data, state.granularity));
        break;
      }
      case "heatmap": {
        const data = await api.request<GridResponse>("heatmap", path);
        dom.paintHeatmap(view, buildHeatmapModel(data));
        break;
      }
      case "clouds": {
        const data = await api.request<CloudLayouts>("clouds", path);
        dom.paintClouds(view, buildCloudsModel(data));
        break;
      }
      case "runs": {
        if (state.runId) {
          const data = await api.request<RunResult>("runs", path);
          dom.paintRunDetail(view, buildRunDetail(data));
        } else {
          const data = await api.request<RunsList>("runs", path);
          dom.paintRunsIndex(view, buildRunsIndex(data), (id) =>
            setHash({ ...state, runId: id }));
        }
        break;
      }
    }
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (err instanceof ContractError || err instanceof ApiError) {
      dom.errorBanner(view, err.message);
      return;
    }
    dom.errorBanner(view, `unexpected error: ${String(err)}`);
  }
}

window.addEventListener("hashchange", () => void render());
window.addEventListener("load", () => {
  if (!window.location.hash) {
    window.location.hash = serializeState(DEFAULT_STATE);
  }
  void render();
});
