/** SVG/DOM painting of the render models. All layout math lives in the
 * model builders; this layer only draws and wires events. */

import { COASTLINE } from "./data/coastline.js";
import { CloudsModel } from "./models/clouds.js";
import { HeatmapModel } from "./models/heatmap.js";
import { HistogramModel } from "./models/histogram.js";
import { RunDetailModel, RunsIndexModel } from "./models/runs.js";
import { TermsModel } from "./models/terms.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, String(v));
  return el;
}

export function clear(container: HTMLElement): void {
  container.replaceChildren();
}

export function errorBanner(container: HTMLElement, message: string): void {
  clear(container);
  const div = document.createElement("div");
  div.className = "error-banner";
  div.textContent = message;
  container.appendChild(div);
}

// ---------------------------------------------------------------- terms map

const TILE = 56;

export function paintTerms(container: HTMLElement, model: TermsModel): void {
  clear(container);
  const cols = Math.max(...model.tiles.map((t) => t.col)) + 1;
  const rows = Math.max(...model.tiles.map((t) => t.row)) + 1;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${cols * TILE} ${rows * TILE}`,
    class: "terms-map",
  });
  for (const tile of model.tiles) {
    const g = svgEl("g", {
      transform: `translate(${tile.col * TILE}, ${tile.row * TILE})`,
      class: tile.greyed ? "tile greyed" : "tile",
    });
    g.appendChild(svgEl("rect", { x: 2, y: 2, width: TILE - 4, height: TILE - 4, rx: 4 }));
    const code = svgEl("text", { x: TILE / 2, y: 20, class: "tile-code" });
    code.textContent = tile.state;
    g.appendChild(code);
    if (!tile.greyed) {
      const term = svgEl("text", { x: TILE / 2, y: 40, class: "tile-term" });
      term.textContent = tile.term ?? "";
      g.appendChild(term);
      const title = svgEl("title");
      title.textContent = tile.hover ?? "";
      g.appendChild(title);
    }
    svg.appendChild(g);
  }
  container.appendChild(svg);
  const caption = document.createElement("p");
  caption.className = "caption";
  caption.textContent = `${model.labeled} states labeled`;
  container.appendChild(caption);
}

// ---------------------------------------------------------------- histogram

export function paintHistogram(container: HTMLElement, model: HistogramModel): void {
  clear(container);
  const width = Math.max(360, model.bars.length * 34);
  const height = 240;
  const plotH = 190;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, class: "histogram" });
  const barW = width / model.bars.length;
  model.bars.forEach((bar, i) => {
    const h = bar.height * plotH;
    const rect = svgEl("rect", {
      x: i * barW + 3,
      y: plotH - h,
      width: barW - 6,
      height: Math.max(h, 0),
      class: "bar",
    });
    const title = svgEl("title");
    title.textContent = `${bar.label}: ${bar.count}`;
    rect.appendChild(title);
    svg.appendChild(rect);
    const label = svgEl("text", {
      x: i * barW + barW / 2,
      y: height - 28,
      class: "axis-label",
    });
    label.textContent = bar.label;
    svg.appendChild(label);
  });
  container.appendChild(svg);
  const caption = document.createElement("p");
  caption.className = "caption";
  caption.textContent = model.note ?? `${model.total} matching tweets`;
  container.appendChild(caption);
}

// ------------------------------------------------------------------ heatmap

export function paintHeatmap(container: HTMLElement, model: HeatmapModel): void {
  clear(container);
  const svg = svgEl("svg", { viewBox: "-180 -90 360 180", class: "heatmap" });
  const world = svgEl("g", { transform: "scale(1, -1)" });  // lat up
  for (const poly of COASTLINE) {
    const points = poly.map(([lon, lat]) => `${lon},${lat}`).join(" ");
    world.appendChild(svgEl("polygon", { points, class: "coast" }));
  }
  const readout = document.createElement("p");
  readout.className = "caption";
  readout.textContent = model.note ?? `${model.cells.length} cells, max count ${model.maxCount}`;
  for (const cell of model.cells) {
    const rect = svgEl("rect", {
      x: cell.lon,
      y: cell.lat,
      width: model.cell,
      height: model.cell,
      "fill-opacity": 0.25 + 0.75 * cell.intensity,
      class: "heat-cell",
    });
    rect.addEventListener("click", () => {
      readout.textContent =
        `cell (${cell.latIdx}, ${cell.lonIdx}) at ${cell.lat}, ${cell.lon}: ${cell.count}`;
    });
    const title = svgEl("title");
    title.textContent = `${cell.count}`;
    rect.appendChild(title);
    world.appendChild(rect);
  }
  svg.appendChild(world);
  attachPanZoom(svg, -180, -90, 360, 180);
  container.appendChild(svg);
  container.appendChild(readout);
}

function attachPanZoom(
  svg: SVGSVGElement, x0: number, y0: number, w0: number, h0: number,
): void {
  let [x, y, w, h] = [x0, y0, w0, h0];
  const apply = () => svg.setAttribute("viewBox", `${x} ${y} ${w} ${h}`);
  svg.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const factor = ev.deltaY > 0 ? 1.2 : 1 / 1.2;
    const nw = Math.min(w0 * 2, Math.max(w0 / 64, w * factor));
    const nh = nw * (h0 / w0);
    x += (w - nw) / 2;
    y += (h - nh) / 2;
    w = nw;
    h = nh;
    apply();
  });
  let dragging: [number, number] | null = null;
  svg.addEventListener("pointerdown", (ev) => {
    dragging = [ev.clientX, ev.clientY];
    svg.setPointerCapture(ev.pointerId);
  });
  svg.addEventListener("pointermove", (ev) => {
    if (!dragging) return;
    const scale = w / svg.clientWidth;
    x -= (ev.clientX - dragging[0]) * scale;
    y -= (ev.clientY - dragging[1]) * scale;
    dragging = [ev.clientX, ev.clientY];
    apply();
  });
  svg.addEventListener("pointerup", () => (dragging = null));
}

// -------------------------------------------------------------- word clouds

export function paintClouds(container: HTMLElement, model: CloudsModel): void {
  clear(container);
  for (const violation of model.violations) {
    console.warn("layout contract violation:", violation);
  }
  const wrap = document.createElement("div");
  wrap.className = "clouds";
  const panels: [string, CloudsModel["a"]][] = [
    ["weekday", model.a],
    ["weekend", model.b],
  ];
  for (const [name, words] of panels) {
    const panel = document.createElement("div");
    panel.className = "cloud-panel";
    const heading = document.createElement("h3");
    heading.textContent = name;
    panel.appendChild(heading);
    const xs = words.flatMap((w) => [w.x - w.width / 2, w.x + w.width / 2]);
    const ys = words.flatMap((w) => [w.y - w.height / 2, w.y + w.height / 2]);
    const minX = Math.min(0, ...xs) - 10;
    const minY = Math.min(0, ...ys) - 10;
    const width = Math.max(10, ...xs) - minX + 20;
    const height = Math.max(10, ...ys) - minY + 20;
    const svg = svgEl("svg", {
      viewBox: `${minX} ${minY} ${width} ${height}`,
      class: "cloud",
    });
    for (const word of words) {
      const t = svgEl("text", {
        x: word.x,
        y: word.y,
        fill: word.color,
        "font-size": 16 * word.fontScale,
        class: "cloud-word",
      });
      t.textContent = word.word;
      svg.appendChild(t);
    }
    panel.appendChild(svg);
    wrap.appendChild(panel);
  }
  container.appendChild(wrap);
}

// --------------------------------------------------------------------- runs

export function paintRunsIndex(
  container: HTMLElement, model: RunsIndexModel, onOpen: (id: string) => void,
): void {
  clear(container);
  if (model.runIds.length === 0) {
    const p = document.createElement("p");
    p.className = "caption";
    p.textContent = "no stored task results (run tasks with --runs-dir)";
    container.appendChild(p);
    return;
  }
  const list = document.createElement("ul");
  list.className = "runs-list";
  for (const id of model.runIds) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.textContent = id;
    link.href = `#/runs?id=${encodeURIComponent(id)}`;
    link.addEventListener("click", (ev) => {
      ev.preventDefault();
      onOpen(id);
    });
    item.appendChild(link);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function paintRunDetail(container: HTMLElement, model: RunDetailModel): void {
  clear(container);
  const summary = document.createElement("p");
  summary.className = "caption";
  const p = model.pValue === null ? "n/a" : String(model.pValue);
  summary.textContent =
    `${model.task}: accuracy ${model.accuracy}, baseline ${model.baseline}, p ${p}`;
  container.appendChild(summary);

  const table = document.createElement("table");
  table.className = "runs-table";
  const head = table.insertRow();
  for (const col of ["instance", "gold", "predicted"]) {
    const th = document.createElement("th");
    th.textContent = col;
    head.appendChild(th);
  }
  for (const row of model.rows) {
    const tr = table.insertRow();
    tr.className = row.correct ? "correct" : "wrong";
    for (const value of [row.instance, row.gold, row.predicted]) {
      tr.insertCell().textContent = value;
    }
  }
  container.appendChild(table);

  for (const cls of model.topFeatureClasses) {
    const heading = document.createElement("h3");
    heading.textContent = `top features: ${cls.label}`;
    container.appendChild(heading);
    const list = document.createElement("ol");
    for (const feature of cls.features) {
      const item = document.createElement("li");
      item.textContent = `${feature.feature} (${feature.weight})`;
      list.appendChild(item);
    }
    container.appendChild(list);
  }
}
