import assert from "node:assert/strict";
import { test } from "node:test";

import { buildHeatmapModel } from "../src/models/heatmap.js";
import { GridResponse } from "../src/types.js";
import { loadFixture } from "./fixtures.js";

interface Meta {
  heatmap_cell: number;
  heatmap_box: { locale: string; lat0: number; lat1: number; lon0: number; lon1: number };
}

const grid = loadFixture<GridResponse>("heatmap_box.json");
const emptyGrid = loadFixture<GridResponse>("heatmap_empty.json");
const meta = loadFixture<Meta>("meta.json");

test("cells stay inside the planted geo box", () => {
  const model = buildHeatmapModel(grid);
  assert.ok(model.cells.length > 0);
  const box = meta.heatmap_box;
  for (const cell of model.cells) {
    // the cell's degree span must intersect the planted box
    assert.ok(cell.lat + model.cell > box.lat0 && cell.lat < box.lat1,
      `lat band ${cell.lat} within ${box.lat0}..${box.lat1}`);
    assert.ok(cell.lon + model.cell > box.lon0 && cell.lon < box.lon1,
      `lon band ${cell.lon} within ${box.lon0}..${box.lon1}`);
  }
});

test("intensity ramp is log-compressed, normalized, and monotone", () => {
  const model = buildHeatmapModel(grid);
  for (const cell of model.cells) {
    const expected = Math.log1p(cell.count) / Math.log1p(model.maxCount);
    assert.equal(cell.intensity, expected);
    assert.ok(cell.intensity > 0 && cell.intensity <= 1);
  }
  const sorted = [...model.cells].sort((a, b) => a.count - b.count);
  for (let i = 1; i < sorted.length; i++) {
    assert.ok(sorted[i].intensity >= sorted[i - 1].intensity);
  }
});

test("a singleton cell sits at the top of the ramp", () => {
  const model = buildHeatmapModel({ cell: 1.0, rows: [[40, -74, 1]] });
  assert.equal(model.cells.length, 1);
  assert.equal(model.cells[0].intensity, 1);
});

test("counts pass through verbatim", () => {
  const model = buildHeatmapModel(grid);
  const byKey = new Map(grid.rows.map(([la, lo, c]) => [`${la},${lo}`, c]));
  for (const cell of model.cells) {
    assert.equal(cell.count, byKey.get(`${cell.latIdx},${cell.lonIdx}`));
  }
});

test("empty grid reports no geotagged matches", () => {
  const model = buildHeatmapModel(emptyGrid);
  assert.equal(model.empty, true);
  assert.equal(model.cells.length, 0);
  assert.equal(model.note, "no geotagged matches");
});
