/** Render model for the geo heatmap: grid cells with a log-compressed
 * intensity ramp. Cell (latIdx, lonIdx) covers latitudes
 * [latIdx*cell, (latIdx+1)*cell) and the analogous longitude band. */

import { GridResponse } from "../types.js";

export interface HeatCell {
  latIdx: number;
  lonIdx: number;
  count: number;
  /** Southwest corner in degrees. */
  lat: number;
  lon: number;
  /** log(1+count) normalized to [0, 1] against the grid maximum. */
  intensity: number;
}

export interface HeatmapModel {
  cell: number;
  cells: HeatCell[];
  maxCount: number;
  empty: boolean;
  note: string | null;
}

export function buildHeatmapModel(response: GridResponse): HeatmapModel {
  const maxCount = response.rows.reduce((acc, [, , count]) => Math.max(acc, count), 0);
  const denom = Math.log1p(maxCount);
  const cells = response.rows.map(([latIdx, lonIdx, count]) => ({
    latIdx,
    lonIdx,
    count,
    lat: latIdx * response.cell,
    lon: lonIdx * response.cell,
    intensity: denom > 0 ? Math.log1p(count) / denom : 0,
  }));
  const empty = cells.length === 0;
  return {
    cell: response.cell,
    cells,
    maxCount,
    empty,
    note: empty ? "no geotagged matches" : null,
  };
}
