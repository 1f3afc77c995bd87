/** Render model for temporal histograms. A bins/granularity mismatch is a
 * broken API contract: the builder throws and the caller shows an error
 * banner instead of a partial chart. */

import { HistogramResponse } from "../types.js";

export class ContractError extends Error {}

const SIZES: Record<string, number> = { hour: 24, weekday: 7, month: 12 };

const WEEKDAYS = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];
const MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun",
                "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"];

export interface HistogramBar {
  label: string;
  count: number;
  /** Height fraction in [0, 1], proportional to count. */
  height: number;
}

export interface HistogramModel {
  bars: HistogramBar[];
  total: number;
  note: string | null;
}

export function axisLabels(granularity: string): string[] {
  if (granularity === "hour") return Array.from({ length: 24 }, (_, h) => String(h));
  if (granularity === "weekday") return WEEKDAYS;
  if (granularity === "month") return MONTHS;
  throw new ContractError(`unknown granularity ${granularity}`);
}

export function buildHistogramModel(
  response: HistogramResponse,
  granularity: string,
): HistogramModel {
  const expected = SIZES[granularity];
  if (expected === undefined) {
    throw new ContractError(`unknown granularity ${granularity}`);
  }
  if (response.bins.length !== expected) {
    throw new ContractError(
      `expected ${expected} bins for ${granularity}, got ${response.bins.length}`,
    );
  }
  const labels = axisLabels(granularity);
  const peak = Math.max(...response.bins);
  const bars = response.bins.map((count, i) => ({
    label: labels[i],
    count,
    height: peak > 0 ? count / peak : 0,
  }));
  return {
    bars,
    total: response.total,
    note: peak === 0 ? "no matches" : null,
  };
}
