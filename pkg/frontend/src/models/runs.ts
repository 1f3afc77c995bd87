/** Render model for the task-result browser. Pure passthrough of stored
 * results: every displayed number appears verbatim in the API response. */

import { RunResult, RunsList } from "../types.js";

export interface RunsIndexModel {
  runIds: string[];
}

export interface RunDetailModel {
  task: string;
  accuracy: number;
  baseline: number;
  pValue: number | null;
  rows: { instance: string; gold: string; predicted: string; correct: boolean }[];
  topFeatureClasses: { label: string; features: { feature: string; weight: number }[] }[];
}

export function buildRunsIndex(response: RunsList): RunsIndexModel {
  return { runIds: [...response.runs] };
}

export function buildRunDetail(result: RunResult): RunDetailModel {
  return {
    task: result.task,
    accuracy: result.accuracy,
    baseline: result.baseline,
    pValue: result.p_value,
    rows: result.per_instance.map((r) => ({
      instance: r.instance,
      gold: r.gold,
      predicted: r.predicted,
      correct: r.gold === r.predicted,
    })),
    topFeatureClasses: Object.entries(result.top_features).map(([label, features]) => ({
      label,
      features: features.slice(0, 10),
    })),
  };
}
