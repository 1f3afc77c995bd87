/** Payload shapes of the query service's JSON API. */

export interface TermEntry {
  term: string;
  score: number;
  tf: number;
  df: number;
}

/** state code -> winning term; states with empty pools are absent. */
export type TermMap = Record<string, TermEntry>;

export interface HistogramResponse {
  granularity: "hour" | "weekday" | "month";
  bins: number[];
  total: number;
}

export interface GridResponse {
  cell: number;
  /** [lat_idx, lon_idx, count] triples, sorted. */
  rows: [number, number, number][];
}

export interface CloudWord {
  word: string;
  x: number;
  y: number;
  font_scale: number;
  color_class: "shared" | "group_a" | "group_b";
  width: number;
  height: number;
}

export interface CloudLayouts {
  a: CloudWord[];
  b: CloudWord[];
}

export interface RunsList {
  runs: string[];
}

export interface PerInstance {
  instance: string;
  gold: string;
  predicted: string;
}

export interface RunResult {
  task: string;
  config: Record<string, unknown>;
  accuracy: number;
  baseline: number;
  p_value: number | null;
  per_instance: PerInstance[];
  top_features: Record<string, { feature: string; weight: number }[]>;
}

export interface StatsResponse {
  tweet_count: number;
  mean_tokens_per_tweet: number;
  unique_token_count: number;
  timezone_fraction: number;
  geo_fraction: number;
}
