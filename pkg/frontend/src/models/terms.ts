/** Render model for the top-terms map: one labeled tile per state. */

import { TermMap } from "../types.js";
import { US_TILES, StateTile } from "../data/us_tiles.js";

export interface TermTile extends StateTile {
  term: string | null;
  score: number | null;
  tf: number | null;
  df: number | null;
  /** Tooltip line; every number in it appears verbatim in the response. */
  hover: string | null;
  greyed: boolean;
}

export interface TermsModel {
  tiles: TermTile[];
  labeled: number;
}

export function buildTermsModel(response: TermMap): TermsModel {
  const tiles: TermTile[] = US_TILES.map((tile) => {
    const entry = response[tile.state];
    if (!entry) {
      return { ...tile, term: null, score: null, tf: null, df: null, hover: null, greyed: true };
    }
    return {
      ...tile,
      term: entry.term,
      score: entry.score,
      tf: entry.tf,
      df: entry.df,
      hover: `${tile.state}: ${entry.term} (score ${entry.score}, tf ${entry.tf}, df ${entry.df})`,
      greyed: false,
    };
  });
  return { tiles, labeled: tiles.filter((t) => !t.greyed).length };
}
