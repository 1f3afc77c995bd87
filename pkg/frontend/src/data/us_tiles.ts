/** Static US state topology: a tile-grid map (one square per state, 50
 * states + DC) laid out to echo geography. Shipped with the bundle so the
 * terms view needs no external geometry service. */

export interface StateTile {
  state: string;
  col: number;
  row: number;
}

export const US_TILES: StateTile[] = [
  { state: "AK", col: 0, row: 0 }, { state: "VT", col: 9, row: 0 }, { state: "ME", col: 10, row: 0 },
  { state: "WA", col: 0, row: 1 }, { state: "ID", col: 1, row: 1 }, { state: "MT", col: 2, row: 1 },
  { state: "ND", col: 3, row: 1 }, { state: "MN", col: 4, row: 1 }, { state: "WI", col: 5, row: 1 },
  { state: "NH", col: 9, row: 1 }, { state: "MA", col: 10, row: 1 },
  { state: "OR", col: 0, row: 2 }, { state: "NV", col: 1, row: 2 }, { state: "WY", col: 2, row: 2 },
  { state: "SD", col: 3, row: 2 }, { state: "IA", col: 4, row: 2 }, { state: "IL", col: 5, row: 2 },
  { state: "MI", col: 6, row: 2 }, { state: "NY", col: 7, row: 2 }, { state: "CT", col: 8, row: 2 },
  { state: "RI", col: 9, row: 2 },
  { state: "CA", col: 0, row: 3 }, { state: "UT", col: 1, row: 3 }, { state: "CO", col: 2, row: 3 },
  { state: "NE", col: 3, row: 3 }, { state: "MO", col: 4, row: 3 }, { state: "IN", col: 5, row: 3 },
  { state: "OH", col: 6, row: 3 }, { state: "PA", col: 7, row: 3 }, { state: "NJ", col: 8, row: 3 },
  { state: "AZ", col: 1, row: 4 }, { state: "NM", col: 2, row: 4 }, { state: "KS", col: 3, row: 4 },
  { state: "AR", col: 4, row: 4 }, { state: "KY", col: 5, row: 4 }, { state: "WV", col: 6, row: 4 },
  { state: "VA", col: 7, row: 4 }, { state: "MD", col: 8, row: 4 }, { state: "DE", col: 9, row: 4 },
  { state: "TX", col: 2, row: 5 }, { state: "OK", col: 3, row: 5 }, { state: "LA", col: 4, row: 5 },
  { state: "TN", col: 5, row: 5 }, { state: "NC", col: 6, row: 5 }, { state: "SC", col: 7, row: 5 },
  { state: "DC", col: 8, row: 5 },
  { state: "MS", col: 4, row: 6 }, { state: "AL", col: 5, row: 6 }, { state: "GA", col: 6, row: 6 },
  { state: "HI", col: 0, row: 7 }, { state: "FL", col: 6, row: 7 },
];
