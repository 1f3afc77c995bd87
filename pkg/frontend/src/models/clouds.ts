/** Render model for the parallel word clouds. Shared words paint black at
 * the exact coordinates the service placed them (identical in both panels);
 * weekday-only words are red, weekend-only words blue. Overlapping boxes in
 * the input violate the layout contract: we render anyway and surface the
 * violation for logging. */

import { CloudLayouts, CloudWord } from "../types.js";

export const COLOR_OF: Record<CloudWord["color_class"], string> = {
  shared: "#000000",
  group_a: "#c0392b",
  group_b: "#2456a4",
};

export interface PlacedWordModel {
  word: string;
  x: number;
  y: number;
  fontScale: number;
  color: string;
  colorClass: CloudWord["color_class"];
  width: number;
  height: number;
}

export interface CloudsModel {
  a: PlacedWordModel[];
  b: PlacedWordModel[];
  violations: string[];
}

function toModel(words: CloudWord[]): PlacedWordModel[] {
  return words.map((w) => ({
    word: w.word,
    x: w.x,
    y: w.y,
    fontScale: w.font_scale,
    color: COLOR_OF[w.color_class],
    colorClass: w.color_class,
    width: w.width,
    height: w.height,
  }));
}

function overlaps(a: CloudWord, b: CloudWord): boolean {
  return Math.abs(a.x - b.x) < (a.width + b.width) / 2 &&
         Math.abs(a.y - b.y) < (a.height + b.height) / 2;
}

function findViolations(panel: string, words: CloudWord[]): string[] {
  const out: string[] = [];
  for (let i = 0; i < words.length; i++) {
    for (let j = i + 1; j < words.length; j++) {
      if (overlaps(words[i], words[j])) {
        out.push(`${panel}: "${words[i].word}" overlaps "${words[j].word}"`);
      }
    }
  }
  return out;
}

export function buildCloudsModel(layouts: CloudLayouts): CloudsModel {
  const violations = [
    ...findViolations("a", layouts.a),
    ...findViolations("b", layouts.b),
  ];
  const posA = new Map(
    layouts.a.filter((w) => w.color_class === "shared").map((w) => [w.word, [w.x, w.y]]),
  );
  for (const w of layouts.b) {
    if (w.color_class !== "shared") continue;
    const other = posA.get(w.word);
    if (!other || other[0] !== w.x || other[1] !== w.y) {
      violations.push(`shared word "${w.word}" differs in position between panels`);
    }
  }
  return { a: toModel(layouts.a), b: toModel(layouts.b), violations };
}
