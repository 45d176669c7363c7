// The chart pipeline must never classify clinical values itself: every
// color comes from an API field. This scan fails if threshold-style
// numeric comparisons sneak into the chart or series modules.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

const SRC = join(dirname(fileURLToPath(import.meta.url)), "..", "src");
const CHART_MODULES = ["charts.ts", "series.ts"];

function stripStrings(source: string): string {
  // drop string/template literals so markup like viewBox="0 0 560 180"
  // does not trip the comparison scan
  return source.replace(/`[^`]*`|"[^"]*"|'[^']*'/g, '""');
}

describe("no client-side clinical thresholds", () => {
  for (const name of CHART_MODULES) {
    const source = readFileSync(join(SRC, name), "utf-8");
    const code = stripStrings(source);

    it(`${name} has no numeric comparison operators`, () => {
      expect(code).not.toMatch(/[<>]=?\s*\d/);
      expect(code).not.toMatch(/\d\s*[<>]=?/);
    });

    it(`${name} has no magnitude checks`, () => {
      expect(code).not.toMatch(/Math\.abs/);
    });

    it(`${name} never mentions clinical cutoffs`, () => {
      // the adolescent BP cutoffs and the z-score bounds must not appear
      for (const cutoff of ["140", "130", "120/80", "2\\s*\\*\\s*sd", "sd\\s*\\*"]) {
        expect(code).not.toMatch(new RegExp(cutoff));
      }
    });

    it(`${name} assigns colors only from point/record fields`, () => {
      // conditional expressions must not produce severity names
      expect(stripStrings(source)).not.toMatch(/\?\s*["']?(red|yellow|green)/);
    });
  }
});
