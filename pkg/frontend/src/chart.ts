// Chart model + HTML rendering for the probability sweeps. The model is a
// plain array derived from a server report, so tests can check bar heights
// and tooltips without a DOM; rendering returns an HTML string the app
// assigns to innerHTML.

import { dualIndex, fmtProb } from "./state.js";
import type { SweepReportView } from "./types.js";

export interface ChartBar {
  index: number;
  tosser: number;
  gambler: number;
  draw: number;
  selected: boolean;
  dual: number | null;
  tooltip: string;
}

export function chartModel(
  report: SweepReportView,
  selected: number | null,
): ChartBar[] {
  const symbol = report.fixed_k === null ? "k" : "l";
  return report.rows.map((row) => {
    const parts = [
      `${symbol}=${row.index}`,
      `tosser ${fmtProb(row.p_tosser)}`,
      `gambler ${fmtProb(row.p_gambler)}`,
    ];
    if (report.fixed_k !== null) {
      parts.push(`draw ${fmtProb(row.p_draw)}`);
    }
    return {
      index: row.index,
      tosser: row.p_tosser,
      gambler: row.p_gambler,
      draw: row.p_draw,
      selected: row.index === selected,
      dual: dualIndex(row.index, report.n),
      tooltip: parts.join(" · "),
    };
  });
}

function pct(p: number): string {
  return `${(p * 100).toFixed(2)}%`;
}

// Each bar stacks tosser (bottom), gambler, draw segments; the three
// heights always fill the column because the probabilities sum to one.
export function renderChart(bars: ChartBar[], highlight: number | null): string {
  const columns = bars
    .map((bar) => {
      const classes = ["bar"];
      if (bar.selected) {
        classes.push("selected");
      }
      if (highlight !== null && bar.index === highlight) {
        classes.push("dual-hint");
      }
      return `
        <div class="${classes.join(" ")}" data-index="${bar.index}" title="${bar.tooltip}">
          <div class="bar-column">
            <div class="seg draw" style="height:${pct(bar.draw)}"></div>
            <div class="seg gambler" style="height:${pct(bar.gambler)}"></div>
            <div class="seg tosser" style="height:${pct(bar.tosser)}"></div>
          </div>
          <div class="bar-label">${bar.index}</div>
        </div>`;
    })
    .join("");
  return `<div class="chart">${columns}</div>`;
}

export function chartLegend(withDraw: boolean): string {
  const draw = withDraw
    ? `<span class="key"><i class="swatch draw"></i>draw</span>`
    : "";
  return `
    <div class="legend">
      <span class="key"><i class="swatch tosser"></i>tosser wins</span>
      <span class="key"><i class="swatch gambler"></i>gambler wins</span>
      ${draw}
    </div>`;
}
